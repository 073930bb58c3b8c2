#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "simeval/config.hpp"

namespace simeval {

// A tokenized sentence with provenance. Invariants: no token contains
// whitespace; tokenizers never invent or drop visible characters.
struct TokenSeq {
    std::vector<std::string> tokens;
    TokenizerScheme scheme = TokenizerScheme::none;
    std::string language;
    bool lowercased = false;

    bool operator==(const TokenSeq&) const = default;
};

struct TextStats {
    std::size_t n_sentences = 0;
    std::size_t n_words = 0;      // tokens containing at least one letter
    std::size_t n_syllables = 0;
    double avg_sentence_len = 0;  // words per sentence
    double avg_word_syllables = 0;
    double pct_3plus_syllable_words = 0;
    double pct_gt6_letter_words = 0;
    double pct_monosyllable_words = 0;
};

// Abbreviation lists drive the lang-rules tokenizer and the sentence
// splitter. File format: UTF-8, one entry per line, '#' starts a comment.
class AbbreviationSet {
public:
    AbbreviationSet() = default;
    explicit AbbreviationSet(std::unordered_set<std::string> entries)
        : entries_(std::move(entries)) {}

    static AbbreviationSet load_file(const std::filesystem::path& path);

    // Built-in list for a language; empty set for languages without one.
    static const AbbreviationSet& builtin(const std::string& language);

    bool contains(const std::string& token) const { return entries_.count(token) > 0; }
    const std::unordered_set<std::string>& entries() const { return entries_; }

private:
    std::unordered_set<std::string> entries_;
};

TokenSeq tokenize(std::string_view text, TokenizerScheme scheme, const std::string& language);
TokenSeq tokenize(std::string_view text, TokenizerScheme scheme, const std::string& language,
                  const AbbreviationSet& abbreviations);

std::vector<std::string> split_sentences(std::string_view text, const std::string& language);
std::vector<std::string> split_sentences(std::string_view text, const std::string& language,
                                         const AbbreviationSet& abbreviations);

// Maximal vowel runs over the language's vowel set; >= 1 for any token that
// contains a letter, 0 for pure punctuation or number tokens. English drops a
// trailing silent-e run when the word has two or more runs and does not end
// in "le".
std::size_t count_syllables(std::string_view word, const std::string& language);

TextStats text_stats(std::string_view text, const std::string& language, TokenizerScheme scheme);
TextStats text_stats(std::string_view text, const std::string& language, TokenizerScheme scheme,
                     const AbbreviationSet& abbreviations);

// Stats over many segments: counts are pooled before the averages are
// derived, so a corpus is treated as one concatenated text.
TextStats text_stats(const std::vector<std::string>& lines, const std::string& language,
                     TokenizerScheme scheme);
TextStats text_stats(const std::vector<std::string>& lines, const std::string& language,
                     TokenizerScheme scheme, const AbbreviationSet& abbreviations);

TokenSeq lowercase_tokens(const TokenSeq& seq);

// True if the token contains at least one letter (the "word" criterion).
bool is_word_token(std::string_view token);

// Number of letters in a token (umlauts etc. count as one).
std::size_t letter_count(std::string_view token);

} // namespace simeval
