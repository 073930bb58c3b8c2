#include "simeval/segment.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "simeval/errors.hpp"
#include "simeval/unicode.hpp"

namespace simeval {

namespace {

bool is_strippable_punct(char32_t cp) {
    return !uni::is_letter(cp) && !uni::is_ascii_digit(cp) && !uni::is_space(cp);
}

std::vector<std::string> whitespace_chunks(std::string_view text) {
    auto cps = uni::decode_utf8(text);
    std::vector<std::string> chunks;
    std::string current;
    for (char32_t cp : cps) {
        if (uni::is_space(cp)) {
            if (!current.empty()) {
                chunks.push_back(std::move(current));
                current.clear();
            }
        } else {
            uni::append_utf8(current, cp);
        }
    }
    if (!current.empty()) chunks.push_back(std::move(current));
    return chunks;
}

// --- mteval-13a rules ------------------------------------------------------
//
// Normalization: drop <skipped> tags, de-hyphenate line wraps, unescape the
// four SGML entities; then pad punctuation with spaces except period/comma
// inside numbers, split dashes after digits, and collapse whitespace. The
// character classes are ASCII-only, so the passes operate on bytes; space
// insertion only ever happens next to an ASCII byte, which keeps multi-byte
// UTF-8 sequences intact.

void replace_all(std::string& s, std::string_view from, std::string_view to) {
    std::size_t pos = 0;
    while ((pos = s.find(from, pos)) != std::string::npos) {
        s.replace(pos, from.size(), to);
        pos += to.size();
    }
}

bool in_13a_pad_class(unsigned char c) {
    // ASCII punctuation and symbols except period, comma, dash, apostrophe.
    return (c >= 0x20 && c <= 0x26) || (c >= 0x28 && c <= 0x2B) || c == 0x2F ||
           (c >= 0x3A && c <= 0x40) || (c >= 0x5B && c <= 0x60) || (c >= 0x7B && c <= 0x7E);
}

bool is_digit_byte(unsigned char c) { return c >= '0' && c <= '9'; }
bool is_period_comma(unsigned char c) { return c == '.' || c == ','; }

std::vector<std::string> tokenize_13a(std::string_view text) {
    std::string s(text);
    replace_all(s, "<skipped>", "");
    replace_all(s, "-\n", "");
    replace_all(s, "\n", " ");
    if (s.find('&') != std::string::npos) {
        replace_all(s, "&quot;", "\"");
        replace_all(s, "&amp;", "&");
        replace_all(s, "&lt;", "<");
        replace_all(s, "&gt;", ">");
    }
    s = " " + s + " ";

    std::string a;
    a.reserve(s.size() * 2);
    for (unsigned char c : s) {
        if (in_13a_pad_class(c)) {
            a += ' ';
            a += static_cast<char>(c);
            a += ' ';
        } else {
            a += static_cast<char>(c);
        }
    }

    // period/comma not preceded by a digit: pad after the pair
    std::string b;
    b.reserve(a.size() * 2);
    for (std::size_t i = 0; i < a.size();) {
        unsigned char c = a[i];
        if (i + 1 < a.size() && !is_digit_byte(c) && is_period_comma(a[i + 1])) {
            b += static_cast<char>(c);
            b += ' ';
            b += a[i + 1];
            b += ' ';
            i += 2;
        } else {
            b += static_cast<char>(c);
            ++i;
        }
    }

    // period/comma not followed by a digit: pad before the pair
    std::string c2;
    c2.reserve(b.size() * 2);
    for (std::size_t i = 0; i < b.size();) {
        unsigned char c = b[i];
        if (i + 1 < b.size() && is_period_comma(c) && !is_digit_byte(b[i + 1])) {
            c2 += ' ';
            c2 += static_cast<char>(c);
            c2 += ' ';
            c2 += b[i + 1];
            i += 2;
        } else {
            c2 += static_cast<char>(c);
            ++i;
        }
    }

    // dash preceded by a digit
    std::string d;
    d.reserve(c2.size() * 2);
    for (std::size_t i = 0; i < c2.size();) {
        unsigned char c = c2[i];
        if (i + 1 < c2.size() && is_digit_byte(c) && c2[i + 1] == '-') {
            d += static_cast<char>(c);
            d += " - ";
            i += 2;
        } else {
            d += static_cast<char>(c);
            ++i;
        }
    }

    return whitespace_chunks(d);
}

// --- lang-rules ------------------------------------------------------------

void emit_lang_rules_chunk(const std::string& chunk, const AbbreviationSet& abbreviations,
                           std::vector<std::string>& out) {
    auto cps = uni::decode_utf8(chunk);
    std::size_t lo = 0, hi = cps.size();
    std::vector<std::string> prefix;
    std::vector<std::string> suffix_rev;
    auto window = [&cps](std::size_t from, std::size_t to) {
        std::string s;
        for (std::size_t i = from; i < to; ++i) uni::append_utf8(s, cps[i]);
        return s;
    };
    while (hi - lo > 1) {
        if (abbreviations.contains(window(lo, hi))) break;
        if (is_strippable_punct(cps[lo])) {
            std::string t;
            uni::append_utf8(t, cps[lo]);
            prefix.push_back(std::move(t));
            ++lo;
            continue;
        }
        if (is_strippable_punct(cps[hi - 1])) {
            std::string t;
            uni::append_utf8(t, cps[hi - 1]);
            suffix_rev.push_back(std::move(t));
            --hi;
            continue;
        }
        break;
    }
    for (auto& t : prefix) out.push_back(std::move(t));
    out.push_back(window(lo, hi));
    for (auto it = suffix_rev.rbegin(); it != suffix_rev.rend(); ++it) out.push_back(std::move(*it));
}

std::vector<std::string> tokenize_lang_rules(std::string_view text,
                                             const AbbreviationSet& abbreviations) {
    std::vector<std::string> out;
    for (const auto& chunk : whitespace_chunks(text)) {
        emit_lang_rules_chunk(chunk, abbreviations, out);
    }
    return out;
}

// --- built-in abbreviation lists -------------------------------------------
//
// Kept in sync with core/data/abbrev.<lang>.txt (a unit test enforces it).

constexpr const char* kAbbrevDe =
    "z.B. bzw. usw. etc. ca. d.h. u.a. u.U. o.Ä. o.ä. z.T. vgl. inkl. zzgl. "
    "evtl. ggf. bspw. sog. engl. dt. Dr. Prof. Nr. Abs. Art. Aufl. Bd. Hrsg. "
    "Jh. Mio. Mrd. Str. Tel. Abb. Anm. bzgl. geb. gest. i.d.R. s.o. s.u. "
    "Jan. Feb. Mrz. Apr. Aug. Sept. Okt. Nov. Dez.";

constexpr const char* kAbbrevEn =
    "Mr. Mrs. Ms. Dr. Prof. Sr. Jr. St. Mt. vs. etc. e.g. i.e. cf. al. "
    "Inc. Ltd. Co. Corp. No. Nos. Fig. Figs. Vol. Vols. Ch. Sec. approx. "
    "dept. est. misc. Ave. Blvd. Rd. U.S. U.K. a.m. p.m. "
    "Jan. Feb. Mar. Apr. Jun. Jul. Aug. Sep. Sept. Oct. Nov. Dec.";

AbbreviationSet parse_abbrev_words(const char* words) {
    std::unordered_set<std::string> entries;
    std::istringstream in(words);
    std::string w;
    while (in >> w) entries.insert(w);
    return AbbreviationSet(std::move(entries));
}

// --- syllables --------------------------------------------------------------

bool is_vowel(char32_t lower_cp, const std::string& language) {
    switch (lower_cp) {
        case U'a': case U'e': case U'i': case U'o': case U'u': case U'y':
            return true;
        case 0xE4: case 0xF6: case 0xFC: // ä ö ü
            return language != "en";
        default:
            return false;
    }
}

} // namespace

AbbreviationSet AbbreviationSet::load_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open abbreviation file: " + path.string());
    std::unordered_set<std::string> entries;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        // trim ASCII whitespace (tolerates CRLF in user files)
        auto b = line.find_first_not_of(" \t\r\f\v");
        if (b == std::string::npos) continue;
        auto e = line.find_last_not_of(" \t\r\f\v");
        entries.insert(line.substr(b, e - b + 1));
    }
    return AbbreviationSet(std::move(entries));
}

const AbbreviationSet& AbbreviationSet::builtin(const std::string& language) {
    static const AbbreviationSet de = parse_abbrev_words(kAbbrevDe);
    static const AbbreviationSet en = parse_abbrev_words(kAbbrevEn);
    static const AbbreviationSet empty;
    if (language == "de") return de;
    if (language == "en") return en;
    return empty;
}

TokenSeq tokenize(std::string_view text, TokenizerScheme scheme, const std::string& language) {
    return tokenize(text, scheme, language, AbbreviationSet::builtin(language));
}

TokenSeq tokenize(std::string_view text, TokenizerScheme scheme, const std::string& language,
                  const AbbreviationSet& abbreviations) {
    TokenSeq seq;
    seq.scheme = scheme;
    seq.language = language;
    switch (scheme) {
        case TokenizerScheme::none:
            seq.tokens = whitespace_chunks(text);
            break;
        case TokenizerScheme::thirteen_a:
            seq.tokens = tokenize_13a(text);
            break;
        case TokenizerScheme::lang_rules:
            seq.tokens = tokenize_lang_rules(text, abbreviations);
            break;
    }
    return seq;
}

std::vector<std::string> split_sentences(std::string_view text, const std::string& language) {
    return split_sentences(text, language, AbbreviationSet::builtin(language));
}

std::vector<std::string> split_sentences(std::string_view text, const std::string& language,
                                         const AbbreviationSet& abbreviations) {
    (void)language;
    auto cps = uni::decode_utf8(text);
    const std::size_t n = cps.size();
    std::vector<std::string> sentences;

    auto push_range = [&](std::size_t from, std::size_t to) {
        while (from < to && uni::is_space(cps[from])) ++from;
        while (to > from && uni::is_space(cps[to - 1])) --to;
        if (from >= to) return;
        std::string s;
        for (std::size_t i = from; i < to; ++i) uni::append_utf8(s, cps[i]);
        sentences.push_back(std::move(s));
    };

    // Token ending at index i (inclusive), leading punctuation stripped, for
    // the abbreviation lookup ("(z.B." -> "z.B.").
    auto trailing_token = [&](std::size_t i) {
        std::size_t b = i + 1;
        while (b > 0 && !uni::is_space(cps[b - 1])) --b;
        while (b <= i && is_strippable_punct(cps[b]) && cps[b] != U'.') ++b;
        std::string s;
        for (std::size_t k = b; k <= i; ++k) uni::append_utf8(s, cps[k]);
        return s;
    };

    std::size_t start = 0;
    for (std::size_t i = 0; i < n; ++i) {
        char32_t cp = cps[i];
        if (cp != U'.' && cp != U'!' && cp != U'?') continue;
        std::size_t j = i + 1;
        bool boundary = false;
        if (j == n) {
            boundary = true;
        } else if (uni::is_space(cps[j])) {
            std::size_t k = j;
            while (k < n && uni::is_space(cps[k])) ++k;
            if (k == n) {
                boundary = true;
            } else if (uni::is_upper(cps[k])) {
                boundary = true;
                if (cp == U'.' && abbreviations.contains(trailing_token(i))) boundary = false;
            }
        }
        if (boundary) {
            push_range(start, i + 1);
            start = i + 1;
        }
    }
    push_range(start, n);
    return sentences;
}

std::size_t count_syllables(std::string_view word, const std::string& language) {
    auto cps = uni::decode_utf8(word);
    for (auto& cp : cps) cp = uni::to_lower(cp);

    bool has_letter = false;
    std::size_t runs = 0;
    bool in_run = false;
    std::size_t last_run_start = 0, last_run_end = 0; // [start, end)
    for (std::size_t i = 0; i < cps.size(); ++i) {
        if (uni::is_letter(cps[i])) has_letter = true;
        if (is_vowel(cps[i], language)) {
            if (!in_run) {
                ++runs;
                in_run = true;
                last_run_start = i;
            }
            last_run_end = i + 1;
        } else {
            in_run = false;
        }
    }
    if (runs == 0) return has_letter ? 1 : 0;

    std::size_t syllables = runs;
    if (language == "en" && runs >= 2) {
        // ignore trailing non-letters when testing for a word-final silent e
        std::size_t letters_end = cps.size();
        while (letters_end > 0 && !uni::is_letter(cps[letters_end - 1])) --letters_end;
        bool final_run = last_run_end == letters_end && letters_end > 0;
        bool all_e = final_run;
        for (std::size_t i = last_run_start; i < last_run_end && all_e; ++i)
            if (cps[i] != U'e') all_e = false;
        bool ends_in_le = letters_end >= 2 && cps[letters_end - 1] == U'e' &&
                          cps[letters_end - 2] == U'l';
        if (final_run && all_e && !ends_in_le) --syllables;
    }
    if (syllables == 0 && has_letter) syllables = 1;
    return syllables;
}

namespace {

struct StatCounts {
    std::size_t sentences = 0, words = 0, syllables = 0;
    std::size_t w3plus = 0, wgt6 = 0, wmono = 0;

    void add(std::string_view text, const std::string& language, TokenizerScheme scheme,
             const AbbreviationSet& abbreviations) {
        sentences += split_sentences(text, language, abbreviations).size();
        auto seq = tokenize(text, scheme, language, abbreviations);
        for (const auto& token : seq.tokens) {
            if (!is_word_token(token)) continue;
            ++words;
            std::size_t syl = count_syllables(token, language);
            syllables += syl;
            if (syl >= 3) ++w3plus;
            if (syl == 1) ++wmono;
            if (letter_count(token) > 6) ++wgt6;
        }
    }

    TextStats finish() const {
        TextStats st;
        st.n_sentences = sentences;
        st.n_words = words;
        st.n_syllables = syllables;
        if (sentences > 0) st.avg_sentence_len = static_cast<double>(words) / static_cast<double>(sentences);
        if (words > 0) {
            st.avg_word_syllables = static_cast<double>(syllables) / static_cast<double>(words);
            st.pct_3plus_syllable_words = 100.0 * static_cast<double>(w3plus) / static_cast<double>(words);
            st.pct_gt6_letter_words = 100.0 * static_cast<double>(wgt6) / static_cast<double>(words);
            st.pct_monosyllable_words = 100.0 * static_cast<double>(wmono) / static_cast<double>(words);
        }
        return st;
    }
};

} // namespace

TextStats text_stats(std::string_view text, const std::string& language, TokenizerScheme scheme) {
    return text_stats(text, language, scheme, AbbreviationSet::builtin(language));
}

TextStats text_stats(std::string_view text, const std::string& language, TokenizerScheme scheme,
                     const AbbreviationSet& abbreviations) {
    StatCounts counts;
    counts.add(text, language, scheme, abbreviations);
    return counts.finish();
}

TextStats text_stats(const std::vector<std::string>& lines, const std::string& language,
                     TokenizerScheme scheme) {
    return text_stats(lines, language, scheme, AbbreviationSet::builtin(language));
}

TextStats text_stats(const std::vector<std::string>& lines, const std::string& language,
                     TokenizerScheme scheme, const AbbreviationSet& abbreviations) {
    StatCounts counts;
    for (const auto& line : lines) counts.add(line, language, scheme, abbreviations);
    return counts.finish();
}

TokenSeq lowercase_tokens(const TokenSeq& seq) {
    TokenSeq out = seq;
    for (auto& token : out.tokens) token = uni::to_lower_utf8(token);
    out.lowercased = true;
    return out;
}

bool is_word_token(std::string_view token) {
    for (char32_t cp : uni::decode_utf8(token))
        if (uni::is_letter(cp)) return true;
    return false;
}

std::size_t letter_count(std::string_view token) {
    std::size_t count = 0;
    for (char32_t cp : uni::decode_utf8(token))
        if (uni::is_letter(cp)) ++count;
    return count;
}

} // namespace simeval
