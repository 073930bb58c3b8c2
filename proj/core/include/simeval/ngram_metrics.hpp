#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "simeval/segment.hpp"

namespace simeval {

// Exact fraction on int64. Counts stay tiny (n-gram counts scaled by the
// number of references), so reduced int64 arithmetic never overflows here.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d = 1);

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator<(const Rational& o) const;
    bool is_zero() const { return num == 0; }
    bool is_negative() const { return num < 0; }
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    static Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
    static Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }
};

// Multiset of n-grams with rational counts. Keys are the n tokens joined
// with '\n' (tokens come from the tokenizers, which never emit whitespace
// inside a token).
class NGramMultiset {
public:
    explicit NGramMultiset(std::size_t order);

    static NGramMultiset from_tokens(const std::vector<std::string>& tokens, std::size_t order,
                                     Rational count_per_occurrence = Rational(1));

    std::size_t order() const { return order_; }
    void add(const std::string& key, const Rational& count);
    Rational count(const std::string& key) const;
    Rational total() const;
    bool contains(const std::string& key) const { return counts_.count(key) > 0; }

    // Pointwise min over shared keys.
    NGramMultiset intersect(const NGramMultiset& other) const;
    // Pointwise max(this - other, 0).
    NGramMultiset clipped_difference(const NGramMultiset& other) const;
    // Every count present becomes 1 (the "appears at all" view).
    NGramMultiset binarized() const;

    const std::unordered_map<std::string, Rational>& counts() const { return counts_; }

private:
    std::size_t order_;
    std::unordered_map<std::string, Rational> counts_;
};

std::string ngram_key(const std::vector<std::string>& tokens, std::size_t start, std::size_t order);

struct BleuOptions {
    // Zero n-gram precisions are replaced with 1/(2^k * total_n), k counting
    // the zeros seen so far; disabled, any zero precision forces a 0 score.
    bool smoothing = true;
    std::size_t max_order = 4;
};

double corpus_bleu(const std::vector<TokenSeq>& outputs,
                   const std::vector<std::vector<TokenSeq>>& references,
                   const BleuOptions& options = {});

struct SariBreakdown {
    std::array<double, 4> f1_add{};
    std::array<double, 4> f1_keep{};
    std::array<double, 4> precision_del{};
    double sari = 0.0;
};

SariBreakdown sentence_sari(const TokenSeq& source, const TokenSeq& output,
                            const std::vector<TokenSeq>& references);

double corpus_sari(const std::vector<TokenSeq>& sources, const std::vector<TokenSeq>& outputs,
                   const std::vector<std::vector<TokenSeq>>& references);

} // namespace simeval
