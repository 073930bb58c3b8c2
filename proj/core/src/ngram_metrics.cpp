#include "simeval/ngram_metrics.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>

#include "simeval/errors.hpp"

namespace simeval {

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den == 0) throw ValidationError("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

Rational Rational::operator+(const Rational& o) const {
    return Rational(num * o.den + o.num * den, den * o.den);
}

Rational Rational::operator-(const Rational& o) const {
    return Rational(num * o.den - o.num * den, den * o.den);
}

Rational Rational::operator/(const Rational& o) const {
    if (o.num == 0) throw ValidationError("rational division by zero");
    return Rational(num * o.den, den * o.num);
}

bool Rational::operator<(const Rational& o) const {
    return num * o.den < o.num * den;
}

NGramMultiset::NGramMultiset(std::size_t order) : order_(order) {
    if (order < 1 || order > 4) throw ValidationError("n-gram order must be in 1..4");
}

std::string ngram_key(const std::vector<std::string>& tokens, std::size_t start,
                      std::size_t order) {
    std::string key = tokens[start];
    for (std::size_t i = 1; i < order; ++i) {
        key += '\n';
        key += tokens[start + i];
    }
    return key;
}

NGramMultiset NGramMultiset::from_tokens(const std::vector<std::string>& tokens,
                                         std::size_t order, Rational count_per_occurrence) {
    NGramMultiset set(order);
    if (tokens.size() < order) return set;
    for (std::size_t i = 0; i + order <= tokens.size(); ++i) {
        set.add(ngram_key(tokens, i, order), count_per_occurrence);
    }
    return set;
}

void NGramMultiset::add(const std::string& key, const Rational& count) {
    if (count.is_negative()) throw ValidationError("negative n-gram count");
    if (count.is_zero()) return;
    auto it = counts_.find(key);
    if (it == counts_.end()) {
        counts_.emplace(key, count);
    } else {
        it->second = it->second + count;
    }
}

Rational NGramMultiset::count(const std::string& key) const {
    auto it = counts_.find(key);
    return it == counts_.end() ? Rational(0) : it->second;
}

Rational NGramMultiset::total() const {
    Rational sum(0);
    for (const auto& [key, c] : counts_) sum = sum + c;
    return sum;
}

NGramMultiset NGramMultiset::intersect(const NGramMultiset& other) const {
    if (order_ != other.order_) throw ValidationError("n-gram order mismatch");
    NGramMultiset out(order_);
    for (const auto& [key, c] : counts_) {
        Rational oc = other.count(key);
        Rational m = Rational::min(c, oc);
        if (!m.is_zero()) out.counts_.emplace(key, m);
    }
    return out;
}

NGramMultiset NGramMultiset::clipped_difference(const NGramMultiset& other) const {
    if (order_ != other.order_) throw ValidationError("n-gram order mismatch");
    NGramMultiset out(order_);
    for (const auto& [key, c] : counts_) {
        Rational d = c - other.count(key);
        if (!d.is_negative() && !d.is_zero()) out.counts_.emplace(key, d);
    }
    return out;
}

NGramMultiset NGramMultiset::binarized() const {
    NGramMultiset out(order_);
    for (const auto& [key, c] : counts_) out.counts_.emplace(key, Rational(1));
    return out;
}

// --- BLEU --------------------------------------------------------------------

double corpus_bleu(const std::vector<TokenSeq>& outputs,
                   const std::vector<std::vector<TokenSeq>>& references,
                   const BleuOptions& options) {
    if (outputs.empty()) throw ValidationError("corpus_bleu: empty corpus");
    if (outputs.size() != references.size())
        throw ValidationError("corpus_bleu: outputs and references are not aligned");
    const std::size_t max_order = options.max_order;
    if (max_order < 1 || max_order > 4)
        throw ValidationError("corpus_bleu: max_order must be in 1..4");

    std::vector<std::int64_t> matched(max_order, 0), total(max_order, 0);
    std::int64_t out_len_sum = 0, ref_len_sum = 0;

    for (std::size_t seg = 0; seg < outputs.size(); ++seg) {
        const auto& out_tokens = outputs[seg].tokens;
        const auto& refs = references[seg];
        if (refs.empty())
            throw ValidationError("corpus_bleu: segment " + std::to_string(seg) +
                                  " has no references");

        out_len_sum += static_cast<std::int64_t>(out_tokens.size());
        std::int64_t closest = static_cast<std::int64_t>(refs[0].tokens.size());
        for (const auto& ref : refs) {
            auto len = static_cast<std::int64_t>(ref.tokens.size());
            auto diff = [&](std::int64_t l) { return std::llabs(l - static_cast<std::int64_t>(out_tokens.size())); };
            if (diff(len) < diff(closest) || (diff(len) == diff(closest) && len < closest))
                closest = len;
        }
        ref_len_sum += closest;

        for (std::size_t n = 1; n <= max_order; ++n) {
            if (out_tokens.size() < n) continue;
            std::unordered_map<std::string, std::int64_t> out_counts;
            for (std::size_t i = 0; i + n <= out_tokens.size(); ++i)
                ++out_counts[ngram_key(out_tokens, i, n)];

            std::unordered_map<std::string, std::int64_t> max_ref_counts;
            for (const auto& ref : refs) {
                if (ref.tokens.size() < n) continue;
                std::unordered_map<std::string, std::int64_t> ref_counts;
                for (std::size_t i = 0; i + n <= ref.tokens.size(); ++i)
                    ++ref_counts[ngram_key(ref.tokens, i, n)];
                for (const auto& [key, c] : ref_counts) {
                    auto& slot = max_ref_counts[key];
                    if (c > slot) slot = c;
                }
            }

            for (const auto& [key, c] : out_counts) {
                auto it = max_ref_counts.find(key);
                if (it != max_ref_counts.end()) matched[n - 1] += std::min(c, it->second);
                total[n - 1] += c;
            }
        }
    }

    if (out_len_sum == 0) return 0.0;

    double log_sum = 0.0;
    std::int64_t smooth_scale = 1;
    for (std::size_t n = 0; n < max_order; ++n) {
        if (total[n] == 0) return 0.0;
        double p;
        if (matched[n] > 0) {
            p = static_cast<double>(matched[n]) / static_cast<double>(total[n]);
        } else if (options.smoothing) {
            smooth_scale *= 2;
            p = 1.0 / (static_cast<double>(smooth_scale) * static_cast<double>(total[n]));
        } else {
            return 0.0;
        }
        log_sum += std::log(p);
    }

    double brevity = 1.0;
    if (out_len_sum < ref_len_sum)
        brevity = std::exp(1.0 - static_cast<double>(ref_len_sum) / static_cast<double>(out_len_sum));

    return 100.0 * brevity * std::exp(log_sum / static_cast<double>(max_order));
}

// --- SARI --------------------------------------------------------------------

namespace {

double safe_ratio(const Rational& num, const Rational& den) {
    if (den.is_zero()) return 0.0;
    return (num / den).to_double();
}

double f1_of(double precision, double recall) {
    if (precision + recall == 0.0) return 0.0;
    return 2.0 * precision * recall / (precision + recall);
}

} // namespace

SariBreakdown sentence_sari(const TokenSeq& source, const TokenSeq& output,
                            const std::vector<TokenSeq>& references) {
    if (references.empty()) throw ValidationError("sentence_sari: empty references");
    const auto r = static_cast<std::int64_t>(references.size());

    SariBreakdown result;
    double component_sum = 0.0;
    for (std::size_t n = 1; n <= 4; ++n) {
        auto S = NGramMultiset::from_tokens(source.tokens, n);
        auto O = NGramMultiset::from_tokens(output.tokens, n);
        NGramMultiset R(n);
        for (const auto& ref : references) {
            auto ref_set = NGramMultiset::from_tokens(ref.tokens, n, Rational(1, r));
            for (const auto& [key, c] : ref_set.counts()) R.add(key, c);
        }

        auto keep_cand = S.intersect(O);
        auto keep_targ = S.intersect(R);
        auto keep_good = keep_cand.intersect(keep_targ);
        double keep_p = safe_ratio(keep_good.total(), keep_cand.total());
        double keep_r = safe_ratio(keep_good.total(), keep_targ.total());

        auto add_cand = O.clipped_difference(S).binarized();
        auto add_targ = R.clipped_difference(S).binarized();
        auto add_good = add_cand.intersect(add_targ);
        double add_p = safe_ratio(add_good.total(), add_cand.total());
        double add_r = safe_ratio(add_good.total(), add_targ.total());

        auto del_cand = S.clipped_difference(O);
        auto del_targ = S.clipped_difference(R);
        auto del_good = del_cand.intersect(del_targ);
        double del_p = safe_ratio(del_good.total(), del_cand.total());

        result.f1_keep[n - 1] = f1_of(keep_p, keep_r);
        result.f1_add[n - 1] = f1_of(add_p, add_r);
        result.precision_del[n - 1] = del_p;
        component_sum +=
            (result.f1_add[n - 1] + result.f1_keep[n - 1] + result.precision_del[n - 1]) / 3.0;
    }
    result.sari = 100.0 * component_sum / 4.0;
    return result;
}

double corpus_sari(const std::vector<TokenSeq>& sources, const std::vector<TokenSeq>& outputs,
                   const std::vector<std::vector<TokenSeq>>& references) {
    if (sources.empty()) throw ValidationError("corpus_sari: empty corpus");
    if (sources.size() != outputs.size() || sources.size() != references.size())
        throw ValidationError("corpus_sari: sources, outputs and references are not aligned");
    double sum = 0.0;
    for (std::size_t i = 0; i < sources.size(); ++i)
        sum += sentence_sari(sources[i], outputs[i], references[i]).sari;
    return sum / static_cast<double>(sources.size());
}

} // namespace simeval
