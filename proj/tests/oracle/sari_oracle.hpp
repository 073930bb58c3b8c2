#pragma once

// Brute-force SARI used only as a test oracle. Multisets are plain vectors of
// (gram, fraction) pairs searched linearly, so the oracle shares no container
// or arithmetic code with the library. The final floating-point combination
// follows the same expression shapes as the library on purpose: both sides
// reduce every ratio to lowest terms and perform one double division, so
// agreement is expected to be exact, not approximate.

#include <string>
#include <vector>

#include "fraction.hpp"

namespace oracle {

using Gram = std::vector<std::string>;

struct FracMultiset {
    std::vector<std::pair<Gram, Frac>> items;

    const Frac* find(const Gram& g) const {
        for (const auto& [gram, c] : items)
            if (gram == g) return &c;
        return nullptr;
    }

    void add(const Gram& g, const Frac& c) {
        if (!c.is_positive()) return;
        for (auto& [gram, cur] : items) {
            if (gram == g) {
                cur = cur.plus(c);
                return;
            }
        }
        items.emplace_back(g, c);
    }

    Frac total() const {
        Frac sum(0);
        for (const auto& [gram, c] : items) sum = sum.plus(c);
        return sum;
    }
};

inline FracMultiset grams_of(const std::vector<std::string>& tokens, std::size_t n,
                             const Frac& weight) {
    FracMultiset set;
    if (tokens.size() < n) return set;
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
        Gram g(tokens.begin() + static_cast<std::ptrdiff_t>(i),
               tokens.begin() + static_cast<std::ptrdiff_t>(i + n));
        set.add(g, weight);
    }
    return set;
}

inline FracMultiset mset_min(const FracMultiset& a, const FracMultiset& b) {
    FracMultiset out;
    for (const auto& [gram, c] : a.items) {
        const Frac* other = b.find(gram);
        if (other == nullptr) continue;
        out.add(gram, frac_min(c, *other));
    }
    return out;
}

inline FracMultiset mset_clip_diff(const FracMultiset& a, const FracMultiset& b) {
    FracMultiset out;
    for (const auto& [gram, c] : a.items) {
        const Frac* other = b.find(gram);
        Frac d = other == nullptr ? c : c.minus(*other);
        if (d.is_positive()) out.add(gram, d);
    }
    return out;
}

inline FracMultiset mset_binarize(const FracMultiset& a) {
    FracMultiset out;
    for (const auto& [gram, c] : a.items) out.add(gram, Frac(1));
    return out;
}

inline double ratio_or_zero(const Frac& num, const Frac& den) {
    if (den.is_zero()) return 0.0;
    return num.divided_by(den).to_double();
}

inline double f1_or_zero(double p, double r) {
    if (p + r == 0.0) return 0.0;
    return 2.0 * p * r / (p + r);
}

inline double sentence_sari_oracle(const std::vector<std::string>& source,
                                   const std::vector<std::string>& output,
                                   const std::vector<std::vector<std::string>>& references) {
    auto r = static_cast<long long>(references.size());
    double component_sum = 0.0;
    for (std::size_t n = 1; n <= 4; ++n) {
        FracMultiset S = grams_of(source, n, Frac(1));
        FracMultiset O = grams_of(output, n, Frac(1));
        FracMultiset R;
        for (const auto& ref : references) {
            FracMultiset one = grams_of(ref, n, Frac(1, r));
            for (const auto& [gram, c] : one.items) R.add(gram, c);
        }

        FracMultiset keep_cand = mset_min(S, O);
        FracMultiset keep_targ = mset_min(S, R);
        FracMultiset keep_good = mset_min(keep_cand, keep_targ);
        double keep_p = ratio_or_zero(keep_good.total(), keep_cand.total());
        double keep_r = ratio_or_zero(keep_good.total(), keep_targ.total());

        FracMultiset add_cand = mset_binarize(mset_clip_diff(O, S));
        FracMultiset add_targ = mset_binarize(mset_clip_diff(R, S));
        FracMultiset add_good = mset_min(add_cand, add_targ);
        double add_p = ratio_or_zero(add_good.total(), add_cand.total());
        double add_r = ratio_or_zero(add_good.total(), add_targ.total());

        FracMultiset del_cand = mset_clip_diff(S, O);
        FracMultiset del_targ = mset_clip_diff(S, R);
        FracMultiset del_good = mset_min(del_cand, del_targ);
        double del_p = ratio_or_zero(del_good.total(), del_cand.total());

        double fa = f1_or_zero(add_p, add_r);
        double fk = f1_or_zero(keep_p, keep_r);
        component_sum += (fa + fk + del_p) / 3.0;
    }
    return 100.0 * component_sum / 4.0;
}

} // namespace oracle
