#pragma once

#include <optional>
#include <string>

#include "simeval/config.hpp"
#include "simeval/segment.hpp"

namespace simeval {

// Score sets are language-specific: the English variant carries FRE + FKGL,
// the German variant carries the Amstad FRE + the four Vienna formulas.
// Fields outside the active variant stay empty rather than zero.
struct ReadabilityScores {
    std::optional<double> fre;
    std::optional<double> fkgl;
    std::optional<double> wstf1;
    std::optional<double> wstf2;
    std::optional<double> wstf3;
    std::optional<double> wstf4;
    ReadabilityVariant variant_used = ReadabilityVariant::auto_by_language;
    std::string fre_category;
};

struct WienerScores {
    double wstf1 = 0.0;
    double wstf2 = 0.0;
    double wstf3 = 0.0;
    double wstf4 = 0.0;
};

double fre_english(const TextStats& stats);
double fre_german(const TextStats& stats);
double fkgl(const TextStats& stats);
WienerScores wiener_sachtextformel(const TextStats& stats);

// Band label for an Amstad/Flesch reading-ease value (the conventional
// 7-step difficulty scale; see fre_category_bands in the implementation).
std::string fre_category(double fre);

ReadabilityScores readability_for(const EvalConfig& config, const TextStats& stats);

} // namespace simeval
