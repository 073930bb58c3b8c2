#include "simeval/readability.hpp"

#include "simeval/errors.hpp"

namespace simeval {

namespace {

void require_nonempty(const TextStats& stats) {
    if (stats.n_words == 0 || stats.n_sentences == 0)
        throw ValidationError("readability formulas need at least one word and one sentence");
}

// Conventional 7-band reading-ease scale (shared by the Flesch and Amstad
// variants; boundaries at 30/50/60/70/80/90, lower bound inclusive).
struct FreBand {
    double lower;
    const char* label;
};

constexpr FreBand fre_category_bands[] = {
    {90.0, "very easy"},
    {80.0, "easy"},
    {70.0, "fairly easy"},
    {60.0, "standard"},
    {50.0, "fairly difficult"},
    {30.0, "difficult"},
};

} // namespace

double fre_english(const TextStats& stats) {
    require_nonempty(stats);
    return 206.835 - 1.015 * stats.avg_sentence_len - 84.6 * stats.avg_word_syllables;
}

double fre_german(const TextStats& stats) {
    require_nonempty(stats);
    return 180.0 - stats.avg_sentence_len - 58.5 * stats.avg_word_syllables;
}

double fkgl(const TextStats& stats) {
    require_nonempty(stats);
    return 0.39 * stats.avg_sentence_len + 11.8 * stats.avg_word_syllables - 15.59;
}

WienerScores wiener_sachtextformel(const TextStats& stats) {
    require_nonempty(stats);
    const double ms = stats.pct_3plus_syllable_words;
    const double sl = stats.avg_sentence_len;
    const double iw = stats.pct_gt6_letter_words;
    const double es = stats.pct_monosyllable_words;
    WienerScores w;
    w.wstf1 = 0.1935 * ms + 0.1672 * sl + 0.1297 * iw - 0.0327 * es - 0.875;
    w.wstf2 = 0.2007 * ms + 0.1682 * sl + 0.1373 * iw - 2.779;
    w.wstf3 = 0.2963 * ms + 0.1905 * sl - 1.1144;
    w.wstf4 = 0.2744 * ms + 0.2656 * sl - 1.693;
    return w;
}

std::string fre_category(double fre) {
    for (const auto& band : fre_category_bands)
        if (fre >= band.lower) return band.label;
    return "very difficult";
}

ReadabilityScores readability_for(const EvalConfig& config, const TextStats& stats) {
    ReadabilityVariant variant = config.readability_variant;
    if (variant == ReadabilityVariant::auto_by_language) {
        if (config.language == "en") {
            variant = ReadabilityVariant::force_en;
        } else if (config.language == "de") {
            variant = ReadabilityVariant::force_de;
        } else {
            throw ValidationError("no readability formulas registered for language '" +
                                  config.language + "'; use force-en or force-de");
        }
    }

    ReadabilityScores scores;
    scores.variant_used = variant;
    if (variant == ReadabilityVariant::force_en) {
        scores.fre = fre_english(stats);
        scores.fkgl = fkgl(stats);
    } else {
        scores.fre = fre_german(stats);
        WienerScores w = wiener_sachtextformel(stats);
        scores.wstf1 = w.wstf1;
        scores.wstf2 = w.wstf2;
        scores.wstf3 = w.wstf3;
        scores.wstf4 = w.wstf4;
    }
    scores.fre_category = fre_category(*scores.fre);
    return scores;
}

} // namespace simeval
