#pragma once

#include <optional>
#include <string>
#include <vector>

#include "simeval/config.hpp"
#include "simeval/embed_metrics.hpp"

namespace simeval {

// Reference-less source/output pair features. Lengths count word tokens
// (tokens with at least one letter) under the configured tokenizer; sizes
// for the compression ratio and edit distance count codepoints, so those
// two are tokenizer-independent.
struct FeatureVector {
    std::size_t src_sentence_len = 0;
    std::size_t out_sentence_len = 0;
    std::size_t src_syllables = 0;
    std::size_t out_syllables = 0;
    std::size_t n_splits = 0;  // output sentences minus source sentences, floored at 0
    double compression_ratio = 0.0;
    bool exact_copy = false;
    double levenshtein_sim = 0.0;
    std::optional<double> embedding_cosine;
};

FeatureVector compute_features(const std::string& source, const std::string& output,
                               const EvalConfig& config,
                               EmbeddingProvider* provider = nullptr);

struct FeatureMeans {
    double src_sentence_len = 0.0;
    double out_sentence_len = 0.0;
    double src_syllables = 0.0;
    double out_syllables = 0.0;
    double n_splits = 0.0;
    double compression_ratio = 0.0;
    double exact_copy_rate = 0.0;
    double levenshtein_sim = 0.0;
    std::optional<double> embedding_cosine;
};

FeatureMeans aggregate_features(const std::vector<FeatureVector>& features);

// Edit-distance similarity over codepoints: 1 - dist/max(len); 1.0 for two
// empty strings.
double levenshtein_similarity(const std::string& a, const std::string& b);

} // namespace simeval
