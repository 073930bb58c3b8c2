#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "simeval/config.hpp"
#include "simeval/corpus.hpp"
#include "simeval/embed_metrics.hpp"
#include "simeval/features.hpp"
#include "simeval/ngram_metrics.hpp"
#include "simeval/readability.hpp"

namespace simeval {

enum class ReportFormat { text, markdown, html, json };

ReportFormat report_format_from_string(const std::string& name);
const char* to_string(ReportFormat format);

struct SegmentScores {
    std::size_t index = 0;
    double sari = 0.0;
    double bleu = 0.0;  // the segment scored as a one-segment corpus
    FeatureVector features;
};

// Everything known about one system on one test set. Optional metrics stay
// empty when their prerequisites were unavailable; the reason is in notes.
struct MetricReport {
    std::string system_name;
    std::string test_set_name;
    SettingsFingerprint fingerprint;
    std::size_t n_segments = 0;

    std::optional<double> bleu;
    std::optional<double> sari;
    std::optional<double> bs_precision;
    std::optional<double> bs_recall;
    std::optional<double> bs_f1;
    ReadabilityScores readability;
    FeatureMeans feature_means;

    std::vector<std::string> notes;
    bool provider_failed = false;
    std::vector<SegmentScores> segments;  // filled only when requested
};

struct EvaluateOptions {
    bool per_segment = false;
};

// Scores one system: BLEU and SARI on tokenized (optionally lowercased)
// text, embedding metrics on raw text, readability on the outputs, features
// per pair. Stored values keep full precision; rounding happens in the
// renderers only.
MetricReport evaluate_system(const TestSet& test_set, const SystemOutput& system_output,
                             const EvalConfig& config, EmbeddingProvider* provider = nullptr,
                             const EvaluateOptions& options = {});

// src2src scores the sources as if they were outputs; tgt2tgt scores
// reference 0. Sanity anchors: tgt2tgt BLEU is 100 on single-reference
// sets, src2src copies everything.
std::pair<MetricReport, MetricReport> identity_baselines(const TestSet& test_set,
                                                         const EvalConfig& config,
                                                         EmbeddingProvider* provider = nullptr,
                                                         const EvaluateOptions& options = {});

// Renders systems as rows and metrics as columns. All reports must share
// one test set and one settings fingerprint; mixing fingerprints is an
// error by design. Text, markdown and html round to 2 decimals; json keeps
// full precision and is the canonical machine-readable form.
std::string render_report(const std::vector<MetricReport>& reports, ReportFormat format);

} // namespace simeval
