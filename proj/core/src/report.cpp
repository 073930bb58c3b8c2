#include "simeval/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

#include "simeval/errors.hpp"

namespace simeval {

ReportFormat report_format_from_string(const std::string& name) {
    if (name == "text") return ReportFormat::text;
    if (name == "markdown") return ReportFormat::markdown;
    if (name == "html") return ReportFormat::html;
    if (name == "json") return ReportFormat::json;
    throw ValidationError("unknown report format: '" + name +
                          "' (expected text|markdown|html|json)");
}

const char* to_string(ReportFormat format) {
    switch (format) {
        case ReportFormat::text: return "text";
        case ReportFormat::markdown: return "markdown";
        case ReportFormat::html: return "html";
        case ReportFormat::json: return "json";
    }
    return "?";
}

MetricReport evaluate_system(const TestSet& test_set, const SystemOutput& system_output,
                             const EvalConfig& config, EmbeddingProvider* provider,
                             const EvaluateOptions& options) {
    if (system_output.outputs.size() != test_set.n_segments())
        throw ValidationError("system '" + system_output.system_name + "' has " +
                              std::to_string(system_output.outputs.size()) +
                              " outputs but test set '" + test_set.name + "' has " +
                              std::to_string(test_set.n_segments()) + " segments");
    if (test_set.n_segments() == 0) throw ValidationError("empty test set: " + test_set.name);

    MetricReport report;
    report.system_name = system_output.system_name;
    report.test_set_name = test_set.name;
    report.fingerprint = build_settings_fingerprint(config);
    report.n_segments = test_set.n_segments();

    const auto& abbreviations = AbbreviationSet::builtin(config.language);
    auto prepare = [&](const std::string& text) {
        TokenSeq seq = tokenize(text, config.tokenizer, config.language, abbreviations);
        return config.lowercase ? lowercase_tokens(seq) : seq;
    };

    std::vector<TokenSeq> sources_tok, outputs_tok;
    std::vector<std::vector<TokenSeq>> refs_tok;
    sources_tok.reserve(test_set.n_segments());
    outputs_tok.reserve(test_set.n_segments());
    refs_tok.reserve(test_set.n_segments());
    for (std::size_t i = 0; i < test_set.n_segments(); ++i) {
        sources_tok.push_back(prepare(test_set.sources[i]));
        outputs_tok.push_back(prepare(system_output.outputs[i]));
        std::vector<TokenSeq> refs;
        refs.reserve(test_set.references[i].size());
        for (const auto& ref : test_set.references[i]) refs.push_back(prepare(ref));
        refs_tok.push_back(std::move(refs));
    }

    report.bleu = corpus_bleu(outputs_tok, refs_tok);
    report.sari = corpus_sari(sources_tok, outputs_tok, refs_tok);

    // Embedding metrics see the raw text; word tokenization and the
    // lowercase flag must not move them.
    EmbeddingProvider* working_provider = provider;
    if (working_provider != nullptr) {
        try {
            MatchScores bs =
                bertscore_corpus(system_output.outputs, test_set.references, *working_provider);
            report.bs_precision = bs.precision;
            report.bs_recall = bs.recall;
            report.bs_f1 = bs.f1;
        } catch (const Error& e) {
            report.provider_failed = true;
            report.notes.push_back(std::string("embedding metrics unavailable: ") + e.what());
            working_provider = nullptr;
        }
    }

    try {
        TextStats out_stats = text_stats(system_output.outputs, config.language, config.tokenizer,
                                         abbreviations);
        report.readability = readability_for(config, out_stats);
    } catch (const Error& e) {
        report.notes.push_back(std::string("readability unavailable: ") + e.what());
    }

    std::vector<FeatureVector> features;
    features.reserve(test_set.n_segments());
    for (std::size_t i = 0; i < test_set.n_segments(); ++i) {
        try {
            features.push_back(compute_features(test_set.sources[i], system_output.outputs[i],
                                                config, working_provider));
        } catch (const Error& e) {
            if (working_provider == nullptr) throw;
            // Keep the cosine column all-or-nothing: drop it everywhere
            // once any pair fails to embed.
            report.provider_failed = true;
            report.notes.push_back(std::string("source-output cosine unavailable: ") + e.what());
            working_provider = nullptr;
            for (auto& f : features) f.embedding_cosine.reset();
            features.push_back(compute_features(test_set.sources[i], system_output.outputs[i],
                                                config, nullptr));
        }
    }
    report.feature_means = aggregate_features(features);

    if (options.per_segment) {
        report.segments.reserve(test_set.n_segments());
        for (std::size_t i = 0; i < test_set.n_segments(); ++i) {
            SegmentScores seg;
            seg.index = i;
            seg.sari = sentence_sari(sources_tok[i], outputs_tok[i], refs_tok[i]).sari;
            seg.bleu = corpus_bleu({outputs_tok[i]}, {refs_tok[i]});
            seg.features = features[i];
            report.segments.push_back(std::move(seg));
        }
    }
    return report;
}

std::pair<MetricReport, MetricReport> identity_baselines(const TestSet& test_set,
                                                         const EvalConfig& config,
                                                         EmbeddingProvider* provider,
                                                         const EvaluateOptions& options) {
    SystemOutput src2src;
    src2src.system_name = "identity-src2src";
    src2src.test_set_name = test_set.name;
    src2src.outputs = test_set.sources;

    SystemOutput tgt2tgt;
    tgt2tgt.system_name = "identity-tgt2tgt";
    tgt2tgt.test_set_name = test_set.name;
    tgt2tgt.outputs.reserve(test_set.n_segments());
    for (const auto& refs : test_set.references) tgt2tgt.outputs.push_back(refs.front());

    return {evaluate_system(test_set, src2src, config, provider, options),
            evaluate_system(test_set, tgt2tgt, config, provider, options)};
}

// --- rendering ---------------------------------------------------------------

namespace {

constexpr const char* kAbsentCell = "—";  // em dash: metric not computed

std::string fixed2(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", value);
    return buf;
}

std::string cell(const std::optional<double>& value) {
    return value ? fixed2(*value) : kAbsentCell;
}

std::string digest_hex(std::uint64_t digest) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(digest));
    return buf;
}

void check_renderable(const std::vector<MetricReport>& reports) {
    if (reports.empty()) throw ValidationError("render_report: no reports");
    const auto& first = reports.front();
    for (const auto& report : reports) {
        if (report.test_set_name != first.test_set_name)
            throw MixedSettingsError("cannot tabulate reports for different test sets: '" +
                                     first.test_set_name + "' vs '" + report.test_set_name + "'");
        if (!(report.fingerprint == first.fingerprint))
            throw MixedSettingsError(
                "cannot tabulate reports produced under different settings: [" +
                first.fingerprint.human_readable + "] vs [" +
                report.fingerprint.human_readable + "]");
    }
}

bool variant_is_en(const std::vector<MetricReport>& reports) {
    for (const auto& r : reports)
        if (r.readability.fre) return r.readability.variant_used == ReadabilityVariant::force_en;
    return false;
}

bool any_readability(const std::vector<MetricReport>& reports) {
    for (const auto& r : reports)
        if (r.readability.fre) return true;
    return false;
}

struct Column {
    std::string header;
    std::vector<std::string> cells;
};

std::vector<Column> metric_columns(const std::vector<MetricReport>& reports) {
    std::vector<Column> cols;
    auto add = [&](const std::string& header, auto getter) {
        Column c;
        c.header = header;
        for (const auto& r : reports) c.cells.push_back(getter(r));
        cols.push_back(std::move(c));
    };
    add("System", [](const MetricReport& r) { return r.system_name; });
    add("BLEU", [](const MetricReport& r) { return cell(r.bleu); });
    add("SARI", [](const MetricReport& r) { return cell(r.sari); });
    add("BS-P", [](const MetricReport& r) { return cell(r.bs_precision); });
    add("BS-R", [](const MetricReport& r) { return cell(r.bs_recall); });
    add("BS-F1", [](const MetricReport& r) { return cell(r.bs_f1); });
    if (any_readability(reports)) {
        add("FRE", [](const MetricReport& r) { return cell(r.readability.fre); });
        add("FRE band", [](const MetricReport& r) {
            return r.readability.fre ? r.readability.fre_category : std::string(kAbsentCell);
        });
        if (variant_is_en(reports)) {
            add("FKGL", [](const MetricReport& r) { return cell(r.readability.fkgl); });
        } else {
            add("WSTF1", [](const MetricReport& r) { return cell(r.readability.wstf1); });
            add("WSTF2", [](const MetricReport& r) { return cell(r.readability.wstf2); });
            add("WSTF3", [](const MetricReport& r) { return cell(r.readability.wstf3); });
            add("WSTF4", [](const MetricReport& r) { return cell(r.readability.wstf4); });
        }
    }
    return cols;
}

std::vector<Column> feature_columns(const std::vector<MetricReport>& reports) {
    std::vector<Column> cols;
    auto add = [&](const std::string& header, auto getter) {
        Column c;
        c.header = header;
        for (const auto& r : reports) c.cells.push_back(getter(r.feature_means));
        cols.push_back(std::move(c));
    };
    Column names;
    names.header = "System";
    for (const auto& r : reports) names.cells.push_back(r.system_name);
    cols.push_back(std::move(names));
    add("src len", [](const FeatureMeans& f) { return fixed2(f.src_sentence_len); });
    add("out len", [](const FeatureMeans& f) { return fixed2(f.out_sentence_len); });
    add("src syll", [](const FeatureMeans& f) { return fixed2(f.src_syllables); });
    add("out syll", [](const FeatureMeans& f) { return fixed2(f.out_syllables); });
    add("splits", [](const FeatureMeans& f) { return fixed2(f.n_splits); });
    add("compression", [](const FeatureMeans& f) { return fixed2(f.compression_ratio); });
    add("copy rate", [](const FeatureMeans& f) { return fixed2(f.exact_copy_rate); });
    add("lev sim", [](const FeatureMeans& f) { return fixed2(f.levenshtein_sim); });
    add("src-out cos", [](const FeatureMeans& f) { return cell(f.embedding_cosine); });
    return cols;
}

std::size_t display_width(const std::string& s) {
    // Good enough for our toolkit output: count codepoints, not bytes.
    std::size_t width = 0;
    for (unsigned char c : s)
        if ((c & 0xC0) != 0x80) ++width;
    return width;
}

void render_text_table(std::ostringstream& out, const std::vector<Column>& cols) {
    std::vector<std::size_t> widths;
    for (const auto& c : cols) {
        std::size_t w = display_width(c.header);
        for (const auto& cell_text : c.cells) w = std::max(w, display_width(cell_text));
        widths.push_back(w);
    }
    auto pad = [](const std::string& s, std::size_t w) {
        return s + std::string(w - display_width(s), ' ');
    };
    for (std::size_t i = 0; i < cols.size(); ++i)
        out << (i ? "  " : "") << pad(cols[i].header, widths[i]);
    out << '\n';
    for (std::size_t i = 0; i < cols.size(); ++i)
        out << (i ? "  " : "") << std::string(widths[i], '-');
    out << '\n';
    if (cols.empty()) return;
    for (std::size_t row = 0; row < cols[0].cells.size(); ++row) {
        for (std::size_t i = 0; i < cols.size(); ++i)
            out << (i ? "  " : "") << pad(cols[i].cells[row], widths[i]);
        out << '\n';
    }
}

void render_markdown_table(std::ostringstream& out, const std::vector<Column>& cols) {
    out << '|';
    for (const auto& c : cols) out << ' ' << c.header << " |";
    out << "\n|";
    for (std::size_t i = 0; i < cols.size(); ++i) out << "---|";
    out << '\n';
    if (cols.empty()) return;
    for (std::size_t row = 0; row < cols[0].cells.size(); ++row) {
        out << '|';
        for (const auto& c : cols) out << ' ' << c.cells[row] << " |";
        out << '\n';
    }
}

std::string html_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

void render_html_table(std::ostringstream& out, const std::vector<Column>& cols) {
    out << "<table>\n<thead><tr>";
    for (const auto& c : cols) out << "<th>" << html_escape(c.header) << "</th>";
    out << "</tr></thead>\n<tbody>\n";
    if (!cols.empty()) {
        for (std::size_t row = 0; row < cols[0].cells.size(); ++row) {
            out << "<tr>";
            for (const auto& c : cols) out << "<td>" << html_escape(c.cells[row]) << "</td>";
            out << "</tr>\n";
        }
    }
    out << "</tbody>\n</table>\n";
}

void append_notes_text(std::ostringstream& out, const std::vector<MetricReport>& reports,
                       const char* bullet) {
    bool any = false;
    for (const auto& r : reports)
        if (!r.notes.empty()) any = true;
    if (!any) return;
    out << "\nNotes:\n";
    for (const auto& r : reports)
        for (const auto& note : r.notes) out << bullet << r.system_name << ": " << note << '\n';
}

nlohmann::ordered_json json_optional(const std::optional<double>& value) {
    if (value) return *value;
    return nullptr;
}

nlohmann::ordered_json readability_json(const ReadabilityScores& scores) {
    nlohmann::ordered_json j;
    if (!scores.fre) {
        j["variant"] = nullptr;
        return j;
    }
    j["variant"] = to_string(scores.variant_used);
    j["fre"] = *scores.fre;
    j["fre_category"] = scores.fre_category;
    if (scores.variant_used == ReadabilityVariant::force_en) {
        j["fkgl"] = json_optional(scores.fkgl);
    } else {
        j["wstf1"] = json_optional(scores.wstf1);
        j["wstf2"] = json_optional(scores.wstf2);
        j["wstf3"] = json_optional(scores.wstf3);
        j["wstf4"] = json_optional(scores.wstf4);
    }
    return j;
}

nlohmann::ordered_json features_json(const FeatureVector& f) {
    nlohmann::ordered_json j;
    j["src_sentence_len"] = f.src_sentence_len;
    j["out_sentence_len"] = f.out_sentence_len;
    j["src_syllables"] = f.src_syllables;
    j["out_syllables"] = f.out_syllables;
    j["n_splits"] = f.n_splits;
    j["compression_ratio"] = f.compression_ratio;
    j["exact_copy"] = f.exact_copy;
    j["levenshtein_sim"] = f.levenshtein_sim;
    j["embedding_cosine"] = json_optional(f.embedding_cosine);
    return j;
}

nlohmann::ordered_json feature_means_json(const FeatureMeans& f) {
    nlohmann::ordered_json j;
    j["src_sentence_len"] = f.src_sentence_len;
    j["out_sentence_len"] = f.out_sentence_len;
    j["src_syllables"] = f.src_syllables;
    j["out_syllables"] = f.out_syllables;
    j["n_splits"] = f.n_splits;
    j["compression_ratio"] = f.compression_ratio;
    j["exact_copy_rate"] = f.exact_copy_rate;
    j["levenshtein_sim"] = f.levenshtein_sim;
    j["embedding_cosine"] = json_optional(f.embedding_cosine);
    return j;
}

std::string render_json(const std::vector<MetricReport>& reports) {
    nlohmann::ordered_json doc;
    doc["report_version"] = 1;
    doc["test_set"] = reports.front().test_set_name;
    doc["n_segments"] = reports.front().n_segments;
    doc["settings"] = reports.front().fingerprint.human_readable;
    doc["settings_digest"] = digest_hex(reports.front().fingerprint.digest);
    auto systems = nlohmann::ordered_json::array();
    for (const auto& r : reports) {
        nlohmann::ordered_json sys;
        sys["name"] = r.system_name;
        nlohmann::ordered_json metrics;
        metrics["bleu"] = json_optional(r.bleu);
        metrics["sari"] = json_optional(r.sari);
        metrics["bs_p"] = json_optional(r.bs_precision);
        metrics["bs_r"] = json_optional(r.bs_recall);
        metrics["bs_f1"] = json_optional(r.bs_f1);
        sys["metrics"] = std::move(metrics);
        sys["readability"] = readability_json(r.readability);
        sys["feature_means"] = feature_means_json(r.feature_means);
        sys["notes"] = r.notes;
        if (!r.segments.empty()) {
            auto segments = nlohmann::ordered_json::array();
            for (const auto& seg : r.segments) {
                nlohmann::ordered_json s;
                s["index"] = seg.index;
                s["sari"] = seg.sari;
                s["bleu"] = seg.bleu;
                s["features"] = features_json(seg.features);
                segments.push_back(std::move(s));
            }
            sys["segments"] = std::move(segments);
        }
        systems.push_back(std::move(sys));
    }
    doc["systems"] = std::move(systems);
    return doc.dump(2) + "\n";
}

std::string render_text(const std::vector<MetricReport>& reports) {
    std::ostringstream out;
    const auto& first = reports.front();
    out << "Evaluation report\n";
    out << "test set:  " << first.test_set_name << " (" << first.n_segments << " segments)\n";
    out << "settings:  " << first.fingerprint.human_readable << '\n';
    out << "digest:    " << digest_hex(first.fingerprint.digest) << "\n\n";
    render_text_table(out, metric_columns(reports));
    out << "\nFeatures (means over segments)\n";
    render_text_table(out, feature_columns(reports));
    append_notes_text(out, reports, "  - ");
    return out.str();
}

std::string render_markdown(const std::vector<MetricReport>& reports) {
    std::ostringstream out;
    const auto& first = reports.front();
    out << "# Evaluation report\n\n";
    out << "- test set: `" << first.test_set_name << "` (" << first.n_segments << " segments)\n";
    out << "- settings: `" << first.fingerprint.human_readable << "`\n";
    out << "- digest: `" << digest_hex(first.fingerprint.digest) << "`\n\n";
    out << "## Metrics\n\n";
    render_markdown_table(out, metric_columns(reports));
    out << "\n## Features (means over segments)\n\n";
    render_markdown_table(out, feature_columns(reports));
    append_notes_text(out, reports, "- ");
    return out.str();
}

std::string render_html(const std::vector<MetricReport>& reports) {
    std::ostringstream out;
    const auto& first = reports.front();
    out << "<!doctype html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n"
        << "<title>Evaluation report: " << html_escape(first.test_set_name) << "</title>\n"
        << "<style>body{font-family:sans-serif;margin:2em}table{border-collapse:collapse;"
           "margin:1em 0}th,td{border:1px solid #999;padding:0.3em 0.6em;text-align:left}"
           "code{background:#eee;padding:0 0.2em}</style>\n</head>\n<body>\n"
        << "<h1>Evaluation report</h1>\n<p>test set: <code>"
        << html_escape(first.test_set_name) << "</code> (" << first.n_segments
        << " segments)<br>\nsettings: <code>" << html_escape(first.fingerprint.human_readable)
        << "</code><br>\ndigest: <code>" << digest_hex(first.fingerprint.digest)
        << "</code></p>\n<h2>Metrics</h2>\n";
    render_html_table(out, metric_columns(reports));
    out << "<h2>Features (means over segments)</h2>\n";
    render_html_table(out, feature_columns(reports));
    bool any_notes = false;
    for (const auto& r : reports)
        if (!r.notes.empty()) any_notes = true;
    if (any_notes) {
        out << "<h2>Notes</h2>\n<ul>\n";
        for (const auto& r : reports)
            for (const auto& note : r.notes)
                out << "<li>" << html_escape(r.system_name) << ": " << html_escape(note)
                    << "</li>\n";
        out << "</ul>\n";
    }
    out << "</body>\n</html>\n";
    return out.str();
}

} // namespace

std::string render_report(const std::vector<MetricReport>& reports, ReportFormat format) {
    check_renderable(reports);
    switch (format) {
        case ReportFormat::text: return render_text(reports);
        case ReportFormat::markdown: return render_markdown(reports);
        case ReportFormat::html: return render_html(reports);
        case ReportFormat::json: return render_json(reports);
    }
    throw ValidationError("unknown report format");
}

} // namespace simeval
