// simeval: sentence-simplification evaluation from the command line.
//
// Subcommands:
//   evaluate      score system outputs (and identity baselines) on a test set
//   corpus-stats  readability/length statistics for both sides of a test set
//   fingerprint   print the canonical settings fingerprint for a configuration
//
// Exit codes: 0 success, 2 input/validation error, 3 provider/network error.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <memory>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "simeval/config.hpp"
#include "simeval/corpus.hpp"
#include "simeval/embed_metrics.hpp"
#include "simeval/errors.hpp"
#include "simeval/remote_provider.hpp"
#include "simeval/report.hpp"

namespace {

constexpr int kExitInputError = 2;
constexpr int kExitProviderError = 3;

struct EmbeddingSpec {
    enum class Kind { none, stub, file, http } kind = Kind::none;
    std::uint64_t seed = 0;
    std::string path;
    std::string endpoint;
    std::string model;
};

EmbeddingSpec parse_embedding_spec(const std::string& spec) {
    EmbeddingSpec parsed;
    if (spec.empty()) return parsed;
    if (spec.rfind("stub:", 0) == 0) {
        parsed.kind = EmbeddingSpec::Kind::stub;
        const std::string seed_text = spec.substr(5);
        try {
            std::size_t used = 0;
            parsed.seed = std::stoull(seed_text, &used);
            if (used != seed_text.size() || seed_text.empty()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw simeval::ValidationError("--emb stub:SEED needs an unsigned integer seed, got '" +
                                           seed_text + "'");
        }
        return parsed;
    }
    if (spec.rfind("file:", 0) == 0) {
        parsed.kind = EmbeddingSpec::Kind::file;
        parsed.path = spec.substr(5);
        if (parsed.path.empty()) throw simeval::ValidationError("--emb file:PATH needs a path");
        return parsed;
    }
    if (spec.rfind("http:", 0) == 0 || spec.rfind("https:", 0) == 0) {
        parsed.kind = EmbeddingSpec::Kind::http;
        auto hash = spec.rfind('#');
        if (hash == std::string::npos || hash + 1 == spec.size())
            throw simeval::ValidationError(
                "--emb http:URL#MODEL needs a model id after '#', got '" + spec + "'");
        parsed.endpoint = spec.substr(0, hash);
        parsed.model = spec.substr(hash + 1);
        return parsed;
    }
    throw simeval::ValidationError("unrecognized --emb value '" + spec +
                                   "' (expected stub:SEED, file:PATH or http:URL#MODEL)");
}

std::unique_ptr<simeval::EmbeddingProvider> make_provider(const EmbeddingSpec& spec) {
    switch (spec.kind) {
        case EmbeddingSpec::Kind::none: return nullptr;
        case EmbeddingSpec::Kind::stub: return simeval::make_stub_provider(spec.seed);
        case EmbeddingSpec::Kind::file: return simeval::make_file_provider(spec.path);
        case EmbeddingSpec::Kind::http:
            return simeval::make_remote_provider(spec.endpoint, spec.model);
    }
    return nullptr;
}

simeval::EvalConfig build_config(const std::string& lang, const std::string& tokenizer,
                                 bool lowercase, const std::string& readability,
                                 const std::string& embedding_model_id) {
    std::map<std::string, std::string> raw;
    raw["language"] = lang;
    raw["tokenizer"] = tokenizer;
    raw["lowercase"] = lowercase ? "true" : "false";
    raw["readability_variant"] = readability;
    raw["embedding_model_id"] = embedding_model_id;
    return simeval::validate_config(raw);
}

void write_output(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw simeval::DataError("cannot open output file: " + path);
    out << content;
    if (!out) throw simeval::DataError("failed writing output file: " + path);
}

std::string digest_hex(std::uint64_t digest) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(digest));
    return buf;
}

int run_evaluate(const std::string& manifest_path, const std::string& test_set_name,
                 const std::string& split, const std::vector<std::string>& sys_files,
                 const std::string& lang, const std::string& tokenizer, bool lowercase,
                 const std::string& readability, const std::string& emb_spec_text,
                 bool baselines, bool per_segment, const std::string& format_name,
                 const std::string& out_path) {
    if (sys_files.empty() && !baselines)
        throw simeval::ValidationError("nothing to evaluate: pass --sys FILE and/or --baselines");

    EmbeddingSpec emb_spec = parse_embedding_spec(emb_spec_text);
    auto provider = make_provider(emb_spec);
    simeval::EvalConfig config =
        build_config(lang, tokenizer, lowercase, readability,
                     provider ? provider->model_id() : std::string());
    simeval::ReportFormat format = simeval::report_format_from_string(format_name);

    simeval::TestSet test_set = simeval::load_test_set(manifest_path, test_set_name, split);

    simeval::EvaluateOptions options;
    options.per_segment = per_segment;

    std::vector<simeval::MetricReport> reports;
    if (baselines) {
        auto [src2src, tgt2tgt] =
            simeval::identity_baselines(test_set, config, provider.get(), options);
        reports.push_back(std::move(src2src));
        reports.push_back(std::move(tgt2tgt));
    }
    for (const auto& sys_file : sys_files) {
        simeval::SystemOutput output = simeval::load_system_output(sys_file, test_set);
        reports.push_back(
            simeval::evaluate_system(test_set, output, config, provider.get(), options));
    }

    write_output(out_path, simeval::render_report(reports, format));

    for (const auto& report : reports) {
        if (report.provider_failed) {
            std::cerr << "simeval: embedding provider failed during evaluation; "
                         "embedding metrics are marked absent in the report\n";
            return kExitProviderError;
        }
    }
    return 0;
}

int run_corpus_stats(const std::string& manifest_path, const std::string& test_set_name,
                     const std::string& split, const std::string& lang,
                     const std::string& tokenizer, const std::string& readability,
                     const std::string& format_name, const std::string& out_path) {
    simeval::EvalConfig config = build_config(lang, tokenizer, false, readability, "");
    simeval::TestSet test_set = simeval::load_test_set(manifest_path, test_set_name, split);

    auto complex_side =
        simeval::corpus_stats(test_set, simeval::CorpusSide::complex_side, config);
    auto simple_side = simeval::corpus_stats(test_set, simeval::CorpusSide::simple_side, config);
    auto fingerprint = simeval::build_settings_fingerprint(config);

    std::string content;
    if (format_name == "json") {
        nlohmann::ordered_json doc;
        doc["test_set"] = test_set.name;
        doc["n_segments"] = test_set.n_segments();
        doc["settings"] = fingerprint.human_readable;
        doc["settings_digest"] = digest_hex(fingerprint.digest);
        const std::pair<const char*, const simeval::CorpusSideStats*> sides[] = {
            {"complex", &complex_side}, {"simple", &simple_side}};
        for (const auto& [side_name, side] : sides) {
            nlohmann::ordered_json s;
            s["fre"] = side->fre;
            s["avg_sentence_len"] = side->avg_sentence_len;
            s["avg_word_syllables"] = side->avg_word_syllables;
            s["n_sentences"] = side->stats.n_sentences;
            s["n_words"] = side->stats.n_words;
            doc[side_name] = std::move(s);
        }
        content = doc.dump(2) + "\n";
    } else if (format_name == "text") {
        char buf[256];
        std::string text = "Corpus statistics: " + test_set.name + " (" +
                           std::to_string(test_set.n_segments()) + " segments)\n" +
                           "settings: " + fingerprint.human_readable + "\n\n";
        text += "side     FRE      sent. len.  word len. (syllables)\n";
        text += "-------  -------  ----------  ---------------------\n";
        std::snprintf(buf, sizeof(buf), "complex  %7.2f  %10.2f  %21.2f\n", complex_side.fre,
                      complex_side.avg_sentence_len, complex_side.avg_word_syllables);
        text += buf;
        std::snprintf(buf, sizeof(buf), "simple   %7.2f  %10.2f  %21.2f\n", simple_side.fre,
                      simple_side.avg_sentence_len, simple_side.avg_word_syllables);
        text += buf;
        content = text;
    } else {
        throw simeval::ValidationError("corpus-stats supports --format text or json, got '" +
                                       format_name + "'");
    }
    write_output(out_path, content);
    return 0;
}

int run_fingerprint(const std::string& lang, const std::string& tokenizer, bool lowercase,
                    const std::string& readability, const std::string& emb_spec_text) {
    EmbeddingSpec emb_spec = parse_embedding_spec(emb_spec_text);
    std::string model_id;
    if (emb_spec.kind != EmbeddingSpec::Kind::none) {
        auto provider = make_provider(emb_spec);
        model_id = provider->model_id();
    }
    simeval::EvalConfig config = build_config(lang, tokenizer, lowercase, readability, model_id);
    auto fingerprint = simeval::build_settings_fingerprint(config);
    std::cout << fingerprint.human_readable << '\n'
              << "digest: " << digest_hex(fingerprint.digest) << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sentence-simplification evaluation toolkit"};
    app.require_subcommand(1);

    std::string manifest, test_set, split = "test", lang, tokenizer = "lang-rules";
    std::string readability = "auto", emb, format = "text", out = "-";
    std::vector<std::string> sys_files;
    bool lowercase = false, baselines = false, per_segment = false;

    auto add_config_flags = [&](CLI::App* cmd, bool with_emb) {
        cmd->add_option("--lang", lang, "ISO-639-1 language code, e.g. de")->required();
        cmd->add_option("--tokenizer", tokenizer, "none|13a|lang-rules");
        cmd->add_option("--readability", readability, "auto|force-en|force-de");
        if (with_emb) {
            cmd->add_flag("--lowercase", lowercase, "lowercase tokens before BLEU/SARI");
            cmd->add_option("--emb", emb, "stub:SEED | file:PATH | http:URL#MODEL");
        }
    };

    CLI::App* evaluate = app.add_subcommand("evaluate", "score system outputs on a test set");
    evaluate->add_option("--manifest", manifest, "test-set manifest JSON")->required();
    evaluate->add_option("--test-set", test_set, "test set name from the manifest")->required();
    evaluate->add_option("--split", split, "split name (default: test)");
    evaluate->add_option("--sys", sys_files, "system output file, one sentence per line");
    add_config_flags(evaluate, true);
    evaluate->add_flag("--baselines", baselines, "include identity src2src/tgt2tgt baselines");
    evaluate->add_flag("--per-segment", per_segment, "dump per-segment scores (json format)");
    evaluate->add_option("--format", format, "text|markdown|html|json");
    evaluate->add_option("--out", out, "output path ('-' for stdout)")->required();

    CLI::App* stats = app.add_subcommand("corpus-stats", "statistics for a test set");
    stats->add_option("--manifest", manifest, "test-set manifest JSON")->required();
    stats->add_option("--test-set", test_set, "test set name from the manifest")->required();
    stats->add_option("--split", split, "split name (default: test)");
    add_config_flags(stats, false);
    stats->add_option("--format", format, "text|json");
    stats->add_option("--out", out, "output path ('-' for stdout)");

    CLI::App* fingerprint = app.add_subcommand("fingerprint", "print the settings fingerprint");
    add_config_flags(fingerprint, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInputError;
    }

    try {
        if (app.got_subcommand(evaluate)) {
            return run_evaluate(manifest, test_set, split, sys_files, lang, tokenizer, lowercase,
                                readability, emb, baselines, per_segment, format, out);
        }
        if (app.got_subcommand(stats)) {
            return run_corpus_stats(manifest, test_set, split, lang, tokenizer, readability,
                                    format, out);
        }
        return run_fingerprint(lang, tokenizer, lowercase, readability, emb);
    } catch (const simeval::Error& e) {
        std::cerr << "simeval: " << e.what() << '\n';
        switch (e.kind()) {
            case simeval::Error::Kind::provider:
            case simeval::Error::Kind::protocol:
                return kExitProviderError;
            case simeval::Error::Kind::validation:
            case simeval::Error::Kind::data:
                return kExitInputError;
        }
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "simeval: " << e.what() << '\n';
        return kExitInputError;
    }
}
