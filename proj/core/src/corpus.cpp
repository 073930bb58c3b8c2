#include "simeval/corpus.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>

#include <nlohmann/json.hpp>

#include "simeval/errors.hpp"
#include "simeval/readability.hpp"

namespace simeval {

namespace {

TestSetMetadata parse_metadata(const nlohmann::json& entry) {
    TestSetMetadata meta;
    if (entry.contains("n_refs")) {
        auto n = entry.at("n_refs").get<std::int64_t>();
        if (n < 1) throw DataError("manifest: n_refs must be >= 1");
        meta.n_refs = static_cast<std::size_t>(n);
    }
    if (entry.contains("metadata")) {
        const auto& m = entry.at("metadata");
        if (m.contains("target_group")) meta.target_group = m.at("target_group").get<std::string>();
        if (m.contains("domain")) meta.domain = m.at("domain").get<std::string>();
        if (m.contains("pct_nm_alignments"))
            meta.pct_nm_alignments = m.at("pct_nm_alignments").get<double>();
    }
    return meta;
}

} // namespace

Manifest load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open manifest: " + path.string());
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw DataError("malformed manifest " + path.string() + ": " + e.what());
    }

    Manifest manifest;
    std::filesystem::path manifest_dir = path.has_parent_path() ? path.parent_path() : ".";
    try {
        std::filesystem::path base = manifest_dir;
        if (doc.contains("base_dir")) {
            std::filesystem::path declared = doc.at("base_dir").get<std::string>();
            base = declared.is_absolute() ? declared : manifest_dir / declared;
        }
        if (const char* env = std::getenv("SIMEVAL_DATA_DIR"); env != nullptr && *env != '\0')
            base = env;
        manifest.base_dir = base;

        for (const auto& [name, entry] : doc.at("test_sets").items()) {
            ManifestEntry parsed;
            std::filesystem::path dir = entry.at("dir").get<std::string>();
            parsed.dir = dir.is_absolute() ? dir : manifest.base_dir / dir;
            parsed.language = entry.at("language").get<std::string>();
            if (!is_known_language(parsed.language)) throw UnknownLanguageError(parsed.language);
            parsed.splits = entry.at("splits").get<std::vector<std::string>>();
            parsed.metadata = parse_metadata(entry);
            manifest.test_sets.emplace(name, std::move(parsed));
        }
    } catch (const nlohmann::json::exception& e) {
        throw DataError("malformed manifest " + path.string() + ": " + e.what());
    }
    return manifest;
}

std::vector<std::string> read_sentence_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open file: " + path.string());
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    std::vector<std::string> lines;
    std::size_t line_no = 1;
    std::size_t start = 0;
    auto take = [&](std::size_t end) {
        std::string_view line(content.data() + start, end - start);
        if (line.find('\r') != std::string_view::npos)
            throw DataError(path.string() + ":" + std::to_string(line_no) +
                            ": CR byte found (files must use LF line endings)");
        if (line.empty())
            throw DataError(path.string() + ":" + std::to_string(line_no) + ": empty line");
        lines.emplace_back(line);
        ++line_no;
    };
    for (std::size_t i = 0; i < content.size(); ++i) {
        if (content[i] == '\n') {
            take(i);
            start = i + 1;
        }
    }
    if (start < content.size()) take(content.size());  // final newline optional
    if (lines.empty()) throw DataError(path.string() + ": file has no sentences");
    return lines;
}

TestSet load_test_set(const Manifest& manifest, const std::string& name,
                      const std::string& split) {
    auto it = manifest.test_sets.find(name);
    if (it == manifest.test_sets.end())
        throw DataError("test set '" + name + "' not in manifest");
    const ManifestEntry& entry = it->second;
    if (std::find(entry.splits.begin(), entry.splits.end(), split) == entry.splits.end())
        throw DataError("test set '" + name + "' has no split '" + split + "'");

    TestSet set;
    set.name = name;
    set.language = entry.language;
    set.metadata = entry.metadata;

    const std::string stem = name + "." + split;
    std::filesystem::path orig_path = entry.dir / (stem + ".orig");
    set.sources = read_sentence_file(orig_path);
    const std::size_t n = set.sources.size();

    std::vector<std::vector<std::string>> ref_files;
    if (entry.metadata.n_refs == 1) {
        ref_files.push_back(read_sentence_file(entry.dir / (stem + ".simp")));
    } else {
        for (std::size_t k = 0; k < entry.metadata.n_refs; ++k)
            ref_files.push_back(
                read_sentence_file(entry.dir / (stem + ".simp." + std::to_string(k))));
    }
    for (std::size_t k = 0; k < ref_files.size(); ++k) {
        if (ref_files[k].size() != n) {
            std::string file = entry.metadata.n_refs == 1
                                   ? (entry.dir / (stem + ".simp")).string()
                                   : (entry.dir / (stem + ".simp." + std::to_string(k))).string();
            throw LineCountMismatchError(file, n, ref_files[k].size());
        }
    }

    set.references.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        set.references[i].reserve(ref_files.size());
        for (const auto& refs : ref_files) set.references[i].push_back(refs[i]);
    }
    return set;
}

TestSet load_test_set(const std::filesystem::path& manifest_path, const std::string& name,
                      const std::string& split) {
    return load_test_set(load_manifest(manifest_path), name, split);
}

SystemOutput load_system_output(const std::filesystem::path& path, const TestSet& test_set) {
    SystemOutput out;
    out.system_name = path.stem().string();
    out.test_set_name = test_set.name;
    out.outputs = read_sentence_file(path);
    if (out.outputs.size() != test_set.n_segments())
        throw LineCountMismatchError(path.string(), test_set.n_segments(), out.outputs.size());
    return out;
}

CorpusSideStats corpus_stats(const TestSet& test_set, CorpusSide side, const EvalConfig& config) {
    if (test_set.n_segments() == 0) throw DataError("empty test set: " + test_set.name);

    std::vector<std::string> lines;
    lines.reserve(test_set.n_segments());
    if (side == CorpusSide::complex_side) {
        lines = test_set.sources;
    } else {
        for (const auto& refs : test_set.references) lines.push_back(refs.front());
    }

    CorpusSideStats result;
    result.stats = text_stats(lines, config.language, config.tokenizer);
    result.avg_sentence_len = result.stats.avg_sentence_len;
    result.avg_word_syllables = result.stats.avg_word_syllables;
    result.fre = *readability_for(config, result.stats).fre;
    return result;
}

} // namespace simeval
