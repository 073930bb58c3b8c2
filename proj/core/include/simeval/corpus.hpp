#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "simeval/config.hpp"
#include "simeval/segment.hpp"

namespace simeval {

struct TestSetMetadata {
    std::string target_group;
    std::string domain;
    std::size_t n_refs = 1;
    std::optional<double> pct_nm_alignments;
};

struct TestSet {
    std::string name;
    std::string language;
    TestSetMetadata metadata;
    std::vector<std::string> sources;
    std::vector<std::vector<std::string>> references;  // one list per segment

    std::size_t n_segments() const { return sources.size(); }
};

struct SystemOutput {
    std::string system_name;
    std::string test_set_name;
    std::vector<std::string> outputs;
};

struct ManifestEntry {
    std::filesystem::path dir;  // resolved against the manifest base directory
    std::string language;
    std::vector<std::string> splits;
    TestSetMetadata metadata;
};

struct Manifest {
    std::filesystem::path base_dir;
    std::map<std::string, ManifestEntry> test_sets;
};

// Manifest JSON: {"base_dir": str?, "test_sets": {name: {"dir": str,
// "language": str, "splits": [str], "n_refs": int, "metadata": {...}?}}}.
// A relative base_dir resolves against the manifest's own directory; the
// SIMEVAL_DATA_DIR environment variable overrides base_dir entirely.
Manifest load_manifest(const std::filesystem::path& path);

// One sentence per line, UTF-8, LF endings, final newline optional. Empty
// lines and CR bytes are data errors (reported with a line number).
std::vector<std::string> read_sentence_file(const std::filesystem::path& path);

// Loads <dir>/<name>.<split>.orig plus <name>.<split>.simp (one reference)
// or <name>.<split>.simp.0 .. .simp.K-1 (K references), validating aligned
// line counts.
TestSet load_test_set(const Manifest& manifest, const std::string& name,
                      const std::string& split);
TestSet load_test_set(const std::filesystem::path& manifest_path, const std::string& name,
                      const std::string& split);

// Reads a system's output file and checks it lines up with the test set.
SystemOutput load_system_output(const std::filesystem::path& path, const TestSet& test_set);

enum class CorpusSide { complex_side, simple_side };

struct CorpusSideStats {
    double fre = 0.0;
    double avg_sentence_len = 0.0;
    double avg_word_syllables = 0.0;
    TextStats stats;
};

// Pooled text statistics for one side of a test set. The simple side of a
// multi-reference set uses reference 0.
CorpusSideStats corpus_stats(const TestSet& test_set, CorpusSide side, const EvalConfig& config);

} // namespace simeval
