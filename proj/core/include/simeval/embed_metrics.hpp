#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace simeval {

// One embedded sentence: subword tokens with one fixed-dimension vector each.
// Vectors are float32 so stored files round-trip bit-exactly.
struct TokenEmbeddings {
    std::vector<std::string> tokens;
    std::vector<std::vector<float>> vectors;

    std::size_t dim() const { return vectors.empty() ? 0 : vectors[0].size(); }
};

// Throws ValidationError on token/vector count mismatch, ragged or empty
// dimensions, NaN/infinity components, or all-zero vectors (cosine undefined).
void validate_embeddings(const TokenEmbeddings& embeddings);

class EmbeddingProvider {
public:
    virtual ~EmbeddingProvider() = default;

    virtual std::string model_id() const = 0;
    // Deterministic: the same text must yield identical TokenEmbeddings.
    virtual TokenEmbeddings embed(const std::string& text) = 0;
    // Providers that tolerate concurrent embed calls may raise this; the
    // corpus scorers never exceed it.
    virtual std::size_t max_parallelism() const { return 1; }
};

struct MatchScores {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

// Greedy token matching: each candidate token takes its best cosine match
// among the reference tokens (precision side); recall is symmetric. No IDF
// weighting, no baseline rescaling.
MatchScores greedy_match(const TokenEmbeddings& candidate, const TokenEmbeddings& reference);

// Per segment the reference with the highest F1 wins; corpus values are the
// macro-averages of the winning triples. Operates on raw text.
MatchScores bertscore_corpus(const std::vector<std::string>& outputs,
                             const std::vector<std::vector<std::string>>& references,
                             EmbeddingProvider& provider);

// Cosine of the mean token vectors of two embedded sentences.
double mean_vector_cosine(const TokenEmbeddings& a, const TokenEmbeddings& b);

// Deterministic test double: character-3-gram "subwords" with seeded
// pseudo-random unit vectors of dimension 16.
std::unique_ptr<EmbeddingProvider> make_stub_provider(std::uint64_t seed);

// Serves precomputed embeddings from a JSON-lines file (one record per
// sentence). Unknown sentences are an error.
std::unique_ptr<EmbeddingProvider> make_file_provider(const std::filesystem::path& path);

// JSON-lines record I/O for the embedding file format.
void write_embedding_record(std::ostream& out, const std::string& text,
                            const std::string& model_id, const TokenEmbeddings& embeddings);

struct EmbeddingRecord {
    std::string text;
    std::string model_id;
    TokenEmbeddings embeddings;
};

std::vector<EmbeddingRecord> read_embedding_file(const std::filesystem::path& path);

} // namespace simeval
