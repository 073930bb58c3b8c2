#include "simeval/embed_metrics.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "simeval/config.hpp"
#include "simeval/errors.hpp"
#include "simeval/unicode.hpp"

namespace simeval {

void validate_embeddings(const TokenEmbeddings& embeddings) {
    if (embeddings.tokens.size() != embeddings.vectors.size())
        throw ValidationError("token/vector count mismatch: " +
                              std::to_string(embeddings.tokens.size()) + " tokens vs " +
                              std::to_string(embeddings.vectors.size()) + " vectors");
    std::size_t dim = embeddings.dim();
    if (!embeddings.vectors.empty() && dim == 0)
        throw ValidationError("embedding vectors must have dimension >= 1");
    for (const auto& vec : embeddings.vectors) {
        if (vec.size() != dim)
            throw ValidationError("ragged embedding dimensions: " + std::to_string(vec.size()) +
                                  " vs " + std::to_string(dim));
        bool all_zero = true;
        for (float component : vec) {
            if (!std::isfinite(component))
                throw ValidationError("non-finite embedding component");
            if (component != 0.0f) all_zero = false;
        }
        if (all_zero) throw ValidationError("zero embedding vector (cosine undefined)");
    }
}

namespace {

double cosine(const std::vector<float>& a, const std::vector<float>& b) {
    if (a == b) return 1.0;
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += static_cast<double>(a[i]) * static_cast<double>(b[i]);
        na += static_cast<double>(a[i]) * static_cast<double>(a[i]);
        nb += static_cast<double>(b[i]) * static_cast<double>(b[i]);
    }
    double c = dot / (std::sqrt(na) * std::sqrt(nb));
    if (c > 1.0) c = 1.0;
    if (c < -1.0) c = -1.0;
    return c;
}

double directed_score(const TokenEmbeddings& from, const TokenEmbeddings& to) {
    double sum = 0.0;
    for (const auto& vec : from.vectors) {
        double best = -1.0;
        for (const auto& other : to.vectors) {
            double c = cosine(vec, other);
            if (c > best) best = c;
        }
        sum += best;
    }
    return sum / static_cast<double>(from.vectors.size());
}

double f1_of(double precision, double recall) {
    if (precision + recall == 0.0) return 0.0;
    return 2.0 * precision * recall / (precision + recall);
}

} // namespace

MatchScores greedy_match(const TokenEmbeddings& candidate, const TokenEmbeddings& reference) {
    if (candidate.vectors.empty() || reference.vectors.empty())
        throw ValidationError("greedy_match: empty token list");
    if (candidate.dim() != reference.dim())
        throw ValidationError("greedy_match: dimension mismatch (" +
                              std::to_string(candidate.dim()) + " vs " +
                              std::to_string(reference.dim()) + ")");
    MatchScores scores;
    scores.precision = directed_score(candidate, reference);
    scores.recall = directed_score(reference, candidate);
    scores.f1 = f1_of(scores.precision, scores.recall);
    return scores;
}

MatchScores bertscore_corpus(const std::vector<std::string>& outputs,
                             const std::vector<std::vector<std::string>>& references,
                             EmbeddingProvider& provider) {
    if (outputs.empty()) throw ValidationError("bertscore_corpus: empty corpus");
    if (outputs.size() != references.size())
        throw ValidationError("bertscore_corpus: outputs and references are not aligned");

    auto embed_checked = [&provider](const std::string& text, std::size_t segment) {
        try {
            TokenEmbeddings e = provider.embed(text);
            validate_embeddings(e);
            return e;
        } catch (const Error& e) {
            throw Error(e.kind(), "segment " + std::to_string(segment) + ": " + e.what());
        }
    };

    MatchScores sums;
    for (std::size_t seg = 0; seg < outputs.size(); ++seg) {
        if (references[seg].empty())
            throw ValidationError("bertscore_corpus: segment " + std::to_string(seg) +
                                  " has no references");
        TokenEmbeddings out = embed_checked(outputs[seg], seg);
        MatchScores best;
        bool first = true;
        for (const auto& ref_text : references[seg]) {
            TokenEmbeddings ref = embed_checked(ref_text, seg);
            MatchScores s = greedy_match(out, ref);
            if (first || s.f1 > best.f1) {
                best = s;
                first = false;
            }
        }
        sums.precision += best.precision;
        sums.recall += best.recall;
        sums.f1 += best.f1;
    }
    auto n = static_cast<double>(outputs.size());
    return {sums.precision / n, sums.recall / n, sums.f1 / n};
}

double mean_vector_cosine(const TokenEmbeddings& a, const TokenEmbeddings& b) {
    if (a.vectors.empty() || b.vectors.empty())
        throw ValidationError("mean_vector_cosine: empty token list");
    if (a.dim() != b.dim()) throw ValidationError("mean_vector_cosine: dimension mismatch");
    auto mean = [](const TokenEmbeddings& e) {
        std::vector<float> m(e.dim(), 0.0f);
        std::vector<double> acc(e.dim(), 0.0);
        for (const auto& vec : e.vectors)
            for (std::size_t i = 0; i < vec.size(); ++i) acc[i] += vec[i];
        for (std::size_t i = 0; i < m.size(); ++i)
            m[i] = static_cast<float>(acc[i] / static_cast<double>(e.vectors.size()));
        return m;
    };
    return cosine(mean(a), mean(b));
}

// --- stub provider -----------------------------------------------------------

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

class StubProvider final : public EmbeddingProvider {
public:
    explicit StubProvider(std::uint64_t seed) : seed_(seed) {}

    std::string model_id() const override { return "stub:" + std::to_string(seed_); }

    TokenEmbeddings embed(const std::string& text) override {
        TokenEmbeddings out;
        auto cps = uni::decode_utf8(text);
        if (cps.size() < 3) {
            out.tokens.push_back(text);
        } else {
            for (std::size_t i = 0; i + 3 <= cps.size(); ++i) {
                std::string tok;
                for (std::size_t k = 0; k < 3; ++k) uni::append_utf8(tok, cps[i + k]);
                out.tokens.push_back(std::move(tok));
            }
        }
        out.vectors.reserve(out.tokens.size());
        for (const auto& tok : out.tokens) out.vectors.push_back(token_vector(tok));
        return out;
    }

private:
    static constexpr std::size_t kDim = 16;

    std::vector<float> token_vector(const std::string& token) const {
        std::uint64_t state = fnv1a64(token) ^ (seed_ * 0x9E3779B97F4A7C15ull + 0x2545F4914F6CDD1Dull);
        std::vector<double> v(kDim);
        double norm_sq = 0.0;
        for (auto& component : v) {
            // top 53 bits -> [0,1) -> [-1,1)
            double u = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
            component = 2.0 * u - 1.0;
            norm_sq += component * component;
        }
        std::vector<float> out(kDim);
        if (norm_sq == 0.0) {
            out[0] = 1.0f;
            return out;
        }
        double norm = std::sqrt(norm_sq);
        for (std::size_t i = 0; i < kDim; ++i) out[i] = static_cast<float>(v[i] / norm);
        return out;
    }

    std::uint64_t seed_;
};

} // namespace

std::unique_ptr<EmbeddingProvider> make_stub_provider(std::uint64_t seed) {
    return std::make_unique<StubProvider>(seed);
}

// --- embedding file format ---------------------------------------------------

void write_embedding_record(std::ostream& out, const std::string& text,
                            const std::string& model_id, const TokenEmbeddings& embeddings) {
    validate_embeddings(embeddings);
    nlohmann::ordered_json record;
    record["text"] = text;
    record["model_id"] = model_id;
    record["tokens"] = embeddings.tokens;
    auto vectors = nlohmann::ordered_json::array();
    for (const auto& vec : embeddings.vectors) {
        auto row = nlohmann::ordered_json::array();
        // Widen each float to its exact double so the serializer's
        // shortest-round-trip output reads back to the identical float.
        for (float component : vec) row.push_back(static_cast<double>(component));
        vectors.push_back(std::move(row));
    }
    record["vectors"] = std::move(vectors);
    out << record.dump() << '\n';
}

std::vector<EmbeddingRecord> read_embedding_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open embedding file: " + path.string());
    std::vector<EmbeddingRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        nlohmann::json parsed;
        try {
            parsed = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw DataError(path.string() + ":" + std::to_string(line_no) +
                            ": malformed embedding record: " + e.what());
        }
        EmbeddingRecord record;
        try {
            record.text = parsed.at("text").get<std::string>();
            record.model_id = parsed.at("model_id").get<std::string>();
            record.embeddings.tokens = parsed.at("tokens").get<std::vector<std::string>>();
            for (const auto& row : parsed.at("vectors")) {
                std::vector<float> vec;
                vec.reserve(row.size());
                for (const auto& component : row)
                    vec.push_back(static_cast<float>(component.get<double>()));
                record.embeddings.vectors.push_back(std::move(vec));
            }
        } catch (const nlohmann::json::exception& e) {
            throw DataError(path.string() + ":" + std::to_string(line_no) +
                            ": malformed embedding record: " + e.what());
        }
        try {
            validate_embeddings(record.embeddings);
        } catch (const Error& e) {
            throw DataError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
        records.push_back(std::move(record));
    }
    return records;
}

// --- file provider -----------------------------------------------------------

namespace {

class FileProvider final : public EmbeddingProvider {
public:
    explicit FileProvider(const std::filesystem::path& path) {
        auto records = read_embedding_file(path);
        if (records.empty()) throw DataError("embedding file has no records: " + path.string());
        model_id_ = records[0].model_id;
        for (auto& record : records) {
            if (record.model_id != model_id_)
                throw DataError("embedding file mixes model ids ('" + model_id_ + "' vs '" +
                                record.model_id + "'): " + path.string());
            by_text_[record.text] = std::move(record.embeddings);
        }
    }

    std::string model_id() const override { return model_id_; }

    TokenEmbeddings embed(const std::string& text) override {
        auto it = by_text_.find(text);
        if (it == by_text_.end()) throw UnknownSentenceError(text);
        return it->second;
    }

private:
    std::string model_id_;
    std::unordered_map<std::string, TokenEmbeddings> by_text_;
};

} // namespace

std::unique_ptr<EmbeddingProvider> make_file_provider(const std::filesystem::path& path) {
    return std::make_unique<FileProvider>(path);
}

} // namespace simeval
