#include "simeval/features.hpp"

#include <algorithm>

#include "simeval/errors.hpp"
#include "simeval/segment.hpp"
#include "simeval/unicode.hpp"

namespace simeval {

double levenshtein_similarity(const std::string& a, const std::string& b) {
    auto ca = uni::decode_utf8(a);
    auto cb = uni::decode_utf8(b);
    if (ca.empty() && cb.empty()) return 1.0;

    std::vector<std::size_t> prev(cb.size() + 1), curr(cb.size() + 1);
    for (std::size_t j = 0; j <= cb.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= ca.size(); ++i) {
        curr[0] = i;
        for (std::size_t j = 1; j <= cb.size(); ++j) {
            std::size_t sub = prev[j - 1] + (ca[i - 1] == cb[j - 1] ? 0 : 1);
            curr[j] = std::min({prev[j] + 1, curr[j - 1] + 1, sub});
        }
        std::swap(prev, curr);
    }
    double dist = static_cast<double>(prev[cb.size()]);
    return 1.0 - dist / static_cast<double>(std::max(ca.size(), cb.size()));
}

FeatureVector compute_features(const std::string& source, const std::string& output,
                               const EvalConfig& config, EmbeddingProvider* provider) {
    std::size_t src_chars = uni::decode_utf8(source).size();
    if (src_chars == 0) throw ValidationError("compute_features: empty source");
    std::size_t out_chars = uni::decode_utf8(output).size();

    const auto& abbreviations = AbbreviationSet::builtin(config.language);
    FeatureVector f;

    auto count_side = [&](const std::string& text, std::size_t& words, std::size_t& syllables) {
        auto seq = tokenize(text, config.tokenizer, config.language, abbreviations);
        for (const auto& token : seq.tokens) {
            if (!is_word_token(token)) continue;
            ++words;
            syllables += count_syllables(token, config.language);
        }
    };
    count_side(source, f.src_sentence_len, f.src_syllables);
    count_side(output, f.out_sentence_len, f.out_syllables);

    std::size_t src_sents = split_sentences(source, config.language, abbreviations).size();
    std::size_t out_sents = split_sentences(output, config.language, abbreviations).size();
    f.n_splits = out_sents > src_sents ? out_sents - src_sents : 0;

    f.compression_ratio = static_cast<double>(out_chars) / static_cast<double>(src_chars);
    f.exact_copy = source == output;
    f.levenshtein_sim = f.exact_copy ? 1.0 : levenshtein_similarity(source, output);

    if (provider != nullptr) {
        TokenEmbeddings src_emb = provider->embed(source);
        TokenEmbeddings out_emb = provider->embed(output);
        validate_embeddings(src_emb);
        validate_embeddings(out_emb);
        f.embedding_cosine = mean_vector_cosine(src_emb, out_emb);
    }
    return f;
}

FeatureMeans aggregate_features(const std::vector<FeatureVector>& features) {
    if (features.empty()) throw ValidationError("aggregate_features: empty list");
    FeatureMeans m;
    double cosine_sum = 0.0;
    std::size_t cosine_count = 0;
    for (const auto& f : features) {
        m.src_sentence_len += static_cast<double>(f.src_sentence_len);
        m.out_sentence_len += static_cast<double>(f.out_sentence_len);
        m.src_syllables += static_cast<double>(f.src_syllables);
        m.out_syllables += static_cast<double>(f.out_syllables);
        m.n_splits += static_cast<double>(f.n_splits);
        m.compression_ratio += f.compression_ratio;
        m.exact_copy_rate += f.exact_copy ? 1.0 : 0.0;
        m.levenshtein_sim += f.levenshtein_sim;
        if (f.embedding_cosine) {
            cosine_sum += *f.embedding_cosine;
            ++cosine_count;
        }
    }
    auto n = static_cast<double>(features.size());
    m.src_sentence_len /= n;
    m.out_sentence_len /= n;
    m.src_syllables /= n;
    m.out_syllables /= n;
    m.n_splits /= n;
    m.compression_ratio /= n;
    m.exact_copy_rate /= n;
    m.levenshtein_sim /= n;
    if (cosine_count > 0) m.embedding_cosine = cosine_sum / static_cast<double>(cosine_count);
    return m;
}

} // namespace simeval
