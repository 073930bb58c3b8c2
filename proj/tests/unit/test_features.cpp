#include <doctest.h>

#include <string>
#include <vector>

#include "simeval/embed_metrics.hpp"
#include "simeval/errors.hpp"
#include "simeval/features.hpp"

using namespace simeval;

namespace {

EvalConfig de_config() {
    EvalConfig config;
    config.language = "de";
    return config;
}

} // namespace

TEST_CASE("levenshtein similarity basics") {
    CHECK(levenshtein_similarity("", "") == 1.0);
    CHECK(levenshtein_similarity("abc", "abc") == 1.0);
    CHECK(levenshtein_similarity("abc", "") == 0.0);
    CHECK(levenshtein_similarity("", "abc") == 0.0);
    CHECK(levenshtein_similarity("kitten", "sitting") == doctest::Approx(1.0 - 3.0 / 7.0));
    // symmetric
    CHECK(levenshtein_similarity("Haus", "Maus") == levenshtein_similarity("Maus", "Haus"));
    // counts codepoints, not bytes
    CHECK(levenshtein_similarity("über", "ober") == doctest::Approx(1.0 - 1.0 / 4.0));
    CHECK(levenshtein_similarity("äö", "äx") == doctest::Approx(0.5));
}

TEST_CASE("levenshtein similarity stays in range") {
    std::vector<std::string> samples = {"", "a", "ab", "abc", "xyz", "Straße", "中"};
    for (const auto& a : samples) {
        for (const auto& b : samples) {
            double sim = levenshtein_similarity(a, b);
            CHECK(sim >= 0.0);
            CHECK(sim <= 1.0);
            CHECK(sim == levenshtein_similarity(b, a));
        }
    }
}

TEST_CASE("identity pair features") {
    std::string text = "Der Hund läuft schnell.";
    auto f = compute_features(text, text, de_config());
    CHECK(f.exact_copy);
    CHECK(f.n_splits == 0);
    CHECK(f.compression_ratio == 1.0);
    CHECK(f.levenshtein_sim == 1.0);
    CHECK(f.src_sentence_len == 4);
    CHECK(f.out_sentence_len == 4);
    CHECK(f.src_syllables == f.out_syllables);
    CHECK(!f.embedding_cosine.has_value());
}

TEST_CASE("sentence split counting") {
    auto f = compute_features("Er kam und sie ging.", "Er kam. Sie ging.", de_config());
    CHECK(f.n_splits == 1);
    CHECK(f.src_sentence_len == 5);
    CHECK(f.out_sentence_len == 4);
    CHECK(!f.exact_copy);

    // merging sentences floors at zero
    auto merged = compute_features("Er kam. Sie ging.", "Er kam und sie ging.", de_config());
    CHECK(merged.n_splits == 0);
}

TEST_CASE("compression ratio counts codepoints") {
    // 20 codepoints down to 10 (including the umlaut)
    std::string source = "abcdefghij mnopqrsäü";
    std::string output = "abcdefghij";
    auto f = compute_features(source, output, de_config());
    CHECK(f.compression_ratio == doctest::Approx(0.5));

    auto longer = compute_features("ab", "abcd", de_config());
    CHECK(longer.compression_ratio == doctest::Approx(2.0));
}

TEST_CASE("empty source is rejected, empty output is not") {
    CHECK_THROWS_AS(compute_features("", "etwas", de_config()), ValidationError);
    auto f = compute_features("etwas", "", de_config());
    CHECK(f.compression_ratio == 0.0);
    CHECK(f.out_sentence_len == 0);
    CHECK(f.levenshtein_sim == 0.0);
    CHECK(!f.exact_copy);
}

TEST_CASE("embedding cosine appears only with a provider") {
    auto provider = make_stub_provider(5);
    std::string source = "Der Hund läuft.";
    auto same = compute_features(source, source, de_config(), provider.get());
    REQUIRE(same.embedding_cosine.has_value());
    CHECK(*same.embedding_cosine == 1.0);

    auto other = compute_features(source, "Die Katze schläft.", de_config(), provider.get());
    REQUIRE(other.embedding_cosine.has_value());
    CHECK(*other.embedding_cosine >= -1.0);
    CHECK(*other.embedding_cosine <= 1.0);
    CHECK(*other.embedding_cosine < 1.0);
}

TEST_CASE("feature aggregation") {
    FeatureVector a;
    a.src_sentence_len = 4;
    a.out_sentence_len = 2;
    a.src_syllables = 6;
    a.out_syllables = 3;
    a.n_splits = 1;
    a.compression_ratio = 0.5;
    a.exact_copy = false;
    a.levenshtein_sim = 0.25;
    a.embedding_cosine = 0.5;

    FeatureVector b;
    b.src_sentence_len = 6;
    b.out_sentence_len = 6;
    b.src_syllables = 10;
    b.out_syllables = 9;
    b.n_splits = 0;
    b.compression_ratio = 1.5;
    b.exact_copy = true;
    b.levenshtein_sim = 1.0;
    b.embedding_cosine = 1.0;

    auto means = aggregate_features({a, b});
    CHECK(means.src_sentence_len == doctest::Approx(5.0));
    CHECK(means.out_sentence_len == doctest::Approx(4.0));
    CHECK(means.src_syllables == doctest::Approx(8.0));
    CHECK(means.out_syllables == doctest::Approx(6.0));
    CHECK(means.n_splits == doctest::Approx(0.5));
    CHECK(means.compression_ratio == doctest::Approx(1.0));
    CHECK(means.exact_copy_rate == doctest::Approx(0.5));
    CHECK(means.levenshtein_sim == doctest::Approx(0.625));
    REQUIRE(means.embedding_cosine.has_value());
    CHECK(*means.embedding_cosine == doctest::Approx(0.75));

    // permutation invariance
    auto swapped = aggregate_features({b, a});
    CHECK(means.compression_ratio == doctest::Approx(swapped.compression_ratio));
    CHECK(means.exact_copy_rate == doctest::Approx(swapped.exact_copy_rate));

    // a single vector aggregates to itself
    auto single = aggregate_features({b});
    CHECK(single.compression_ratio == doctest::Approx(1.5));
    CHECK(single.exact_copy_rate == doctest::Approx(1.0));

    // the cosine mean skips vectors without one
    FeatureVector c = a;
    c.embedding_cosine.reset();
    auto partial = aggregate_features({a, c});
    REQUIRE(partial.embedding_cosine.has_value());
    CHECK(*partial.embedding_cosine == doctest::Approx(0.5));

    auto none = aggregate_features({c});
    CHECK(!none.embedding_cosine.has_value());

    CHECK_THROWS_AS(aggregate_features({}), ValidationError);
}

TEST_CASE("features ignore references by construction") {
    // tokenizer choice changes word counts but never consults references
    EvalConfig config = de_config();
    config.tokenizer = TokenizerScheme::none;
    auto f = compute_features("Der Hund läuft schnell.", "Der Hund.", config);
    CHECK(f.src_sentence_len == 4);  // "schnell." counts as one whitespace token
    CHECK(f.out_sentence_len == 2);
}
