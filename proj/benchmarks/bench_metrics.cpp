#include <benchmark/benchmark.h>

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "simeval/embed_metrics.hpp"
#include "simeval/ngram_metrics.hpp"
#include "simeval/segment.hpp"

namespace {

using namespace simeval;

// Synthetic German-looking corpus: fixed seed, mixed-length sentences with
// punctuation so every tokenizer has real work to do.
std::vector<std::string> make_corpus(std::size_t n_sentences, std::uint32_t seed) {
    static const char* words[] = {"Der",  "Hund",    "läuft", "schnell", "über", "die",
                                  "alte", "Brücke",  "und",   "bellt",   "laut", "weil",
                                  "ein",  "Vogel",   "auf",   "dem",     "Dach", "sitzt",
                                  "z.B.", "Energie", "1,5",   "Euro"};
    std::mt19937 rng(seed);
    std::uniform_int_distribution<std::size_t> word_pick(0, std::size(words) - 1);
    std::uniform_int_distribution<std::size_t> len_pick(6, 24);
    std::vector<std::string> corpus;
    corpus.reserve(n_sentences);
    for (std::size_t i = 0; i < n_sentences; ++i) {
        std::ostringstream line;
        std::size_t len = len_pick(rng);
        for (std::size_t w = 0; w < len; ++w) {
            if (w) line << ' ';
            line << words[word_pick(rng)];
            if (w == len / 2) line << ',';
        }
        line << '.';
        corpus.push_back(line.str());
    }
    return corpus;
}

void tokenize_corpus(benchmark::State& state, TokenizerScheme scheme) {
    auto corpus = make_corpus(200, 7);
    for (auto _ : state) {
        for (const auto& line : corpus)
            benchmark::DoNotOptimize(tokenize(line, scheme, "de"));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * corpus.size()));
}

void bm_tokenize_none(benchmark::State& state) { tokenize_corpus(state, TokenizerScheme::none); }
void bm_tokenize_13a(benchmark::State& state) {
    tokenize_corpus(state, TokenizerScheme::thirteen_a);
}
void bm_tokenize_lang_rules(benchmark::State& state) {
    tokenize_corpus(state, TokenizerScheme::lang_rules);
}

struct TokenizedCorpus {
    std::vector<TokenSeq> sources, outputs;
    std::vector<std::vector<TokenSeq>> references;
};

TokenizedCorpus make_tokenized(std::size_t n) {
    TokenizedCorpus c;
    auto src = make_corpus(n, 11);
    auto out = make_corpus(n, 12);
    auto ref = make_corpus(n, 13);
    for (std::size_t i = 0; i < n; ++i) {
        c.sources.push_back(tokenize(src[i], TokenizerScheme::lang_rules, "de"));
        c.outputs.push_back(tokenize(out[i], TokenizerScheme::lang_rules, "de"));
        c.references.push_back({tokenize(ref[i], TokenizerScheme::lang_rules, "de")});
    }
    return c;
}

void bm_corpus_bleu(benchmark::State& state) {
    auto corpus = make_tokenized(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(corpus_bleu(corpus.outputs, corpus.references));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void bm_corpus_sari(benchmark::State& state) {
    auto corpus = make_tokenized(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(corpus_sari(corpus.sources, corpus.outputs, corpus.references));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void bm_greedy_match(benchmark::State& state) {
    auto provider = make_stub_provider(42);
    auto a = provider->embed("Der Hund läuft schnell über die alte Brücke in die Stadt.");
    auto b = provider->embed("Ein Hund rennt über eine Brücke.");
    for (auto _ : state) benchmark::DoNotOptimize(greedy_match(a, b));
}

BENCHMARK(bm_tokenize_none);
BENCHMARK(bm_tokenize_13a);
BENCHMARK(bm_tokenize_lang_rules);
BENCHMARK(bm_corpus_bleu)->Arg(100)->Arg(1000);
BENCHMARK(bm_corpus_sari)->Arg(100)->Arg(1000);
BENCHMARK(bm_greedy_match);

} // namespace

BENCHMARK_MAIN();
