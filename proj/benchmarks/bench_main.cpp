#include <benchmark/benchmark.h>

#include <random>

#include "tlms/format.hpp"
#include "tlms/generator.hpp"
#include "tlms/rank2.hpp"

namespace {

using namespace tlms;

std::vector<MultiSection> corpus_for(std::size_t k) { return rank2_corpus(7, 64, k, k); }

void BM_SlopeCondition(benchmark::State& state) {
    const auto corpus = corpus_for(static_cast<std::size_t>(state.range(0)));
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(check_slope_condition(corpus[i++ % corpus.size()]));
}
BENCHMARK(BM_SlopeCondition)->DenseRange(3, 8);

void BM_Solver(benchmark::State& state) {
    const auto corpus = corpus_for(static_cast<std::size_t>(state.range(0)));
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(brute_force_solver(corpus[i++ % corpus.size()]));
}
BENCHMARK(BM_Solver)->DenseRange(3, 8);

void BM_Construct(benchmark::State& state) {
    std::vector<MultiSection> ok;
    for (const auto& ms : corpus_for(static_cast<std::size_t>(state.range(0))))
        if (check_slope_condition(ms)) ok.push_back(ms);
    if (ok.empty()) {
        state.SkipWithError("no unobstructed instance");
        return;
    }
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(construct_kaneyama_rank2(ok[i++ % ok.size()]));
}
BENCHMARK(BM_Construct)->DenseRange(3, 8);

void BM_Separation(benchmark::State& state) {
    std::mt19937_64 rng(11);
    std::vector<MultiSection> inputs;
    for (int t = 0; t < 64; ++t) inputs.push_back(random_multisection(rng));
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(canonical_separation(inputs[i++ % inputs.size()]));
}
BENCHMARK(BM_Separation);

void BM_ParseEmit(benchmark::State& state) {
    Document doc;
    doc.multisection = rank2_corpus(3, 1, 8, 8).front();
    doc.fan = doc.multisection->fan;
    const std::string text = emit_document(doc);
    for (auto _ : state) benchmark::DoNotOptimize(emit_document(parse_document(text)));
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_ParseEmit);

}  // namespace
BENCHMARK_MAIN();
