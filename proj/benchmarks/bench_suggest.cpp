#include <benchmark/benchmark.h>

#include <map>
#include <memory>

#include "snipassist/completion.hpp"
#include "snipassist/synthetic.hpp"

namespace sa = snipassist;

namespace {

struct SuggestFixture {
    std::vector<sa::CompletionEntry> entries;
    sa::CompletionIndex index;
    std::vector<std::string> queries;

    explicit SuggestFixture(std::size_t count)
        : entries(sa::synthetic_entries(count, 11)),
          index(sa::CompletionIndex::build(entries, count)),
          queries(sa::synthetic_queries(entries, 1000, 12)) {}
};

const SuggestFixture& fixture(std::size_t count) {
    static std::map<std::size_t, std::unique_ptr<SuggestFixture>> cache;
    auto& slot = cache[count];
    if (!slot) slot = std::make_unique<SuggestFixture>(count);
    return *slot;
}

void BM_Suggest(benchmark::State& state) {
    const auto& f = fixture(static_cast<std::size_t>(state.range(0)));
    std::size_t i = 0;
    for (auto _ : state) {
        auto r = f.index.suggest(f.queries[i++ % f.queries.size()], 10);
        benchmark::DoNotOptimize(r);
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Suggest)->Arg(10000)->Arg(100000)->Arg(600000)->Unit(benchmark::kMicrosecond);

void BM_SuggestTokenPrefix(benchmark::State& state) {
    const auto& f = fixture(600000);
    std::vector<std::string> queries = {"s l", "c s t", "r f", "w t f", "a e t l"};
    std::size_t i = 0;
    for (auto _ : state) {
        auto r = f.index.suggest(queries[i++ % queries.size()], 10);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_SuggestTokenPrefix)->Unit(benchmark::kMicrosecond);

void BM_BuildIndex(benchmark::State& state) {
    auto entries = sa::synthetic_entries(static_cast<std::size_t>(state.range(0)), 13);
    for (auto _ : state) {
        auto copy = entries;
        auto index = sa::CompletionIndex::build(std::move(copy), entries.size());
        benchmark::DoNotOptimize(index);
    }
}
BENCHMARK(BM_BuildIndex)->Arg(100000)->Arg(600000)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
