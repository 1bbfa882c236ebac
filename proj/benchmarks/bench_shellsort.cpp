#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "shellgap/catalog.hpp"
#include "shellgap/chain_pass.hpp"
#include "shellgap/experiment.hpp"
#include "shellgap/gap_sequences.hpp"
#include "shellgap/random.hpp"

namespace {

using namespace shellgap;

// Permutations are drawn outside the timed region; only the sort is measured.
void sort_sequence(benchmark::State& state, const std::string& name) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Sorter sorter = resolve_sorter(name, n);
  Rng rng(derive_seed(1, stream_id(name), 0));
  std::vector<Key> input;
  for (auto _ : state) {
    state.PauseTiming();
    fisher_yates_into(input, n, rng);
    state.ResumeTiming();
    benchmark::DoNotOptimize(time_sorter(sorter, input));
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

void counted_sort(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const GapSequence seq = tokuda(n);
  Rng rng(7);
  std::vector<Key> input;
  for (auto _ : state) {
    state.PauseTiming();
    fisher_yates_into(input, n, rng);
    state.ResumeTiming();
    benchmark::DoNotOptimize(shellsort(input, seq));
  }
}

void chain_final_pass(benchmark::State& state, PrattBasePair bases) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(11);
  std::vector<Key> input;
  for (auto _ : state) {
    state.PauseTiming();
    fisher_yates_into(input, n, rng);
    SortMetrics presort;
    presort_pratt(input, bases, presort);
    state.ResumeTiming();
    SortMetrics m;
    if (bases.p == 2) {
      final_pass_25(input, m);
    } else {
      final_pass_34(input, m);
    }
    benchmark::DoNotOptimize(m);
  }
}

void generate_template(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(template_a(published::kOursA1000Comp, n));
  }
}

void generate_pratt(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(pratt({2, 3}, n));
  }
}

}  // namespace

BENCHMARK_CAPTURE(sort_sequence, tokuda, std::string("tokuda"))->Arg(128)->Arg(1000)->Arg(10000);
BENCHMARK_CAPTURE(sort_sequence, ciura_large, std::string("ciura-large"))->Arg(128)->Arg(1000)->Arg(10000);
BENCHMARK_CAPTURE(sort_sequence, ours_a1000_time, std::string("ours-a1000-time"))->Arg(1000)->Arg(10000);
BENCHMARK_CAPTURE(sort_sequence, pratt_23, std::string("pratt-23"))->Arg(1000)->Arg(10000);
BENCHMARK_CAPTURE(sort_sequence, pratt_25, std::string("pratt-25"))->Arg(1000)->Arg(10000);
BENCHMARK_CAPTURE(sort_sequence, pratt_25_chain, std::string("pratt-25-chain"))->Arg(1000)->Arg(10000);
BENCHMARK_CAPTURE(sort_sequence, pratt_34_chain, std::string("pratt-34-chain"))->Arg(1000)->Arg(10000);
BENCHMARK(counted_sort)->Arg(1000)->Arg(10000);
BENCHMARK_CAPTURE(chain_final_pass, p25, PrattBasePair{2, 5})->Arg(1000)->Arg(10000);
BENCHMARK_CAPTURE(chain_final_pass, p34, PrattBasePair{3, 4})->Arg(1000)->Arg(10000);
BENCHMARK(generate_template)->Arg(1000)->Arg(100000);
BENCHMARK(generate_pratt)->Arg(1000)->Arg(100000);

BENCHMARK_MAIN();
