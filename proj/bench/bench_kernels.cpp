#include <benchmark/benchmark.h>

#include "sval/pairs.hpp"
#include "sval/parser.hpp"
#include "sval/valspec.hpp"

using namespace sval;

namespace {

const Valuation& lex_fixture() {
  static const Valuation v = parse_valuation("lex(x,y)", parse_ring("Q(x,y)[t1,t2]"));
  return v;
}

void axioms(benchmark::State& state, bool parallel) {
  AxiomOptions opt;
  opt.trials = static_cast<std::size_t>(state.range(0));
  opt.parallel = parallel;
  for (auto _ : state) {
    SampleReport r = verify_axioms(lex_fixture(), opt);
    benchmark::DoNotOptimize(r.failures.size());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void pair_search(benchmark::State& state, bool parallel) {
  Ring r = parse_ring("Z[x,x^-1][t1,t2]");
  ValuationPair pair = laurent_pair(r, 3);
  PairOptions opt;
  opt.samples = static_cast<std::size_t>(state.range(0));
  opt.parallel = parallel;
  for (auto _ : state) {
    PairVerdict v = is_valuation_pair(pair, opt);
    benchmark::DoNotOptimize(v.pass);
  }
}

void BM_AxiomsSerial(benchmark::State& s) { axioms(s, false); }
void BM_AxiomsOmp(benchmark::State& s) { axioms(s, true); }
void BM_PairSerial(benchmark::State& s) { pair_search(s, false); }
void BM_PairOmp(benchmark::State& s) { pair_search(s, true); }

}  // namespace

BENCHMARK(BM_AxiomsSerial)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AxiomsOmp)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PairSerial)->Arg(60)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PairOmp)->Arg(60)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
