#include <benchmark/benchmark.h>

#include <random>

#include "tribab/formula.hpp"
#include "tribab/numeration.hpp"
#include "tribab/oracle.hpp"
#include "tribab/pipeline.hpp"

using namespace tribab;

static Automaton random_automaton(std::mt19937_64& rng, int tracks, std::size_t states) {
  const std::size_t k = std::size_t{1} << tracks;
  std::vector<State> delta(states * k);
  for (auto& t : delta) t = static_cast<State>(rng() % states);
  std::vector<std::uint8_t> acc(states);
  for (auto& a : acc) a = rng() & 1u;
  return Automaton(TrackSignature(tracks), std::move(delta), std::move(acc), 0);
}

static void BM_Minimize(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const Automaton a = random_automaton(rng, 2, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(minimize(a));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Minimize)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

static void BM_Project(benchmark::State& state) {
  const Automaton add = build_adder();
  for (auto _ : state) benchmark::DoNotOptimize(project(add, 2));
}
BENCHMARK(BM_Project);

static void BM_Adder(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_adder());
}
BENCHMARK(BM_Adder)->Unit(benchmark::kMillisecond);

static void BM_CompileTribfac(benchmark::State& state) {
  Env env;
  env.relations["rst"] = Relation(shift_rel(), {"m", "n"});
  env.relations["tribsync0"] = compile(tribsync_formula(0), env);
  for (auto _ : state) benchmark::DoNotOptimize(compile(tribfac_formula(0), env));
}
BENCHMARK(BM_CompileTribfac)->Unit(benchmark::kMillisecond);

static void BM_Pipeline(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(run_pipeline());
}
BENCHMARK(BM_Pipeline)->Unit(benchmark::kMillisecond)->Iterations(3);

static void BM_OracleSweep(benchmark::State& state) {
  const std::size_t max_n = static_cast<std::size_t>(state.range(0));
  const TribOracle o(TribOracle::sweep_length(max_n));
  for (auto _ : state) benchmark::DoNotOptimize(o.sweep(max_n));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(max_n));
}
BENCHMARK(BM_OracleSweep)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
