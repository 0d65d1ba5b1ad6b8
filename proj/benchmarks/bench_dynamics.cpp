#include <benchmark/benchmark.h>

#include "polarmax/dynamics.hpp"
#include "polarmax/init.hpp"

using namespace polarmax;

namespace {

Ensemble mixture(std::size_t n) {
  InitSpec s;
  s.kind = InitKind::GaussianMixture;
  s.n_agents = n;
  s.n_components = 5;
  s.seed = 2;
  return generate(s);
}

RunConfig config(const Ensemble& e, double p, std::size_t sample) {
  RunConfig c;
  c.n_agents = e.size();
  c.dim = e.dim();
  c.p = p;
  c.sample_size = sample;
  return c;
}

}  // namespace

// One agent's steering vector over all N agents; p = 2, 1 and 3.5 exercise
// the quadratic, linear and general gradient factors.
static void BM_ThetaExact(benchmark::State& state) {
  const auto e = mixture(static_cast<std::size_t>(state.range(0)));
  const MetricFamily m(static_cast<double>(state.range(1)) / 2);
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(theta_exact(e, k, m).vector.data());
    k = (k + 1) % e.size();
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ThetaExact)->ArgsProduct({{1000, 100000}, {4, 2, 7}});

static void BM_SelectFriend(benchmark::State& state) {
  const auto e = mixture(100000);
  const MetricFamily m(2.0);
  const auto h = state.range(0) ? convex_hull(e.positions) : all_indices(e.size());
  const Theta th = theta_quadratic(e, 7);
  for (auto _ : state) benchmark::DoNotOptimize(select_friend(e, 7, th, h.view()));
  state.counters["candidates"] = static_cast<double>(h.size());
}
BENCHMARK(BM_SelectFriend)->Arg(1)->Arg(0);

static void BM_StepStochastic(benchmark::State& state) {
  const auto e = mixture(static_cast<std::size_t>(state.range(0)));
  RunConfig cfg = config(e, 2.0, static_cast<std::size_t>(state.range(1)));
  cfg.sampling = state.range(2) ? Sampling::PerAgent : Sampling::SharedBatch;
  const MetricFamily m(2.0);
  const StreamFactory rng(3);
  std::size_t epoch = 0;
  for (auto _ : state) benchmark::DoNotOptimize(step_stochastic(e, cfg, m, rng, epoch++).record.friends.data());
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(1));
}
BENCHMARK(BM_StepStochastic)
    ->ArgsProduct({{10000, 100000}, {500, 1000, 2000}, {0}})
    ->Args({10000, 1000, 1})
    ->Unit(benchmark::kMillisecond);

static void BM_StepDeterministic(benchmark::State& state) {
  const auto e = mixture(static_cast<std::size_t>(state.range(0)));
  const RunConfig cfg = config(e, 2.0, e.size());
  const MetricFamily m(2.0);
  for (auto _ : state) benchmark::DoNotOptimize(step_deterministic(e, cfg, m).record.friends.data());
}
BENCHMARK(BM_StepDeterministic)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);

static void BM_Polarization(benchmark::State& state) {
  const auto e = mixture(static_cast<std::size_t>(state.range(0)));
  const MetricFamily m(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(polarization(e, m));
}
BENCHMARK(BM_Polarization)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
