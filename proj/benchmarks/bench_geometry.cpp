#include <benchmark/benchmark.h>

#include "polarmax/geometry.hpp"
#include "polarmax/init.hpp"

using namespace polarmax;

namespace {

Ensemble ball(std::size_t n, std::size_t dim) {
  InitSpec s;
  s.n_agents = n;
  s.dim = dim;
  s.seed = 1;
  return generate(s);
}

}  // namespace

static void BM_ConvexHull(benchmark::State& state) {
  const auto e = ball(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  std::size_t vertices = 0;
  for (auto _ : state) {
    const auto h = convex_hull(e.positions);
    vertices = h.size();
    benchmark::DoNotOptimize(h.vertices.data());
  }
  state.counters["vertices"] = static_cast<double>(vertices);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ConvexHull)->ArgsProduct({{1000, 10000, 100000}, {2, 3}})->Unit(benchmark::kMillisecond);

static void BM_PointInHull3D(benchmark::State& state) {
  const auto e = ball(static_cast<std::size_t>(state.range(0)), 3);
  const auto h = convex_hull(e.positions);
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(point_in_hull(e.positions[k], e.positions, h));
    k = (k + 1) % e.size();
  }
}
BENCHMARK(BM_PointInHull3D)->Arg(1000)->Arg(100000);

static void BM_Diameter(benchmark::State& state) {
  const auto e = ball(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(diameter(e.positions));
}
BENCHMARK(BM_Diameter)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
