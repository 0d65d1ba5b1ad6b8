// Desk-scale reruns of the experimental protocols. Slower than the unit tests
// (tens of seconds each at N in the thousands).
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "polarmax/analysis.hpp"
#include "polarmax/dynamics.hpp"
#include "polarmax/init.hpp"

using namespace polarmax;

namespace {

RunConfig config_for(const Ensemble& e, std::size_t s, std::size_t epochs) {
  RunConfig c;
  c.n_agents = e.size();
  c.dim = e.dim();
  c.p = 2.0;
  c.dt = 0.02;
  c.sample_size = s;
  c.epochs = epochs;
  c.seed = 5;
  c.convergence_tol = 0.0;
  c.keep_records = false;
  return c;
}

double relative_spread(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return (*hi - *lo) / std::abs(*hi);
}

}  // namespace

TEST(Protocol, SubsampledFinalLossTracksFullRun) {
  InitSpec s;
  s.n_agents = 5000;
  s.radius = 10;
  s.seed = 4;
  const auto init = generate(s);
  const auto sub = run(config_for(init, 1000, 600), init);
  const auto full = run(config_for(init, 5000, 600), init);
  const double a = sub.loss.values.back(), b = full.loss.values.back();
  EXPECT_LE(std::abs(a - b), 0.01 * b) << "S=1000 " << a << " vs S=N " << b;
}

TEST(Protocol, MixtureTraceStabilizes) {
  InitSpec s;
  s.kind = InitKind::GaussianMixture;
  s.n_agents = 10000;
  s.n_components = 5;
  s.seed = 6;
  const auto init = generate(s);
  RunConfig cfg = config_for(init, 1000, 600);
  cfg.keep_records = true;
  const auto r = run(cfg, init);
  ASSERT_EQ(r.loss.values.size(), 601u);
  const std::vector<double> tail(r.loss.values.end() - 60, r.loss.values.end());
  EXPECT_LT(relative_spread(tail), 1e-3);
  // Loss grows overall even though single stochastic epochs may dip.
  EXPECT_GT(r.loss.values.back(), r.loss.values.front());

  // Mid-transient: agents are still far from their friends at epoch 10.
  RunConfig replay = cfg;
  replay.epochs = 10;
  const Ensemble at10 = run(replay, init).final;
  EXPECT_FALSE(detect_convergence(at10, r.records[10], 1e-6 * r.initial_diameter));
}

TEST(Protocol, SingleGaussianAttractorWithinInitialHull) {
  InitSpec s;
  s.kind = InitKind::GaussianMixture;
  s.n_agents = 10000;
  s.n_components = 1;
  s.seed = 7;
  const auto init = generate(s);
  const auto r = run(config_for(init, 1000, 600), init);
  const auto summary = extract_attractor(r.final, 1e-3 * r.initial_diameter);
  const auto h = convex_hull(init.positions);
  EXPECT_LE(summary.n_clusters(), h.size());
  for (const auto& c : summary.centers) EXPECT_TRUE(point_in_hull(c, init.positions, h));
}
