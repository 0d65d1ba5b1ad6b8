#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "polarmax/geometry.hpp"
#include "polarmax/model.hpp"

using namespace polarmax;

namespace {

Ensemble ens(PointSet ps) { return Ensemble{std::move(ps), 0.0}; }

double rel_err(long double got, long double want) {
  return static_cast<double>(std::abs(got - want) / std::max(1.0L, std::abs(want)));
}

double vec_rel_err(const std::vector<double>& got, const std::vector<long double>& want) {
  long double scale = 1, diff = 0;
  for (std::size_t d = 0; d < got.size(); ++d) {
    scale = std::max(scale, std::abs(want[d]));
    diff = std::max(diff, std::abs(got[d] - want[d]));
  }
  return static_cast<double>(diff / scale);
}

}  // namespace

TEST(MetricFamily, KnownValues) {
  const std::vector<double> w{3, 4};
  EXPECT_EQ(MetricFamily(2).value(w), 25.0);
  EXPECT_EQ(MetricFamily(1).value(w), 5.0);
  EXPECT_NEAR(MetricFamily(3).value(w), 125.0, 1e-12);
  EXPECT_EQ(MetricFamily(2).gradient(w), (std::vector<double>{6, 8}));
  const auto g1 = MetricFamily(1).gradient(w);
  EXPECT_NEAR(g1[0], 0.6, 1e-15);
  EXPECT_NEAR(g1[1], 0.8, 1e-15);
  EXPECT_THROW(MetricFamily(0), std::invalid_argument);
  EXPECT_THROW(MetricFamily(-1), std::invalid_argument);
}

TEST(MetricFamily, GradientVanishesAtCutoff) {
  for (double p : {0.5, 1.0, 2.0, 4.0}) {
    const MetricFamily m(p);
    EXPECT_EQ(m.gradient(std::vector<double>{0, 0}), (std::vector<double>{0, 0}));
    EXPECT_EQ(m.gradient(std::vector<double>{1e-13, 0}), (std::vector<double>{0, 0}));
    EXPECT_EQ(m.gradient_factor(0.0), 0.0);
  }
}

TEST(MetricFamily, GradientMatchesFiniteDifferences) {
  gen::Source src(21);
  for (double p : {1.0, 1.5, 2.0, 3.0, 4.0, 7.3, 10.0}) {
    const MetricFamily m(p);
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t dim = src.size(1, 4);
      std::vector<double> w(dim);
      for (auto& v : w) v = src.uniform(-2, 2);
      const auto g = m.gradient(w);
      for (std::size_t d = 0; d < dim; ++d) {
        const double h = 1e-6;
        auto up = w, dn = w;
        up[d] += h;
        dn[d] -= h;
        const double fd = (m.value(up) - m.value(dn)) / (up[d] - dn[d]);
        EXPECT_NEAR(g[d], fd, 1e-5 * (1 + std::abs(fd))) << "p=" << p;
      }
      double n2 = 0;
      for (double v : w) n2 += v * v;
      for (std::size_t d = 0; d < dim; ++d)
        EXPECT_NEAR(g[d], m.gradient_factor(n2) * w[d], 1e-13 * (1 + std::abs(g[d])));
    }
  }
}

TEST(Polarization, MatchesPairSumOracle) {
  gen::Source src(22);
  for (double p : {0.5, 1.0, 2.0, 3.0, 4.0, 10.0}) {
    for (int trial = 0; trial < 10; ++trial) {
      const std::size_t dim = src.size(1, 3);
      const auto e = ens(src.any(src.size(1, 80), dim));
      const auto rows = oracle::rows_of(e.positions);
      EXPECT_LT(rel_err(polarization(e, MetricFamily(p)), oracle::polarization(rows, p)), 1e-12) << p;
      const std::size_t k = src.size(0, e.size() - 1);
      EXPECT_LT(rel_err(agent_polarization(e, k, MetricFamily(p)), oracle::agent_polarization(rows, k, p)),
                1e-12);
    }
  }
}

TEST(Polarization, LargeEnsembleUsesBlockedSums) {
  gen::Source src(23);
  const auto e = ens(src.gaussian(kSumBlock + 700, 2, 3.0));
  const auto rows = oracle::rows_of(e.positions);
  EXPECT_LT(rel_err(polarization(e, MetricFamily(3)), oracle::polarization(rows, 3)), 1e-12);
  const auto th = theta_exact(e, 17, MetricFamily(3));
  EXPECT_LT(vec_rel_err(th.vector, oracle::theta(rows, 17, 3)), 1e-12);
}

TEST(Polarization, QuadraticClosedFormAgrees) {
  gen::Source src(24);
  for (int trial = 0; trial < 50; ++trial) {
    const auto e = ens(src.any(src.size(1, 100), src.size(1, 3)));
    EXPECT_LT(rel_err(polarization_quadratic(e), polarization(e, MetricFamily(2))), 1e-12);
  }
}

TEST(Polarization, MeanOfAgentTerms) {
  gen::Source src(25);
  const auto e = ens(src.gaussian(40, 2));
  const MetricFamily m(1.5);
  double s = 0;
  for (std::size_t k = 0; k < e.size(); ++k) s += agent_polarization(e, k, m);
  EXPECT_NEAR(s / 40, polarization(e, m), 1e-12 * polarization(e, m));
}

TEST(Polarization, SingleAgentAndCoincidentAgents) {
  EXPECT_EQ(polarization(ens(PointSet::from_rows({{1, 2}})), MetricFamily(2)), 0.0);
  EXPECT_EQ(polarization(ens(PointSet::from_rows({{1, 2}, {1, 2}, {1, 2}})), MetricFamily(1)), 0.0);
  // Two agents at distance 2: (1/4) * 2 * 2^p.
  EXPECT_NEAR(polarization(ens(PointSet::from_rows({{0}, {2}})), MetricFamily(3)), 4.0, 1e-15);
}

TEST(Theta, MatchesOracleAndFiniteDifferences) {
  gen::Source src(26);
  for (double p : {1.0, 2.0, 3.0, 4.0, 10.0}) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto e = ens(src.gaussian(src.size(2, 60), src.size(1, 3)));
      const auto rows = oracle::rows_of(e.positions);
      const std::size_t k = src.size(0, e.size() - 1);
      const auto th = theta_exact(e, k, MetricFamily(p));
      EXPECT_EQ(th.sample_size, e.size());
      EXPECT_LT(vec_rel_err(th.vector, oracle::theta(rows, k, p)), 1e-12) << "p=" << p;
      EXPECT_LT(vec_rel_err(th.vector, oracle::theta_fd(rows, k, p, 1e-5L)), 1e-6) << "p=" << p;
    }
  }
}

TEST(Theta, QuadraticShortcut) {
  gen::Source src(27);
  for (int trial = 0; trial < 50; ++trial) {
    const auto e = ens(src.any(src.size(1, 60), src.size(1, 3)));
    const std::size_t k = src.size(0, e.size() - 1);
    const auto exact = theta_exact(e, k, MetricFamily(2));
    const auto quick = theta_quadratic(e, k);
    const auto rows = oracle::rows_of(e.positions);
    // Both compared to the oracle; coincident agents contribute 0 either way.
    EXPECT_LT(vec_rel_err(quick.vector, oracle::theta(rows, k, 2)), 1e-12);
    EXPECT_LT(vec_rel_err(exact.vector, oracle::theta(rows, k, 2)), 1e-12);
  }
}

TEST(Theta, SampledIsOrderIndependentAndFullSampleIsExact) {
  gen::Source src(28);
  for (double p : {1.0, 2.0, 5.0}) {
    const auto e = ens(src.gaussian(src.size(5, 200), 2));
    const MetricFamily m(p);
    std::vector<AgentId> all(e.size());
    std::iota(all.begin(), all.end(), AgentId{0});
    std::shuffle(all.begin(), all.end(), src.engine());
    const std::size_t k = src.size(0, e.size() - 1);
    EXPECT_EQ(theta_sampled(e, k, all, m).vector, theta_exact(e, k, m).vector);

    std::vector<AgentId> sub(all.begin(), all.begin() + 4);
    const auto a = theta_sampled(e, k, sub, m);
    std::reverse(sub.begin(), sub.end());
    EXPECT_EQ(theta_sampled(e, k, sub, m).vector, a.vector);
    EXPECT_EQ(a.sample_size, 4u);
    const std::vector<std::size_t> sub_idx(sub.begin(), sub.end());
    EXPECT_LT(vec_rel_err(a.vector, oracle::theta(oracle::rows_of(e.positions), k, p, sub_idx)), 1e-12);
  }
}

TEST(Theta, SampledRejectsBadSamples) {
  const auto e = ens(PointSet::from_rows({{0, 0}, {1, 0}}));
  EXPECT_THROW(theta_sampled(e, 0, std::vector<AgentId>{}, MetricFamily(2)), std::invalid_argument);
  EXPECT_THROW(theta_sampled(e, 0, std::vector<AgentId>{5}, MetricFamily(2)), std::out_of_range);
  EXPECT_THROW(theta_exact(e, 2, MetricFamily(2)), std::out_of_range);
}

TEST(SelectFriend, MatchesBruteForceArgmax) {
  gen::Source src(29);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t dim = src.size(1, 3);
    const auto e = ens(src.any(src.size(1, 40), dim));
    const auto rows = oracle::rows_of(e.positions);
    const std::size_t k = src.size(0, e.size() - 1);
    const auto th = theta_exact(e, k, MetricFamily(src.coin() ? 2.0 : 1.0));
    const auto want = oracle::argmax_all(rows, k, th.vector);
    const auto all = all_indices(e.size());
    EXPECT_EQ(select_friend(e, k, th, all.view()), want.index) << trial;
    const AgentId via_hull = select_friend(e, k, th, convex_hull(e.positions).view());
    EXPECT_EQ(friend_objective(e, k, th.vector, via_hull), want.value) << trial;
  }
}

TEST(SelectFriend, TiesGoToSmallestIndex) {
  // Agents 1 and 3 coincide; agent 2 is an equally good mirror for theta along y.
  const auto e = ens(PointSet::from_rows({{0, 0}, {5, 1}, {-5, 1}, {5, 1}}));
  const Theta th{{0, 1}, 4};
  EXPECT_EQ(select_friend(e, 0, th, all_indices(4).view()), 1u);
  const std::vector<AgentId> reversed{3, 2, 1};
  EXPECT_EQ(select_friend(e, 0, th, reversed), 1u);
}

TEST(SelectFriend, SelfWinsWithoutPositiveGain) {
  const auto e = ens(PointSet::from_rows({{0, 0}, {-1, 0}, {-2, 3}}));
  // Both other agents lie at smaller x, so every gain along +x is negative.
  EXPECT_EQ(select_friend(e, 0, Theta{{1, 0}, 3}, all_indices(3).view()), 0u);
  // A zero theta leaves every gain at 0; index 0 < k = 2 wins the tie.
  EXPECT_EQ(select_friend(e, 2, Theta{{0, 0}, 3}, all_indices(3).view()), 0u);
  // Candidates that exclude k still compete with k.
  const std::vector<AgentId> others{1};
  EXPECT_EQ(select_friend(e, 0, Theta{{1, 0}, 3}, others), 0u);
}

TEST(MassCenter, Mean) {
  const auto e = ens(PointSet::from_rows({{0, 0}, {2, 0}, {1, 3}}));
  EXPECT_EQ(mass_center(e), (std::vector<double>{1, 1}));
}
