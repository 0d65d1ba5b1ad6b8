#include <gtest/gtest.h>

#include <cmath>

#include "polarmax/init.hpp"

using namespace polarmax;

namespace {

double norm(std::span<const double> z) {
  double s = 0;
  for (double v : z) s += v * v;
  return std::sqrt(s);
}

}  // namespace

TEST(InitSpec, Validation) {
  InitSpec s;
  EXPECT_NO_THROW(s.validate());
  s.n_agents = 0;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s = InitSpec{};
  s.radius = 0;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s = InitSpec{};
  s.kind = InitKind::GaussianMixture;
  s.n_components = 0;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  EXPECT_EQ(parse_init_kind(to_string(InitKind::GaussianMixture)), InitKind::GaussianMixture);
  EXPECT_THROW(parse_init_kind("uniform"), std::invalid_argument);
}

TEST(Ball, SupportAndMean) {
  InitSpec s;
  s.n_agents = 100;
  s.radius = 10;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    s.seed = seed;
    const auto e = generate(s);
    ASSERT_EQ(e.size(), 100u);
    ASSERT_EQ(e.dim(), 2u);
    double mx = 0, my = 0;
    for (std::size_t k = 0; k < e.size(); ++k) {
      EXPECT_LE(norm(e.positions[k]), 10.0);
      mx += e.positions[k][0];
      my += e.positions[k][1];
    }
    EXPECT_LE(std::hypot(mx / 100, my / 100), 3 * 10 / std::sqrt(2.0 * 100));
  }
}

TEST(Ball, RadialLawIsUniformInVolume) {
  // P(|z| <= r/2) = 2^-D; check within 5 binomial standard deviations.
  for (std::size_t dim : {1u, 2u, 3u}) {
    InitSpec s;
    s.n_agents = 20000;
    s.dim = dim;
    s.radius = 3;
    s.seed = 5;
    const auto e = generate(s);
    std::size_t inner = 0;
    for (std::size_t k = 0; k < e.size(); ++k) inner += norm(e.positions[k]) <= 1.5 ? 1 : 0;
    const double q = std::pow(0.5, static_cast<double>(dim));
    const double sd = std::sqrt(20000 * q * (1 - q));
    EXPECT_NEAR(static_cast<double>(inner), 20000 * q, 5 * sd) << "dim " << dim;
  }
}

TEST(Mixture, EvenSplitWithRemainderFirst) {
  InitSpec s;
  s.kind = InitKind::GaussianMixture;
  s.n_agents = 100000;
  s.n_components = 5;
  for (std::size_t c = 0; c < 5; ++c) EXPECT_EQ(component_count(s, c), 20000u);
  s.n_agents = 13;
  s.n_components = 5;
  EXPECT_EQ(component_count(s, 0), 3u);
  EXPECT_EQ(component_count(s, 2), 3u);
  EXPECT_EQ(component_count(s, 3), 2u);
  EXPECT_EQ(component_count(s, 4), 2u);
}

TEST(Mixture, ComponentsAreContiguousBlocks) {
  InitSpec s;
  s.kind = InitKind::GaussianMixture;
  s.n_agents = 5000;
  s.n_components = 5;
  s.component_std = 0.5;
  s.mean_box_halfwidth = 10;
  s.seed = 3;
  const auto e = generate(s);
  std::size_t start = 0;
  for (std::size_t c = 0; c < 5; ++c) {
    const std::size_t n = component_count(s, c);
    std::vector<double> mean(2, 0.0);
    for (std::size_t k = start; k < start + n; ++k)
      for (std::size_t d = 0; d < 2; ++d) mean[d] += e.positions[k][d] / static_cast<double>(n);
    double var = 0;
    for (std::size_t k = start; k < start + n; ++k)
      for (std::size_t d = 0; d < 2; ++d) var += std::pow(e.positions[k][d] - mean[d], 2);
    var /= static_cast<double>(2 * n - 2);
    for (double m : mean) EXPECT_LE(std::abs(m), 10 + 5 * 0.5 / std::sqrt(static_cast<double>(n)));
    EXPECT_NEAR(std::sqrt(var), 0.5, 0.03);
    start += n;
  }
}

TEST(Mixture, TinyStdStaysNearMean) {
  InitSpec s;
  s.kind = InitKind::GaussianMixture;
  s.n_agents = 200;
  s.n_components = 1;
  s.component_std = 1e-6;
  const auto e = generate(s);
  for (std::size_t k = 1; k < e.size(); ++k)
    for (std::size_t d = 0; d < 2; ++d) EXPECT_LE(std::abs(e.positions[k][d] - e.positions[0][d]), 12e-6);
}

TEST(Generate, SeedDeterminism) {
  for (auto kind : {InitKind::Ball, InitKind::GaussianMixture}) {
    InitSpec s;
    s.kind = kind;
    s.n_agents = 300;
    s.dim = 3;
    s.n_components = 4;
    s.seed = 11;
    EXPECT_EQ(generate(s).positions, generate(s).positions);
    auto t = s;
    t.seed = 12;
    EXPECT_NE(generate(s).positions, generate(t).positions);
  }
}
