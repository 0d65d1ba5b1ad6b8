// Polarization functional and friend selection.
//
// With g(w) = |w|^p the group objective is
//
//     L(z) = (1/N^2) sum_{k,l} g(z_k - z_l) = (1/N) sum_k L^k(z),
//     L^k  = (1/N) sum_l g(z_k - z_l),
//
// and agent k is steered by theta_k = (1/N) sum_m grad g(z_k - z_m). Its friend
// is the j maximizing theta_k . (z_j - z_k), ties to the smallest index, with k
// itself always competing at objective 0.
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "polarmax/geometry.hpp"

namespace polarmax {

/// |w| below which grad g is taken to be zero (coincident agents exert no pull).
inline constexpr double kGradCutoff = 1e-12;

/// Sums of more than this many terms are accumulated block-wise as a tree.
inline constexpr std::size_t kSumBlock = 4096;

/// g(w) = |w|^p for a fixed exponent p > 0.
class MetricFamily {
 public:
  explicit MetricFamily(double exponent);

  double exponent() const { return p_; }

  double value(std::span<const double> w) const;

  /// p |w|^(p-2) w, or zero when |w| <= kGradCutoff.
  std::vector<double> gradient(std::span<const double> w) const;

  /// The scalar p |w|^(p-2) as a function of |w|^2; 0 at or below the cutoff.
  double gradient_factor(double norm2) const;

 private:
  double p_;
};

struct Ensemble {
  PointSet positions;
  double time = 0.0;

  std::size_t size() const { return positions.size(); }
  std::size_t dim() const { return positions.dim(); }
};

struct Theta {
  std::vector<double> vector;
  std::size_t sample_size = 0;
};

std::vector<double> grad_g(std::span<const double> w, const MetricFamily& m);

/// Exact double sum over ordered pairs divided by N^2.
double polarization(const Ensemble& e, const MetricFamily& m);

/// Closed form for p = 2: L = 2 (1/N) sum_k |z_k - c|^2 with c the mass center.
double polarization_quadratic(const Ensemble& e);

double agent_polarization(const Ensemble& e, std::size_t k, const MetricFamily& m);

std::vector<double> mass_center(const Ensemble& e);

Theta theta_exact(const Ensemble& e, std::size_t k, const MetricFamily& m);

/// Subsampled steering vector over `sample` (any order; summed in ascending
/// index order so that the full sample reproduces theta_exact bitwise).
Theta theta_sampled(const Ensemble& e, std::size_t k, std::span<const AgentId> sample,
                    const MetricFamily& m);

/// 2 (z_k - c): the steering vector for p = 2 without the pair sum.
Theta theta_quadratic(const Ensemble& e, std::size_t k);

/// The gain theta . (z_j - z_k).
double friend_objective(const Ensemble& e, std::size_t k, std::span<const double> theta, AgentId j);

/// arg*max over `candidates` plus k itself; exact comparisons, smallest index on ties.
AgentId select_friend(const Ensemble& e, std::size_t k, const Theta& th,
                      std::span<const AgentId> candidates);

}  // namespace polarmax
