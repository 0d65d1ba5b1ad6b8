#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "polarmax/geometry.hpp"
#include "polarmax/model.hpp"

namespace polarmax::detail {

/// Coordinates of a sample of agents in structure-of-arrays layout.
class SampleBlock {
 public:
  /// `ids` must be in the order the sum should run (ascending for the solvers).
  void gather(const PointSet& ps, std::span<const AgentId> ids);

  std::size_t size() const { return n_; }
  std::size_t dim() const { return dim_; }
  const double* axis(std::size_t d) const { return soa_.data() + d * n_; }

 private:
  std::size_t dim_ = 0;
  std::size_t n_ = 0;
  std::vector<double> soa_;
};

/// out = (1/n) sum_m grad g(z - s_m) over the block.
///
/// Summation order is fixed: each run of kSumBlock terms is accumulated in
/// four interleaved lanes (term i goes to lane i mod 4) combined as
/// (l0 + l1) + (l2 + l3); run totals are then added as a balanced binary tree.
void theta_over_block(const MetricFamily& m, std::span<const double> z, const SampleBlock& block,
                      std::span<double> out);

enum class FactorKind { Quadratic, Linear, EvenPower, General };

FactorKind classify(double p);

}  // namespace polarmax::detail
