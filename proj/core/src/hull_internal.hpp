#pragma once

#include <span>
#include <vector>

#include "polarmax/geometry.hpp"

namespace polarmax::detail {

struct Indexed2 {
  double x;
  double y;
  AgentId id;
};

/// Andrew's monotone chain. Returns the strict hull vertices in counter-clockwise
/// order starting from the lexicographically smallest point. Duplicated
/// coordinates keep the smallest id; collinear boundary points are dropped.
std::vector<Indexed2> monotone_chain(std::vector<Indexed2> pts);

/// Quickhull in R^3 with fallbacks for coplanar and collinear input.
std::vector<AgentId> hull_3d(const PointSet& ps);

/// Euclidean distance from `p` to conv{ps[i] : i in ids} for D = 3, measured
/// against the triangulated hull of the subset (zero inside).
double distance_3d(std::span<const double> p, const PointSet& ps, std::span<const AgentId> ids);

/// Distance from `p` to conv{ps[i] : i in ids} via Wolfe's minimum-norm-point
/// algorithm. Also returns the largest vertex offset |ps[i] - p| for callers
/// that need a scale for rounding tolerances.
struct MinNormResult {
  double distance;
  double scale;
};
MinNormResult min_norm_distance(std::span<const double> p, const PointSet& ps,
                                std::span<const AgentId> ids);

}  // namespace polarmax::detail
