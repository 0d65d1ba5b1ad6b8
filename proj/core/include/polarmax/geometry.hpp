// Point sets, convex hulls and hull containment.
//
// The hull is what makes friend search cheap: a linear functional over a
// finite point set attains its maximum at an extreme point, so only hull
// vertices need to be scanned.
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace polarmax {

using AgentId = std::uint32_t;

/// N coordinate vectors of a common dimension D, stored row-major.
class PointSet {
 public:
  PointSet() = default;

  /// Takes ownership of `coords` (size must be a multiple of `dim`).
  /// Throws std::invalid_argument on a dimension mismatch or a non-finite value.
  PointSet(std::size_t dim, std::vector<double> coords);

  static PointSet from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  std::size_t dim() const { return dim_; }
  bool empty() const { return coords_.empty(); }

  std::span<const double> operator[](std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  std::span<double> point(std::size_t i) { return {coords_.data() + i * dim_, dim_}; }

  const std::vector<double>& data() const { return coords_; }

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<double> coords_;
};

/// Strictly increasing agent indices of the extreme points of a point set.
struct HullIndex {
  std::vector<AgentId> vertices;

  std::size_t size() const { return vertices.size(); }
  std::span<const AgentId> view() const { return vertices; }
  friend bool operator==(const HullIndex&, const HullIndex&) = default;
};

inline constexpr double kDefaultHullTol = 1e-9;

/// Highest dimension for which convex_hull is exact. Above it every index is
/// returned (a correct superset).
inline constexpr std::size_t kMaxExactHullDim = 3;

/// Extreme points of `ps`. Among coincident points only the smallest index is
/// reported; points interior to a hull edge or facet are excluded.
HullIndex convex_hull(const PointSet& ps);

/// True iff `p` is within Euclidean distance `tol` of conv{ps[i] : i in h}.
/// D = 2 uses signed-area half-plane tests in cyclic vertex order; other
/// dimensions use a minimum-norm-point solve.
bool point_in_hull(std::span<const double> p, const PointSet& ps, const HullIndex& h,
                   double tol = kDefaultHullTol);

/// Euclidean distance from `p` to conv{ps[i] : i in h}; 0 inside.
double distance_to_hull(std::span<const double> p, const PointSet& ps, const HullIndex& h);

/// Largest pairwise distance. Evaluated over hull vertices when the hull is exact.
double diameter(const PointSet& ps);

/// Index list {0, ..., n-1}; the full-scan candidate set for friend search.
HullIndex all_indices(std::size_t n);

}  // namespace polarmax
