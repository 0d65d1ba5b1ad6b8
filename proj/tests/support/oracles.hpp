// Brute-force reference implementations used as test oracles. None of these
// call into the library's numerical code: sums are plain loops in long double,
// friend search scans every agent, hull membership uses exact orientation
// tests on integer-valued coordinates.
#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "polarmax/model.hpp"

namespace oracle {

using Rows = std::vector<std::vector<double>>;

inline Rows rows_of(const polarmax::PointSet& ps) {
  Rows r(ps.size());
  for (std::size_t k = 0; k < ps.size(); ++k) r[k].assign(ps[k].begin(), ps[k].end());
  return r;
}

inline long double norm(const std::vector<double>& a, const std::vector<double>& b) {
  long double s = 0;
  for (std::size_t d = 0; d < a.size(); ++d) {
    const long double t = static_cast<long double>(a[d]) - b[d];
    s += t * t;
  }
  return std::sqrt(s);
}

/// |w|^p from |w|^2, avoiding powl for the common integer exponents.
inline long double power_from_square(long double r2, double p) {
  if (p == 2) return r2;
  if (p == 4) return r2 * r2;
  if (p == 1) return std::sqrt(r2);
  return std::pow(r2, static_cast<long double>(p) / 2);
}

/// (1/N^2) sum_{k,l} |z_k - z_l|^p, each unordered pair evaluated once.
inline long double polarization(const Rows& z, double p) {
  long double s = 0;
  for (std::size_t a = 0; a < z.size(); ++a)
    for (std::size_t b = a + 1; b < z.size(); ++b) {
      long double r2 = 0;
      for (std::size_t d = 0; d < z[a].size(); ++d) {
        const long double t = static_cast<long double>(z[a][d]) - z[b][d];
        r2 += t * t;
      }
      if (r2 > 0) s += power_from_square(r2, p);
    }
  const long double n = static_cast<long double>(z.size());
  return 2 * s / (n * n);
}

/// (1/N) sum_l |z_k - z_l|^p.
inline long double agent_polarization(const Rows& z, std::size_t k, double p) {
  long double s = 0;
  for (const auto& b : z) {
    const long double r = norm(z[k], b);
    if (r > 0) s += std::pow(r, static_cast<long double>(p));
  }
  return s / static_cast<long double>(z.size());
}

/// (1/|sample|) sum_m p |z_k - z_m|^(p-2) (z_k - z_m), with zero pull from
/// agents within 1e-12 of z_k.
inline std::vector<long double> theta(const Rows& z, std::size_t k, double p,
                                      const std::vector<std::size_t>& sample) {
  std::vector<long double> t(z[k].size(), 0.0L);
  for (std::size_t m : sample) {
    const long double r = norm(z[k], z[m]);
    if (r <= 1e-12L) continue;
    const long double f = p * std::pow(r, static_cast<long double>(p) - 2);
    for (std::size_t d = 0; d < t.size(); ++d) t[d] += f * (static_cast<long double>(z[k][d]) - z[m][d]);
  }
  for (auto& v : t) v /= static_cast<long double>(sample.size());
  return t;
}

inline std::vector<long double> theta(const Rows& z, std::size_t k, double p) {
  std::vector<std::size_t> all(z.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return theta(z, k, p, all);
}

/// Central finite difference of agent_polarization with respect to z_k.
inline std::vector<long double> theta_fd(const Rows& z, std::size_t k, double p, long double h) {
  std::vector<long double> g(z[k].size());
  for (std::size_t d = 0; d < z[k].size(); ++d) {
    Rows up = z, dn = z;
    up[k][d] += static_cast<double>(h);
    dn[k][d] -= static_cast<double>(h);
    const long double step = static_cast<long double>(up[k][d]) - dn[k][d];
    g[d] = (agent_polarization(up, k, p) - agent_polarization(dn, k, p)) / step;
  }
  return g;
}

inline double objective(const Rows& z, std::size_t k, const std::vector<double>& th, std::size_t j) {
  double s = 0;
  for (std::size_t d = 0; d < th.size(); ++d) s += th[d] * (z[j][d] - z[k][d]);
  return s;
}

/// Best objective over every agent (k itself scores 0) and the smallest index attaining it.
struct Argmax {
  double value;
  std::size_t index;
};

inline Argmax argmax_all(const Rows& z, std::size_t k, const std::vector<double>& th) {
  Argmax best{0.0, k};
  for (std::size_t j = 0; j < z.size(); ++j) {
    const double v = j == k ? 0.0 : objective(z, k, th, j);
    if (v > best.value || (v == best.value && j < best.index)) best = {v, j};
  }
  return best;
}

/// Number of agents attaining the best objective exactly.
inline std::size_t argmax_multiplicity(const Rows& z, std::size_t k, const std::vector<double>& th) {
  const double best = argmax_all(z, k, th).value;
  std::size_t c = 0;
  for (std::size_t j = 0; j < z.size(); ++j)
    if ((j == k ? 0.0 : objective(z, k, th, j)) == best) ++c;
  return c;
}

// Exact for integer coordinates of moderate size.
inline double orient2(const std::vector<double>& a, const std::vector<double>& b, const std::vector<double>& c) {
  return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
}

inline bool on_segment2(const std::vector<double>& a, const std::vector<double>& b, const std::vector<double>& x) {
  if (orient2(a, b, x) != 0) return false;
  return std::min(a[0], b[0]) <= x[0] && x[0] <= std::max(a[0], b[0]) && std::min(a[1], b[1]) <= x[1] &&
         x[1] <= std::max(a[1], b[1]);
}

inline bool in_triangle2(const std::vector<double>& a, const std::vector<double>& b, const std::vector<double>& c,
                         const std::vector<double>& x) {
  const double o = orient2(a, b, c);
  if (o == 0) return on_segment2(a, b, x) || on_segment2(b, c, x) || on_segment2(a, c, x);
  const double s1 = orient2(a, b, x), s2 = orient2(b, c, x), s3 = orient2(c, a, x);
  if (o > 0) return s1 >= 0 && s2 >= 0 && s3 >= 0;
  return s1 <= 0 && s2 <= 0 && s3 <= 0;
}

/// Extreme points of a 2D integer-coordinate set by Caratheodory: x is not
/// extreme iff it lies in a closed triangle (possibly degenerate) of other
/// points. Among coincident points only the smallest index counts.
inline std::vector<std::uint32_t> extreme_points_2d(const Rows& z) {
  const std::size_t n = z.size();
  std::vector<std::size_t> distinct;
  for (std::size_t i = 0; i < n; ++i) {
    bool dup = false;
    for (std::size_t j = 0; j < i && !dup; ++j) dup = z[j] == z[i];
    if (!dup) distinct.push_back(i);
  }
  std::vector<std::uint32_t> out;
  for (std::size_t i : distinct) {
    bool inside = false;
    for (std::size_t a = 0; a < distinct.size() && !inside; ++a)
      for (std::size_t b = a; b < distinct.size() && !inside; ++b)
        for (std::size_t c = b; c < distinct.size() && !inside; ++c) {
          const std::size_t ia = distinct[a], ib = distinct[b], ic = distinct[c];
          if (ia == i || ib == i || ic == i) continue;
          inside = in_triangle2(z[ia], z[ib], z[ic], z[i]);
        }
    if (!inside) out.push_back(static_cast<std::uint32_t>(i));
  }
  return out;
}

inline double orient3(const std::vector<double>& a, const std::vector<double>& b, const std::vector<double>& c,
                      const std::vector<double>& d) {
  const double ax = a[0] - d[0], ay = a[1] - d[1], az = a[2] - d[2];
  const double bx = b[0] - d[0], by = b[1] - d[1], bz = b[2] - d[2];
  const double cx = c[0] - d[0], cy = c[1] - d[1], cz = c[2] - d[2];
  return ax * (by * cz - bz * cy) - ay * (bx * cz - bz * cx) + az * (bx * cy - by * cx);
}

/// Extreme points of a 3D set in general position (no four coplanar): x is not
/// extreme iff it lies inside a tetrahedron of other points.
inline std::vector<std::uint32_t> extreme_points_3d_generic(const Rows& z) {
  const std::size_t n = z.size();
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < n; ++i) {
    bool inside = false;
    for (std::size_t a = 0; a < n && !inside; ++a)
      for (std::size_t b = a + 1; b < n && !inside; ++b)
        for (std::size_t c = b + 1; c < n && !inside; ++c)
          for (std::size_t d = c + 1; d < n && !inside; ++d) {
            if (a == i || b == i || c == i || d == i) continue;
            const double o = orient3(z[a], z[b], z[c], z[d]);
            const double s1 = orient3(z[i], z[b], z[c], z[d]);
            const double s2 = orient3(z[a], z[i], z[c], z[d]);
            const double s3 = orient3(z[a], z[b], z[i], z[d]);
            const double s4 = orient3(z[a], z[b], z[c], z[i]);
            inside = o > 0 ? (s1 > 0 && s2 > 0 && s3 > 0 && s4 > 0) : (s1 < 0 && s2 < 0 && s3 < 0 && s4 < 0);
          }
    if (!inside) out.push_back(static_cast<std::uint32_t>(i));
  }
  return out;
}

/// max over the set of u . x; a point p with u . p above it is outside the hull
/// by at least the margin divided by |u|.
inline double support(const Rows& z, const std::vector<double>& u) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& x : z) {
    double s = 0;
    for (std::size_t d = 0; d < u.size(); ++d) s += u[d] * x[d];
    best = std::max(best, s);
  }
  return best;
}

/// Max pairwise distance over all pairs.
inline double diameter(const Rows& z) {
  long double best = 0;
  for (std::size_t a = 0; a < z.size(); ++a)
    for (std::size_t b = a + 1; b < z.size(); ++b) best = std::max(best, norm(z[a], z[b]));
  return static_cast<double>(best);
}

}  // namespace oracle

namespace gen {

/// Hand-rolled generators for property tests.
class Source {
 public:
  explicit Source(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& engine() { return rng_; }

  std::size_t size(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(rng_); }
  bool coin() { return std::bernoulli_distribution(0.5)(rng_); }

  polarmax::PointSet gaussian(std::size_t n, std::size_t dim, double scale = 1.0) {
    std::vector<double> c(n * dim);
    for (auto& v : c) v = scale * normal();
    return polarmax::PointSet(dim, std::move(c));
  }

  /// Integer lattice points in [-range, range]^dim: duplicates and collinear triples are common.
  polarmax::PointSet lattice(std::size_t n, std::size_t dim, int range) {
    std::uniform_int_distribution<int> u(-range, range);
    std::vector<double> c(n * dim);
    for (auto& v : c) v = u(rng_);
    return polarmax::PointSet(dim, std::move(c));
  }

  /// A few tight clumps with exact duplicates mixed in.
  polarmax::PointSet clumped(std::size_t n, std::size_t dim) {
    const std::size_t k = size(1, 4);
    std::vector<std::vector<double>> centers(k, std::vector<double>(dim));
    for (auto& c : centers)
      for (auto& v : c) v = uniform(-5, 5);
    std::vector<double> out;
    std::vector<double> last;
    for (std::size_t i = 0; i < n; ++i) {
      if (!last.empty() && size(0, 4) == 0) {
        out.insert(out.end(), last.begin(), last.end());
        continue;
      }
      const auto& c = centers[size(0, k - 1)];
      last.assign(dim, 0);
      for (std::size_t d = 0; d < dim; ++d) last[d] = c[d] + 0.1 * normal();
      out.insert(out.end(), last.begin(), last.end());
    }
    return polarmax::PointSet(dim, std::move(out));
  }

  /// One of the above, chosen at random.
  polarmax::PointSet any(std::size_t n, std::size_t dim) {
    switch (size(0, 2)) {
      case 0:
        return gaussian(n, dim, uniform(0.1, 10));
      case 1:
        return lattice(n, dim, static_cast<int>(size(2, 8)));
      default:
        return clumped(n, dim);
    }
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace gen
