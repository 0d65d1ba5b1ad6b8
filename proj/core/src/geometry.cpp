#include "polarmax/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "hull_internal.hpp"
#include "predicates.hpp"

namespace polarmax {

PointSet::PointSet(std::size_t dim, std::vector<double> coords)
    : dim_(dim), coords_(std::move(coords)) {
  if (dim_ == 0) throw std::invalid_argument("PointSet: dimension must be >= 1");
  if (coords_.size() % dim_ != 0)
    throw std::invalid_argument("PointSet: coordinate count " + std::to_string(coords_.size()) +
                                " is not a multiple of dimension " + std::to_string(dim_));
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (!std::isfinite(coords_[i]))
      throw std::invalid_argument("PointSet: non-finite coordinate at point " +
                                  std::to_string(i / dim_));
  }
}

PointSet PointSet::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw std::invalid_argument("PointSet: no rows");
  const std::size_t dim = rows.front().size();
  std::vector<double> coords;
  coords.reserve(rows.size() * dim);
  for (const auto& r : rows) {
    if (r.size() != dim) throw std::invalid_argument("PointSet: rows differ in dimension");
    coords.insert(coords.end(), r.begin(), r.end());
  }
  return PointSet(dim, std::move(coords));
}

HullIndex all_indices(std::size_t n) {
  HullIndex h;
  h.vertices.resize(n);
  std::iota(h.vertices.begin(), h.vertices.end(), AgentId{0});
  return h;
}

namespace detail {

namespace {
int turn(const Indexed2& o, const Indexed2& a, const Indexed2& b) { return orient2d(o.x, o.y, a.x, a.y, b.x, b.y); }
}  // namespace

std::vector<Indexed2> monotone_chain(std::vector<Indexed2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Indexed2& a, const Indexed2& b) {
    if (a.x != b.x) return a.x < b.x;
    if (a.y != b.y) return a.y < b.y;
    return a.id < b.id;
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Indexed2& a, const Indexed2& b) { return a.x == b.x && a.y == b.y; }),
            pts.end());
  if (pts.size() <= 2) return pts;

  std::vector<Indexed2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && turn(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  const std::size_t lower = k + 1;
  for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {
    while (k >= lower && turn(hull[k - 2], hull[k - 1], *it) <= 0) --k;
    hull[k++] = *it;
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace detail

namespace {

std::vector<AgentId> hull_1d(const PointSet& ps) {
  AgentId lo = 0;
  AgentId hi = 0;
  for (std::size_t i = 1; i < ps.size(); ++i) {
    const double v = ps[i][0];
    if (v < ps[lo][0]) lo = static_cast<AgentId>(i);
    if (v > ps[hi][0]) hi = static_cast<AgentId>(i);
  }
  if (ps[lo][0] == ps[hi][0]) return {lo};
  return {std::min(lo, hi), std::max(lo, hi)};
}

std::vector<AgentId> hull_2d(const PointSet& ps) {
  std::vector<detail::Indexed2> pts(ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i) pts[i] = {ps[i][0], ps[i][1], static_cast<AgentId>(i)};
  const auto chain = detail::monotone_chain(std::move(pts));
  std::vector<AgentId> ids;
  ids.reserve(chain.size());
  for (const auto& p : chain) ids.push_back(p.id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

void check_dim(std::span<const double> p, const PointSet& ps) {
  if (p.size() != ps.dim())
    throw std::invalid_argument("point dimension " + std::to_string(p.size()) +
                                " does not match point set dimension " + std::to_string(ps.dim()));
}

void check_ids(const PointSet& ps, const HullIndex& h) {
  if (h.vertices.empty()) throw std::invalid_argument("hull index is empty");
  for (AgentId id : h.vertices)
    if (id >= ps.size()) throw std::out_of_range("hull index refers to a missing point");
}

double distance_2d(std::span<const double> p, const PointSet& ps, const HullIndex& h) {
  std::vector<detail::Indexed2> pts;
  pts.reserve(h.size());
  for (AgentId id : h.vertices) pts.push_back({ps[id][0], ps[id][1], id});
  const auto poly = detail::monotone_chain(std::move(pts));

  const double px = p[0];
  const double py = p[1];
  auto seg_dist = [&](const detail::Indexed2& a, const detail::Indexed2& b) {
    const double ex = b.x - a.x;
    const double ey = b.y - a.y;
    const double len2 = ex * ex + ey * ey;
    double t = len2 > 0 ? ((px - a.x) * ex + (py - a.y) * ey) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::hypot(px - (a.x + t * ex), py - (a.y + t * ey));
  };

  if (poly.size() == 1) return std::hypot(px - poly[0].x, py - poly[0].y);
  if (poly.size() == 2) return seg_dist(poly[0], poly[1]);

  bool inside = true;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& a = poly[i];
    const auto& b = poly[(i + 1) % poly.size()];
    if (detail::orient2d(a.x, a.y, b.x, b.y, px, py) < 0) {
      inside = false;
      break;
    }
  }
  if (inside) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < poly.size(); ++i)
    best = std::min(best, seg_dist(poly[i], poly[(i + 1) % poly.size()]));
  return best;
}

}  // namespace

HullIndex convex_hull(const PointSet& ps) {
  if (ps.empty()) throw std::invalid_argument("convex_hull: empty point set");
  HullIndex h;
  switch (ps.dim()) {
    case 1:
      h.vertices = hull_1d(ps);
      break;
    case 2:
      h.vertices = hull_2d(ps);
      break;
    case 3:
      h.vertices = detail::hull_3d(ps);
      break;
    default:
      h = all_indices(ps.size());
      break;
  }
  return h;
}

double distance_to_hull(std::span<const double> p, const PointSet& ps, const HullIndex& h) {
  check_dim(p, ps);
  check_ids(ps, h);
  if (ps.dim() == 1) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (AgentId id : h.vertices) {
      lo = std::min(lo, ps[id][0]);
      hi = std::max(hi, ps[id][0]);
    }
    if (p[0] < lo) return lo - p[0];
    if (p[0] > hi) return p[0] - hi;
    return 0.0;
  }
  if (ps.dim() == 2) return distance_2d(p, ps, h);
  if (ps.dim() == 3) return detail::distance_3d(p, ps, h.vertices);
  return detail::min_norm_distance(p, ps, h.vertices).distance;
}

bool point_in_hull(std::span<const double> p, const PointSet& ps, const HullIndex& h, double tol) {
  if (tol < 0) throw std::invalid_argument("point_in_hull: negative tolerance");
  check_dim(p, ps);
  check_ids(ps, h);
  if (ps.dim() <= 3) return distance_to_hull(p, ps, h) <= tol;
  // The iterative solve carries rounding proportional to the vertex spread.
  const auto r = detail::min_norm_distance(p, ps, h.vertices);
  return r.distance <= std::max(tol, 1e-12 * r.scale);
}

double diameter(const PointSet& ps) {
  if (ps.empty()) return 0.0;
  const HullIndex h = ps.dim() <= kMaxExactHullDim ? convex_hull(ps) : all_indices(ps.size());
  double best = 0.0;
  for (std::size_t a = 0; a < h.size(); ++a) {
    const auto pa = ps[h.vertices[a]];
    for (std::size_t b = a + 1; b < h.size(); ++b) {
      const auto pb = ps[h.vertices[b]];
      double s = 0.0;
      for (std::size_t d = 0; d < ps.dim(); ++d) s += (pa[d] - pb[d]) * (pa[d] - pb[d]);
      best = std::max(best, s);
    }
  }
  return std::sqrt(best);
}

}  // namespace polarmax
