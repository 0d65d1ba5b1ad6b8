// Quickhull for three-dimensional point sets.
//
// Faces are triangles stored with outward orientation; adjacency is recovered
// through a directed-edge map (edge a->b belongs to exactly one live face, its
// twin b->a to the neighbour). Every visibility decision goes through the exact
// orientation predicate, so points on a facet or an edge are never reported and
// thin, nearly flat inputs still produce a convex result. Floating-point plane
// distances only rank candidates.
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hull_internal.hpp"
#include "predicates.hpp"

namespace polarmax::detail {

namespace {

using Vec3 = std::array<double, 3>;

Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
Vec3 scaled(const Vec3& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }

struct Face {
  std::array<std::uint32_t, 3> v;
  Vec3 normal;
  double offset;
  std::vector<std::uint32_t> outside;
  bool alive = true;
};

std::uint64_t edge_key(std::uint32_t a, std::uint32_t b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

class QuickHull {
 public:
  explicit QuickHull(const std::vector<Vec3>& pts) : pts_(pts) {}

  // `simplex` must be affinely independent. Returns indices of the hull vertices.
  std::vector<std::uint32_t> run(std::array<std::uint32_t, 4> simplex) {
    const std::array<std::array<int, 4>, 4> tri{{{0, 1, 2, 3}, {0, 3, 1, 2}, {0, 2, 3, 1}, {1, 3, 2, 0}}};
    std::vector<std::uint32_t> fresh;
    for (const auto& t : tri) {
      std::uint32_t a = simplex[t[0]], b = simplex[t[1]], c = simplex[t[2]];
      if (orient3d(pts_[a], pts_[b], pts_[c], pts_[simplex[t[3]]]) > 0) std::swap(b, c);
      fresh.push_back(add_face(make_face(a, b, c)));
    }

    std::vector<std::uint32_t> candidates;
    for (std::uint32_t i = 0; i < pts_.size(); ++i)
      if (std::find(simplex.begin(), simplex.end(), i) == simplex.end()) candidates.push_back(i);
    assign(candidates, fresh);

    std::vector<std::uint32_t> stack = fresh;
    std::size_t guard = 0;
    const std::size_t guard_limit = 16 * pts_.size() + 64;
    while (!stack.empty()) {
      const std::uint32_t fi = stack.back();
      stack.pop_back();
      if (!faces_[fi].alive || faces_[fi].outside.empty()) continue;
      if (++guard > guard_limit) throw std::runtime_error("convex_hull: quickhull failed to converge");

      const Face& f = faces_[fi];
      std::uint32_t eye = f.outside.front();
      double best = -std::numeric_limits<double>::infinity();
      for (auto p : f.outside) {
        const double dist = plane_distance(f, p);
        if (dist > best) {
          best = dist;
          eye = p;
        }
      }
      for (auto nf : expand(fi, eye)) stack.push_back(nf);
    }

    std::vector<std::uint32_t> verts;
    for (const auto& f : faces_)
      if (f.alive) verts.insert(verts.end(), f.v.begin(), f.v.end());
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    return verts;
  }

  std::vector<std::array<std::uint32_t, 3>> live_faces() const {
    std::vector<std::array<std::uint32_t, 3>> out;
    for (const auto& f : faces_)
      if (f.alive) out.push_back(f.v);
    return out;
  }

 private:
  Face make_face(std::uint32_t a, std::uint32_t b, std::uint32_t c) const {
    Face f;
    f.v = {a, b, c};
    Vec3 n = cross(sub(pts_[b], pts_[a]), sub(pts_[c], pts_[a]));
    const double len = norm(n);
    f.normal = len > 0 ? scaled(n, 1.0 / len) : Vec3{0, 0, 0};
    f.offset = dot(f.normal, pts_[a]);
    return f;
  }

  std::uint32_t add_face(Face f) {
    const auto id = static_cast<std::uint32_t>(faces_.size());
    for (int e = 0; e < 3; ++e) edges_[edge_key(f.v[e], f.v[(e + 1) % 3])] = id;
    faces_.push_back(std::move(f));
    return id;
  }

  double plane_distance(const Face& f, std::uint32_t p) const { return dot(f.normal, pts_[p]) - f.offset; }

  bool sees(const Face& f, std::uint32_t p) const {
    return orient3d(pts_[f.v[0]], pts_[f.v[1]], pts_[f.v[2]], pts_[p]) > 0;
  }

  void assign(const std::vector<std::uint32_t>& points, const std::vector<std::uint32_t>& targets) {
    for (auto p : points) {
      double best = -std::numeric_limits<double>::infinity();
      std::int64_t owner = -1;
      for (auto fi : targets) {
        if (!sees(faces_[fi], p)) continue;
        const double d = plane_distance(faces_[fi], p);
        if (d > best) {
          best = d;
          owner = fi;
        }
      }
      if (owner >= 0) faces_[static_cast<std::size_t>(owner)].outside.push_back(p);
    }
  }

  std::vector<std::uint32_t> expand(std::uint32_t start, std::uint32_t eye) {
    std::vector<std::uint32_t> visible{start};
    std::vector<char> seen(faces_.size(), 0);
    seen[start] = 1;
    for (std::size_t q = 0; q < visible.size(); ++q) {
      const Face& f = faces_[visible[q]];
      for (int e = 0; e < 3; ++e) {
        const auto it = edges_.find(edge_key(f.v[(e + 1) % 3], f.v[e]));
        if (it == edges_.end()) continue;
        const std::uint32_t g = it->second;
        if (seen[g]) continue;
        seen[g] = 1;
        if (sees(faces_[g], eye)) visible.push_back(g);
      }
    }
    std::vector<char> is_visible(faces_.size(), 0);
    for (auto fi : visible) is_visible[fi] = 1;

    std::vector<std::array<std::uint32_t, 2>> horizon;
    std::vector<std::uint32_t> orphans;
    for (auto fi : visible) {
      Face& f = faces_[fi];
      for (int e = 0; e < 3; ++e) {
        const std::uint32_t a = f.v[e], b = f.v[(e + 1) % 3];
        const auto it = edges_.find(edge_key(b, a));
        if (it != edges_.end() && !is_visible[it->second]) horizon.push_back({a, b});
      }
      for (auto p : f.outside)
        if (p != eye) orphans.push_back(p);
      f.outside.clear();
      f.alive = false;
    }
    for (auto fi : visible) {
      const Face& f = faces_[fi];
      for (int e = 0; e < 3; ++e) edges_.erase(edge_key(f.v[e], f.v[(e + 1) % 3]));
    }

    std::vector<std::uint32_t> fresh;
    fresh.reserve(horizon.size());
    for (const auto& [a, b] : horizon) fresh.push_back(add_face(make_face(a, b, eye)));
    assign(orphans, fresh);
    return fresh;
  }

  const std::vector<Vec3>& pts_;
  std::vector<Face> faces_;
  std::unordered_map<std::uint64_t, std::uint32_t> edges_;
};

bool collinear(const Vec3& a, const Vec3& b, const Vec3& c) {
  return orient2d(a[0], a[1], b[0], b[1], c[0], c[1]) == 0 &&
         orient2d(a[1], a[2], b[1], b[2], c[1], c[2]) == 0 &&
         orient2d(a[2], a[0], b[2], b[0], c[2], c[0]) == 0;
}

// The hull of a 3D point set, classified by its affine dimension. `points`
// holds deduplicated coordinates, `ids` the matching smallest indices.
struct Shape {
  enum Kind { Point, Segment, Polygon, Polytope } kind = Point;
  std::vector<Vec3> points;
  std::vector<AgentId> ids;
  std::vector<std::uint32_t> vertices;  // polygons: counter-clockwise in the (u, v) projection
  std::vector<std::array<std::uint32_t, 3>> faces;
  Vec3 normal{};
  int u = 0, v = 1;  // coordinate axes kept by the polygon projection
};

Shape build(std::vector<std::pair<Vec3, AgentId>> input) {
  // Deduplicate, keeping the smallest index per coordinate triple.
  std::sort(input.begin(), input.end());
  Shape sh;
  for (const auto& [p, id] : input) {
    if (!sh.points.empty() && sh.points.back() == p) continue;
    sh.ids.push_back(id);
    sh.points.push_back(p);
  }
  const auto& pts = sh.points;
  const auto n = static_cast<std::uint32_t>(pts.size());
  if (n == 1) {
    sh.vertices = {0};
    return sh;
  }

  // Initial simplex: widest pair among axis extremes, then farthest from line, then from plane.
  std::array<std::uint32_t, 6> extremes{};
  for (int d = 0; d < 3; ++d) {
    std::uint32_t lo = 0, hi = 0;
    for (std::uint32_t i = 1; i < n; ++i) {
      if (pts[i][d] < pts[lo][d]) lo = i;
      if (pts[i][d] > pts[hi][d]) hi = i;
    }
    extremes[2 * d] = lo;
    extremes[2 * d + 1] = hi;
  }
  std::uint32_t i0 = 0, i1 = 1;
  double widest = -1;
  for (auto a : extremes)
    for (auto b : extremes) {
      const double dd = norm(sub(pts[a], pts[b]));
      if (dd > widest) {
        widest = dd;
        i0 = a;
        i1 = b;
      }
    }
  const Vec3 axis = sub(pts[i1], pts[i0]);

  auto pick = [&](auto score, auto accept) {
    std::uint32_t arg = n;
    double best = -1;
    for (std::uint32_t i = 0; i < n; ++i) {
      const double s = score(i);
      if (s > best) {
        best = s;
        arg = i;
      }
    }
    if (arg < n && accept(arg)) return arg;
    for (std::uint32_t i = 0; i < n; ++i)
      if (accept(i)) return i;
    return n;
  };

  const std::uint32_t i2 = pick([&](std::uint32_t i) { return norm(cross(axis, sub(pts[i], pts[i0]))); },
                                [&](std::uint32_t i) { return !collinear(pts[i0], pts[i1], pts[i]); });
  if (i2 == n) {
    // Collinear: the lexicographic extremes are the segment ends.
    sh.kind = Shape::Segment;
    sh.vertices = {0, n - 1};
    return sh;
  }

  const Vec3 normal = cross(axis, sub(pts[i2], pts[i0]));
  const std::uint32_t i3 =
      pick([&](std::uint32_t i) { return std::abs(dot(normal, sub(pts[i], pts[i0]))); },
           [&](std::uint32_t i) { return orient3d(pts[i0], pts[i1], pts[i2], pts[i]) != 0; });
  if (i3 == n) {
    // Coplanar: 2D hull after dropping the coordinate the plane is steepest
    // against. The projection is injective on the plane, so orientation
    // signs carry over exactly.
    const Vec3 unit = scaled(normal, 1.0 / norm(normal));
    int drop = 0;
    for (int d = 1; d < 3; ++d)
      if (std::abs(unit[d]) > std::abs(unit[drop])) drop = d;
    sh.kind = Shape::Polygon;
    sh.normal = unit;
    sh.u = (drop + 1) % 3;
    sh.v = (drop + 2) % 3;
    std::vector<Indexed2> flat(n);
    for (std::uint32_t i = 0; i < n; ++i) flat[i] = {pts[i][sh.u], pts[i][sh.v], i};
    for (const auto& p : monotone_chain(std::move(flat))) sh.vertices.push_back(static_cast<std::uint32_t>(p.id));
    return sh;
  }

  QuickHull qh(pts);
  sh.kind = Shape::Polytope;
  sh.vertices = qh.run({i0, i1, i2, i3});
  sh.faces = qh.live_faces();
  return sh;
}

Vec3 closest_on_segment(const Vec3& p, const Vec3& a, const Vec3& b) {
  const Vec3 e = sub(b, a);
  const double len2 = dot(e, e);
  const double t = len2 > 0 ? std::clamp(dot(sub(p, a), e) / len2, 0.0, 1.0) : 0.0;
  return {a[0] + t * e[0], a[1] + t * e[1], a[2] + t * e[2]};
}

// Distance from p to triangle abc. The normal is taken at the vertex with the
// widest angle, which keeps it accurate for slivers; near an edge the in-plane
// test may go either way, but there the plane and edge distances agree.
double triangle_distance(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
  auto to_segment = [&](const Vec3& x, const Vec3& y) { return norm(sub(p, closest_on_segment(p, x, y))); };
  const double edges = std::min({to_segment(a, b), to_segment(b, c), to_segment(c, a)});
  const std::array<Vec3, 3> v{a, b, c};
  const std::array<double, 3> opposite{norm(sub(b, c)), norm(sub(c, a)), norm(sub(a, b))};
  const auto apex = static_cast<std::size_t>(std::max_element(opposite.begin(), opposite.end()) - opposite.begin());
  const Vec3& o = v[apex];
  const Vec3& q = v[(apex + 1) % 3];
  const Vec3& r = v[(apex + 2) % 3];
  Vec3 n = cross(sub(q, o), sub(r, o));
  const double len = norm(n);
  if (!(len > 0)) return edges;
  n = scaled(n, 1.0 / len);
  const Vec3 w = sub(p, o);
  const double height = dot(n, w);
  const Vec3 foot = sub(p, scaled(n, height));
  for (std::size_t e = 0; e < 3; ++e) {
    const Vec3& x = v[e];
    const Vec3& y = v[(e + 1) % 3];
    if (dot(cross(sub(y, x), sub(foot, x)), n) < 0) return edges;
  }
  return std::min(edges, std::abs(height));
}

}  // namespace

std::vector<AgentId> hull_3d(const PointSet& ps) {
  std::vector<std::pair<Vec3, AgentId>> input(ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i) input[i] = {{ps[i][0], ps[i][1], ps[i][2]}, static_cast<AgentId>(i)};
  const Shape sh = build(std::move(input));
  std::vector<AgentId> out;
  for (auto local : sh.vertices) out.push_back(sh.ids[local]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double distance_3d(std::span<const double> point, const PointSet& ps, std::span<const AgentId> ids) {
  // Containment queries usually come in runs against one hull; keep the last
  // triangulation, keyed by the exact vertex coordinates and ids.
  thread_local std::vector<std::pair<Vec3, AgentId>> cached_input;
  thread_local Shape cached;
  std::vector<std::pair<Vec3, AgentId>> input(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) input[i] = {{ps[ids[i]][0], ps[ids[i]][1], ps[ids[i]][2]}, ids[i]};
  if (input != cached_input) {
    cached = build(input);
    cached_input = std::move(input);
  }
  const Shape& sh = cached;
  const Vec3 p{point[0], point[1], point[2]};
  auto at = [&](std::uint32_t local) -> const Vec3& { return sh.points[local]; };
  auto to_segment = [&](std::uint32_t a, std::uint32_t b) { return norm(sub(p, closest_on_segment(p, at(a), at(b)))); };

  switch (sh.kind) {
    case Shape::Point:
      return norm(sub(p, at(sh.vertices[0])));
    case Shape::Segment:
      return to_segment(sh.vertices[0], sh.vertices[1]);
    case Shape::Polygon: {
      const auto& poly = sh.vertices;
      const double height = dot(sh.normal, sub(p, at(poly[0])));
      const Vec3 foot = sub(p, scaled(sh.normal, height));
      bool inside = true;
      for (std::size_t i = 0; i < poly.size() && inside; ++i) {
        const Vec3& a = at(poly[i]);
        const Vec3& b = at(poly[(i + 1) % poly.size()]);
        inside = orient2d(a[sh.u], a[sh.v], b[sh.u], b[sh.v], foot[sh.u], foot[sh.v]) >= 0;
      }
      if (inside) return std::abs(height);
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < poly.size(); ++i) best = std::min(best, to_segment(poly[i], poly[(i + 1) % poly.size()]));
      return best;
    }
    case Shape::Polytope: {
      bool inside = true;
      for (const auto& f : sh.faces)
        if (orient3d(at(f[0]), at(f[1]), at(f[2]), p) > 0) {
          inside = false;
          break;
        }
      if (inside) return 0.0;
      double best = std::numeric_limits<double>::infinity();
      for (const auto& f : sh.faces)
        best = std::min(best, triangle_distance(p, at(f[0]), at(f[1]), at(f[2])));
      return best;
    }
  }
  return 0.0;
}

}  // namespace polarmax::detail
