// Wolfe's minimum-norm-point algorithm: the point of a polytope conv{q_i}
// closest to the origin, found by walking affinely independent "corrals".
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "hull_internal.hpp"

namespace polarmax::detail {

namespace {

class Polytope {
 public:
  Polytope(std::size_t dim, std::vector<double> q) : dim_(dim), q_(std::move(q)) {}

  std::size_t count() const { return q_.size() / dim_; }
  const double* vertex(std::size_t i) const { return q_.data() + i * dim_; }

  double dot(const double* a, const double* b) const {
    double s = 0;
    for (std::size_t d = 0; d < dim_; ++d) s += a[d] * b[d];
    return s;
  }

  std::vector<double> combine(const std::vector<std::size_t>& corral, const std::vector<double>& w) const {
    std::vector<double> x(dim_, 0.0);
    for (std::size_t i = 0; i < corral.size(); ++i) {
      const double* v = vertex(corral[i]);
      for (std::size_t d = 0; d < dim_; ++d) x[d] += w[i] * v[d];
    }
    return x;
  }

  // Barycentric weights of the point of aff(corral) nearest the origin:
  // least squares min |q0 + E lambda| over the edge vectors E = q_i - q0 by
  // Householder QR, which keeps close vertices well conditioned (the normal
  // equations would square the conditioning). Returns false when the corral is
  // affinely dependent.
  bool affine_minimizer(const std::vector<std::size_t>& corral, std::vector<double>& out) const {
    const std::size_t m = corral.size() - 1;
    out.assign(corral.size(), 0.0);
    if (m == 0) {
      out[0] = 1.0;
      return true;
    }
    if (m > dim_) return false;
    const double* q0 = vertex(corral[0]);
    std::vector<double> e(dim_ * m);  // column j at e[j * dim_]
    std::vector<double> rhs(dim_);
    std::vector<double> col_norm(m, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
      const double* qj = vertex(corral[j + 1]);
      for (std::size_t d = 0; d < dim_; ++d) {
        e[j * dim_ + d] = qj[d] - q0[d];
        col_norm[j] += e[j * dim_ + d] * e[j * dim_ + d];
      }
      col_norm[j] = std::sqrt(col_norm[j]);
    }
    for (std::size_t d = 0; d < dim_; ++d) rhs[d] = -q0[d];

    std::vector<double> h(dim_);
    for (std::size_t k = 0; k < m; ++k) {
      double* ck = e.data() + k * dim_;
      double alpha = 0;
      for (std::size_t d = k; d < dim_; ++d) alpha += ck[d] * ck[d];
      alpha = std::sqrt(alpha);
      if (!(alpha > 1e-12 * col_norm[k])) return false;
      if (ck[k] > 0) alpha = -alpha;
      double hh = 0;
      for (std::size_t d = k; d < dim_; ++d) {
        h[d] = ck[d] - (d == k ? alpha : 0.0);
        hh += h[d] * h[d];
      }
      auto reflect = [&](double* c) {
        double s = 0;
        for (std::size_t d = k; d < dim_; ++d) s += h[d] * c[d];
        s = 2 * s / hh;
        for (std::size_t d = k; d < dim_; ++d) c[d] -= s * h[d];
      };
      for (std::size_t j = k; j < m; ++j) reflect(e.data() + j * dim_);
      reflect(rhs.data());
    }
    std::vector<double> lambda(m);
    for (std::size_t k = m; k-- > 0;) {
      double s = rhs[k];
      for (std::size_t j = k + 1; j < m; ++j) s -= e[j * dim_ + k] * lambda[j];
      lambda[k] = s / e[k * dim_ + k];
    }
    double rest = 1.0;
    for (std::size_t j = 0; j < m; ++j) {
      out[j + 1] = lambda[j];
      rest -= lambda[j];
    }
    out[0] = rest;
    return true;
  }

 private:
  std::size_t dim_;
  std::vector<double> q_;
};

}  // namespace

MinNormResult min_norm_distance(std::span<const double> p, const PointSet& ps,
                                std::span<const AgentId> ids) {
  if (ids.empty()) throw std::invalid_argument("min_norm_distance: empty vertex set");
  const std::size_t dim = ps.dim();
  std::vector<double> q;
  q.reserve(ids.size() * dim);
  double scale2 = 0;
  for (AgentId id : ids) {
    const auto v = ps[id];
    double n2 = 0;
    for (std::size_t d = 0; d < dim; ++d) {
      q.push_back(v[d] - p[d]);
      n2 += q.back() * q.back();
    }
    scale2 = std::max(scale2, n2);
  }
  const Polytope poly(dim, std::move(q));
  const double scale = std::sqrt(scale2);
  if (scale2 == 0) return {0.0, 0.0};

  std::size_t start = 0;
  for (std::size_t i = 1; i < poly.count(); ++i)
    if (poly.dot(poly.vertex(i), poly.vertex(i)) < poly.dot(poly.vertex(start), poly.vertex(start)))
      start = i;

  std::vector<std::size_t> corral{start};
  std::vector<double> w{1.0};
  std::vector<double> x(poly.vertex(start), poly.vertex(start) + dim);
  std::vector<double> v;

  const double gap_tol = 1e-15 * scale2;
  const std::size_t max_major = 50 * (poly.count() + dim) + 100;
  bool stalled = false;
  for (std::size_t major = 0; major < max_major && !stalled; ++major) {
    const double xx = poly.dot(x.data(), x.data());
    if (xx == 0) break;
    std::size_t j = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < poly.count(); ++i) {
      const double s = poly.dot(x.data(), poly.vertex(i));
      if (s < best) {
        best = s;
        j = i;
      }
    }
    if (xx - best <= gap_tol) break;
    if (std::find(corral.begin(), corral.end(), j) != corral.end()) break;
    // A corral can hold at most dim + 1 affinely independent points.
    if (corral.size() > dim) break;
    corral.push_back(j);
    w.push_back(0.0);

    for (std::size_t minor = 0; minor <= dim + 1; ++minor) {
      if (!poly.affine_minimizer(corral, v)) {
        // The new point adds no direction: no further progress is possible.
        corral.pop_back();
        w.pop_back();
        stalled = true;
        break;
      }
      if (std::all_of(v.begin(), v.end(), [](double t) { return t > 1e-15; })) {
        w = v;
        x = poly.combine(corral, w);
        break;
      }
      double theta = 1.0;
      for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] <= 1e-15 && w[i] - v[i] > 0) theta = std::min(theta, w[i] / (w[i] - v[i]));
      for (std::size_t i = 0; i < w.size(); ++i) w[i] = (1 - theta) * w[i] + theta * v[i];
      std::vector<std::size_t> kept;
      std::vector<double> kept_w;
      for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i] > 1e-15) {
          kept.push_back(corral[i]);
          kept_w.push_back(w[i]);
        }
      if (kept.empty()) {
        kept.push_back(corral.back());
        kept_w.push_back(1.0);
      }
      double total = 0;
      for (double t : kept_w) total += t;
      for (double& t : kept_w) t /= total;
      corral = std::move(kept);
      w = std::move(kept_w);
      x = poly.combine(corral, w);
    }
  }
  return {std::sqrt(poly.dot(x.data(), x.data())), scale};
}

}  // namespace polarmax::detail
