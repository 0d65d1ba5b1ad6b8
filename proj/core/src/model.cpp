#include "polarmax/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "theta_kernel.hpp"

namespace polarmax {

namespace {

void check_agent(const Ensemble& e, std::size_t k) {
  if (k >= e.size())
    throw std::out_of_range("agent index " + std::to_string(k) + " out of range for " +
                            std::to_string(e.size()) + " agents");
}

double norm2_diff(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t d = 0; d < a.size(); ++d) s += (a[d] - b[d]) * (a[d] - b[d]);
  return s;
}

// g as a function of |w|^2.
double g_of_norm2(double p, double r2) {
  if (p == 2.0) return r2;
  if (p == 1.0) return std::sqrt(r2);
  return std::pow(r2, p / 2);
}

// Balanced pairwise sum of a term sequence.
template <class Term>
double tree_accumulate(std::size_t begin, std::size_t end, const Term& term) {
  if (end - begin <= kSumBlock) {
    double s = 0;
    for (std::size_t i = begin; i < end; ++i) s += term(i);
    return s;
  }
  const std::size_t mid = begin + (end - begin) / 2;
  return tree_accumulate(begin, mid, term) + tree_accumulate(mid, end, term);
}

}  // namespace

MetricFamily::MetricFamily(double exponent) : p_(exponent) {
  if (!(exponent > 0) || !std::isfinite(exponent))
    throw std::invalid_argument("metric exponent p must be a positive finite number");
}

double MetricFamily::value(std::span<const double> w) const {
  double r2 = 0;
  for (double x : w) r2 += x * x;
  return g_of_norm2(p_, r2);
}

std::vector<double> MetricFamily::gradient(std::span<const double> w) const {
  double r2 = 0;
  for (double x : w) {
    if (!std::isfinite(x)) throw std::invalid_argument("grad_g: non-finite input");
    r2 += x * x;
  }
  const double s = gradient_factor(r2);
  std::vector<double> out(w.size());
  for (std::size_t d = 0; d < w.size(); ++d) out[d] = s * w[d];
  return out;
}

std::vector<double> grad_g(std::span<const double> w, const MetricFamily& m) { return m.gradient(w); }

double polarization(const Ensemble& e, const MetricFamily& m) {
  const std::size_t n = e.size();
  if (n == 0) return 0.0;
  const auto& ps = e.positions;
  const double p = m.exponent();
  // Each unordered pair once, doubled; the diagonal contributes zero.
  const double upper = tree_accumulate(0, n, [&](std::size_t k) {
    double row = 0;
    const auto zk = ps[k];
    for (std::size_t l = k + 1; l < n; ++l) row += g_of_norm2(p, norm2_diff(zk, ps[l]));
    return row;
  });
  const double nn = static_cast<double>(n);
  return 2.0 * upper / (nn * nn);
}

double polarization_quadratic(const Ensemble& e) {
  const std::size_t n = e.size();
  if (n == 0) return 0.0;
  const auto c = mass_center(e);
  const double s = tree_accumulate(0, n, [&](std::size_t k) { return norm2_diff(e.positions[k], c); });
  return 2.0 * s / static_cast<double>(n);
}

double agent_polarization(const Ensemble& e, std::size_t k, const MetricFamily& m) {
  check_agent(e, k);
  const auto zk = e.positions[k];
  const double s = tree_accumulate(0, e.size(), [&](std::size_t l) {
    return g_of_norm2(m.exponent(), norm2_diff(zk, e.positions[l]));
  });
  return s / static_cast<double>(e.size());
}

std::vector<double> mass_center(const Ensemble& e) {
  const std::size_t dim = e.dim();
  std::vector<double> c(dim, 0.0);
  if (e.size() == 0) return c;
  for (std::size_t d = 0; d < dim; ++d)
    c[d] = tree_accumulate(0, e.size(), [&](std::size_t k) { return e.positions[k][d]; }) /
           static_cast<double>(e.size());
  return c;
}

Theta theta_exact(const Ensemble& e, std::size_t k, const MetricFamily& m) {
  check_agent(e, k);
  std::vector<AgentId> all(e.size());
  std::iota(all.begin(), all.end(), AgentId{0});
  detail::SampleBlock block;
  block.gather(e.positions, all);
  Theta th{std::vector<double>(e.dim()), e.size()};
  detail::theta_over_block(m, e.positions[k], block, th.vector);
  return th;
}

Theta theta_sampled(const Ensemble& e, std::size_t k, std::span<const AgentId> sample,
                    const MetricFamily& m) {
  check_agent(e, k);
  if (sample.empty()) throw std::invalid_argument("theta_sampled: empty sample");
  std::vector<AgentId> sorted(sample.begin(), sample.end());
  for (AgentId id : sorted)
    if (id >= e.size()) throw std::out_of_range("theta_sampled: sample index out of range");
  std::sort(sorted.begin(), sorted.end());
  detail::SampleBlock block;
  block.gather(e.positions, sorted);
  Theta th{std::vector<double>(e.dim()), sorted.size()};
  detail::theta_over_block(m, e.positions[k], block, th.vector);
  return th;
}

Theta theta_quadratic(const Ensemble& e, std::size_t k) {
  check_agent(e, k);
  const auto c = mass_center(e);
  Theta th{std::vector<double>(e.dim()), e.size()};
  for (std::size_t d = 0; d < e.dim(); ++d) th.vector[d] = 2.0 * (e.positions[k][d] - c[d]);
  return th;
}

double friend_objective(const Ensemble& e, std::size_t k, std::span<const double> theta, AgentId j) {
  const auto zk = e.positions[k];
  const auto zj = e.positions[j];
  double v = 0;
  for (std::size_t d = 0; d < theta.size(); ++d) v += theta[d] * (zj[d] - zk[d]);
  return v;
}

AgentId select_friend(const Ensemble& e, std::size_t k, const Theta& th,
                      std::span<const AgentId> candidates) {
  check_agent(e, k);
  if (th.vector.size() != e.dim()) throw std::invalid_argument("select_friend: theta dimension mismatch");
  auto best = static_cast<AgentId>(k);
  double best_value = 0.0;
  for (AgentId j : candidates) {
    if (j >= e.size()) throw std::out_of_range("select_friend: candidate out of range");
    const double v = friend_objective(e, k, th.vector, j);
    if (v > best_value || (v == best_value && j < best)) {
      best_value = v;
      best = j;
    }
  }
  return best;
}

}  // namespace polarmax
