#include "theta_kernel.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace polarmax::detail {

namespace {

constexpr double kCut2 = kGradCutoff * kGradCutoff;

struct Quadratic {
  double operator()(double) const { return 2.0; }
};
struct Linear {
  double operator()(double r2) const { return 1.0 / std::sqrt(r2); }
};
struct EvenPower {
  double p;
  int half;
  double operator()(double r2) const {
    double f = p;
    for (int i = 0; i < half; ++i) f *= r2;
    return f;
  }
};
struct General {
  double p;
  double half;
  double operator()(double r2) const { return p * std::pow(r2, half); }
};

template <class Fn>
decltype(auto) with_factor(double p, Fn&& fn) {
  switch (classify(p)) {
    case FactorKind::Quadratic:
      return fn(Quadratic{});
    case FactorKind::Linear:
      return fn(Linear{});
    case FactorKind::EvenPower:
      return fn(EvenPower{p, static_cast<int>((p - 2) / 2)});
    case FactorKind::General:
    default:
      return fn(General{p, (p - 2) / 2});
  }
}

// Fixed-dimension run sum; D is the compile-time dimension.
template <std::size_t D, class F>
std::array<double, D> run_sum(const F& f, const double* z, const SampleBlock& b, std::size_t begin,
                              std::size_t end) {
  std::array<std::array<double, D>, 4> lane{};
  const double* ax[D];
  for (std::size_t d = 0; d < D; ++d) ax[d] = b.axis(d);

  auto add = [&](std::size_t i, std::array<double, D>& acc) {
    double w[D];
    double r2 = 0;
    for (std::size_t d = 0; d < D; ++d) {
      w[d] = z[d] - ax[d][i];
      r2 += w[d] * w[d];
    }
    const double s = r2 > kCut2 ? f(r2) : 0.0;
    for (std::size_t d = 0; d < D; ++d) acc[d] += s * w[d];
  };

  std::size_t i = begin;
  for (; i + 4 <= end; i += 4) {
    add(i, lane[0]);
    add(i + 1, lane[1]);
    add(i + 2, lane[2]);
    add(i + 3, lane[3]);
  }
  for (std::size_t l = 0; i < end; ++i, ++l) add(i, lane[l]);

  std::array<double, D> out{};
  for (std::size_t d = 0; d < D; ++d) out[d] = (lane[0][d] + lane[1][d]) + (lane[2][d] + lane[3][d]);
  return out;
}

template <std::size_t D, class F>
std::array<double, D> tree_sum(const F& f, const double* z, const SampleBlock& b, std::size_t first_run,
                               std::size_t last_run) {
  if (last_run - first_run == 1) {
    const std::size_t begin = first_run * kSumBlock;
    const std::size_t end = std::min(b.size(), begin + kSumBlock);
    return run_sum<D>(f, z, b, begin, end);
  }
  const std::size_t mid = first_run + (last_run - first_run) / 2;
  auto lhs = tree_sum<D>(f, z, b, first_run, mid);
  const auto rhs = tree_sum<D>(f, z, b, mid, last_run);
  for (std::size_t d = 0; d < D; ++d) lhs[d] += rhs[d];
  return lhs;
}

// Runtime-dimension variant with the same summation order.
template <class F>
void tree_sum_dynamic(const F& f, const double* z, const SampleBlock& b, std::size_t first_run,
                      std::size_t last_run, double* out) {
  const std::size_t dim = b.dim();
  if (last_run - first_run == 1) {
    const std::size_t begin = first_run * kSumBlock;
    const std::size_t end = std::min(b.size(), begin + kSumBlock);
    std::vector<double> lane(4 * dim, 0.0);
    std::vector<double> w(dim);
    for (std::size_t i = begin; i < end; ++i) {
      double r2 = 0;
      for (std::size_t d = 0; d < dim; ++d) {
        w[d] = z[d] - b.axis(d)[i];
        r2 += w[d] * w[d];
      }
      const double s = r2 > kCut2 ? f(r2) : 0.0;
      double* acc = lane.data() + ((i - begin) % 4) * dim;
      for (std::size_t d = 0; d < dim; ++d) acc[d] += s * w[d];
    }
    for (std::size_t d = 0; d < dim; ++d)
      out[d] = (lane[d] + lane[dim + d]) + (lane[2 * dim + d] + lane[3 * dim + d]);
    return;
  }
  const std::size_t mid = first_run + (last_run - first_run) / 2;
  std::vector<double> rhs(dim);
  tree_sum_dynamic(f, z, b, first_run, mid, out);
  tree_sum_dynamic(f, z, b, mid, last_run, rhs.data());
  for (std::size_t d = 0; d < dim; ++d) out[d] += rhs[d];
}

template <std::size_t D, class F>
void fixed(const F& f, std::span<const double> z, const SampleBlock& b, std::size_t runs,
           std::span<double> out) {
  const auto s = tree_sum<D>(f, z.data(), b, 0, runs);
  const double n = static_cast<double>(b.size());
  for (std::size_t d = 0; d < D; ++d) out[d] = s[d] / n;
}

}  // namespace

FactorKind classify(double p) {
  if (p == 2.0) return FactorKind::Quadratic;
  if (p == 1.0) return FactorKind::Linear;
  if (p > 2.0 && p <= 64.0 && std::floor(p) == p && static_cast<long>(p) % 2 == 0)
    return FactorKind::EvenPower;
  return FactorKind::General;
}

void SampleBlock::gather(const PointSet& ps, std::span<const AgentId> ids) {
  dim_ = ps.dim();
  n_ = ids.size();
  soa_.resize(dim_ * n_);
  for (std::size_t i = 0; i < n_; ++i) {
    const auto p = ps[ids[i]];
    for (std::size_t d = 0; d < dim_; ++d) soa_[d * n_ + i] = p[d];
  }
}

void theta_over_block(const MetricFamily& m, std::span<const double> z, const SampleBlock& block,
                      std::span<double> out) {
  if (block.size() == 0) throw std::invalid_argument("theta: empty sample");
  const std::size_t runs = (block.size() + kSumBlock - 1) / kSumBlock;
  with_factor(m.exponent(), [&](const auto& f) {
    switch (block.dim()) {
      case 1:
        fixed<1>(f, z, block, runs, out);
        break;
      case 2:
        fixed<2>(f, z, block, runs, out);
        break;
      case 3:
        fixed<3>(f, z, block, runs, out);
        break;
      default: {
        tree_sum_dynamic(f, z.data(), block, 0, runs, out.data());
        const double n = static_cast<double>(block.size());
        for (std::size_t d = 0; d < block.dim(); ++d) out[d] /= n;
      }
    }
  });
}

}  // namespace polarmax::detail

namespace polarmax {

double MetricFamily::gradient_factor(double norm2) const {
  if (!(norm2 > kGradCutoff * kGradCutoff)) return 0.0;
  return detail::with_factor(p_, [&](const auto& f) { return f(norm2); });
}

}  // namespace polarmax
