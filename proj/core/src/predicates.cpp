#include "predicates.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>

namespace polarmax::detail {

namespace {

using Rational = boost::multiprecision::cpp_rational;

// Slightly above Shewchuk's first-stage bounds (3 eps and 7 eps, eps = 2^-53).
constexpr double kBound2 = 4e-16;
constexpr double kBound3 = 8e-16;
// Below this the products may have lost bits to underflow.
constexpr double kTiny = 1e-280;

}  // namespace

int orient2d(double ax, double ay, double bx, double by, double cx, double cy) {
  const double l = (bx - ax) * (cy - ay);
  const double r = (by - ay) * (cx - ax);
  const double det = l - r;
  if (std::abs(det) > kBound2 * (std::abs(l) + std::abs(r)) && std::abs(det) > kTiny) return det > 0 ? 1 : -1;
  const Rational ex = Rational(bx) - ax, ey = Rational(by) - ay;
  const Rational fx = Rational(cx) - ax, fy = Rational(cy) - ay;
  return Rational(ex * fy - ey * fx).sign();
}

int orient3d(const std::array<double, 3>& a, const std::array<double, 3>& b,
             const std::array<double, 3>& c, const std::array<double, 3>& d) {
  const double ux = b[0] - a[0], uy = b[1] - a[1], uz = b[2] - a[2];
  const double vx = c[0] - a[0], vy = c[1] - a[1], vz = c[2] - a[2];
  const double wx = d[0] - a[0], wy = d[1] - a[1], wz = d[2] - a[2];
  const double t1 = uy * vz - uz * vy, t2 = uz * vx - ux * vz, t3 = ux * vy - uy * vx;
  const double det = t1 * wx + t2 * wy + t3 * wz;
  const double perm = (std::abs(uy * vz) + std::abs(uz * vy)) * std::abs(wx) +
                      (std::abs(uz * vx) + std::abs(ux * vz)) * std::abs(wy) +
                      (std::abs(ux * vy) + std::abs(uy * vx)) * std::abs(wz);
  if (std::abs(det) > kBound3 * perm && std::abs(det) > kTiny) return det > 0 ? 1 : -1;
  std::array<Rational, 3> u, v, w;
  for (int i = 0; i < 3; ++i) {
    u[i] = Rational(b[i]) - a[i];
    v[i] = Rational(c[i]) - a[i];
    w[i] = Rational(d[i]) - a[i];
  }
  const Rational det_exact = (u[1] * v[2] - u[2] * v[1]) * w[0] + (u[2] * v[0] - u[0] * v[2]) * w[1] +
                             (u[0] * v[1] - u[1] * v[0]) * w[2];
  return det_exact.sign();
}

}  // namespace polarmax::detail
