#pragma once

#include <array>

namespace polarmax::detail {

// Exact orientation signs. A floating-point determinant is accepted when it
// clears a forward error bound; otherwise the determinant is re-evaluated in
// rational arithmetic.

/// Sign of (b - a) x (c - a): +1 when a, b, c turn counter-clockwise.
int orient2d(double ax, double ay, double bx, double by, double cx, double cy);

/// Sign of ((b - a) x (c - a)) . (d - a): +1 when d lies on the side the
/// right-handed normal of triangle abc points to.
int orient3d(const std::array<double, 3>& a, const std::array<double, 3>& b,
             const std::array<double, 3>& c, const std::array<double, 3>& d);

}  // namespace polarmax::detail
