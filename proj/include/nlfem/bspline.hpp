#pragma once

#include <array>

namespace nlfem {

enum class SplineDegree : int { Constant = 0, Linear = 1, Quadratic = 2, Cubic = 3 };

// Cardinal B-spline B_p supported on [0, p+1], half-open pieces [j, j+1).
double bspline_eval(SplineDegree p, double t);

// B_p'(t) = B_{p-1}(t) - B_{p-1}(t-1). Throws for p = 0.
double bspline_derivative(SplineDegree p, double t);

inline double linear_bspline(double t) noexcept
{
    if (t <= 0.0 || t >= 2.0)
        return 0.0;
    return t < 1.0 ? t : 2.0 - t;
}

inline double cubic_bspline(double t) noexcept
{
    if (t <= 0.0 || t >= 4.0)
        return 0.0;
    if (t < 1.0)
        return t * t * t / 6.0;
    if (t < 2.0)
        return ((-0.5 * t + 2.0) * t - 2.0) * t + 2.0 / 3.0;
    if (t < 3.0)
        return ((0.5 * t - 4.0) * t + 10.0) * t - 22.0 / 3.0;
    const double u = 4.0 - t;
    return u * u * u / 6.0;
}

// Coefficients c[0..3] with B_3(knot + s) = sum c[n] s^n, valid for s in [0,1)
// when right is true and for s in (-1,0] otherwise. Zero outside the support.
std::array<double, 4> cubic_bspline_local(int knot, bool right) noexcept;

} // namespace nlfem
