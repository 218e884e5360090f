#include "nlfem/bspline.hpp"

#include <stdexcept>

namespace nlfem {

namespace {

double constant_bspline(double t) noexcept
{
    return (t >= 0.0 && t < 1.0) ? 1.0 : 0.0;
}

double quadratic_bspline(double t) noexcept
{
    // recursion with p = 2: B_2(t) = (t B_1(t) + (3 - t) B_1(t - 1)) / 2
    return 0.5 * (t * linear_bspline(t) + (3.0 - t) * linear_bspline(t - 1.0));
}

// value, first derivative and half the second derivative of B_3 at the
// integer knots 0..4, plus the leading coefficient of each piece
constexpr double knot_value[5] = {0.0, 1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0, 0.0};
constexpr double knot_slope[5] = {0.0, 0.5, 0.0, -0.5, 0.0};
constexpr double knot_curv[5] = {0.0, 0.5, -1.0, 0.5, 0.0};
constexpr double piece_lead[4] = {1.0 / 6.0, -0.5, 0.5, -1.0 / 6.0};

} // namespace

double bspline_eval(SplineDegree p, double t)
{
    switch (p) {
    case SplineDegree::Constant:
        return constant_bspline(t);
    case SplineDegree::Linear:
        return linear_bspline(t);
    case SplineDegree::Quadratic:
        return quadratic_bspline(t);
    case SplineDegree::Cubic:
        return cubic_bspline(t);
    }
    throw std::invalid_argument("bspline_eval: degree must be 0..3");
}

double bspline_derivative(SplineDegree p, double t)
{
    switch (p) {
    case SplineDegree::Linear:
        return constant_bspline(t) - constant_bspline(t - 1.0);
    case SplineDegree::Quadratic:
        return linear_bspline(t) - linear_bspline(t - 1.0);
    case SplineDegree::Cubic:
        return quadratic_bspline(t) - quadratic_bspline(t - 1.0);
    default:
        throw std::invalid_argument("bspline_derivative: degree must be 1..3");
    }
}

std::array<double, 4> cubic_bspline_local(int knot, bool right) noexcept
{
    const int piece = right ? knot : knot - 1;
    if (piece < 0 || piece > 3)
        return {0.0, 0.0, 0.0, 0.0};
    return {knot_value[knot], knot_slope[knot], knot_curv[knot], piece_lead[piece]};
}

} // namespace nlfem
