#include "nlfem/problems.hpp"

#include "nlfem/quadrature.hpp"
#include "sphere.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace nlfem {

using std::numbers::pi;

double apply_operator_direct(const ScalarField& u, const KernelSpec& kernel,
                             std::span<const double> x, const QuadConfig& quad)
{
    const int d = kernel.d;
    if (static_cast<int>(x.size()) != d)
        throw std::invalid_argument("apply_operator_direct: point dimension mismatch");
    const auto radial = gauss_jacobi_left(quad.n_radial, 0.0, kernel.delta, 1.0 - kernel.alpha);
    const auto dirs = detail::half_sphere(d, quad.n_angular);
    const double u0 = u(x);

    double xp[3], xm[3];
    double total = 0.0;
    for (std::size_t a = 0; a < dirs.w.size(); ++a) {
        double ang = 0.0;
        for (std::size_t i = 0; i < radial.size(); ++i) {
            const double r = radial.x[i];
            for (int j = 0; j < d; ++j) {
                xp[j] = x[j] + r * dirs.x[a][j];
                xm[j] = x[j] - r * dirs.x[a][j];
            }
            const double second = u(std::span<const double>(xp, d)) +
                                  u(std::span<const double>(xm, d)) - 2.0 * u0;
            ang += radial.w[i] * second / (r * r);
        }
        total += 0.5 * dirs.w[a] * ang;
    }
    return kernel.c * total;
}

namespace {

// erf(z2) - erf(z1) for z1 <= z2, using erfc in the tails to avoid cancellation
double erf_difference(double z1, double z2)
{
    if (z1 >= 0.0)
        return std::erfc(z1) - std::erfc(z2);
    if (z2 <= 0.0)
        return std::erfc(-z2) - std::erfc(-z1);
    return std::erf(z2) - std::erf(z1);
}

struct AngleTable {
    int n = 0;
    std::vector<double> c, s, w;
};

// building the GSL rule dominates the cost of a single evaluation
const AngleTable& quadrant_angles(int n_theta)
{
    thread_local AngleTable t;
    if (t.n != n_theta) {
        t.c.clear();
        t.s.clear();
        t.w.clear();
        for (int q = 0; q < 4; ++q) {
            const auto rule = gauss_legendre(n_theta, q * pi / 2, (q + 1) * pi / 2);
            for (std::size_t i = 0; i < rule.size(); ++i) {
                t.c.push_back(std::cos(rule.x[i]));
                t.s.push_back(std::sin(rule.x[i]));
                t.w.push_back(rule.w[i]);
            }
        }
        t.n = n_theta;
    }
    return t;
}

} // namespace

double manufactured_rhs_2d(double lambda, const KernelSpec& kernel, std::span<const double> x,
                           int n_theta)
{
    if (kernel.d != 2 || kernel.alpha != -1.0)
        throw std::invalid_argument("manufactured_rhs_2d: needs a 2D kernel with alpha = -1");
    if (x.size() != 2)
        throw std::invalid_argument("manufactured_rhs_2d: point must be 2D");
    const double delta = kernel.delta;
    const double r2 = x[0] * x[0] + x[1] * x[1];
    const double l2 = lambda * lambda;
    const double pref = std::sqrt(pi) / (2.0 * lambda);

    // u(x + r w) = e^{-l^2|x|^2} e^{l^2 a^2} e^{-l^2 (r + a)^2}, a = x.w
    const auto& t = quadrant_angles(n_theta);
    const double u0 = std::exp(-l2 * r2);
    double total = 0.0;
    for (std::size_t i = 0; i < t.w.size(); ++i) {
        const double a = x[0] * t.c[i] + x[1] * t.s[i];
        const double radial =
            std::exp(l2 * (a * a - r2)) * pref * erf_difference(lambda * a, lambda * (delta + a));
        total += t.w[i] * (radial - delta * u0);
    }
    return kernel.c * total;
}

} // namespace nlfem
