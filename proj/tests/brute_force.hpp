#pragma once

// Direct quadrature of the bilinear form
//   A(phi_n, phi_m) = 1/2 int_x int_{|s|<delta} (phi_n(x+s) - phi_n(x)) (phi_m(x+s) - phi_m(x)) rho(|s|)
// for 2D hat functions on the grid x = i h, used as an independent check of the
// generating tensor. Only alpha = -1 (rho = c/r), so rho r dr = c dr in polar form.

#include "nlfem/bspline.hpp"
#include "nlfem/kernel.hpp"
#include "nlfem/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace brute {

// int psi_p(y + a) psi_q(y + b) dy, psi_p the hat centred at p h.
// The integrand is piecewise quadratic, so 2-point Gauss per piece is exact.
inline double hat_product_1d(int p, int q, double a, double b, double h)
{
    std::array<double, 6> br{(p - 1) * h - a, p * h - a, (p + 1) * h - a,
                             (q - 1) * h - b, q * h - b, (q + 1) * h - b};
    std::sort(br.begin(), br.end());
    const double lo = std::max((p - 1) * h - a, (q - 1) * h - b);
    const double hi = std::min((p + 1) * h - a, (q + 1) * h - b);
    if (hi <= lo)
        return 0.0;
    const double g = 0.5 / std::sqrt(3.0);
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < br.size(); ++i) {
        const double x0 = std::max(br[i], lo), x1 = std::min(br[i + 1], hi);
        if (x1 <= x0)
            continue;
        const double mid = 0.5 * (x0 + x1), len = x1 - x0;
        for (double y : {mid - g * len, mid + g * len})
            s += 0.5 * len * nlfem::linear_bspline((y + a) / h - p + 1) *
                 nlfem::linear_bspline((y + b) / h - q + 1);
    }
    return s;
}

// int (phi_n(x+s) - phi_n(x)) (phi_m(x+s) - phi_m(x)) dx over the plane
inline double x_integral(const int n[2], const int m[2], const double s[2], double h)
{
    auto prod = [&](double an0, double an1, double am0, double am1) {
        return hat_product_1d(n[0], m[0], an0, am0, h) * hat_product_1d(n[1], m[1], an1, am1, h);
    };
    return prod(s[0], s[1], s[0], s[1]) - prod(s[0], s[1], 0, 0) - prod(0, 0, s[0], s[1]) +
           prod(0, 0, 0, 0);
}

inline double bilinear_2d(const int n[2], const int m[2], double h, const nlfem::KernelSpec& k,
                          int n_theta = 24, int n_r = 6)
{
    using std::numbers::pi;
    if (k.d != 2 || k.alpha != -1.0)
        throw std::invalid_argument("brute force: 2D kernel with alpha = -1 only");
    const double delta = k.delta;

    // theta breaks: quadrant edges and the angles where delta|cos| or delta|sin|
    // crosses a grid line, so the radial integral is smooth in theta on each piece
    std::vector<double> tb{0.0, pi / 2, pi, 1.5 * pi, 2 * pi};
    for (int j = 1; j * h < delta; ++j) {
        const double a = std::acos(j * h / delta);
        for (double base : {0.0, pi / 2, pi, 1.5 * pi})
            for (double t : {a, pi / 2 - a})
                tb.push_back(base + t);
    }
    std::sort(tb.begin(), tb.end());

    double total = 0.0;
    for (std::size_t it = 0; it + 1 < tb.size(); ++it) {
        if (tb[it + 1] - tb[it] < 1e-14)
            continue;
        const auto rule_t = nlfem::gauss_legendre(n_theta, tb[it], tb[it + 1]);
        for (std::size_t a = 0; a < rule_t.size(); ++a) {
            const double c = std::cos(rule_t.x[a]), sn = std::sin(rule_t.x[a]);
            // radial breaks where a component of s crosses a grid line
            std::vector<double> rb{0.0, delta};
            for (int j = 1; j * h < delta; ++j) {
                if (std::abs(c) > 1e-15 && j * h / std::abs(c) < delta)
                    rb.push_back(j * h / std::abs(c));
                if (std::abs(sn) > 1e-15 && j * h / std::abs(sn) < delta)
                    rb.push_back(j * h / std::abs(sn));
            }
            std::sort(rb.begin(), rb.end());
            double ray = 0.0;
            for (std::size_t ir = 0; ir + 1 < rb.size(); ++ir) {
                if (rb[ir + 1] - rb[ir] < 1e-15)
                    continue;
                // the x-integral is a polynomial of degree <= 6 in r on each piece
                const auto rule_r = nlfem::gauss_legendre(n_r, rb[ir], rb[ir + 1]);
                for (std::size_t q = 0; q < rule_r.size(); ++q) {
                    const double s[2] = {rule_r.x[q] * c, rule_r.x[q] * sn};
                    ray += rule_r.w[q] * x_integral(n, m, s, h);
                }
            }
            total += rule_t.w[a] * ray;
        }
    }
    return 0.5 * k.c * total;
}

} // namespace brute
