#include "sphere.hpp"

#include "nlfem/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace nlfem::detail {

using std::numbers::pi;

DirectionSet half_sphere(int d, int n)
{
    DirectionSet s;
    if (d == 2) {
        for (int q = 0; q < 2; ++q) {
            const auto rule = gauss_legendre(n, q * pi / 2, (q + 1) * pi / 2);
            for (std::size_t i = 0; i < rule.size(); ++i) {
                s.x.push_back({std::cos(rule.x[i]), std::sin(rule.x[i]), 0.0});
                s.w.push_back(2.0 * rule.w[i]);
            }
        }
        return s;
    }
    const auto theta = gauss_legendre(n, 0.0, pi / 2);
    for (int q = 0; q < 4; ++q) {
        const auto phi = gauss_legendre(n, q * pi / 2, (q + 1) * pi / 2);
        for (std::size_t i = 0; i < theta.size(); ++i) {
            const double st = std::sin(theta.x[i]), ct = std::cos(theta.x[i]);
            for (std::size_t j = 0; j < phi.size(); ++j) {
                s.x.push_back({st * std::cos(phi.x[j]), st * std::sin(phi.x[j]), ct});
                s.w.push_back(2.0 * theta.w[i] * phi.w[j] * st);
            }
        }
    }
    return s;
}

} // namespace nlfem::detail
