#pragma once

#include <array>
#include <vector>

namespace nlfem::detail {

// Unit directions and weights covering half of S^{d-1}, one Gauss-Legendre
// rule per sign sector and angular coordinate. Weights are doubled, so the
// sum integrates an even function over the whole sphere.
struct DirectionSet {
    std::vector<std::array<double, 3>> x;
    std::vector<double> w;
};

DirectionSet half_sphere(int d, int n);

} // namespace nlfem::detail
