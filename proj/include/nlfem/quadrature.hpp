#pragma once

#include <vector>

namespace nlfem {

struct QuadratureRule {
    std::vector<double> x;
    std::vector<double> w;

    std::size_t size() const { return x.size(); }
};

// n-point Gauss-Legendre rule on (a, b).
QuadratureRule gauss_legendre(int n, double a, double b);

// n-point Gauss-Jacobi rule on (a, b) for the weight (x - a)^beta.
QuadratureRule gauss_jacobi_left(int n, double a, double b, double beta);

} // namespace nlfem
