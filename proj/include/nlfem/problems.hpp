#pragma once

#include "nlfem/gentensor.hpp"
#include "nlfem/grid.hpp"
#include "nlfem/kernel.hpp"

#include <span>

namespace nlfem {

// L_delta u(x) = int_{B_delta} (u(x+s) - u(x)) rho(|s|) ds by polar or
// spherical quadrature, pairing +s and -s. The radial rule is Gauss-Jacobi
// with weight r^{1-alpha} and n_radial nodes, the angular rule n_angular
// Gauss-Legendre nodes per sign sector.
double apply_operator_direct(const ScalarField& u, const KernelSpec& kernel,
                             std::span<const double> x, const QuadConfig& quad = {});

// L_delta e^{-lambda^2 |x|^2} for a 2D kernel with alpha = -1 (rho = c/r),
// evaluated through the error-function form of the radial integral.
// n_theta Gauss-Legendre nodes per quadrant.
double manufactured_rhs_2d(double lambda, const KernelSpec& kernel, std::span<const double> x,
                           int n_theta = 64);

} // namespace nlfem
