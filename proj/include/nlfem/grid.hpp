#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

namespace nlfem {

using ScalarField = std::function<double(std::span<const double>)>;

// Uniform grid on a box with equal spacing h in every direction; unknowns
// live at the interior nodes a_j + n h, n = 1..N_j.
struct GridSpec {
    int d = 2;
    std::array<double, 3> lo{0.0, 0.0, 0.0};
    std::array<double, 3> hi{1.0, 1.0, 1.0};
    std::array<int, 3> n{1, 1, 1};
    double h = 1.0;
    double delta = 0.0;

    std::size_t size() const;
    std::vector<int> dims() const;
    // coordinate of interior node i (0-based, i = n - 1) along axis j
    double node(int j, int i) const { return lo[j] + (i + 1) * h; }
};

// Throws if the box edges are not integer multiples of h.
GridSpec make_grid(int d, std::array<double, 3> lo, std::array<double, 3> hi, double h,
                   double delta);

// Unit cube (0,1)^d or any box with equal edges.
GridSpec make_cube_grid(int d, double a, double b, double h, double delta);

// (f, phi_m) by tensor 3-point Gauss-Legendre on each of the 2^d cells around node m.
std::vector<double> assemble_rhs(const GridSpec& grid, const ScalarField& f);

// sqrt(h^d sum (uh - u)^2) over interior nodes
double discrete_l2_error(const GridSpec& grid, std::span<const double> uh, const ScalarField& u);

// nodal values of u
std::vector<double> interpolate(const GridSpec& grid, const ScalarField& u);

} // namespace nlfem
