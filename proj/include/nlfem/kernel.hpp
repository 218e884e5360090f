#pragma once

#include <optional>
#include <string>

namespace nlfem {

// How the constant c of rho(r) = c r^(-d-alpha) is fixed.
//   Tabulated: 2(2-a) delta^(a-2)/pi in 2D, 3(2-a)/(2 pi) delta^(a-2) in 3D,
//              the constants the delta <= h closed-form tables assume
//   MomentD:   second moment equals d
//   Moment2D:  second moment equals 2d (L_delta -> Laplacian)
//   Explicit:  c given by the caller
enum class Normalization { Tabulated, MomentD, Moment2D, Explicit };

std::string to_string(Normalization n);
Normalization normalization_from_string(const std::string& s);

struct KernelSpec {
    int d = 2;
    double alpha = 0.0;
    double delta = 1.0;
    double c = 1.0;
    Normalization normalization = Normalization::Tabulated;

    // rho(r) for 0 < r <= delta, zero beyond the horizon
    double operator()(double r) const;
};

struct MomentReport {
    double second_moment;
};

KernelSpec make_kernel(int d, double alpha, double delta,
                       Normalization normalization = Normalization::Tabulated,
                       std::optional<double> explicit_c = std::nullopt);

MomentReport second_moment(const KernelSpec& spec);

// |S^{d-1}|
double sphere_area(int d);

} // namespace nlfem
