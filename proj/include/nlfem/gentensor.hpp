#pragma once

#include "nlfem/kernel.hpp"

#include <array>
#include <span>
#include <vector>

namespace nlfem {

// Node offset k with k_j = |n_j - m_j|; unused trailing components are zero.
struct Offset {
    int d = 2;
    std::array<int, 3> k{0, 0, 0};

    int max_component() const;
};

Offset offset2(int k1, int k2);
Offset offset3(int k1, int k2, int k3);

enum class RadialPanels { SingleInterval, UnitShells };

struct QuadConfig {
    int n_radial = 64;            // nodes per radial panel
    int n_angular = 64;           // nodes per angular sector and coordinate
    RadialPanels radial_panels = RadialPanels::SingleInterval;
    int n_angular_singular = 32;  // same, for the exact singular part
};

// 2 prod B3(k_j+2) - prod B3(k_j+2-sigma_j) - prod B3(k_j+2+sigma_j), sigma = s/h
double integrand_fk(const Offset& k, std::span<const double> sigma);

// Same integrand at s = r * direction(angles); 2D angles = {theta},
// 3D angles = {theta, phi} with direction (sin t cos p, sin t sin p, cos t).
double integrand_fk_polar(const Offset& k, double r, std::span<const double> angles, double h);

// Closed forms of the 2D integrand for h = 1, r <= 1, theta in (0, pi) and
// k1 >= k2 >= 0, k1 <= 2. The first index pairs with the sine direction, so
// the value is integrand_fk_polar((k2, k1), r, theta, 1).
double closed_form_integrand_2d(int k1, int k2, double r, double theta);

// (h^d/2) int_0^{min(h,delta)} int_S f_k rho r^{d-1}, computed exactly in r.
double singular_part(const Offset& k, const KernelSpec& kernel, double h,
                     int n_angular = QuadConfig{}.n_angular_singular);

// Gauss-Legendre approximation of the same integral over (h, delta).
double regular_part(const Offset& k, const KernelSpec& kernel, double h,
                    const QuadConfig& quad = {});

class GeneratingTensor {
public:
    GeneratingTensor() = default;
    GeneratingTensor(int d, int band, double h, KernelSpec kernel, int grid_n);

    int d() const { return d_; }
    int band() const { return band_; }
    double h() const { return h_; }
    int grid_n() const { return grid_n_; }
    const KernelSpec& kernel() const { return kernel_; }

    // t_k for nonnegative k; zero outside the stored band
    double at(const Offset& k) const;
    double at(int k1, int k2, int k3 = 0) const;
    double& ref(int k1, int k2, int k3 = 0);

    std::span<const double> entries() const { return entries_; }
    std::span<double> entries() { return entries_; }

    // fill every permutation of k with value
    void set_symmetric(const Offset& k, double value);

private:
    std::size_t index(int k1, int k2, int k3) const;

    int d_ = 2;
    int band_ = 0;
    double h_ = 1.0;
    int grid_n_ = 0;
    KernelSpec kernel_{};
    std::vector<double> entries_;
};

// Band B = min(N, floor(delta/h) + 3).
int tensor_band(int N, double h, double delta);

GeneratingTensor assemble_generating_tensor(int d, int N, double h, const KernelSpec& kernel,
                                            const QuadConfig& quad = {});

// delta <= h closed forms for the tabulated kernel constant and h = 1.
GeneratingTensor closed_form_table_2d(double alpha, double delta_over_h);
GeneratingTensor closed_form_table_3d(double alpha, double delta_over_h);

// Tensor of S_h (x) M_h + M_h (x) S_h (and its 3D analogue), band 2.
GeneratingTensor classical_generating_tensor(int d, double h);

// Binary cache: "NLGT1", d, N, B as u32 LE, h, delta, alpha, c as f64 LE,
// then B^d entries, first index fastest.
void save_tensor(const GeneratingTensor& t, const std::string& path);
GeneratingTensor load_tensor(const std::string& path);

} // namespace nlfem
