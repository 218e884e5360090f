#include "nlfem/gentensor.hpp"

#include "nlfem/bspline.hpp"
#include "nlfem/quadrature.hpp"
#include "sphere.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nlfem {

using std::numbers::pi;

int Offset::max_component() const
{
    return *std::max_element(k.begin(), k.begin() + d);
}

Offset offset2(int k1, int k2)
{
    return {2, {k1, k2, 0}};
}

Offset offset3(int k1, int k2, int k3)
{
    return {3, {k1, k2, k3}};
}

double integrand_fk(const Offset& k, std::span<const double> sigma)
{
    double p0 = 1.0, pm = 1.0, pp = 1.0;
    for (int j = 0; j < k.d; ++j) {
        const double t = k.k[j] + 2.0;
        p0 *= cubic_bspline(t);
        pm *= cubic_bspline(t - sigma[j]);
        pp *= cubic_bspline(t + sigma[j]);
    }
    return 2.0 * p0 - pm - pp;
}

namespace {

using detail::DirectionSet;
using detail::half_sphere;

std::array<double, 3> direction(int d, std::span<const double> angles)
{
    if (d == 2)
        return {std::cos(angles[0]), std::sin(angles[0]), 0.0};
    const double st = std::sin(angles[0]);
    return {st * std::cos(angles[1]), st * std::sin(angles[1]), std::cos(angles[0])};
}

using Poly = std::array<double, 10>;

// coefficients of prod_j B3(knot_j + u * x_j) in u, valid for 0 <= u <= 1
Poly factor_product(const Offset& k, const std::array<double, 3>& x, double sign)
{
    Poly p{};
    p[0] = 1.0;
    int deg = 0;
    for (int j = 0; j < k.d; ++j) {
        const double xj = sign * x[j];
        auto c = cubic_bspline_local(k.k[j] + 2, xj >= 0.0);
        double pw = 1.0;
        for (auto& cn : c) {
            cn *= pw;
            pw *= xj;
        }
        Poly q{};
        for (int a = 0; a <= deg; ++a)
            for (int b = 0; b < 4; ++b)
                q[a + b] += p[a] * c[b];
        p = q;
        deg += 3;
    }
    return p;
}

double kernel_scale(const KernelSpec& kernel, double h)
{
    // rho(r) r^{d-1} dr in the scaled radius u = r/h
    return 0.5 * kernel.c * std::pow(h, kernel.d - kernel.alpha);
}

struct RegularRule {
    std::vector<double> u;   // scaled radius r/h
    std::vector<double> wu;  // radial weight times u^{-1-alpha}
    DirectionSet dirs;
};

RegularRule make_regular_rule(const KernelSpec& kernel, double h, const QuadConfig& quad)
{
    if (quad.n_radial < 2 || quad.n_angular < 2)
        throw std::invalid_argument("QuadConfig: node counts must be at least 2");
    RegularRule rr;
    const double D = kernel.delta / h;
    if (!(D > 1.0))
        return rr;
    std::vector<std::pair<double, double>> panels;
    if (quad.radial_panels == RadialPanels::SingleInterval) {
        panels.emplace_back(1.0, D);
    } else {
        for (double a = 1.0; a < D; a += 1.0)
            panels.emplace_back(a, std::min(a + 1.0, D));
    }
    for (auto [a, b] : panels) {
        if (!(b > a))
            continue;
        const auto rule = gauss_legendre(quad.n_radial, a, b);
        for (std::size_t i = 0; i < rule.size(); ++i) {
            rr.u.push_back(rule.x[i]);
            rr.wu.push_back(rule.w[i] * std::pow(rule.x[i], -1.0 - kernel.alpha));
        }
    }
    rr.dirs = half_sphere(kernel.d, quad.n_angular);
    return rr;
}

double regular_sum(const Offset& k, const RegularRule& rr)
{
    const int d = k.d;
    double t0[3], p0 = 1.0;
    for (int j = 0; j < d; ++j) {
        t0[j] = k.k[j] + 2.0;
        p0 *= cubic_bspline(t0[j]);
    }
    const double two_p0 = 2.0 * p0;
    const std::size_t nd = rr.dirs.w.size();
    double total = 0.0;
    for (std::size_t i = 0; i < rr.u.size(); ++i) {
        const double u = rr.u[i];
        double ang = 0.0;
        for (std::size_t a = 0; a < nd; ++a) {
            const auto& x = rr.dirs.x[a];
            double pm = 1.0, pp = 1.0;
            for (int j = 0; j < d; ++j) {
                const double s = u * x[j];
                pm *= cubic_bspline(t0[j] - s);
                pp *= cubic_bspline(t0[j] + s);
            }
            ang += rr.dirs.w[a] * (two_p0 - pm - pp);
        }
        total += rr.wu[i] * ang;
    }
    return total;
}

struct SingularRule {
    DirectionSet dirs;
    std::array<double, 10> moment{};  // int_0^U u^{m-1-alpha} du
};

SingularRule make_singular_rule(const KernelSpec& kernel, double h, int n_angular)
{
    SingularRule sr;
    sr.dirs = half_sphere(kernel.d, n_angular);
    const double U = std::min(1.0, kernel.delta / h);
    for (int m = 2; m <= 3 * kernel.d; ++m)
        sr.moment[m] = std::pow(U, m - kernel.alpha) / (m - kernel.alpha);
    return sr;
}

double singular_sum(const Offset& k, const SingularRule& sr)
{
    if (k.max_component() > 2)
        return 0.0;
    const int top = 3 * k.d;
    std::array<double, 10> acc{};
    for (std::size_t a = 0; a < sr.dirs.w.size(); ++a) {
        const Poly pp = factor_product(k, sr.dirs.x[a], 1.0);
        const Poly pm = factor_product(k, sr.dirs.x[a], -1.0);
        // constant and linear terms cancel identically
        for (int m = 2; m <= top; ++m)
            acc[m] -= sr.dirs.w[a] * (pp[m] + pm[m]);
    }
    double s = 0.0;
    for (int m = 2; m <= top; ++m)
        s += acc[m] * sr.moment[m];
    return s;
}

void check_kernel(const KernelSpec& kernel, double h)
{
    if (!(kernel.delta > 0.0))
        throw std::invalid_argument("kernel horizon must be positive");
    if (!(h > 0.0))
        throw std::invalid_argument("mesh size must be positive");
}

} // namespace

double integrand_fk_polar(const Offset& k, double r, std::span<const double> angles, double h)
{
    const auto x = direction(k.d, angles);
    const std::array<double, 3> sigma{r / h * x[0], r / h * x[1], r / h * x[2]};
    return integrand_fk(k, sigma);
}

double singular_part(const Offset& k, const KernelSpec& kernel, double h, int n_angular)
{
    check_kernel(kernel, h);
    const auto sr = make_singular_rule(kernel, h, n_angular);
    return kernel_scale(kernel, h) * singular_sum(k, sr);
}

double regular_part(const Offset& k, const KernelSpec& kernel, double h, const QuadConfig& quad)
{
    check_kernel(kernel, h);
    if (!(kernel.delta > h))
        return 0.0;
    if (k.max_component() >= kernel.delta / h + 2.0)
        return 0.0;
    const auto rr = make_regular_rule(kernel, h, quad);
    return kernel_scale(kernel, h) * regular_sum(k, rr);
}

GeneratingTensor::GeneratingTensor(int d, int band, double h, KernelSpec kernel, int grid_n)
    : d_(d), band_(band), h_(h), grid_n_(grid_n), kernel_(kernel)
{
    if (d != 2 && d != 3)
        throw std::invalid_argument("GeneratingTensor: dimension must be 2 or 3");
    if (band < 1)
        throw std::invalid_argument("GeneratingTensor: band must be positive");
    std::size_t n = 1;
    for (int j = 0; j < d; ++j)
        n *= static_cast<std::size_t>(band);
    entries_.assign(n, 0.0);
}

std::size_t GeneratingTensor::index(int k1, int k2, int k3) const
{
    const auto B = static_cast<std::size_t>(band_);
    return static_cast<std::size_t>(k1) + B * (static_cast<std::size_t>(k2) + B * static_cast<std::size_t>(k3));
}

double GeneratingTensor::at(int k1, int k2, int k3) const
{
    k1 = std::abs(k1);
    k2 = std::abs(k2);
    k3 = std::abs(k3);
    if (k1 >= band_ || k2 >= band_ || (d_ == 3 ? k3 >= band_ : k3 != 0))
        return 0.0;
    return entries_[index(k1, k2, k3)];
}

double GeneratingTensor::at(const Offset& k) const
{
    return at(k.k[0], k.k[1], k.k[2]);
}

double& GeneratingTensor::ref(int k1, int k2, int k3)
{
    if (k1 < 0 || k2 < 0 || k3 < 0 || k1 >= band_ || k2 >= band_ ||
        (d_ == 3 ? k3 >= band_ : k3 != 0))
        throw std::out_of_range("GeneratingTensor: offset outside band");
    return entries_[index(k1, k2, k3)];
}

void GeneratingTensor::set_symmetric(const Offset& k, double value)
{
    std::array<int, 3> p = k.k;
    std::sort(p.begin(), p.begin() + d_);
    do {
        ref(p[0], p[1], p[2]) = value;
    } while (std::next_permutation(p.begin(), p.begin() + d_));
}

int tensor_band(int N, double h, double delta)
{
    return std::min(N, static_cast<int>(std::floor(delta / h)) + 3);
}

GeneratingTensor assemble_generating_tensor(int d, int N, double h, const KernelSpec& kernel,
                                            const QuadConfig& quad)
{
    if (N < 1)
        throw std::invalid_argument("assemble_generating_tensor: N must be positive");
    check_kernel(kernel, h);
    if (kernel.d != d)
        throw std::invalid_argument("assemble_generating_tensor: kernel dimension mismatch");

    const int B = tensor_band(N, h, kernel.delta);
    GeneratingTensor G(d, B, h, kernel, N);

    std::vector<Offset> sorted;
    for (int a = 0; a < B; ++a)
        for (int b = 0; b <= a; ++b) {
            if (d == 2) {
                sorted.push_back(offset2(a, b));
                continue;
            }
            for (int c = 0; c <= b; ++c)
                sorted.push_back(offset3(a, b, c));
        }

    const auto sr = make_singular_rule(kernel, h, quad.n_angular_singular);
    const auto rr = make_regular_rule(kernel, h, quad);
    const double D = kernel.delta / h;
    const double scale = kernel_scale(kernel, h);

    std::vector<double> values(sorted.size(), 0.0);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const Offset& k = sorted[i];
        double v = singular_sum(k, sr);
        if (D > 1.0 && k.max_component() < D + 2.0)
            v += regular_sum(k, rr);
        values[i] = scale * v;
    }
    for (std::size_t i = 0; i < sorted.size(); ++i)
        G.set_symmetric(sorted[i], values[i]);
    return G;
}

GeneratingTensor classical_generating_tensor(int d, double h)
{
    if (d != 2 && d != 3)
        throw std::invalid_argument("classical_generating_tensor: dimension must be 2 or 3");
    const double S[2] = {2.0 / h, -1.0 / h};
    const double M[2] = {4.0 * h / 6.0, h / 6.0};
    KernelSpec none;
    none.d = d;
    none.delta = 0.0;
    none.c = 0.0;
    none.normalization = Normalization::Explicit;
    GeneratingTensor G(d, 2, h, none, 2);
    const int top = d == 3 ? 2 : 1;
    for (int c = 0; c < top; ++c)
        for (int b = 0; b < 2; ++b)
            for (int a = 0; a < 2; ++a) {
                const int k[3] = {a, b, c};
                double sum = 0.0;
                for (int i = 0; i < d; ++i) {
                    double term = S[k[i]];
                    for (int j = 0; j < d; ++j)
                        if (j != i)
                            term *= M[k[j]];
                    sum += term;
                }
                G.ref(a, b, c) = sum;
            }
    return G;
}

} // namespace nlfem
