#include "nlfem/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace nlfem {

std::size_t GridSpec::size() const
{
    std::size_t s = 1;
    for (int j = 0; j < d; ++j)
        s *= n[j];
    return s;
}

std::vector<int> GridSpec::dims() const
{
    return std::vector<int>(n.begin(), n.begin() + d);
}

GridSpec make_grid(int d, std::array<double, 3> lo, std::array<double, 3> hi, double h,
                   double delta)
{
    if (d != 2 && d != 3)
        throw std::invalid_argument("make_grid: dimension must be 2 or 3");
    if (!(h > 0.0))
        throw std::invalid_argument("make_grid: h must be positive");
    if (!(delta > 0.0))
        throw std::invalid_argument("make_grid: delta must be positive");
    GridSpec g;
    g.d = d;
    g.lo = lo;
    g.hi = hi;
    g.h = h;
    g.delta = delta;
    for (int j = 0; j < d; ++j) {
        const double len = hi[j] - lo[j];
        const long cells = std::lround(len / h);
        if (cells < 2 || std::abs(len / cells - h) > 1e-14 * std::max(1.0, h) * 1e2)
            throw std::invalid_argument("make_grid: box edges must be integer multiples of h");
        g.n[j] = static_cast<int>(cells - 1);
    }
    return g;
}

GridSpec make_cube_grid(int d, double a, double b, double h, double delta)
{
    return make_grid(d, {a, a, a}, {b, b, b}, h, delta);
}

std::vector<double> assemble_rhs(const GridSpec& grid, const ScalarField& f)
{
    const int d = grid.d;
    const double gx[3] = {0.5 - std::sqrt(0.15), 0.5, 0.5 + std::sqrt(0.15)};
    const double gw[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};

    // cells c_j = 0..N_j, cell c spans nodes c and c+1 in 0..N_j+1 numbering
    const int C0 = grid.n[0] + 1, C1 = grid.n[1] + 1, C2 = d == 3 ? grid.n[2] + 1 : 1;
    const int nq = d == 3 ? 27 : 9;
    const int corners = d == 3 ? 8 : 4;
    const std::size_t ncell = static_cast<std::size_t>(C0) * C1 * C2;
    // per cell, the weighted integral of f times each of the 2^d local hats
    std::vector<double> local(ncell * corners, 0.0);
    const double vol = std::pow(grid.h, d);

#pragma omp parallel for schedule(static)
    for (long long cell = 0; cell < static_cast<long long>(ncell); ++cell) {
        const int c0 = static_cast<int>(cell % C0);
        const int c1 = static_cast<int>((cell / C0) % C1);
        const int c2 = static_cast<int>(cell / (static_cast<long long>(C0) * C1));
        double x[3];
        for (int q = 0; q < nq; ++q) {
            const int q0 = q % 3, q1 = (q / 3) % 3, q2 = q / 9;
            x[0] = grid.lo[0] + (c0 + gx[q0]) * grid.h;
            x[1] = grid.lo[1] + (c1 + gx[q1]) * grid.h;
            double w = gw[q0] * gw[q1];
            double loc[3] = {gx[q0], gx[q1], 0.0};
            if (d == 3) {
                x[2] = grid.lo[2] + (c2 + gx[q2]) * grid.h;
                w *= gw[q2];
                loc[2] = gx[q2];
            }
            const double fw = f(std::span<const double>(x, d)) * w * vol;
            for (int c = 0; c < corners; ++c) {
                double hat = 1.0;
                for (int j = 0; j < d; ++j)
                    hat *= ((c >> j) & 1) ? loc[j] : 1.0 - loc[j];
                local[cell * corners + c] += fw * hat;
            }
        }
    }

    std::vector<double> rhs(grid.size(), 0.0);
    const int N0 = grid.n[0], N1 = grid.n[1];
#pragma omp parallel for schedule(static)
    for (long long m = 0; m < static_cast<long long>(rhs.size()); ++m) {
        const int i0 = static_cast<int>(m % N0) + 1;
        const int i1 = static_cast<int>((m / N0) % N1) + 1;
        const int i2 = d == 3 ? static_cast<int>(m / (static_cast<long long>(N0) * N1)) + 1 : 0;
        double s = 0.0;
        for (int c = 0; c < corners; ++c) {
            // corner bit j set: node is the upper end of the cell, cell = i - 1
            const int a0 = (c & 1) ? i0 - 1 : i0;
            const int a1 = (c & 2) ? i1 - 1 : i1;
            const int a2 = d == 3 ? ((c & 4) ? i2 - 1 : i2) : 0;
            const std::size_t cell = a0 + static_cast<std::size_t>(C0) * (a1 + static_cast<std::size_t>(C1) * a2);
            s += local[cell * corners + c];
        }
        rhs[m] = s;
    }
    return rhs;
}

std::vector<double> interpolate(const GridSpec& grid, const ScalarField& u)
{
    std::vector<double> v(grid.size());
    const int N0 = grid.n[0], N1 = grid.n[1];
#pragma omp parallel for schedule(static)
    for (long long m = 0; m < static_cast<long long>(v.size()); ++m) {
        double x[3];
        x[0] = grid.node(0, static_cast<int>(m % N0));
        x[1] = grid.node(1, static_cast<int>((m / N0) % N1));
        if (grid.d == 3)
            x[2] = grid.node(2, static_cast<int>(m / (static_cast<long long>(N0) * N1)));
        v[m] = u(std::span<const double>(x, grid.d));
    }
    return v;
}

double discrete_l2_error(const GridSpec& grid, std::span<const double> uh, const ScalarField& u)
{
    if (uh.size() != grid.size())
        throw std::invalid_argument("discrete_l2_error: vector length does not match the grid");
    const auto ue = interpolate(grid, u);
    double s = 0.0;
    for (std::size_t i = 0; i < ue.size(); ++i) {
        const double e = uh[i] - ue[i];
        s += e * e;
    }
    return std::sqrt(std::pow(grid.h, grid.d) * s);
}

} // namespace nlfem
