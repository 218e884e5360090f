#include "nlfem/solver.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <string>

namespace nlfem {

namespace {

double dot(std::span<const double> a, std::span<const double> b)
{
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0)
{
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

} // namespace

SolveResult solve_cg(const BlockToeplitzOperator& op, std::span<const double> rhs, double tol,
                     int maxit, const IterateObserver& observe)
{
    const auto t0 = clock_type::now();
    const std::size_t n = op.size();
    if (rhs.size() != n)
        throw std::invalid_argument("solve_cg: right-hand side length does not match the grid");

    SolveResult res;
    res.x.assign(n, 0.0);
    auto& rep = res.report;

    const double bnorm = std::sqrt(dot(rhs, rhs));
    rep.residual_history.push_back(bnorm > 0.0 ? 1.0 : 0.0);
    if (bnorm == 0.0) {
        rep.solve_s = seconds_since(t0);
        return res;
    }

    std::vector<double> r(rhs.begin(), rhs.end()), p = r, q(n);
    auto ws = op.make_workspace();
    double rr = dot(r, r);
    const double stop = tol * bnorm;
    int it = 0;
    while (std::sqrt(rr) > stop) {
        if (it == maxit) {
            rep.iterations = it;
            rep.relative_residual = std::sqrt(rr) / bnorm;
            rep.solve_s = seconds_since(t0);
            throw ConvergenceError("solve_cg: no convergence after " + std::to_string(maxit) +
                                       " iterations, relative residual " +
                                       std::to_string(rep.relative_residual),
                                   rep);
        }
        const auto tm = clock_type::now();
        op.apply(p, q, ws);
        rep.matvec_s += seconds_since(tm);
        const double pq = dot(p, q);
        if (!(pq > 0.0))
            throw ConvergenceError("solve_cg: operator is not positive definite", rep);
        const double a = rr / pq;
        for (std::size_t i = 0; i < n; ++i) {
            res.x[i] += a * p[i];
            r[i] -= a * q[i];
        }
        const double rr_new = dot(r, r);
        const double beta = rr_new / rr;
        rr = rr_new;
        for (std::size_t i = 0; i < n; ++i)
            p[i] = r[i] + beta * p[i];
        ++it;
        rep.residual_history.push_back(std::sqrt(rr) / bnorm);
        if (observe)
            observe(it, res.x);
    }
    rep.iterations = it;
    rep.relative_residual = std::sqrt(rr) / bnorm;
    rep.solve_s = seconds_since(t0);
    return res;
}

} // namespace nlfem
