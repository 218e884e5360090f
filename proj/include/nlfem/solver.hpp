#pragma once

#include "nlfem/toeplitz.hpp"

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace nlfem {

struct SolveReport {
    int iterations = 0;
    double relative_residual = 0.0;
    double matvec_s = 0.0;
    double solve_s = 0.0;
    std::vector<double> residual_history;  // ||r_i|| / ||b||, i = 0..iterations
};

struct SolveResult {
    std::vector<double> x;
    SolveReport report;
};

class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, SolveReport report)
        : std::runtime_error(what), report_(std::move(report))
    {
    }
    const SolveReport& report() const { return report_; }

private:
    SolveReport report_;
};

// called after every iteration with the iteration count and the current iterate
using IterateObserver = std::function<void(int, std::span<const double>)>;

// Conjugate gradients from a zero initial guess; stops when ||r|| <= tol ||b||.
SolveResult solve_cg(const BlockToeplitzOperator& op, std::span<const double> rhs,
                     double tol = 1e-10, int maxit = 10000, const IterateObserver& observe = {});

} // namespace nlfem
