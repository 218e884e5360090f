#include "nlfem/study.hpp"

#include "nlfem/problems.hpp"
#include "nlfem/toeplitz.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace nlfem {

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0)
{
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

double gaussian(double lambda, std::span<const double> x)
{
    double r2 = 0.0;
    for (double v : x)
        r2 += v * v;
    return std::exp(-lambda * lambda * r2);
}

} // namespace

std::string to_string(ProblemKind p)
{
    switch (p) {
    case ProblemKind::Manufactured2D:
        return "manufactured2d";
    case ProblemKind::Constant:
        return "constant";
    case ProblemKind::Hypersingular:
        return "hypersingular";
    }
    return "unknown";
}

std::string to_string(DeltaPolicy p)
{
    return p == DeltaPolicy::Fixed ? "fixed" : "ratio";
}

std::string to_string(ReferencePolicy p)
{
    switch (p) {
    case ReferencePolicy::Exact:
        return "exact";
    case ReferencePolicy::FineMesh:
        return "fine";
    case ReferencePolicy::LocalFineMesh:
        return "local-fine";
    }
    return "unknown";
}

ProblemKind problem_from_string(const std::string& s)
{
    if (s == "manufactured2d")
        return ProblemKind::Manufactured2D;
    if (s == "constant")
        return ProblemKind::Constant;
    if (s == "hypersingular")
        return ProblemKind::Hypersingular;
    throw std::invalid_argument("unknown problem '" + s + "'");
}

DeltaPolicy delta_policy_from_string(const std::string& s)
{
    if (s == "fixed")
        return DeltaPolicy::Fixed;
    if (s == "ratio")
        return DeltaPolicy::Ratio;
    throw std::invalid_argument("unknown delta policy '" + s + "'");
}

ReferencePolicy reference_from_string(const std::string& s)
{
    if (s == "exact")
        return ReferencePolicy::Exact;
    if (s == "fine")
        return ReferencePolicy::FineMesh;
    if (s == "local-fine")
        return ReferencePolicy::LocalFineMesh;
    throw std::invalid_argument("unknown reference policy '" + s + "'");
}

double horizon_for(const StudySpec& spec, double h)
{
    return spec.delta_policy == DeltaPolicy::Fixed ? spec.delta : spec.delta * h;
}

KernelSpec kernel_for(const StudySpec& spec, double h)
{
    return make_kernel(spec.d, spec.alpha, horizon_for(spec, h), spec.normalization,
                       spec.explicit_c);
}

GridSpec grid_for(const StudySpec& spec, double h)
{
    if (spec.problem == ProblemKind::Manufactured2D && spec.d != 2)
        throw std::invalid_argument("manufactured2d is a 2D problem");
    return make_cube_grid(spec.d, spec.box_lo, spec.box_hi, h, horizon_for(spec, h));
}

namespace {

std::vector<double> load_vector(const StudySpec& spec, const GridSpec& grid,
                                const KernelSpec& kernel)
{
    if (spec.problem == ProblemKind::Manufactured2D) {
        const double lambda = spec.lambda;
        return assemble_rhs(grid, [&](std::span<const double> x) {
            return -manufactured_rhs_2d(lambda, kernel, x);
        });
    }
    return assemble_rhs(grid, [](std::span<const double>) { return 1.0; });
}

ProblemSolution solve_with_tensor(const StudySpec& spec, const GridSpec& grid,
                                  const KernelSpec& kernel, GeneratingTensor tensor,
                                  double assembly_s)
{
    const auto t0 = clock_type::now();
    const auto op = build_operator(tensor, grid.dims());
    assembly_s += seconds_since(t0);
    const auto rhs = load_vector(spec, grid, kernel);
    ProblemSolution sol{grid, kernel, std::move(tensor), solve_cg(op, rhs, spec.tol, spec.maxit),
                        assembly_s};
    return sol;
}

} // namespace

ProblemSolution solve_problem(const StudySpec& spec, double h, const GeneratingTensor* cached)
{
    const auto grid = grid_for(spec, h);
    const auto kernel = kernel_for(spec, h);
    int nmax = 0;
    for (int j = 0; j < grid.d; ++j)
        nmax = std::max(nmax, grid.n[j]);

    const auto t0 = clock_type::now();
    GeneratingTensor tensor;
    if (cached) {
        if (cached->d() != spec.d || std::abs(cached->h() - h) > 1e-14 * h ||
            std::abs(cached->kernel().delta - kernel.delta) > 1e-14 * kernel.delta ||
            cached->kernel().alpha != kernel.alpha ||
            std::abs(cached->kernel().c - kernel.c) > 1e-14 * kernel.c)
            throw std::invalid_argument("cached tensor does not match the requested problem");
        if (cached->band() < tensor_band(nmax, h, kernel.delta))
            throw std::invalid_argument("cached tensor band is too small for this grid");
        tensor = *cached;
    } else {
        tensor = assemble_generating_tensor(spec.d, nmax, h, kernel, spec.quad);
    }
    return solve_with_tensor(spec, grid, kernel, std::move(tensor), seconds_since(t0));
}

std::optional<double> exact_error(const StudySpec& spec, const GridSpec& grid,
                                  std::span<const double> uh)
{
    if (spec.problem != ProblemKind::Manufactured2D)
        return std::nullopt;
    const double lambda = spec.lambda;
    return discrete_l2_error(grid, uh,
                             [lambda](std::span<const double> x) { return gaussian(lambda, x); });
}

std::vector<ConvergenceRecord> convergence_study(const StudySpec& spec)
{
    if (spec.hs.empty())
        throw std::invalid_argument("convergence_study: empty h sequence");
    if (spec.reference == ReferencePolicy::Exact && spec.problem != ProblemKind::Manufactured2D)
        throw std::invalid_argument("convergence_study: this problem has no exact solution");

    std::optional<ProblemSolution> ref;
    double h_ref = 0.0;
    if (spec.reference != ReferencePolicy::Exact) {
        h_ref = *std::min_element(spec.hs.begin(), spec.hs.end()) / spec.reference_factor;
        if (spec.reference == ReferencePolicy::FineMesh) {
            ref = solve_problem(spec, h_ref);
        } else {
            const auto grid = grid_for(spec, h_ref);
            ref = solve_with_tensor(spec, grid, kernel_for(spec, h_ref),
                                    classical_generating_tensor(spec.d, h_ref), 0.0);
        }
    }

    std::vector<ConvergenceRecord> rows;
    for (double h : spec.hs) {
        auto sol = solve_problem(spec, h);
        ConvergenceRecord rec;
        rec.problem = to_string(spec.problem);
        rec.d = spec.d;
        rec.alpha = spec.alpha;
        rec.delta = sol.kernel.delta;
        rec.delta_policy = to_string(spec.delta_policy);
        rec.h = h;
        rec.n_total = sol.grid.size();
        rec.assembly_s = sol.assembly_s;
        rec.solve_s = sol.result.report.solve_s;
        rec.iters = sol.result.report.iterations;

        if (!ref) {
            rec.error = *exact_error(spec, sol.grid, sol.result.x);
        } else {
            const long m = std::lround(h / h_ref);
            if (std::abs(m * h_ref - h) > 1e-12 * h)
                throw std::invalid_argument("convergence_study: h is not a multiple of the reference mesh");
            const auto& fg = ref->grid;
            const auto& g = sol.grid;
            double s = 0.0;
            for (std::size_t l = 0; l < g.size(); ++l) {
                std::size_t rem = l, fine = 0, stride = 1;
                for (int j = 0; j < g.d; ++j) {
                    const std::size_t i = rem % g.n[j];
                    rem /= g.n[j];
                    fine += ((i + 1) * m - 1) * stride;
                    stride *= fg.n[j];
                }
                const double e = sol.result.x[l] - ref->result.x[fine];
                s += e * e;
            }
            rec.error = std::sqrt(std::pow(h, g.d) * s);
        }
        rec.rate = rows.empty() ? std::numeric_limits<double>::quiet_NaN()
                                : std::log(rows.back().error / rec.error) / std::log(rows.back().h / h);
        rows.push_back(rec);
    }
    return rows;
}

void write_convergence_csv(const std::vector<ConvergenceRecord>& rows, std::ostream& os,
                           bool timings)
{
    os << "problem,d,alpha,delta,delta_policy,h,N_total,error,rate,assembly_s,solve_s,iters\n";
    os << std::setprecision(17);
    for (const auto& r : rows) {
        os << r.problem << ',' << r.d << ',' << r.alpha << ',' << r.delta << ',' << r.delta_policy
           << ',' << r.h << ',' << r.n_total << ',' << r.error << ',';
        if (!std::isnan(r.rate))
            os << r.rate;
        os << ',' << (timings ? r.assembly_s : 0.0) << ',' << (timings ? r.solve_s : 0.0) << ','
           << r.iters << '\n';
    }
}

std::vector<QuadStudyRecord> quadrature_study(const QuadStudySpec& spec)
{
    const auto kernel = make_kernel(spec.d, spec.alpha, spec.delta, Normalization::Explicit, 1.0);
    std::vector<QuadStudyRecord> rows;
    for (const auto& k : spec.offsets) {
        if (k.d != spec.d)
            throw std::invalid_argument("quadrature_study: offset dimension mismatch");
        for (const char* axis : {"radial", "angular"}) {
            const bool radial = std::string(axis) == "radial";
            QuadConfig q;
            q.radial_panels = spec.radial_panels;
            q.n_radial = radial ? spec.reference_nodes : spec.fixed_nodes;
            q.n_angular = radial ? spec.fixed_nodes : spec.reference_nodes;
            const double reference = regular_part(k, kernel, spec.h, q);
            for (int n : spec.nodes) {
                (radial ? q.n_radial : q.n_angular) = n;
                QuadStudyRecord rec;
                rec.d = spec.d;
                rec.k = k;
                rec.axis = axis;
                rec.n_radial = q.n_radial;
                rec.n_angular = q.n_angular;
                rec.value = regular_part(k, kernel, spec.h, q);
                rec.reference = reference;
                rec.error = std::abs(rec.value - reference);
                rows.push_back(rec);
            }
        }
    }
    return rows;
}

void write_quad_csv(const std::vector<QuadStudyRecord>& rows, std::ostream& os)
{
    os << "d,k,axis,n_radial,n_angular,value,reference,error\n";
    os << std::setprecision(17);
    for (const auto& r : rows) {
        std::string k;
        for (int j = 0; j < r.d; ++j)
            k += (j ? "-" : "") + std::to_string(r.k.k[j]);
        os << r.d << ',' << k << ',' << r.axis << ',' << r.n_radial << ',' << r.n_angular << ','
           << r.value << ',' << r.reference << ',' << r.error << '\n';
    }
}

double loglog_slope(const std::vector<double>& n, const std::vector<double>& err)
{
    if (n.size() != err.size() || n.size() < 2)
        throw std::invalid_argument("loglog_slope: need at least two matching points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(n.size());
    for (std::size_t i = 0; i < n.size(); ++i) {
        const double x = std::log(n[i]), y = std::log(err[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

} // namespace nlfem
