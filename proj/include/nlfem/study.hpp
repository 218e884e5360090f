#pragma once

#include "nlfem/gentensor.hpp"
#include "nlfem/grid.hpp"
#include "nlfem/solver.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace nlfem {

// manufactured2d: u = e^{-lambda^2|x|^2} on (-1/2,1/2)^2, f = -L_delta u
// constant:       f = 1, no exact solution
// hypersingular:  f = 1 with alpha in (0,2), no exact solution
enum class ProblemKind { Manufactured2D, Constant, Hypersingular };
enum class DeltaPolicy { Fixed, Ratio };
// FineMesh solves the same problem on a mesh reference_factor times finer than
// the finest h; LocalFineMesh uses the classical stiffness tensor there.
enum class ReferencePolicy { Exact, FineMesh, LocalFineMesh };

std::string to_string(ProblemKind p);
std::string to_string(DeltaPolicy p);
std::string to_string(ReferencePolicy p);
ProblemKind problem_from_string(const std::string& s);
DeltaPolicy delta_policy_from_string(const std::string& s);
ReferencePolicy reference_from_string(const std::string& s);

struct StudySpec {
    ProblemKind problem = ProblemKind::Manufactured2D;
    int d = 2;
    double lambda = 12.0;
    double alpha = -1.0;
    Normalization normalization = Normalization::Tabulated;
    std::optional<double> explicit_c;
    DeltaPolicy delta_policy = DeltaPolicy::Fixed;
    double delta = 0.1;  // the horizon, or delta/h under the ratio policy
    std::vector<double> hs;
    double box_lo = -0.5;
    double box_hi = 0.5;
    ReferencePolicy reference = ReferencePolicy::Exact;
    int reference_factor = 4;
    QuadConfig quad;
    double tol = 1e-10;
    int maxit = 20000;
};

struct ConvergenceRecord {
    std::string problem;
    int d = 2;
    double alpha = 0.0;
    double delta = 0.0;
    std::string delta_policy;
    double h = 0.0;
    std::size_t n_total = 0;
    double error = 0.0;
    double rate = 0.0;  // NaN on the first row
    double assembly_s = 0.0;
    double solve_s = 0.0;
    int iters = 0;
};

struct ProblemSolution {
    GridSpec grid;
    KernelSpec kernel;
    GeneratingTensor tensor;
    SolveResult result;
    double assembly_s = 0.0;
};

double horizon_for(const StudySpec& spec, double h);
KernelSpec kernel_for(const StudySpec& spec, double h);
GridSpec grid_for(const StudySpec& spec, double h);

// Assemble (or reuse a cached tensor), build the operator and solve once.
ProblemSolution solve_problem(const StudySpec& spec, double h,
                              const GeneratingTensor* cached = nullptr);

// Error of uh against the exact solution, when the problem has one.
std::optional<double> exact_error(const StudySpec& spec, const GridSpec& grid,
                                  std::span<const double> uh);

std::vector<ConvergenceRecord> convergence_study(const StudySpec& spec);

// header: problem,d,alpha,delta,delta_policy,h,N_total,error,rate,assembly_s,solve_s,iters
void write_convergence_csv(const std::vector<ConvergenceRecord>& rows, std::ostream& os,
                           bool timings = true);

struct QuadStudySpec {
    int d = 2;
    double h = 1.0;
    double delta = 5.0;
    double alpha = 0.7;  // rho = r^{-d-alpha}
    std::vector<Offset> offsets;
    std::vector<int> nodes;
    int reference_nodes = 500;
    int fixed_nodes = 500;  // node count on the axis that is not varied
    RadialPanels radial_panels = RadialPanels::SingleInterval;
};

struct QuadStudyRecord {
    int d = 2;
    Offset k;
    std::string axis;  // "radial" or "angular"
    int n_radial = 0;
    int n_angular = 0;
    double value = 0.0;
    double reference = 0.0;
    double error = 0.0;
};

std::vector<QuadStudyRecord> quadrature_study(const QuadStudySpec& spec);

// header: d,k,axis,n_radial,n_angular,value,reference,error
void write_quad_csv(const std::vector<QuadStudyRecord>& rows, std::ostream& os);

// least-squares slope of log(error) against log(n)
double loglog_slope(const std::vector<double>& n, const std::vector<double>& err);

} // namespace nlfem
