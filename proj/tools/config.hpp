#pragma once

#include "nlfem/gentensor.hpp"
#include "nlfem/kernel.hpp"
#include "nlfem/study.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nlfem::cli {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Everything a subcommand may need. JSON keys mirror the nesting below;
// command-line flags override single fields.
struct ExperimentConfig {
    int d = 2;
    double box_lo = -0.5;
    double box_hi = 0.5;

    // kernel
    std::optional<double> alpha;  // default depends on the command and problem
    std::optional<double> delta;  // horizon, or delta/h under the ratio policy
    DeltaPolicy delta_policy = DeltaPolicy::Fixed;
    Normalization normalization = Normalization::Tabulated;
    std::optional<double> c;

    std::vector<double> hs;
    std::vector<int> Ns;  // interior nodes per axis, alternative to hs

    QuadConfig quad;

    ProblemKind problem = ProblemKind::Manufactured2D;
    double lambda = 12.0;
    std::optional<ReferencePolicy> reference;
    int reference_factor = 4;

    double tol = 1e-10;
    int maxit = 20000;

    std::vector<Offset> offsets;
    std::vector<int> nodes;
    int reference_nodes = 500;
    std::optional<int> fixed_nodes;

    double limit_tol = 1e-2;

    std::string output;
    std::string cache;
    int threads = 0;  // 0: all available
    bool timings = true;

    // h list from hs or Ns, or the fallback if neither is set
    std::vector<double> mesh_sizes(const std::vector<double>& fallback) const;
    double problem_alpha() const;
    StudySpec study() const;
    QuadStudySpec quad_study() const;
};

// Strict parse: unknown keys and wrong types throw ConfigError.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

// Consistency checks that need the final, flag-overridden values.
void validate(const ExperimentConfig& cfg);
// Extra checks for commands that set up and solve a problem.
void validate_problem(const ExperimentConfig& cfg);

} // namespace nlfem::cli
