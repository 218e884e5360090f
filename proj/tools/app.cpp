#include "app.hpp"

#include "config.hpp"

#include "nlfem/gentensor.hpp"
#include "nlfem/solver.hpp"
#include "nlfem/study.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

namespace nlfem::cli {

namespace {

struct Flags {
    std::string config;
    std::optional<std::string> out, cache, problem, normalization, delta_policy, reference;
    std::optional<int> threads, d, reference_factor, maxit, n_radial, n_angular;
    std::optional<double> alpha, kernel_exponent, delta, lambda, tol;
    std::vector<double> h;
    std::vector<int> N;
    bool omit_timings = false;
};

void add_flags(CLI::App* sub, Flags& f)
{
    sub->set_help_flag("--help", "print this help and exit");  // frees -h for --h
    sub->add_option("--config", f.config, "JSON experiment config")->check(CLI::ExistingFile);
    sub->add_option("--out", f.out, "output path (CSV, or tensor cache for assemble)");
    sub->add_option("--cache", f.cache, "tensor cache path");
    sub->add_option("--threads", f.threads, "worker threads, default all cores");
    sub->add_option("--d", f.d, "dimension, 2 or 3");
    auto* a = sub->add_option("--alpha", f.alpha, "kernel exponent alpha in rho = c r^(-d-alpha)");
    sub->add_option("--kernel-exponent", f.kernel_exponent, "p in rho = c r^(-p); alpha = p - d")
        ->excludes(a);
    sub->add_option("--delta", f.delta, "horizon, or delta/h with --delta-policy ratio");
    sub->add_option("--delta-policy", f.delta_policy, "fixed | ratio");
    sub->add_option("--normalization", f.normalization,
                    "tabulated | moment_d | moment_2d | explicit");
    sub->add_option("--h", f.h, "mesh size(s)")->expected(1, -1);
    sub->add_option("--N", f.N, "interior nodes per axis")->expected(1, -1);
    sub->add_option("--problem", f.problem, "manufactured2d | constant | hypersingular");
    sub->add_option("--lambda", f.lambda, "Gaussian width of the manufactured solution");
    sub->add_option("--reference", f.reference, "exact | fine | local-fine");
    sub->add_option("--reference-factor", f.reference_factor, "reference mesh refinement");
    sub->add_option("--tol", f.tol, "CG relative residual, or deviation bound for limit-check");
    sub->add_option("--maxit", f.maxit, "CG iteration cap");
    sub->add_option("--n-radial", f.n_radial, "radial quadrature nodes");
    sub->add_option("--n-angular", f.n_angular, "angular quadrature nodes per sector");
    sub->add_flag("--omit-timings", f.omit_timings, "write zero timings (reproducible CSV)");
}

template <class E, class Conv>
void set_enum(const std::optional<std::string>& s, E& out, Conv conv)
{
    if (!s)
        return;
    try {
        out = conv(*s);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

ExperimentConfig resolve(const Flags& f, const std::string& command)
{
    ExperimentConfig cfg = f.config.empty() ? ExperimentConfig{} : load_config(f.config);
    if (f.out)
        cfg.output = *f.out;
    if (f.cache)
        cfg.cache = *f.cache;
    if (f.threads)
        cfg.threads = *f.threads;
    if (f.d)
        cfg.d = *f.d;
    if (f.alpha)
        cfg.alpha = *f.alpha;
    if (f.kernel_exponent)
        cfg.alpha = *f.kernel_exponent - cfg.d;
    if (f.delta)
        cfg.delta = *f.delta;
    set_enum(f.delta_policy, cfg.delta_policy, delta_policy_from_string);
    set_enum(f.normalization, cfg.normalization, normalization_from_string);
    if (!f.h.empty()) {
        cfg.hs = f.h;
        cfg.Ns.clear();
    }
    if (!f.N.empty()) {
        cfg.Ns = f.N;
        cfg.hs.clear();
    }
    set_enum(f.problem, cfg.problem, problem_from_string);
    if (f.lambda)
        cfg.lambda = *f.lambda;
    if (f.reference) {
        ReferencePolicy r{};
        set_enum(f.reference, r, reference_from_string);
        cfg.reference = r;
    }
    if (f.reference_factor)
        cfg.reference_factor = *f.reference_factor;
    if (f.tol) {
        if (command == "limit-check")
            cfg.limit_tol = *f.tol;
        else
            cfg.tol = *f.tol;
    }
    if (f.maxit)
        cfg.maxit = *f.maxit;
    if (f.n_radial)
        cfg.quad.n_radial = *f.n_radial;
    if (f.n_angular)
        cfg.quad.n_angular = *f.n_angular;
    if (f.omit_timings)
        cfg.timings = false;

    validate(cfg);
    if (command == "assemble" || command == "solve" || command == "convergence")
        validate_problem(cfg);
    return cfg;
}

// write to cfg.output when set, else to out
template <class Fn>
void emit(const ExperimentConfig& cfg, std::ostream& out, Fn&& fn)
{
    if (cfg.output.empty()) {
        fn(out);
        return;
    }
    std::ofstream os(cfg.output);
    if (!os)
        throw std::runtime_error("cannot open '" + cfg.output + "' for writing");
    fn(os);
    if (!os)
        throw std::runtime_error("failed writing '" + cfg.output + "'");
}

double single_h(const ExperimentConfig& cfg, double fallback)
{
    const auto hs = cfg.mesh_sizes({fallback});
    if (hs.size() != 1)
        throw ConfigError("this command takes a single mesh size");
    return hs.front();
}

int cmd_assemble(const ExperimentConfig& cfg, std::ostream& out)
{
    const std::string path = !cfg.cache.empty() ? cfg.cache : cfg.output;
    if (path.empty())
        throw ConfigError("assemble needs --cache (or --out) for the tensor file");
    const auto spec = cfg.study();
    const double h = single_h(cfg, 1.0 / 64);
    const auto grid = grid_for(spec, h);
    const auto kernel = kernel_for(spec, h);
    int nmax = 0;
    for (int j = 0; j < grid.d; ++j)
        nmax = std::max(nmax, grid.n[j]);
    const auto t0 = std::chrono::steady_clock::now();
    const auto G = assemble_generating_tensor(spec.d, nmax, h, kernel, spec.quad);
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    save_tensor(G, path);
    out << "wrote " << path << ": d=" << G.d() << " band=" << G.band() << " h=" << h
        << " delta=" << kernel.delta << " entries=" << G.entries().size() << " assembly_s=" << s
        << '\n';
    return exit_ok;
}

int cmd_solve(const ExperimentConfig& cfg, std::ostream& out)
{
    const auto spec = cfg.study();
    const double h = single_h(cfg, 1.0 / 64);
    std::optional<GeneratingTensor> cached;
    if (!cfg.cache.empty())
        cached = load_tensor(cfg.cache);
    const auto sol = solve_problem(spec, h, cached ? &*cached : nullptr);
    const auto& rep = sol.result.report;
    out << std::setprecision(10);
    out << "problem=" << to_string(spec.problem) << " d=" << spec.d << " h=" << h
        << " delta=" << sol.kernel.delta << " N_total=" << sol.grid.size()
        << " band=" << sol.tensor.band() << '\n';
    out << "iterations=" << rep.iterations << " relative_residual=" << rep.relative_residual
        << '\n';
    if (cfg.timings)
        out << "assembly_s=" << sol.assembly_s << " solve_s=" << rep.solve_s << '\n';
    if (const auto e = exact_error(spec, sol.grid, sol.result.x))
        out << "l2_error=" << *e << '\n';
    if (!cfg.output.empty()) {
        emit(cfg, out, [&](std::ostream& os) {
            const auto& g = sol.grid;
            os << (g.d == 2 ? "x,y,u\n" : "x,y,z,u\n") << std::setprecision(17);
            for (std::size_t l = 0; l < g.size(); ++l) {
                std::size_t rem = l;
                for (int j = 0; j < g.d; ++j) {
                    os << g.node(j, static_cast<int>(rem % g.n[j])) << ',';
                    rem /= g.n[j];
                }
                os << sol.result.x[l] << '\n';
            }
        });
    }
    return exit_ok;
}

int cmd_convergence(const ExperimentConfig& cfg, std::ostream& out)
{
    const auto rows = convergence_study(cfg.study());
    emit(cfg, out, [&](std::ostream& os) { write_convergence_csv(rows, os, cfg.timings); });
    return exit_ok;
}

int cmd_limit_check(const ExperimentConfig& cfg, std::ostream& out)
{
    const double h = single_h(cfg, 1.0);
    const double delta = cfg.delta.value_or(1e-3 * h);
    const auto kernel = make_kernel(cfg.d, cfg.alpha.value_or(0.5), delta, cfg.normalization, cfg.c);
    const auto G = assemble_generating_tensor(cfg.d, 3, h, kernel, cfg.quad);
    const auto C = classical_generating_tensor(cfg.d, h);
    double dev = 0.0;
    const int top = cfg.d == 3 ? 3 : 1;
    for (int c = 0; c < top; ++c)
        for (int b = 0; b < 3; ++b)
            for (int a = 0; a < 3; ++a)
                dev = std::max(dev, std::abs(G.at(a, b, c) - C.at(a, b, c)));
    const bool ok = dev <= cfg.limit_tol;
    out << std::setprecision(6) << "d=" << cfg.d << " alpha=" << kernel.alpha << " delta=" << delta
        << " h=" << h << " max_deviation=" << dev << " tol=" << cfg.limit_tol << ' '
        << (ok ? "OK" : "FAILED") << '\n';
    return ok ? exit_ok : exit_check_failed;
}

int cmd_quad_study(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err)
{
    const auto qs = cfg.quad_study();
    const auto rows = quadrature_study(qs);
    emit(cfg, out, [&](std::ostream& os) { write_quad_csv(rows, os); });

    // slope summary per offset and axis
    std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> fits;
    for (const auto& r : rows) {
        std::string key;
        for (int j = 0; j < r.d; ++j)
            key += (j ? "-" : "") + std::to_string(r.k.k[j]);
        key += " " + r.axis;
        auto& [n, e] = fits[key];
        if (r.error > 0.0) {
            n.push_back(r.axis == "radial" ? r.n_radial : r.n_angular);
            e.push_back(r.error);
        }
    }
    auto& log = cfg.output.empty() ? err : out;
    for (const auto& [key, ne] : fits)
        if (ne.first.size() >= 2)
            log << "slope " << key << ' ' << std::setprecision(4)
                << loglog_slope(ne.first, ne.second) << '\n';
    return exit_ok;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Nonlocal diffusion stiffness assembly and solves on uniform grids"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print this help and exit");
    Flags f;
    std::map<std::string, CLI::App*> subs;
    for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
             {"assemble", "assemble the generating tensor and write it to a cache file"},
             {"solve", "one solve, print a report"},
             {"convergence", "convergence study, CSV"},
             {"limit-check", "compare a small-delta tensor with the classical FEM tensor"},
             {"quad-study", "regular-part quadrature errors against node counts, CSV"}}) {
        subs[name] = app.add_subcommand(name, help);
        add_flags(subs[name], f);
    }

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, er;
        const int code = app.exit(e, o, er);
        out << o.str();
        err << er.str();
        return code == 0 ? exit_ok : exit_usage;
    }

    std::string command;
    for (const auto& [name, sub] : subs)
        if (sub->parsed())
            command = name;

    try {
        const auto cfg = resolve(f, command);
        if (cfg.threads > 0)
            omp_set_num_threads(cfg.threads);
        if (command == "assemble")
            return cmd_assemble(cfg, out);
        if (command == "solve")
            return cmd_solve(cfg, out);
        if (command == "convergence")
            return cmd_convergence(cfg, out);
        if (command == "limit-check")
            return cmd_limit_check(cfg, out);
        return cmd_quad_study(cfg, out, err);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return exit_usage;
    } catch (const ConvergenceError& e) {
        err << "solver did not converge: " << e.what() << '\n';
        return exit_not_converged;
    } catch (const std::invalid_argument& e) {
        err << "invalid input: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_error;
    }
}

} // namespace nlfem::cli
