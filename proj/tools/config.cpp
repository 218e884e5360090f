#include "config.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace nlfem::cli {

using json = nlohmann::json;

namespace {

void allow_keys(const json& j, const std::string& where, std::initializer_list<const char*> keys)
{
    if (!j.is_object())
        throw ConfigError(where + ": expected an object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; }))
            throw ConfigError("unknown key '" + where + (where.empty() ? "" : ".") + key + "'");
    }
}

template <class T>
void read(const json& j, const char* key, T& out, const std::string& where)
{
    if (!j.contains(key))
        return;
    const auto& v = j.at(key);
    const std::string path = where.empty() ? key : where + "." + key;
    if constexpr (std::is_same_v<T, bool>) {
        if (!v.is_boolean())
            throw ConfigError(path + ": expected a boolean");
    } else if constexpr (std::is_integral_v<T>) {
        if (!v.is_number_integer())
            throw ConfigError(path + ": expected an integer");
    } else if constexpr (std::is_floating_point_v<T>) {
        if (!v.is_number())
            throw ConfigError(path + ": expected a number");
    } else if constexpr (std::is_same_v<T, std::string>) {
        if (!v.is_string())
            throw ConfigError(path + ": expected a string");
    }
    try {
        out = v.get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

template <class T>
void read(const json& j, const char* key, std::optional<T>& out, const std::string& where)
{
    if (!j.contains(key))
        return;
    T v{};
    read(j, key, v, where);
    out = v;
}

template <class T>
void read_list(const json& j, const char* key, std::vector<T>& out)
{
    if (!j.contains(key))
        return;
    const auto& v = j.at(key);
    if (!v.is_array())
        throw ConfigError(std::string(key) + ": expected an array");
    out.clear();
    for (const auto& e : v) {
        if constexpr (std::is_integral_v<T>) {
            if (!e.is_number_integer())
                throw ConfigError(std::string(key) + ": expected integers");
        } else if (!e.is_number()) {
            throw ConfigError(std::string(key) + ": expected numbers");
        }
        out.push_back(e.get<T>());
    }
}

template <class Enum, class Conv>
void read_enum(const json& j, const char* key, Enum& out, const std::string& where, Conv conv)
{
    std::string s;
    if (!j.contains(key))
        return;
    read(j, key, s, where);
    try {
        out = conv(s);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(where + "." + key + ": " + e.what());
    }
}

RadialPanels panels_from_string(const std::string& s)
{
    if (s == "single")
        return RadialPanels::SingleInterval;
    if (s == "unit")
        return RadialPanels::UnitShells;
    throw std::invalid_argument("unknown radial panel layout '" + s + "'");
}

} // namespace

ExperimentConfig parse_config(const std::string& text)
{
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
    allow_keys(root, "",
               {"d", "box", "kernel", "h", "N", "quadrature", "problem", "reference", "solver",
                "quad_study", "limit_check", "output", "cache", "threads", "timings"});

    ExperimentConfig cfg;
    read(root, "d", cfg.d, "");
    if (root.contains("box")) {
        std::vector<double> box;
        read_list(root, "box", box);
        if (box.size() != 2)
            throw ConfigError("box: expected [lo, hi]");
        cfg.box_lo = box[0];
        cfg.box_hi = box[1];
    }
    if (root.contains("kernel")) {
        const auto& k = root.at("kernel");
        allow_keys(k, "kernel", {"alpha", "delta", "delta_policy", "normalization", "c"});
        read(k, "alpha", cfg.alpha, "kernel");
        read(k, "delta", cfg.delta, "kernel");
        read(k, "c", cfg.c, "kernel");
        read_enum(k, "delta_policy", cfg.delta_policy, "kernel", delta_policy_from_string);
        read_enum(k, "normalization", cfg.normalization, "kernel", normalization_from_string);
    }
    read_list(root, "h", cfg.hs);
    read_list(root, "N", cfg.Ns);
    if (root.contains("quadrature")) {
        const auto& q = root.at("quadrature");
        allow_keys(q, "quadrature", {"n_radial", "n_angular", "n_angular_singular", "radial_panels"});
        read(q, "n_radial", cfg.quad.n_radial, "quadrature");
        read(q, "n_angular", cfg.quad.n_angular, "quadrature");
        read(q, "n_angular_singular", cfg.quad.n_angular_singular, "quadrature");
        read_enum(q, "radial_panels", cfg.quad.radial_panels, "quadrature", panels_from_string);
    }
    if (root.contains("problem")) {
        const auto& p = root.at("problem");
        allow_keys(p, "problem", {"kind", "lambda"});
        read_enum(p, "kind", cfg.problem, "problem", problem_from_string);
        read(p, "lambda", cfg.lambda, "problem");
    }
    if (root.contains("reference")) {
        const auto& r = root.at("reference");
        allow_keys(r, "reference", {"policy", "factor"});
        ReferencePolicy pol = ReferencePolicy::Exact;
        if (r.contains("policy")) {
            read_enum(r, "policy", pol, "reference", reference_from_string);
            cfg.reference = pol;
        }
        read(r, "factor", cfg.reference_factor, "reference");
    }
    if (root.contains("solver")) {
        const auto& s = root.at("solver");
        allow_keys(s, "solver", {"tol", "maxit"});
        read(s, "tol", cfg.tol, "solver");
        read(s, "maxit", cfg.maxit, "solver");
    }
    if (root.contains("quad_study")) {
        const auto& q = root.at("quad_study");
        allow_keys(q, "quad_study", {"offsets", "nodes", "reference_nodes", "fixed_nodes"});
        if (q.contains("offsets")) {
            const auto& arr = q.at("offsets");
            if (!arr.is_array())
                throw ConfigError("quad_study.offsets: expected an array of offsets");
            for (const auto& o : arr) {
                std::vector<int> k;
                if (!o.is_array() || o.size() < 2 || o.size() > 3)
                    throw ConfigError("quad_study.offsets: each offset needs 2 or 3 integers");
                for (const auto& e : o) {
                    if (!e.is_number_integer() || e.get<int>() < 0)
                        throw ConfigError("quad_study.offsets: components must be integers >= 0");
                    k.push_back(e.get<int>());
                }
                cfg.offsets.push_back(k.size() == 2 ? offset2(k[0], k[1])
                                                    : offset3(k[0], k[1], k[2]));
            }
        }
        read_list(q, "nodes", cfg.nodes);
        read(q, "reference_nodes", cfg.reference_nodes, "quad_study");
        read(q, "fixed_nodes", cfg.fixed_nodes, "quad_study");
    }
    if (root.contains("limit_check")) {
        const auto& l = root.at("limit_check");
        allow_keys(l, "limit_check", {"tol"});
        read(l, "tol", cfg.limit_tol, "limit_check");
    }
    read(root, "output", cfg.output, "");
    read(root, "cache", cfg.cache, "");
    read(root, "threads", cfg.threads, "");
    read(root, "timings", cfg.timings, "");
    return cfg;
}

ExperimentConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

void validate(const ExperimentConfig& cfg)
{
    if (cfg.d != 2 && cfg.d != 3)
        throw ConfigError("d must be 2 or 3");
    if (!(cfg.box_hi > cfg.box_lo))
        throw ConfigError("box: hi must exceed lo");
    if (cfg.delta && !(*cfg.delta > 0.0))
        throw ConfigError("kernel.delta must be positive");
    if (cfg.alpha && (!(*cfg.alpha < 2.0) || *cfg.alpha < -1.0))
        throw ConfigError("kernel.alpha must lie in [-1, 2)");
    if (cfg.normalization == Normalization::Explicit && !cfg.c)
        throw ConfigError("kernel.c is required with the explicit normalization");
    if (cfg.c && cfg.normalization != Normalization::Explicit)
        throw ConfigError("kernel.c is only allowed with the explicit normalization");
    if (!cfg.hs.empty() && !cfg.Ns.empty())
        throw ConfigError("give either h or N, not both");
    for (double h : cfg.hs)
        if (!(h > 0.0))
            throw ConfigError("h values must be positive");
    for (int n : cfg.Ns)
        if (n < 1)
            throw ConfigError("N values must be at least 1");
    if (cfg.quad.n_radial < 1 || cfg.quad.n_angular < 1 || cfg.quad.n_angular_singular < 1)
        throw ConfigError("quadrature node counts must be positive");
    if (!(cfg.tol > 0.0) || cfg.maxit < 1)
        throw ConfigError("solver.tol and solver.maxit must be positive");
    for (const auto& k : cfg.offsets)
        if (k.d != cfg.d)
            throw ConfigError("quad_study.offsets: dimension differs from d");
    for (int n : cfg.nodes)
        if (n < 1)
            throw ConfigError("quad_study.nodes must be positive");
    if (cfg.reference_nodes < 1 || (cfg.fixed_nodes && *cfg.fixed_nodes < 1))
        throw ConfigError("quad_study node counts must be positive");
    if (!(cfg.limit_tol > 0.0))
        throw ConfigError("limit_check.tol must be positive");
    if (cfg.threads < 0)
        throw ConfigError("threads must be >= 0");
}

void validate_problem(const ExperimentConfig& cfg)
{
    const double a = cfg.problem_alpha();
    if (cfg.problem == ProblemKind::Manufactured2D && (cfg.d != 2 || a != -1.0))
        throw ConfigError("manufactured2d needs d = 2 and alpha = -1");
    if (cfg.problem == ProblemKind::Hypersingular && !(a > 0.0 && a < 2.0))
        throw ConfigError("hypersingular needs alpha in (0, 2)");
    if (cfg.reference_factor < 2)
        throw ConfigError("reference.factor must be at least 2");
}

std::vector<double> ExperimentConfig::mesh_sizes(const std::vector<double>& fallback) const
{
    if (!hs.empty())
        return hs;
    if (!Ns.empty()) {
        std::vector<double> out;
        for (int n : Ns)
            out.push_back((box_hi - box_lo) / (n + 1));
        return out;
    }
    return fallback;
}

double ExperimentConfig::problem_alpha() const
{
    return alpha.value_or(problem == ProblemKind::Hypersingular ? 1.5 : -1.0);
}

StudySpec ExperimentConfig::study() const
{
    StudySpec s;
    s.problem = problem;
    s.d = d;
    s.lambda = lambda;
    s.alpha = problem_alpha();
    s.normalization = normalization;
    s.explicit_c = c;
    s.delta_policy = delta_policy;
    s.delta = delta.value_or(delta_policy == DeltaPolicy::Fixed ? 0.1 : 2.0);
    s.box_lo = box_lo;
    s.box_hi = box_hi;
    s.reference = reference.value_or(problem == ProblemKind::Manufactured2D
                                         ? ReferencePolicy::Exact
                                         : ReferencePolicy::FineMesh);
    s.reference_factor = reference_factor;
    s.quad = quad;
    s.tol = tol;
    s.maxit = maxit;
    std::vector<double> fallback;
    for (int k = 4; k <= 8; ++k)
        fallback.push_back(1.0 / (1 << k));
    s.hs = mesh_sizes(fallback);
    return s;
}

QuadStudySpec ExperimentConfig::quad_study() const
{
    QuadStudySpec q;
    q.d = d;
    q.h = hs.empty() ? 1.0 : hs.front();
    q.delta = delta.value_or(5.0);
    q.alpha = alpha.value_or(0.7);
    q.offsets = offsets;
    if (q.offsets.empty())
        q.offsets = d == 2 ? std::vector<Offset>{offset2(0, 0), offset2(2, 1), offset2(4, 3)}
                           : std::vector<Offset>{offset3(0, 0, 0), offset3(2, 1, 1),
                                                 offset3(4, 3, 2)};
    q.nodes = nodes.empty() ? std::vector<int>{4, 6, 8, 12, 16, 24, 32} : nodes;
    q.reference_nodes = reference_nodes;
    q.fixed_nodes = fixed_nodes.value_or(d == 2 ? 500 : 64);
    q.radial_panels = quad.radial_panels;
    return q;
}

} // namespace nlfem::cli
