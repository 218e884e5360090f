#include "nlfem/study.hpp"

#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <filesystem>
#include <sstream>

using namespace nlfem;

TEST_CASE("policies and string names")
{
    StudySpec s;
    s.delta = 0.1;
    CHECK(horizon_for(s, 0.25) == 0.1);
    s.delta_policy = DeltaPolicy::Ratio;
    s.delta = 3.0;
    CHECK(horizon_for(s, 0.25) == 0.75);
    for (auto p : {ProblemKind::Manufactured2D, ProblemKind::Constant, ProblemKind::Hypersingular})
        CHECK(problem_from_string(to_string(p)) == p);
    for (auto p : {ReferencePolicy::Exact, ReferencePolicy::FineMesh, ReferencePolicy::LocalFineMesh})
        CHECK(reference_from_string(to_string(p)) == p);
    for (auto p : {DeltaPolicy::Fixed, DeltaPolicy::Ratio})
        CHECK(delta_policy_from_string(to_string(p)) == p);
    CHECK_THROWS_AS(problem_from_string("poisson"), std::invalid_argument);

    StudySpec bad;
    bad.d = 3;
    CHECK_THROWS_AS(grid_for(bad, 0.25), std::invalid_argument);
}

TEST_CASE("manufactured convergence on coarse meshes")
{
    StudySpec s;
    s.hs = {1.0 / 8, 1.0 / 16, 1.0 / 32};
    const auto rows = convergence_study(s);
    REQUIRE(rows.size() == 3);
    CHECK(std::isnan(rows[0].rate));
    CHECK(rows[1].error < rows[0].error);
    CHECK(rows[2].rate > 1.7);
    CHECK(rows[2].rate < 2.3);
    CHECK(rows[2].n_total == 31u * 31u);
    CHECK(rows[2].delta == 0.1);

    std::ostringstream os;
    write_convergence_csv(rows, os, false);
    const auto text = os.str();
    CHECK(text.rfind("problem,d,alpha,delta,delta_policy,h,N_total,error,rate,assembly_s,solve_s,iters\n", 0) == 0);
    // first row has an empty rate and zero timings
    CHECK(text.find(",,0,0,") != std::string::npos);
    std::ostringstream again;
    write_convergence_csv(convergence_study(s), again, false);
    CHECK(again.str() == text);
}

TEST_CASE("fine-mesh references")
{
    StudySpec s;
    s.problem = ProblemKind::Constant;
    s.delta_policy = DeltaPolicy::Ratio;
    s.delta = 2.0;
    s.hs = {1.0 / 4, 1.0 / 8};
    s.reference = ReferencePolicy::FineMesh;
    const auto rows = convergence_study(s);
    CHECK(rows[1].error < rows[0].error);
    s.reference = ReferencePolicy::LocalFineMesh;
    const auto local = convergence_study(s);
    CHECK(local[1].error < local[0].error);

    // an h that is not a multiple of the reference mesh
    s.hs = {1.0 / 6, 1.0 / 8};
    CHECK_THROWS_AS(convergence_study(s), std::invalid_argument);
    s.reference = ReferencePolicy::Exact;
    CHECK_THROWS_AS(convergence_study(s), std::invalid_argument);
    s.hs.clear();
    CHECK_THROWS_AS(convergence_study(s), std::invalid_argument);
}

TEST_CASE("cached tensor gives the same solution")
{
    StudySpec s;
    const double h = 1.0 / 16;
    const auto mem = solve_problem(s, h);
    const auto path = std::filesystem::temp_directory_path() / "nlfem_study_cache.nlgt";
    save_tensor(mem.tensor, path.string());
    const auto loaded = load_tensor(path.string());
    const auto again = solve_problem(s, h, &loaded);
    CHECK(again.result.x == mem.result.x);
    CHECK(again.result.report.iterations == mem.result.report.iterations);

    StudySpec other = s;
    other.delta = 0.2;
    CHECK_THROWS_AS(solve_problem(other, h, &loaded), std::invalid_argument);
    CHECK_THROWS_AS(solve_problem(s, 1.0 / 32, &loaded), std::invalid_argument);
    std::filesystem::remove(path);
}

TEST_CASE("quadrature study and slope fit")
{
    QuadStudySpec q;
    q.offsets = {offset2(0, 0), offset2(2, 1)};
    q.nodes = {4, 8, 16};
    q.reference_nodes = 200;
    q.fixed_nodes = 200;
    const auto rows = quadrature_study(q);
    CHECK(rows.size() == 2 * 2 * 3);
    CHECK(rows[0].axis == "radial");
    CHECK(rows[0].n_radial == 4);
    CHECK(rows[0].n_angular == 200);
    CHECK(rows[3].axis == "angular");
    CHECK(rows[3].n_radial == 200);
    for (const auto& r : rows)
        CHECK(r.error == std::abs(r.value - r.reference));
    std::ostringstream os;
    write_quad_csv(rows, os);
    CHECK(os.str().rfind("d,k,axis,n_radial,n_angular,value,reference,error\n2,0-0,radial,4,200,", 0) == 0);

    CHECK(loglog_slope({2, 4, 8, 16}, {1.0 / 8, 1.0 / 64, 1.0 / 512, 1.0 / 4096}) ==
          doctest::Approx(-3.0).epsilon(1e-12));
    CHECK_THROWS_AS(loglog_slope({1}, {1}), std::invalid_argument);
    q.offsets = {offset3(0, 0, 0)};
    CHECK_THROWS_AS(quadrature_study(q), std::invalid_argument);
}
