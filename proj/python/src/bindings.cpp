#include "nlfem/bspline.hpp"
#include "nlfem/gentensor.hpp"
#include "nlfem/kernel.hpp"
#include "nlfem/solver.hpp"
#include "nlfem/study.hpp"
#include "nlfem/toeplitz.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <stdexcept>

namespace py = pybind11;
using namespace nlfem;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

// entries as a (B,)*d array indexed [k1, k2(, k3)]
Array tensor_array(const GeneratingTensor& G)
{
    const py::ssize_t b = G.band();
    std::vector<py::ssize_t> shape(G.d(), b);
    Array out(shape);
    auto* p = out.mutable_data();
    if (G.d() == 2) {
        for (int i = 0; i < b; ++i)
            for (int j = 0; j < b; ++j)
                *p++ = G.at(i, j);
    } else {
        for (int i = 0; i < b; ++i)
            for (int j = 0; j < b; ++j)
                for (int k = 0; k < b; ++k)
                    *p++ = G.at(i, j, k);
    }
    return out;
}

Offset to_offset(const std::vector<int>& k)
{
    if (k.size() == 2)
        return offset2(k[0], k[1]);
    if (k.size() == 3)
        return offset3(k[0], k[1], k[2]);
    throw std::invalid_argument("offset must have 2 or 3 components");
}

QuadConfig quad_config(int n_radial, int n_angular)
{
    QuadConfig q;
    q.n_radial = n_radial;
    q.n_angular = n_angular;
    return q;
}

// grid vectors cross the boundary with the first index fastest, as in C++
std::vector<double> flat(const Array& a, std::size_t n)
{
    if (static_cast<std::size_t>(a.size()) != n)
        throw std::invalid_argument("vector length does not match the operator");
    return {a.data(), a.data() + n};
}

Array to_array(const std::vector<double>& v)
{
    Array out(std::vector<py::ssize_t>{static_cast<py::ssize_t>(v.size())});
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

py::dict record_dict(const ConvergenceRecord& r)
{
    py::dict d;
    d["problem"] = r.problem;
    d["d"] = r.d;
    d["alpha"] = r.alpha;
    d["delta"] = r.delta;
    d["delta_policy"] = r.delta_policy;
    d["h"] = r.h;
    d["N_total"] = r.n_total;
    d["error"] = r.error;
    d["rate"] = r.rate;
    d["assembly_s"] = r.assembly_s;
    d["solve_s"] = r.solve_s;
    d["iters"] = r.iters;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Nonlocal diffusion on uniform grids: generating tensors, Toeplitz operators, CG";

    m.def("bspline", [](int p, double t) { return bspline_eval(static_cast<SplineDegree>(p), t); },
          py::arg("p"), py::arg("t"));
    m.def("bspline_derivative",
          [](int p, double t) { return bspline_derivative(static_cast<SplineDegree>(p), t); },
          py::arg("p"), py::arg("t"));

    py::class_<KernelSpec>(m, "Kernel")
        .def_readonly("d", &KernelSpec::d)
        .def_readonly("alpha", &KernelSpec::alpha)
        .def_readonly("delta", &KernelSpec::delta)
        .def_readonly("c", &KernelSpec::c)
        .def_property_readonly("normalization",
                               [](const KernelSpec& k) { return to_string(k.normalization); })
        .def("__call__", &KernelSpec::operator(), py::arg("r"))
        .def("second_moment", [](const KernelSpec& k) { return second_moment(k).second_moment; })
        .def("__repr__", [](const KernelSpec& k) {
            return "Kernel(d=" + std::to_string(k.d) + ", alpha=" + std::to_string(k.alpha) +
                   ", delta=" + std::to_string(k.delta) + ", c=" + std::to_string(k.c) + ")";
        });
    m.def(
        "make_kernel",
        [](int d, double alpha, double delta, const std::string& normalization,
           std::optional<double> c) {
            return make_kernel(d, alpha, delta, normalization_from_string(normalization), c);
        },
        py::arg("d"), py::arg("alpha"), py::arg("delta"), py::arg("normalization") = "tabulated",
        py::arg("c") = py::none());

    py::class_<GeneratingTensor>(m, "GeneratingTensor")
        .def_property_readonly("d", &GeneratingTensor::d)
        .def_property_readonly("band", &GeneratingTensor::band)
        .def_property_readonly("h", &GeneratingTensor::h)
        .def_property_readonly("grid_n", &GeneratingTensor::grid_n)
        .def_property_readonly("kernel", &GeneratingTensor::kernel)
        .def("at", [](const GeneratingTensor& G, const std::vector<int>& k) { return G.at(to_offset(k)); })
        .def("to_numpy", &tensor_array)
        .def("save", &save_tensor, py::arg("path"));

    m.def(
        "assemble",
        [](int d, int N, double h, const KernelSpec& kernel, int n_radial, int n_angular) {
            py::gil_scoped_release release;
            return assemble_generating_tensor(d, N, h, kernel, quad_config(n_radial, n_angular));
        },
        py::arg("d"), py::arg("N"), py::arg("h"), py::arg("kernel"), py::arg("n_radial") = 64,
        py::arg("n_angular") = 64);
    m.def("load_tensor", &load_tensor, py::arg("path"));
    m.def("classical_tensor", &classical_generating_tensor, py::arg("d"), py::arg("h"));
    m.def("closed_form_table",
          [](int d, double alpha, double delta_over_h) {
              if (d == 2)
                  return closed_form_table_2d(alpha, delta_over_h);
              if (d == 3)
                  return closed_form_table_3d(alpha, delta_over_h);
              throw std::invalid_argument("d must be 2 or 3");
          },
          py::arg("d"), py::arg("alpha"), py::arg("delta_over_h"));
    m.def("tensor_band", &tensor_band, py::arg("N"), py::arg("h"), py::arg("delta"));

    py::class_<BlockToeplitzOperator>(m, "ToeplitzOperator")
        .def(py::init([](const GeneratingTensor& G, std::vector<int> dims) {
                 return build_operator(G, std::move(dims));
             }),
             py::arg("tensor"), py::arg("dims"))
        .def_property_readonly("dims", &BlockToeplitzOperator::dims)
        .def_property_readonly("padded", &BlockToeplitzOperator::padded)
        .def_property_readonly("size", &BlockToeplitzOperator::size)
        .def("matvec",
             [](const BlockToeplitzOperator& op, const Array& v) {
                 auto x = flat(v, op.size());
                 std::vector<double> y;
                 {
                     py::gil_scoped_release release;
                     y = matvec(op, x);
                 }
                 return to_array(y);
             },
             py::arg("v"))
        .def("solve",
             [](const BlockToeplitzOperator& op, const Array& rhs, double tol, int maxit) {
                 auto b = flat(rhs, op.size());
                 SolveResult res;
                 {
                     py::gil_scoped_release release;
                     res = solve_cg(op, b, tol, maxit);
                 }
                 return py::make_tuple(to_array(res.x), res.report.iterations,
                                       res.report.relative_residual);
             },
             py::arg("rhs"), py::arg("tol") = 1e-10, py::arg("maxit") = 10000);

    m.def("dense_matrix",
          [](const GeneratingTensor& G, const std::vector<int>& dims) {
              const auto A = materialize_dense(G, dims);
              const auto n = static_cast<py::ssize_t>(A.n);
              Array out({n, n});
              std::copy(A.a.begin(), A.a.end(), out.mutable_data());
              return out;
          },
          py::arg("tensor"), py::arg("dims"));

    m.def(
        "convergence_study",
        [](const std::string& problem, std::vector<double> hs, double alpha, double delta,
           const std::string& delta_policy, std::optional<std::string> reference, double lambda,
           int reference_factor, double tol) {
            StudySpec s;
            s.problem = problem_from_string(problem);
            s.hs = std::move(hs);
            s.alpha = alpha;
            s.delta = delta;
            s.delta_policy = delta_policy_from_string(delta_policy);
            s.lambda = lambda;
            s.reference_factor = reference_factor;
            s.tol = tol;
            if (reference)
                s.reference = reference_from_string(*reference);
            else if (s.problem != ProblemKind::Manufactured2D)
                s.reference = ReferencePolicy::FineMesh;
            std::vector<ConvergenceRecord> rows;
            {
                py::gil_scoped_release release;
                rows = convergence_study(s);
            }
            py::list out;
            for (const auto& r : rows)
                out.append(record_dict(r));
            return out;
        },
        py::arg("problem") = "manufactured2d", py::arg("hs") = std::vector<double>{},
        py::arg("alpha") = -1.0, py::arg("delta") = 0.1, py::arg("delta_policy") = "fixed",
        py::arg("reference") = py::none(), py::arg("lambda_") = 12.0,
        py::arg("reference_factor") = 4, py::arg("tol") = 1e-10);

    m.def("loglog_slope", &loglog_slope, py::arg("n"), py::arg("err"));
}
