#include "nlfem/quadrature.hpp"

#include <gsl/gsl_integration.h>

#include <memory>
#include <stdexcept>

namespace nlfem {

namespace {

struct FixedDeleter {
    void operator()(gsl_integration_fixed_workspace* w) const { gsl_integration_fixed_free(w); }
};

QuadratureRule from_gsl(const gsl_integration_fixed_type* type, int n, double a, double b,
                        double alpha, double beta)
{
    if (n < 1)
        throw std::invalid_argument("quadrature: node count must be positive");
    if (!(b > a))
        throw std::invalid_argument("quadrature: empty interval");
    std::unique_ptr<gsl_integration_fixed_workspace, FixedDeleter> ws(
        gsl_integration_fixed_alloc(type, static_cast<size_t>(n), a, b, alpha, beta));
    if (!ws)
        throw std::runtime_error("quadrature: gsl_integration_fixed_alloc failed");
    const double* x = gsl_integration_fixed_nodes(ws.get());
    const double* w = gsl_integration_fixed_weights(ws.get());
    QuadratureRule r;
    r.x.assign(x, x + n);
    r.w.assign(w, w + n);
    return r;
}

} // namespace

QuadratureRule gauss_legendre(int n, double a, double b)
{
    return from_gsl(gsl_integration_fixed_legendre, n, a, b, 0.0, 0.0);
}

QuadratureRule gauss_jacobi_left(int n, double a, double b, double beta)
{
    // gsl weight is (b - x)^alpha (x - a)^beta
    return from_gsl(gsl_integration_fixed_jacobi, n, a, b, 0.0, beta);
}

} // namespace nlfem
