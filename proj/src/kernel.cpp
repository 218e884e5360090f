#include "nlfem/kernel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nlfem {

std::string to_string(Normalization n)
{
    switch (n) {
    case Normalization::Tabulated:
        return "tabulated";
    case Normalization::MomentD:
        return "moment_d";
    case Normalization::Moment2D:
        return "moment_2d";
    case Normalization::Explicit:
        return "explicit";
    }
    return "unknown";
}

Normalization normalization_from_string(const std::string& s)
{
    if (s == "tabulated")
        return Normalization::Tabulated;
    if (s == "moment_d")
        return Normalization::MomentD;
    if (s == "moment_2d")
        return Normalization::Moment2D;
    if (s == "explicit")
        return Normalization::Explicit;
    throw std::invalid_argument("unknown kernel normalization '" + s + "'");
}

double KernelSpec::operator()(double r) const
{
    if (r <= 0.0 || r > delta)
        return 0.0;
    return c * std::pow(r, -d - alpha);
}

double sphere_area(int d)
{
    using std::numbers::pi;
    if (d == 2)
        return 2.0 * pi;
    if (d == 3)
        return 4.0 * pi;
    throw std::invalid_argument("dimension must be 2 or 3");
}

KernelSpec make_kernel(int d, double alpha, double delta, Normalization normalization,
                       std::optional<double> explicit_c)
{
    using std::numbers::pi;
    if (d != 2 && d != 3)
        throw std::invalid_argument("make_kernel: dimension must be 2 or 3");
    if (!(alpha < 2.0))
        throw std::invalid_argument("make_kernel: alpha must be < 2");
    if (alpha < -1.0)
        throw std::invalid_argument("make_kernel: alpha must be >= -1");
    if (!(delta > 0.0))
        throw std::invalid_argument("make_kernel: delta must be positive");

    KernelSpec k;
    k.d = d;
    k.alpha = alpha;
    k.delta = delta;
    k.normalization = normalization;

    // moment = c |S| delta^(2-alpha) / (2-alpha)
    const double unit = sphere_area(d) * std::pow(delta, 2.0 - alpha) / (2.0 - alpha);
    switch (normalization) {
    case Normalization::Tabulated:
        k.c = d == 2 ? 2.0 * (2.0 - alpha) * std::pow(delta, alpha - 2.0) / pi
                     : 3.0 * (2.0 - alpha) / (2.0 * pi) * std::pow(delta, alpha - 2.0);
        break;
    case Normalization::MomentD:
        k.c = d / unit;
        break;
    case Normalization::Moment2D:
        k.c = 2.0 * d / unit;
        break;
    case Normalization::Explicit:
        if (!explicit_c || !(*explicit_c > 0.0))
            throw std::invalid_argument("make_kernel: explicit normalization needs c > 0");
        k.c = *explicit_c;
        break;
    }
    return k;
}

MomentReport second_moment(const KernelSpec& spec)
{
    return {spec.c * sphere_area(spec.d) * std::pow(spec.delta, 2.0 - spec.alpha) /
            (2.0 - spec.alpha)};
}

} // namespace nlfem
