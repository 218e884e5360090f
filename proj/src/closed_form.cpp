#include "nlfem/gentensor.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nlfem {

using std::numbers::pi;

double closed_form_integrand_2d(int k1, int k2, double r, double theta)
{
    if (k2 < 0 || k1 < k2 || k1 > 2)
        throw std::invalid_argument("closed_form_integrand_2d: need 2 >= k1 >= k2 >= 0");
    if (r < 0.0 || r > 1.0)
        throw std::domain_error("closed_form_integrand_2d: r must lie in (0, 1]");

    const double c = std::cos(theta);
    const double C = std::abs(c);
    const double S = std::sin(theta);
    const double C2 = C * C, C3 = C2 * C;
    const double S2 = S * S, S3 = S2 * S;
    const double r2 = r * r, r3 = r2 * r, r4 = r3 * r;

    switch (k1 * 3 + k2) {
    case 0: {
        auto b = [](double x) { return 2.0 / 3.0 - x * x + std::abs(x * x * x) / 2.0; };
        return 8.0 / 9.0 - 2.0 * b(r * C) * b(r * S);
    }
    case 3:
        return -r2 * (C3 * (-r4 * S3 / 3.0 + r3 * S2 / 2.0 + r / 6.0) +
                      C2 * (2.0 * r3 * S3 / 3.0 - r2 * S2 - 1.0 / 3.0) - 4.0 * r * S3 / 9.0 +
                      2.0 * S2 / 3.0);
    case 4:
        if (c >= 0.0)
            return -r2 *
                   (5 * C3 * r4 * S3 - 6 * C3 * r3 * S2 - 3 * C3 * r2 * S - 2 * C3 * r -
                    6 * C2 * r3 * S3 + 9 * C2 * r2 * S2 + 3 * C2 - 3 * C * r2 * S3 + 9 * C * S -
                    2 * r * S3 + 3 * S2) /
                   18.0;
        return -r2 *
               (3 * C3 * r4 * S3 - 6 * C3 * r3 * S2 + 3 * C3 * r2 * S - 2 * C3 * r -
                6 * C2 * r3 * S3 + 9 * C2 * r2 * S2 + 3 * C2 + 3 * C * r2 * S3 - 9 * C * S -
                2 * r * S3 + 3 * S2) /
               18.0;
    case 6:
        return -r3 * S3 * (3 * C3 * r3 - 6 * C2 * r2 + 4) / 36.0;
    case 7:
        if (c >= 0.0)
            return r3 * S3 * (3 * C3 * r3 - 3 * C2 * r2 - 3 * C * r - 1) / 36.0;
        return r3 * S3 * std::pow(C * r - 1.0, 3) / 36.0;
    case 8:
        return c >= 0.0 ? -r3 * r3 * S3 * C3 / 36.0 : 0.0;
    }
    return 0.0;
}

namespace {

// sum_j a[j] delta^j / (alpha - j - 2)
double series(const double (&a)[8], double alpha, double delta)
{
    double s = 0.0, p = 1.0;
    for (int j = 0; j < 8; ++j) {
        if (a[j] != 0.0)
            s += a[j] * p / (alpha - j - 2.0);
        p *= delta;
    }
    return s;
}

void check_table_args(double alpha, double delta_over_h)
{
    if (!(delta_over_h > 0.0) || delta_over_h > 1.0)
        throw std::invalid_argument("closed-form tables need 0 < delta/h <= 1");
    if (!(alpha < 2.0) || alpha < -1.0)
        throw std::invalid_argument("closed-form tables need alpha in [-1, 2)");
}

} // namespace

GeneratingTensor closed_form_table_2d(double alpha, double delta_over_h)
{
    check_table_args(alpha, delta_over_h);
    const double a = alpha, D = delta_over_h;
    // coefficients of delta^1..delta^4 inside (alpha-2)/2 * (...)
    const double t00[8] = {0, -64 / (9 * pi), -1, 32 / (15 * pi), -1 / (3 * pi), 0, 0, 0};
    const double t10[8] = {0, 40 / (27 * pi), 0.5, -56 / (45 * pi), 2 / (9 * pi), 0, 0, 0};
    const double t11[8] = {0, 32 / (27 * pi), -0.25, 32 / (45 * pi), -4 / (27 * pi), 0, 0, 0};
    const double t20[8] = {0, -16 / (27 * pi), 0, 8 / (45 * pi), -1 / (18 * pi), 0, 0, 0};
    const double t21[8] = {0, -4 / (27 * pi), 0, -4 / (45 * pi), 1 / (27 * pi), 0, 0, 0};
    const double t22[8] = {0, 0, 0, 0, -1 / (108 * pi), 0, 0, 0};
    const double f = (a - 2.0) / 2.0;

    GeneratingTensor G(2, 3, 1.0, make_kernel(2, alpha, delta_over_h), 3);
    G.set_symmetric(offset2(0, 0), 8.0 / 3.0 + f * series(t00, a, D));
    G.set_symmetric(offset2(1, 0), -1.0 / 3.0 + f * series(t10, a, D));
    G.set_symmetric(offset2(1, 1), -1.0 / 3.0 + f * series(t11, a, D));
    G.set_symmetric(offset2(2, 0), f * series(t20, a, D));
    G.set_symmetric(offset2(2, 1), f * series(t21, a, D));
    G.set_symmetric(offset2(2, 2), f * series(t22, a, D));
    return G;
}

GeneratingTensor closed_form_table_3d(double alpha, double delta_over_h)
{
    check_table_args(alpha, delta_over_h);
    const double a = alpha, D = delta_over_h;
    // t = (alpha-2) * sum_j C_j delta^j / (alpha - j - 2); the j = 0 term is a constant
    const double t000[8] = {8.0 / 3, -1, -0.8, 0.5, 2 * (pi - 4) / (35 * pi), -3.0 / 64,
                            4 / (105 * pi), -1 / (320 * pi)};
    const double t100[8] = {0, 1.0 / 18, 0.2, -11.0 / 72, -(9 * pi - 26) / (315 * pi), 5.0 / 192,
                            -22 / (945 * pi), 1 / (480 * pi)};
    const double t110[8] = {-1.0 / 6, 13.0 / 144, 0, 1.0 / 144, (27 * pi - 16) / (1890 * pi),
                            -11.0 / 768, 8 / (567 * pi), -1 / (720 * pi)};
    const double t111[8] = {-1.0 / 12, 1.0 / 24, -0.05, 1.0 / 24, -(9 * pi + 32) / (1260 * pi),
                            1.0 / 128, -8 / (945 * pi), 1 / (1080 * pi)};
    const double t200[8] = {0, -1.0 / 18, 0, 1.0 / 36, -8 / (315 * pi), -1.0 / 384,
                            4 / (945 * pi), -1 / (1920 * pi)};
    const double t210[8] = {0, -1.0 / 72, 0, -1.0 / 288, 1 / (189 * pi), 1.0 / 768,
                            -1 / (405 * pi), 1 / (2880 * pi)};
    const double t211[8] = {0, -1.0 / 288, 0, -1.0 / 288, 4 / (945 * pi), -1.0 / 1536,
                            4 / (2835 * pi), -1 / (4320 * pi)};
    const double t220[8] = {0, 0, 0, 0, -2 / (945 * pi), 0, 1 / (2835 * pi), -1 / (11520 * pi)};
    const double t221[8] = {0, 0, 0, 0, -1 / (1890 * pi), 0, -1 / (5670 * pi), 1 / (17280 * pi)};
    const double t222[8] = {0, 0, 0, 0, 0, 0, 0, -1 / (69120 * pi)};
    const double f = a - 2.0;

    GeneratingTensor G(3, 3, 1.0, make_kernel(3, alpha, delta_over_h), 3);
    G.set_symmetric(offset3(0, 0, 0), f * series(t000, a, D));
    G.set_symmetric(offset3(1, 0, 0), f * series(t100, a, D));
    G.set_symmetric(offset3(1, 1, 0), f * series(t110, a, D));
    G.set_symmetric(offset3(1, 1, 1), f * series(t111, a, D));
    G.set_symmetric(offset3(2, 0, 0), f * series(t200, a, D));
    G.set_symmetric(offset3(2, 1, 0), f * series(t210, a, D));
    G.set_symmetric(offset3(2, 1, 1), f * series(t211, a, D));
    G.set_symmetric(offset3(2, 2, 0), f * series(t220, a, D));
    G.set_symmetric(offset3(2, 2, 1), f * series(t221, a, D));
    G.set_symmetric(offset3(2, 2, 2), f * series(t222, a, D));
    return G;
}

} // namespace nlfem
