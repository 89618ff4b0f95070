#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "detail/quadrature.hpp"

namespace levy::detail {

// E exp(-alpha B) for the Lomax law with ccdf (1 + x/scale)^-shape, real
// alpha >= 0, by adaptive quadrature after the substitution x = s t/(1-t):
//   b(alpha) = int_0^1 a exp(-alpha s t/(1-t)) (1-t)^(a-1) dt.
// `power` weights the integrand by x^power for the transform derivatives.
inline double pareto_lst_quadrature(double shape, double scale, double alpha, int power = 0) {
    const double a = shape;
    const double s = scale;
    auto integrand = [&](double t) -> double {
        if (t >= 1.0) {
            return 0.0;
        }
        const double x = s * t / (1.0 - t);
        double v = a * std::exp(-alpha * x) * std::pow(1.0 - t, a - 1.0);
        for (int p = 0; p < power; ++p) {
            v *= x;
        }
        return v;
    };
    return adaptive_simpson(integrand, 0.0, 1.0, 1e-11, 1e-300);
}

// Same transform at complex alpha with Re(alpha) >= 0 via the continued
// fraction of the upper incomplete gamma function: with z = scale * alpha,
//   b(alpha) = a e^z z^a Gamma(-a, z) = a * H(-a, z),
// where Gamma(-a, z) = e^-z z^-a H(-a, z) and H is the standard Lentz-form
// continued fraction, convergent for Re(z) > 0.
inline std::complex<double> pareto_lst_continued_fraction(double shape,
                                                          std::complex<double> z) {
    const double a = shape;
    const std::complex<double> one(1.0, 0.0);
    const double tiny = 1e-300;

    std::complex<double> b0 = z + (1.0 + a);
    std::complex<double> f = (std::abs(b0) < tiny) ? std::complex<double>(tiny, 0.0) : b0;
    std::complex<double> C = f;
    std::complex<double> D(0.0, 0.0);

    for (int n = 1; n <= 200000; ++n) {
        const std::complex<double> an(-static_cast<double>(n) * (static_cast<double>(n) + a), 0.0);
        const std::complex<double> bn = b0 + 2.0 * static_cast<double>(n);
        D = bn + an * D;
        if (std::abs(D) < tiny) D = tiny;
        C = bn + an / C;
        if (std::abs(C) < tiny) C = tiny;
        D = one / D;
        const std::complex<double> delta = C * D;
        f *= delta;
        if (std::abs(delta - one) < 1e-15) {
            return a / f;
        }
    }
    throw std::runtime_error("pareto transform continued fraction did not converge");
}

} // namespace levy::detail
