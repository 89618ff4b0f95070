#pragma once

// Independent reference arithmetic for the canonical models, used as test
// oracles. Everything here is computed from first principles (closed-form
// quadratic roots and ratios), deliberately bypassing the library's solvers
// and transform code paths.

#include <cmath>

namespace ref {

// canonical compound-Poisson model: r = 1, lambda = 0.5, exponential(1) claims
// exponent: f(a) = a - 0.5 a/(1+a) = a(a+0.5)/(1+a)
inline double cp_exponent(double a) { return a * (a + 0.5) / (1.0 + a); }

// right inverse: positive root of a^2 + (0.5 - beta) a - beta = 0
inline double cp_psi(double beta) {
    const double c = 0.5 - beta;
    return 0.5 * (-c + std::sqrt(c * c + 4.0 * beta));
}

// running-max transform over an exp(zeta) horizon, spectrally positive route
inline double cp_running_max_lst(double zeta, double a) {
    const double psi = cp_psi(zeta);
    return zeta / (zeta - cp_exponent(a)) * (psi - a) / psi;
}

// inspected-max transform as the ratio of running-max transforms
inline double cp_inspected_max_lst(double beta, double omega, double a) {
    return cp_running_max_lst(beta, a) / cp_running_max_lst(beta + omega, a);
}

inline double cp_loading() { return 0.5; }
inline double cp_exponent_dd0() { return 1.0; } // lambda E B^2 = 0.5 * 2

inline double cp_running_max_mean(double zeta) {
    return 1.0 / cp_psi(zeta) - cp_loading() / zeta;
}

inline double cp_running_max_var(double zeta) {
    const double ip = 1.0 / cp_psi(zeta);
    const double l = cp_loading() / zeta;
    return cp_exponent_dd0() / zeta + l * l - ip * ip;
}

// Brownian canonical model: mean rate -1, variance rate 1
inline double bd_psi(double beta) { return -1.0 + std::sqrt(1.0 + 2.0 * beta); }
inline double bd_Psi(double beta) { return 1.0 + std::sqrt(1.0 + 2.0 * beta); }

inline double bd_inspected_max_lst(double beta, double omega, double a) {
    const double pb = bd_Psi(beta);
    const double pbo = bd_Psi(beta + omega);
    return pb / (pb + a) * (pbo + a) / pbo;
}

// spectrally negative canonical model shares the exponent form, so Psi == psi
inline double sn_inspected_max_lst(double beta, double omega, double a) {
    const double pb = cp_psi(beta);
    const double pbo = cp_psi(beta + omega);
    return pb / (pb + a) * (pbo + a) / pbo;
}

// Pareto-Lomax(shape 2, scale 1) transform values, tabulated from adaptive
// quadrature of the defining integral at 40-digit precision before the build.
inline constexpr double pareto21_lst_at_half = 0.7307276581209326;
inline constexpr double pareto21_lst_at_1 = 0.5963473623231941;
inline constexpr double pareto21_lst_at_2 = 0.4453144675528903;
inline constexpr double pareto21_minus_dlst_at_1 = 0.2109579130304178;
inline constexpr double pareto21_ddlst_at_1 = 0.1744315362623585;

// Pareto-claims model (r = 1, lambda = 0.5): right inverse of the exponent,
// solved at 40-digit precision before the build.
inline constexpr double pareto_psi_half = 0.6599177530949136;
inline constexpr double pareto_psi_1 = 1.2234217532367686;
inline constexpr double pareto_psi_2 = 2.2921663288210442;

} // namespace ref
