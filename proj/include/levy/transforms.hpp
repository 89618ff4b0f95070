#pragma once

#include <complex>
#include <span>
#include <vector>

#include "levy/levy_models.hpp"

namespace levy {

// Inspection epochs form a renewal process with exp(k*rate) phases, k phases
// per inspection: k = 1 is Poisson(rate) inspection, k > 1 is Erlang(k, k*rate)
// with the same mean spacing 1/rate. Observation stops at an independent
// exp(killing_rate) time (killing_rate = 0: infinite horizon, which requires
// a model whose running maximum is finite).
struct InspectionScheme {
    double killing_rate = 0.0; // beta >= 0
    double rate = 1.0;         // omega > 0
    int erlang_shape = 1;      // k >= 1

    static InspectionScheme poisson(double beta, double omega);
    static InspectionScheme erlang(double beta, double omega, int k);

    bool is_poisson() const { return erlang_shape == 1; }
    double phase_rate() const { return erlang_shape * rate; }
};

// Grid of a Laplace-Stieltjes transform of a nonnegative random variable.
struct LstCurve {
    std::vector<double> alphas;
    std::vector<double> values;
};

// Reusable evaluator of E exp(-alpha * sup_{s<=T} Y(s)) with T ~ exp(zeta);
// zeta == 0 means the all-time supremum (finite running maximum required).
// The exponent inverse is solved once at construction.
class RunningMaxLst {
public:
    RunningMaxLst(const LevyModel& model, double zeta);

    double operator()(double alpha) const { return eval(alpha); }
    std::complex<double> operator()(std::complex<double> alpha) const { return eval(alpha); }

    double zeta() const { return zeta_; }

private:
    template <typename T>
    T eval(T alpha) const;

    LevyModel model_;
    double zeta_;
    bool exponential_law_; // spectrally negative / Brownian route
    double rate_ = 0.0;    // Psi(zeta) on the exponential-law route
    double psi_ = 0.0;     // psi(zeta) on the spectrally positive route (zeta > 0)
    double loading_ = 0.0;
};

// Reusable evaluator of E exp(-alpha * max of Y at Poisson(omega) inspection
// epochs before exp(beta) killing). Spectrally positive and Brownian models
// use the four-factor form in (psi, exponent); spectrally negative models the
// atom-plus-exponential form in Psi. beta == 0 is the infinite-horizon limit.
class InspectedMaxLst {
public:
    InspectedMaxLst(const LevyModel& model, double beta, double omega);

    double operator()(double alpha) const { return eval(alpha); }
    std::complex<double> operator()(std::complex<double> alpha) const { return eval(alpha); }

    double beta() const { return beta_; }
    double omega() const { return omega_; }

private:
    template <typename T>
    T eval(T alpha) const;

    LevyModel model_;
    double beta_;
    double omega_;
    bool sn_route_;
    double root_beta_ = 0.0; // psi(beta) or Psi(beta); unused when beta == 0 on the SP route
    double root_bo_ = 0.0;   // psi(beta+omega) or Psi(beta+omega)
    double loading_ = 0.0;
};

double lst_running_max(const LevyModel& model, double zeta, double alpha);
std::complex<double> lst_running_max(const LevyModel& model, double zeta,
                                     std::complex<double> alpha);

double lst_alltime_max(const LevyModel& model, double alpha);
std::complex<double> lst_alltime_max(const LevyModel& model, std::complex<double> alpha);

double lst_inspected_max(const LevyModel& model, double beta, double omega, double alpha);
std::complex<double> lst_inspected_max(const LevyModel& model, double beta, double omega,
                                       std::complex<double> alpha);
double lst_inspected_max(const LevyModel& model, const InspectionScheme& scheme, double alpha);

// P(inspected maximum = 0) for spectrally negative (or Brownian) models.
double sn_atom(const LevyModel& model, double beta, double omega);

// Wiener-Hopf components of the increment between inspection epochs
// (interval length exp(beta+omega)): Z+ is the interval supremum, Z- minus
// the interval infimum, independent of each other.
struct IncrementLsts {
    double z_plus;  // E exp(-alpha Z+)
    double z_minus; // E exp(-alpha Z-), exponential with rate psi(beta+omega)
};
IncrementLsts lst_increment_components(const LevyModel& model, double beta, double omega,
                                       double alpha);

struct Moments {
    double mean;
    double variance;
};

double running_max_mean(const LevyModel& model, double zeta);
Moments running_max_moments(const LevyModel& model, double zeta);

double inspected_max_mean(const LevyModel& model, double beta, double omega);
Moments inspected_max_moments(const LevyModel& model, double beta, double omega);

// max over the grid of |M_beta(alpha) - V_{beta,omega}(alpha) M_{beta+omega}(alpha)|,
// the factorization defect of the inspected-max decomposition.
double factorization_residual(const LevyModel& model, double beta, double omega,
                              std::span<const double> alphas);

// P(N = n) for the number of Erlang(k, k*omega) inspections before exp(beta)
// killing: geometric in q = (k omega/(k omega + beta))^k.
double erlang_count_pmf(double beta, double omega, int k, long n);

struct ErlangComponents {
    double z_plus_lst;   // sub-interval supremum transform
    double z_minus_rate; // sub-interval infimum is exp(z_minus_rate)
};
ErlangComponents erlang_component_lsts(const LevyModel& model, double beta, double omega, int k,
                                       double alpha);

// Evaluates the inspected-max transform over a grid (Poisson schemes only).
LstCurve eval_lst_curve(const LevyModel& model, const InspectionScheme& scheme,
                        std::span<const double> alphas);

} // namespace levy
