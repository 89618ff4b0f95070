#pragma once

#include <optional>

#include "levy/levy_models.hpp"

namespace levy {

enum class TailRegime { Light, Heavy };

struct AsymptoteReport {
    TailRegime regime = TailRegime::Light;
    std::optional<double> decay_rate;            // theta*
    std::optional<double> ruin_prefactor;        // gamma
    std::optional<double> bankruptcy_prefactor;  // gamma~
    std::optional<double> inspection_factor;     // gamma*_omega = psi(omega)/(psi(omega)+theta*)
    std::optional<double> heavy_prefactor;       // lambda E B / (r - lambda E B)
};

// Residual (integrated-tail) law of a claim size: ccdf(u) = int_u^inf P(B>y) dy / E B.
struct ResidualLaw {
    JumpLaw base;
    double ccdf(double u) const;
};

double residual_ccdf(const JumpLaw& law, double u);

// Ruin probability of the Cramer-Lundberg surplus with exponential claims:
// (lambda/(r mu)) exp(-(mu - lambda/r) u).
double ruin_exact_exponential(const LevyModel& model, double u);

struct ClAsymptote {
    double value;      // gamma exp(-theta* u)
    double decay_rate; // theta*
    double prefactor;  // gamma = -exponent'(0)/exponent'(-theta*)
};
ClAsymptote cl_asymptote(const LevyModel& model, double u);

struct BankruptcyLight {
    double value;                // gamma~ exp(-theta* u)
    AsymptoteReport report;
    double fixed_point_residual; // |alpha - psi(omega)(1 - E e^{-alpha Z+})| at alpha = -theta*
};
BankruptcyLight bankruptcy_asymptote_light(const LevyModel& model, double omega, double u);

struct RuleOfThumb {
    double omega_rule;  // r theta* / epsilon, from omega (1 - gamma*_omega) -> r theta*
    double omega_exact; // solves 1 - gamma*_omega = epsilon exactly
};
RuleOfThumb rule_of_thumb_rate(const LevyModel& model, double epsilon);

// omega (1 - gamma*_omega); increasing in omega with limit r theta*.
double inspection_loss_rate(const LevyModel& model, double omega);

struct BankruptcyHeavy {
    double value; // heavy prefactor times the residual tail
    AsymptoteReport report;
};
BankruptcyHeavy bankruptcy_asymptote_heavy(const LevyModel& model, double u);

// Tail asymptote of the interval supremum Z+ over exp(omega) intervals:
// (lambda/omega) P(B > u).
double zplus_tail_asymptote(const LevyModel& model, double omega, double u);

} // namespace levy
