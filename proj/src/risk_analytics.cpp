#include "levy/risk_analytics.hpp"

#include <cmath>

#include "levy/transforms.hpp"

namespace levy {

namespace {

void require_sp_positive_loading(const LevyModel& model, const char* what) {
    if (model.orientation() == Orientation::SpectrallyNegative) {
        throw regime_error(std::string(what) + " requires a spectrally positive model");
    }
    if (!(model.loading() > 0.0)) {
        throw regime_error(std::string(what) +
                           " requires positive safety loading (lambda E[B] < r), otherwise ruin "
                           "and bankruptcy are certain");
    }
}

} // namespace

double residual_ccdf(const JumpLaw& law, double u) {
    if (u <= 0.0) return 1.0;
    return law.visit([&](const auto& l) -> double {
        using L = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<L, JumpLaw::Exponential>) {
            return std::exp(-l.rate * u); // memoryless: residual equals the base tail
        } else if constexpr (std::is_same_v<L, JumpLaw::Erlang>) {
            // int_u^inf P(B>y) dy = (1/mu) sum_{i<m} (m-i) e^{-mu u} (mu u)^i / i!
            double sum = 0.0;
            double term = 1.0;
            for (int i = 0; i < l.shape; ++i) {
                sum += (l.shape - i) * term;
                term *= l.rate * u / (i + 1.0);
            }
            return std::exp(-l.rate * u) * sum / l.shape;
        } else if constexpr (std::is_same_v<L, JumpLaw::Hyperexponential>) {
            double tail_int = 0.0;
            double mean = 0.0;
            for (std::size_t i = 0; i < l.rates.size(); ++i) {
                tail_int += l.weights[i] * std::exp(-l.rates[i] * u) / l.rates[i];
                mean += l.weights[i] / l.rates[i];
            }
            return tail_int / mean;
        } else if constexpr (std::is_same_v<L, JumpLaw::ParetoLomax>) {
            // int_u^inf (1+y/s)^-a dy = s/(a-1) (1+u/s)^{1-a}; E B = s/(a-1)
            return std::pow(1.0 + u / l.scale, 1.0 - l.shape);
        } else {
            return u < l.value ? 1.0 - u / l.value : 0.0;
        }
    });
}

double ResidualLaw::ccdf(double u) const { return residual_ccdf(base, u); }

double ruin_exact_exponential(const LevyModel& model, double u) {
    if (model.orientation() != Orientation::SpectrallyPositive) {
        throw regime_error("ruin_exact_exponential requires a spectrally positive model");
    }
    bool exponential = false;
    double mu = 0.0;
    model.claims().visit([&](const auto& law) {
        if constexpr (std::is_same_v<std::decay_t<decltype(law)>, JumpLaw::Exponential>) {
            exponential = true;
            mu = law.rate;
        }
    });
    if (!exponential) {
        throw regime_error("ruin_exact_exponential: closed form only for exponential claims (" +
                           model.claims().description() + "); use inversion or simulation");
    }
    const double r = model.premium_rate();
    const double lambda = model.arrival_rate();
    if (!(lambda / (r * mu) < 1.0)) {
        throw regime_error("ruin_exact_exponential requires positive safety loading");
    }
    if (u < 0.0) throw std::domain_error("ruin_exact_exponential requires u >= 0");
    return lambda / (r * mu) * std::exp(-(mu - lambda / r) * u);
}

ClAsymptote cl_asymptote(const LevyModel& model, double u) {
    if (model.orientation() == Orientation::SpectrallyNegative) {
        throw regime_error("cl_asymptote requires a spectrally positive or Brownian model");
    }
    if (u < 0.0) throw std::domain_error("cl_asymptote requires u >= 0");
    const double theta = model.adjustment_coefficient(); // checks regime and loading
    const double gamma = -model.loading() / model.exponent_derivative(-theta);
    return ClAsymptote{gamma * std::exp(-theta * u), theta, gamma};
}

BankruptcyLight bankruptcy_asymptote_light(const LevyModel& model, double omega, double u) {
    if (!(omega > 0.0)) throw std::domain_error("bankruptcy_asymptote_light requires omega > 0");
    const ClAsymptote cl = cl_asymptote(model, u);
    const double theta = cl.decay_rate;
    const double psi_omega = model.exponent_inverse(omega);
    const double factor = psi_omega / (psi_omega + theta);
    const double gamma_tilde = cl.prefactor * factor;

    // candidate decay rate: the fixed point of the dual service equation
    // alpha = psi(omega) (1 - E e^{-alpha Z+}) reproduces theta*; the other
    // root, -psi(omega), is negative and rejected
    const double ez = (omega / (omega - model.exponent(-theta))) * ((psi_omega + theta) / psi_omega);
    const double residual = std::abs(-theta - psi_omega * (1.0 - ez));

    AsymptoteReport report;
    report.regime = TailRegime::Light;
    report.decay_rate = theta;
    report.ruin_prefactor = cl.prefactor;
    report.bankruptcy_prefactor = gamma_tilde;
    report.inspection_factor = factor;
    return BankruptcyLight{gamma_tilde * std::exp(-theta * u), report, residual};
}

double inspection_loss_rate(const LevyModel& model, double omega) {
    if (!(omega > 0.0)) throw std::domain_error("inspection_loss_rate requires omega > 0");
    const double theta = model.adjustment_coefficient();
    const double psi_omega = model.exponent_inverse(omega);
    return omega * theta / (psi_omega + theta);
}

RuleOfThumb rule_of_thumb_rate(const LevyModel& model, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw std::domain_error("rule_of_thumb_rate requires epsilon in (0, 1)");
    }
    if (!model.is_compound_poisson() ||
        model.orientation() != Orientation::SpectrallyPositive) {
        throw regime_error("rule_of_thumb_rate requires a spectrally positive compound-Poisson model");
    }
    const double theta = model.adjustment_coefficient();
    const double omega_rule = model.premium_rate() * theta / epsilon;
    // 1 - gamma*_omega = epsilon  <=>  psi(omega) = theta (1-epsilon)/epsilon,
    // and on the increasing branch psi(omega) = c exactly when omega = exponent(c)
    const double omega_exact = model.exponent(theta * (1.0 - epsilon) / epsilon);
    return RuleOfThumb{omega_rule, omega_exact};
}

BankruptcyHeavy bankruptcy_asymptote_heavy(const LevyModel& model, double u) {
    if (model.orientation() != Orientation::SpectrallyPositive) {
        throw regime_error("bankruptcy_asymptote_heavy requires a spectrally positive model");
    }
    if (model.claims().light_tailed()) {
        throw regime_error("bankruptcy_asymptote_heavy: " + model.claims().description() +
                           " is light-tailed; use bankruptcy_asymptote_light");
    }
    require_sp_positive_loading(model, "bankruptcy_asymptote_heavy");
    if (u < 0.0) throw std::domain_error("bankruptcy_asymptote_heavy requires u >= 0");

    const double loaded_mean = model.arrival_rate() * model.claims().mean();
    const double prefactor = loaded_mean / (model.premium_rate() - loaded_mean);

    AsymptoteReport report;
    report.regime = TailRegime::Heavy;
    report.heavy_prefactor = prefactor;
    // the asymptote does not involve the inspection rate
    return BankruptcyHeavy{prefactor * residual_ccdf(model.claims(), u), report};
}

double zplus_tail_asymptote(const LevyModel& model, double omega, double u) {
    if (model.orientation() != Orientation::SpectrallyPositive) {
        throw regime_error("zplus_tail_asymptote requires a spectrally positive model");
    }
    if (!(omega > 0.0)) throw std::domain_error("zplus_tail_asymptote requires omega > 0");
    return model.arrival_rate() / omega * model.claims().ccdf(u);
}

} // namespace levy
