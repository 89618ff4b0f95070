#include "levy/transforms.hpp"

#include <cmath>

namespace levy {

namespace {

void require_finite_max(const LevyModel& model, const char* what) {
    if (!model.running_max_finite()) {
        throw std::domain_error(std::string(what) +
                                " with an infinite horizon requires a finite running maximum "
                                "(positive safety loading); model " + model.description() +
                                " does not satisfy it");
    }
}

} // namespace

InspectionScheme InspectionScheme::poisson(double beta, double omega) {
    return erlang(beta, omega, 1);
}

InspectionScheme InspectionScheme::erlang(double beta, double omega, int k) {
    if (!(omega > 0.0)) throw std::invalid_argument("inspection rate omega must be > 0");
    if (!(beta >= 0.0)) throw std::invalid_argument("killing rate beta must be >= 0");
    if (k < 1) throw std::invalid_argument("erlang shape k must be >= 1");
    return InspectionScheme{beta, omega, k};
}

// ---------------------------------------------------------------------------
// RunningMaxLst

RunningMaxLst::RunningMaxLst(const LevyModel& model, double zeta) : model_(model), zeta_(zeta) {
    if (!(zeta >= 0.0)) throw std::domain_error("lst_running_max requires zeta >= 0");
    exponential_law_ = model.orientation() != Orientation::SpectrallyPositive;
    if (zeta == 0.0) {
        require_finite_max(model, "lst_running_max");
        if (exponential_law_) rate_ = model_.sn_inverse(0.0);
        loading_ = model_.loading();
        return;
    }
    if (exponential_law_) {
        rate_ = model_.sn_inverse(zeta);
    } else {
        psi_ = model_.exponent_inverse(zeta);
    }
}

template <typename T>
T RunningMaxLst::eval(T alpha) const {
    if (alpha == T(0.0)) return T(1.0);
    if (exponential_law_) {
        return rate_ / (rate_ + alpha);
    }
    if (zeta_ == 0.0) {
        return loading_ * alpha / model_.exponent(alpha);
    }
    const T denom = zeta_ - model_.exponent(alpha);
    if (std::abs(denom) < 1e-8 * std::max(1.0, zeta_)) {
        const double d1 = model_.exponent_derivative(psi_);
        const double d2 = model_.exponent_second_derivative(psi_);
        return (zeta_ / psi_) / (d1 + 0.5 * d2 * (alpha - psi_));
    }
    return (zeta_ / psi_) * ((psi_ - alpha) / denom);
}

// ---------------------------------------------------------------------------
// InspectedMaxLst

InspectedMaxLst::InspectedMaxLst(const LevyModel& model, double beta, double omega)
    : model_(model), beta_(beta), omega_(omega) {
    if (!(omega > 0.0)) throw std::domain_error("lst_inspected_max requires omega > 0");
    if (!(beta >= 0.0)) throw std::domain_error("lst_inspected_max requires beta >= 0");
    sn_route_ = model.orientation() == Orientation::SpectrallyNegative;
    if (beta == 0.0) {
        require_finite_max(model, "lst_inspected_max");
    }
    if (sn_route_) {
        root_beta_ = model_.sn_inverse(beta);
        root_bo_ = model_.sn_inverse(beta + omega);
    } else {
        loading_ = model_.loading();
        if (beta > 0.0) root_beta_ = model_.exponent_inverse(beta);
        root_bo_ = model_.exponent_inverse(beta + omega);
    }
}

template <typename T>
T InspectedMaxLst::eval(T alpha) const {
    if (alpha == T(0.0)) return T(1.0);

    if (sn_route_) {
        return (root_beta_ / (root_beta_ + alpha)) * ((root_bo_ + alpha) / root_bo_);
    }

    T first_pair;
    if (beta_ == 0.0) {
        first_pair = -loading_ * alpha / model_.exponent(alpha);
    } else {
        T f1;
        const T denom = beta_ - model_.exponent(alpha);
        if (std::abs(denom) < 1e-8 * std::max(1.0, beta_)) {
            const double d1 = model_.exponent_derivative(root_beta_);
            const double d2 = model_.exponent_second_derivative(root_beta_);
            f1 = -1.0 / (d1 + 0.5 * d2 * (alpha - root_beta_));
        } else {
            f1 = (alpha - root_beta_) / denom;
        }
        first_pair = f1 * (beta_ / root_beta_);
    }

    T f3;
    const T denom3 = alpha - root_bo_;
    if (std::abs(denom3) < 1e-8 * std::max(1.0, root_bo_)) {
        const double d1 = model_.exponent_derivative(root_bo_);
        const double d2 = model_.exponent_second_derivative(root_bo_);
        f3 = -(d1 + 0.5 * d2 * (alpha - root_bo_));
    } else {
        f3 = (beta_ + omega_ - model_.exponent(alpha)) / denom3;
    }
    return first_pair * f3 * (root_bo_ / (beta_ + omega_));
}

template double RunningMaxLst::eval<double>(double) const;
template std::complex<double> RunningMaxLst::eval<std::complex<double>>(std::complex<double>) const;
template double InspectedMaxLst::eval<double>(double) const;
template std::complex<double> InspectedMaxLst::eval<std::complex<double>>(std::complex<double>) const;

// ---------------------------------------------------------------------------
// free functions

double lst_running_max(const LevyModel& model, double zeta, double alpha) {
    if (!(zeta > 0.0)) throw std::domain_error("lst_running_max requires zeta > 0");
    return RunningMaxLst(model, zeta)(alpha);
}

std::complex<double> lst_running_max(const LevyModel& model, double zeta,
                                     std::complex<double> alpha) {
    if (!(zeta > 0.0)) throw std::domain_error("lst_running_max requires zeta > 0");
    return RunningMaxLst(model, zeta)(alpha);
}

double lst_alltime_max(const LevyModel& model, double alpha) {
    return RunningMaxLst(model, 0.0)(alpha);
}

std::complex<double> lst_alltime_max(const LevyModel& model, std::complex<double> alpha) {
    return RunningMaxLst(model, 0.0)(alpha);
}

double lst_inspected_max(const LevyModel& model, double beta, double omega, double alpha) {
    return InspectedMaxLst(model, beta, omega)(alpha);
}

std::complex<double> lst_inspected_max(const LevyModel& model, double beta, double omega,
                                       std::complex<double> alpha) {
    return InspectedMaxLst(model, beta, omega)(alpha);
}

double lst_inspected_max(const LevyModel& model, const InspectionScheme& scheme, double alpha) {
    if (!scheme.is_poisson()) {
        throw regime_error(
            "the inspected-max transform has no closed form for Erlang inspection (k > 1); "
            "use erlang_count_pmf / erlang_component_lsts and the Lindley simulation instead");
    }
    return lst_inspected_max(model, scheme.killing_rate, scheme.rate, alpha);
}

double sn_atom(const LevyModel& model, double beta, double omega) {
    if (model.orientation() == Orientation::SpectrallyPositive) {
        throw std::domain_error("sn_atom requires a spectrally negative or Brownian model");
    }
    if (!(omega > 0.0)) throw std::domain_error("sn_atom requires omega > 0");
    return model.sn_inverse(beta) / model.sn_inverse(beta + omega);
}

IncrementLsts lst_increment_components(const LevyModel& model, double beta, double omega,
                                       double alpha) {
    if (model.orientation() == Orientation::SpectrallyNegative) {
        throw std::domain_error(
            "lst_increment_components uses the spectrally positive factorization; "
            "got a spectrally negative model");
    }
    const double rate = model.exponent_inverse(beta + omega);
    const double z_plus = lst_running_max(model, beta + omega, alpha);
    return IncrementLsts{z_plus, rate / (rate + alpha)};
}

double running_max_mean(const LevyModel& model, double zeta) {
    if (model.orientation() == Orientation::SpectrallyNegative) {
        throw std::domain_error(
            "running_max_moments applies on the spectrally positive route; the spectrally "
            "negative maximum is exp(Psi(zeta)) with mean 1/Psi(zeta)");
    }
    if (!(zeta > 0.0)) throw std::domain_error("running_max_moments requires zeta > 0");
    return 1.0 / model.exponent_inverse(zeta) - model.loading() / zeta;
}

Moments running_max_moments(const LevyModel& model, double zeta) {
    const double mean = running_max_mean(model, zeta);
    const double d2 = model.exponent_second_derivative(0.0); // throws moment_error when infinite
    const double l = model.loading();
    const double inv_psi = 1.0 / model.exponent_inverse(zeta);
    const double variance = d2 / zeta + (l / zeta) * (l / zeta) - inv_psi * inv_psi;
    return Moments{mean, variance};
}

double inspected_max_mean(const LevyModel& model, double beta, double omega) {
    if (!(beta > 0.0)) throw std::domain_error("inspected_max_moments requires beta > 0");
    if (!(omega > 0.0)) throw std::domain_error("inspected_max_moments requires omega > 0");
    return running_max_mean(model, beta) - running_max_mean(model, beta + omega);
}

Moments inspected_max_moments(const LevyModel& model, double beta, double omega) {
    if (!(beta > 0.0)) throw std::domain_error("inspected_max_moments requires beta > 0");
    if (!(omega > 0.0)) throw std::domain_error("inspected_max_moments requires omega > 0");
    const Moments at_beta = running_max_moments(model, beta);
    const Moments at_bo = running_max_moments(model, beta + omega);
    return Moments{at_beta.mean - at_bo.mean, at_beta.variance - at_bo.variance};
}

double factorization_residual(const LevyModel& model, double beta, double omega,
                              std::span<const double> alphas) {
    const RunningMaxLst m_beta(model, beta);
    const RunningMaxLst m_bo(model, beta + omega);
    const InspectedMaxLst v(model, beta, omega);
    double worst = 0.0;
    for (double a : alphas) {
        worst = std::max(worst, std::abs(m_beta(a) - v(a) * m_bo(a)));
    }
    return worst;
}

double erlang_count_pmf(double beta, double omega, int k, long n) {
    if (k < 1) throw std::domain_error("erlang_count_pmf requires k >= 1");
    if (n < 0) throw std::domain_error("erlang_count_pmf requires n >= 0");
    if (!(omega > 0.0)) throw std::domain_error("erlang_count_pmf requires omega > 0");
    if (!(beta >= 0.0)) throw std::domain_error("erlang_count_pmf requires beta >= 0");
    const double q = std::pow(k * omega / (k * omega + beta), k);
    return std::pow(q, static_cast<double>(n)) * (1.0 - q);
}

ErlangComponents erlang_component_lsts(const LevyModel& model, double beta, double omega, int k,
                                       double alpha) {
    if (model.orientation() == Orientation::SpectrallyNegative) {
        throw std::domain_error("erlang_component_lsts requires a spectrally positive model");
    }
    if (k < 1) throw std::domain_error("erlang_component_lsts requires k >= 1");
    const double zeta = beta + k * omega;
    return ErlangComponents{lst_running_max(model, zeta, alpha), model.exponent_inverse(zeta)};
}

LstCurve eval_lst_curve(const LevyModel& model, const InspectionScheme& scheme,
                        std::span<const double> alphas) {
    if (!scheme.is_poisson()) {
        throw regime_error(
            "the inspected-max transform has no closed form for Erlang inspection (k > 1); "
            "use the simulate command instead");
    }
    const InspectedMaxLst v(model, scheme.killing_rate, scheme.rate);
    LstCurve curve;
    curve.alphas.assign(alphas.begin(), alphas.end());
    curve.values.reserve(alphas.size());
    for (double a : alphas) {
        if (a < 0.0) throw std::domain_error("eval_lst_curve requires alpha >= 0");
        curve.values.push_back(v(a));
    }
    return curve;
}

} // namespace levy
