#include "levy/levy_models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "detail/pareto_transform.hpp"
#include "detail/quadrature.hpp"
#include "levy/rng.hpp"

namespace levy {

namespace {

[[noreturn]] void throw_outside_region(const std::string& law, double boundary, double re_alpha) {
    std::ostringstream os;
    os << law << " transform undefined at Re(alpha)=" << re_alpha << "; finite only for Re(alpha)"
       << (boundary == 0.0 ? " >= 0" : " > " + std::to_string(-boundary));
    throw std::domain_error(os.str());
}

} // namespace

// ---------------------------------------------------------------------------
// JumpLaw

JumpLaw JumpLaw::exponential(double rate) {
    if (!(rate > 0.0)) throw std::invalid_argument("exponential jump law requires rate > 0");
    return JumpLaw(Exponential{rate});
}

JumpLaw JumpLaw::erlang(int shape, double rate) {
    if (shape < 1) throw std::invalid_argument("erlang jump law requires shape >= 1");
    if (!(rate > 0.0)) throw std::invalid_argument("erlang jump law requires rate > 0");
    return JumpLaw(Erlang{shape, rate});
}

JumpLaw JumpLaw::hyperexponential(std::vector<double> weights, std::vector<double> rates) {
    if (weights.empty() || weights.size() != rates.size()) {
        throw std::invalid_argument("hyperexponential jump law requires matching nonempty weights/rates");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (!(weights[i] > 0.0)) throw std::invalid_argument("hyperexponential weights must be positive");
        if (!(rates[i] > 0.0)) throw std::invalid_argument("hyperexponential rates must be positive");
        sum += weights[i];
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw std::invalid_argument("hyperexponential weights must sum to 1");
    }
    for (auto& w : weights) w /= sum;
    return JumpLaw(Hyperexponential{std::move(weights), std::move(rates)});
}

JumpLaw JumpLaw::pareto_lomax(double shape, double scale) {
    if (!(shape > 1.0)) throw std::invalid_argument("pareto_lomax jump law requires shape > 1 (finite mean)");
    if (!(scale > 0.0)) throw std::invalid_argument("pareto_lomax jump law requires scale > 0");
    return JumpLaw(ParetoLomax{shape, scale});
}

JumpLaw JumpLaw::deterministic(double value) {
    if (!(value > 0.0)) throw std::invalid_argument("deterministic jump law requires value > 0");
    return JumpLaw(Deterministic{value});
}

double JumpLaw::min_rate() const {
    return std::visit(
        [](const auto& law) -> double {
            using L = std::decay_t<decltype(law)>;
            if constexpr (std::is_same_v<L, Exponential>) return law.rate;
            else if constexpr (std::is_same_v<L, Erlang>) return law.rate;
            else if constexpr (std::is_same_v<L, Hyperexponential>)
                return *std::min_element(law.rates.begin(), law.rates.end());
            else if constexpr (std::is_same_v<L, ParetoLomax>) return 0.0;
            else return std::numeric_limits<double>::infinity();
        },
        law_);
}

std::string JumpLaw::description() const {
    std::ostringstream os;
    std::visit(
        [&](const auto& law) {
            using L = std::decay_t<decltype(law)>;
            if constexpr (std::is_same_v<L, Exponential>) os << "exponential(rate=" << law.rate << ")";
            else if constexpr (std::is_same_v<L, Erlang>)
                os << "erlang(shape=" << law.shape << ", rate=" << law.rate << ")";
            else if constexpr (std::is_same_v<L, Hyperexponential>)
                os << "hyperexponential(" << law.rates.size() << " phases)";
            else if constexpr (std::is_same_v<L, ParetoLomax>)
                os << "pareto_lomax(shape=" << law.shape << ", scale=" << law.scale << ")";
            else os << "deterministic(value=" << law.value << ")";
        },
        law_);
    return os.str();
}

double JumpLaw::lst(double alpha) const {
    if (alpha == 0.0) return 1.0;
    if (alpha <= -min_rate() || (std::holds_alternative<ParetoLomax>(law_) && alpha < 0.0)) {
        throw_outside_region(description(), min_rate(), alpha);
    }
    return std::visit(
        [&](const auto& law) -> double {
            using L = std::decay_t<decltype(law)>;
            if constexpr (std::is_same_v<L, Exponential>) {
                return law.rate / (law.rate + alpha);
            } else if constexpr (std::is_same_v<L, Erlang>) {
                return std::pow(law.rate / (law.rate + alpha), law.shape);
            } else if constexpr (std::is_same_v<L, Hyperexponential>) {
                double v = 0.0;
                for (std::size_t i = 0; i < law.rates.size(); ++i)
                    v += law.weights[i] * law.rates[i] / (law.rates[i] + alpha);
                return v;
            } else if constexpr (std::is_same_v<L, ParetoLomax>) {
                return detail::pareto_lst_quadrature(law.shape, law.scale, alpha);
            } else {
                return std::exp(-alpha * law.value);
            }
        },
        law_);
}

std::complex<double> JumpLaw::lst(std::complex<double> alpha) const {
    if (alpha.imag() == 0.0) return std::complex<double>(lst(alpha.real()), 0.0);
    if (alpha.real() <= -min_rate() ||
        (std::holds_alternative<ParetoLomax>(law_) && alpha.real() < 0.0)) {
        throw_outside_region(description(), min_rate(), alpha.real());
    }
    return std::visit(
        [&](const auto& law) -> std::complex<double> {
            using L = std::decay_t<decltype(law)>;
            if constexpr (std::is_same_v<L, Exponential>) {
                return law.rate / (law.rate + alpha);
            } else if constexpr (std::is_same_v<L, Erlang>) {
                return std::pow(law.rate / (law.rate + alpha), law.shape);
            } else if constexpr (std::is_same_v<L, Hyperexponential>) {
                std::complex<double> v = 0.0;
                for (std::size_t i = 0; i < law.rates.size(); ++i)
                    v += law.weights[i] * law.rates[i] / (law.rates[i] + alpha);
                return v;
            } else if constexpr (std::is_same_v<L, ParetoLomax>) {
                return detail::pareto_lst_continued_fraction(law.shape, law.scale * alpha);
            } else {
                return std::exp(-alpha * law.value);
            }
        },
        law_);
}

double JumpLaw::lst_derivative(double alpha) const {
    if (alpha < -min_rate() || (std::holds_alternative<ParetoLomax>(law_) && alpha < 0.0)) {
        throw_outside_region(description(), min_rate(), alpha);
    }
    return std::visit(
        [&](const auto& law) -> double {
            using L = std::decay_t<decltype(law)>;
            if constexpr (std::is_same_v<L, Exponential>) {
                const double d = law.rate + alpha;
                return -law.rate / (d * d);
            } else if constexpr (std::is_same_v<L, Erlang>) {
                return -law.shape * std::pow(law.rate, law.shape) /
                       std::pow(law.rate + alpha, law.shape + 1);
            } else if constexpr (std::is_same_v<L, Hyperexponential>) {
                double v = 0.0;
                for (std::size_t i = 0; i < law.rates.size(); ++i) {
                    const double d = law.rates[i] + alpha;
                    v -= law.weights[i] * law.rates[i] / (d * d);
                }
                return v;
            } else if constexpr (std::is_same_v<L, ParetoLomax>) {
                if (alpha == 0.0) return -mean();
                return -detail::pareto_lst_quadrature(law.shape, law.scale, alpha, 1);
            } else {
                return -law.value * std::exp(-alpha * law.value);
            }
        },
        law_);
}

double JumpLaw::lst_second_derivative(double alpha) const {
    if (alpha < -min_rate() || (std::holds_alternative<ParetoLomax>(law_) && alpha < 0.0)) {
        throw_outside_region(description(), min_rate(), alpha);
    }
    return std::visit(
        [&](const auto& law) -> double {
            using L = std::decay_t<decltype(law)>;
            if constexpr (std::is_same_v<L, Exponential>) {
                const double d = law.rate + alpha;
                return 2.0 * law.rate / (d * d * d);
            } else if constexpr (std::is_same_v<L, Erlang>) {
                const double m = law.shape;
                return m * (m + 1.0) * std::pow(law.rate, law.shape) /
                       std::pow(law.rate + alpha, law.shape + 2);
            } else if constexpr (std::is_same_v<L, Hyperexponential>) {
                double v = 0.0;
                for (std::size_t i = 0; i < law.rates.size(); ++i) {
                    const double d = law.rates[i] + alpha;
                    v += 2.0 * law.weights[i] * law.rates[i] / (d * d * d);
                }
                return v;
            } else if constexpr (std::is_same_v<L, ParetoLomax>) {
                if (alpha == 0.0) return second_moment();
                return detail::pareto_lst_quadrature(law.shape, law.scale, alpha, 2);
            } else {
                return law.value * law.value * std::exp(-alpha * law.value);
            }
        },
        law_);
}

double JumpLaw::mean() const {
    return std::visit(
        [](const auto& law) -> double {
            using L = std::decay_t<decltype(law)>;
            if constexpr (std::is_same_v<L, Exponential>) return 1.0 / law.rate;
            else if constexpr (std::is_same_v<L, Erlang>) return law.shape / law.rate;
            else if constexpr (std::is_same_v<L, Hyperexponential>) {
                double v = 0.0;
                for (std::size_t i = 0; i < law.rates.size(); ++i) v += law.weights[i] / law.rates[i];
                return v;
            } else if constexpr (std::is_same_v<L, ParetoLomax>) {
                return law.scale / (law.shape - 1.0);
            } else {
                return law.value;
            }
        },
        law_);
}

bool JumpLaw::has_finite_second_moment() const {
    if (const auto* p = std::get_if<ParetoLomax>(&law_)) return p->shape > 2.0;
    return true;
}

double JumpLaw::second_moment() const {
    return std::visit(
        [&](const auto& law) -> double {
            using L = std::decay_t<decltype(law)>;
            if constexpr (std::is_same_v<L, Exponential>) {
                return 2.0 / (law.rate * law.rate);
            } else if constexpr (std::is_same_v<L, Erlang>) {
                const double m = law.shape;
                return m * (m + 1.0) / (law.rate * law.rate);
            } else if constexpr (std::is_same_v<L, Hyperexponential>) {
                double v = 0.0;
                for (std::size_t i = 0; i < law.rates.size(); ++i)
                    v += 2.0 * law.weights[i] / (law.rates[i] * law.rates[i]);
                return v;
            } else if constexpr (std::is_same_v<L, ParetoLomax>) {
                if (law.shape <= 2.0) {
                    throw moment_error("second moment of " + description() +
                                       " is infinite (shape <= 2)");
                }
                return 2.0 * law.scale * law.scale / ((law.shape - 1.0) * (law.shape - 2.0));
            } else {
                return law.value * law.value;
            }
        },
        law_);
}

double JumpLaw::ccdf(double x) const {
    if (x < 0.0) return 1.0;
    return std::visit(
        [&](const auto& law) -> double {
            using L = std::decay_t<decltype(law)>;
            if constexpr (std::is_same_v<L, Exponential>) {
                return std::exp(-law.rate * x);
            } else if constexpr (std::is_same_v<L, Erlang>) {
                // P(Erlang(m, mu) > x) = exp(-mu x) sum_{j<m} (mu x)^j / j!
                double sum = 0.0;
                double term = 1.0;
                for (int j = 0; j < law.shape; ++j) {
                    sum += term;
                    term *= law.rate * x / (j + 1.0);
                }
                return std::exp(-law.rate * x) * sum;
            } else if constexpr (std::is_same_v<L, Hyperexponential>) {
                double v = 0.0;
                for (std::size_t i = 0; i < law.rates.size(); ++i)
                    v += law.weights[i] * std::exp(-law.rates[i] * x);
                return v;
            } else if constexpr (std::is_same_v<L, ParetoLomax>) {
                return std::pow(1.0 + x / law.scale, -law.shape);
            } else {
                return x < law.value ? 1.0 : 0.0;
            }
        },
        law_);
}

double JumpLaw::sample(RngStream& rng) const {
    return std::visit(
        [&](const auto& law) -> double {
            using L = std::decay_t<decltype(law)>;
            if constexpr (std::is_same_v<L, Exponential>) {
                return rng.exponential(law.rate);
            } else if constexpr (std::is_same_v<L, Erlang>) {
                double v = 0.0;
                for (int i = 0; i < law.shape; ++i) v += rng.exponential(law.rate);
                return v;
            } else if constexpr (std::is_same_v<L, Hyperexponential>) {
                double u = rng.uniform();
                for (std::size_t i = 0; i + 1 < law.rates.size(); ++i) {
                    if (u < law.weights[i]) return rng.exponential(law.rates[i]);
                    u -= law.weights[i];
                }
                return rng.exponential(law.rates.back());
            } else if constexpr (std::is_same_v<L, ParetoLomax>) {
                return law.scale * (std::pow(rng.uniform(), -1.0 / law.shape) - 1.0);
            } else {
                return law.value;
            }
        },
        law_);
}

// ---------------------------------------------------------------------------
// LevyModel

LevyModel::LevyModel(Orientation o, double r, double lambda, JumpLaw claims)
    : orientation_(o), premium_rate_(r), arrival_rate_(lambda), claims_(std::move(claims)) {
    if (!(r > 0.0)) throw std::invalid_argument("compound-Poisson model requires premium rate r > 0");
    if (!(lambda >= 0.0)) throw std::invalid_argument("arrival rate must be >= 0");
}

LevyModel::LevyModel(double mean_rate, double variance_rate)
    : orientation_(Orientation::BrownianDrift), mean_rate_(mean_rate), variance_rate_(variance_rate) {
    if (!(variance_rate > 0.0)) throw std::invalid_argument("brownian_drift requires variance rate > 0");
    if (!std::isfinite(mean_rate)) throw std::invalid_argument("brownian_drift requires finite mean rate");
}

LevyModel LevyModel::spectrally_positive(double r, double lambda, JumpLaw claims) {
    return LevyModel(Orientation::SpectrallyPositive, r, lambda, std::move(claims));
}

LevyModel LevyModel::spectrally_negative(double r, double lambda, JumpLaw claims) {
    return LevyModel(Orientation::SpectrallyNegative, r, lambda, std::move(claims));
}

LevyModel LevyModel::brownian_drift(double mean_rate, double variance_rate) {
    return LevyModel(mean_rate, variance_rate);
}

void LevyModel::require_compound_poisson(const char* what) const {
    if (!is_compound_poisson()) {
        throw regime_error(std::string(what) + " is undefined for a brownian_drift model");
    }
}

double LevyModel::premium_rate() const {
    require_compound_poisson("premium_rate");
    return premium_rate_;
}

double LevyModel::arrival_rate() const {
    require_compound_poisson("arrival_rate");
    return arrival_rate_;
}

const JumpLaw& LevyModel::claims() const {
    require_compound_poisson("claims");
    return *claims_;
}

double LevyModel::brownian_mean_rate() const {
    if (orientation_ != Orientation::BrownianDrift) throw regime_error("not a brownian_drift model");
    return mean_rate_;
}

double LevyModel::brownian_variance_rate() const {
    if (orientation_ != Orientation::BrownianDrift) throw regime_error("not a brownian_drift model");
    return variance_rate_;
}

double LevyModel::cp_exponent_real(double alpha) const {
    return premium_rate_ * alpha - arrival_rate_ * (1.0 - claims_->lst(alpha));
}

double LevyModel::exponent(double alpha) const {
    if (alpha == 0.0) return 0.0;
    if (orientation_ == Orientation::BrownianDrift) {
        return -mean_rate_ * alpha + 0.5 * variance_rate_ * alpha * alpha;
    }
    return cp_exponent_real(alpha);
}

std::complex<double> LevyModel::exponent(std::complex<double> alpha) const {
    if (alpha == std::complex<double>(0.0, 0.0)) return {0.0, 0.0};
    if (orientation_ == Orientation::BrownianDrift) {
        return -mean_rate_ * alpha + 0.5 * variance_rate_ * alpha * alpha;
    }
    return premium_rate_ * alpha - arrival_rate_ * (1.0 - claims_->lst(alpha));
}

double LevyModel::exponent_derivative(double alpha) const {
    if (orientation_ == Orientation::BrownianDrift) {
        return -mean_rate_ + variance_rate_ * alpha;
    }
    return premium_rate_ + arrival_rate_ * claims_->lst_derivative(alpha);
}

double LevyModel::exponent_second_derivative(double alpha) const {
    if (orientation_ == Orientation::BrownianDrift) {
        return variance_rate_;
    }
    if (alpha == 0.0) {
        return arrival_rate_ * claims_->second_moment(); // throws when infinite
    }
    return arrival_rate_ * claims_->lst_second_derivative(alpha);
}

double LevyModel::loading() const {
    if (orientation_ == Orientation::BrownianDrift) return -mean_rate_;
    return premium_rate_ - arrival_rate_ * claims_->mean();
}

bool LevyModel::running_max_finite() const {
    if (orientation_ == Orientation::SpectrallyNegative) return loading() < 0.0;
    return loading() > 0.0;
}

double LevyModel::sn_cumulant(double alpha) const {
    switch (orientation_) {
        case Orientation::SpectrallyNegative:
            return exponent(alpha);
        case Orientation::BrownianDrift:
            return mean_rate_ * alpha + 0.5 * variance_rate_ * alpha * alpha;
        default:
            throw regime_error("spectrally negative cumulant requested for a spectrally positive model");
    }
}

double LevyModel::sn_inverse(double beta, const RootSolveConfig& cfg) const {
    switch (orientation_) {
        case Orientation::SpectrallyNegative:
            return exponent_inverse(beta, cfg);
        case Orientation::BrownianDrift: {
            if (beta < 0.0) throw std::domain_error("sn_inverse requires beta >= 0");
            if (beta == 0.0 && !(mean_rate_ < 0.0)) {
                throw std::domain_error(
                    "sn_inverse at beta = 0 requires a negative mean rate (finite running maximum)");
            }
            const double disc = mean_rate_ * mean_rate_ + 2.0 * variance_rate_ * beta;
            return (-mean_rate_ + std::sqrt(disc)) / variance_rate_;
        }
        default:
            throw regime_error("spectrally negative inverse requested for a spectrally positive model");
    }
}

double LevyModel::exponent_inverse(double beta, const RootSolveConfig& cfg) const {
    if (!(beta >= 0.0)) throw std::domain_error("exponent_inverse requires beta >= 0");
    if (!(cfg.abs_tol > 0.0) || !(cfg.rel_tol > 0.0) || cfg.max_iterations < 1) {
        throw std::invalid_argument("invalid RootSolveConfig");
    }

    if (orientation_ == Orientation::BrownianDrift) {
        if (beta == 0.0 && !(loading() > 0.0)) {
            throw std::domain_error(
                "exponent_inverse at beta = 0 requires positive loading (negative mean rate)");
        }
        const double disc = mean_rate_ * mean_rate_ + 2.0 * variance_rate_ * beta;
        return (mean_rate_ + std::sqrt(disc)) / variance_rate_;
    }

    const double load = loading();
    if (beta == 0.0) {
        if (orientation_ == Orientation::SpectrallyPositive) {
            if (!(load > 0.0)) {
                throw std::domain_error(
                    "exponent_inverse at beta = 0 requires positive safety loading (r > lambda E[B])");
            }
            return 0.0;
        }
        // spectrally negative: the finite-maximum condition is Phi'(0) < 0 and
        // the right-inverse at 0 is the positive zero of the cumulant
        if (!(load < 0.0)) {
            throw std::domain_error(
                "exponent_inverse at beta = 0 requires negative drift loading for a "
                "spectrally negative model (lambda E[B] > r)");
        }
    }

    // Bracket: exponent(alpha) >= r alpha - lambda, so hi = (beta + lambda)/r
    // already satisfies exponent(hi) >= beta; doubling is a safety net.
    double lo = 0.0;
    double hi = (beta + arrival_rate_) / premium_rate_;
    if (beta == 0.0) hi = std::max(hi, 1.0);
    int guard = 0;
    while (exponent(hi) < beta) {
        hi *= 2.0;
        if (++guard > 200) throw solver_error("exponent_inverse bracketing failed", lo, hi);
    }
    if (beta == 0.0) {
        // positive zero: move lo to the interior so the bisection does not
        // collapse onto the root at the origin
        double probe = hi;
        while (exponent(probe) > 0.0) {
            probe /= 2.0;
            if (probe < 1e-300) throw solver_error("exponent_inverse bracketing failed", 0.0, hi);
        }
        lo = probe;
    }

    const double target_resid = cfg.abs_tol * std::max(1.0, beta);
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < cfg.max_iterations; ++it) {
        const double f = exponent(x) - beta;
        if (std::abs(f) <= target_resid) return x;
        if (f > 0.0) hi = x; else lo = x;
        const double df = exponent_derivative(x);
        double next = (df != 0.0) ? x - f / df : x;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (hi - lo <= cfg.rel_tol * std::max(1.0, std::abs(x))) {
            x = 0.5 * (lo + hi);
            if (std::abs(exponent(x) - beta) <= std::max(target_resid, 1e-10 * std::max(1.0, beta)))
                return x;
            break;
        }
        x = next;
    }
    throw solver_error("exponent_inverse did not converge", lo, hi);
}

double LevyModel::adjustment_coefficient(const RootSolveConfig& cfg) const {
    if (orientation_ == Orientation::BrownianDrift) {
        if (!(loading() > 0.0)) {
            throw regime_error("adjustment coefficient requires positive loading");
        }
        return 2.0 * (-mean_rate_) / variance_rate_;
    }
    const JumpLaw& law = *claims_;
    if (!law.light_tailed()) {
        throw regime_error("adjustment coefficient undefined for heavy-tailed claims (" +
                           law.description() + "); use the heavy-tailed asymptote instead");
    }
    if (!(loading() > 0.0)) {
        throw regime_error("adjustment coefficient requires positive safety loading (r > lambda E[B])");
    }

    const double mu_min = law.min_rate();
    auto g = [&](double theta) { return exponent(-theta); };

    // climb toward the convergence boundary until the exponent turns positive
    double hi = 0.0;
    if (std::isfinite(mu_min)) {
        bool found = false;
        for (int j = 1; j <= 48; ++j) { // 1 - 2^-48 stays strictly below the boundary
            const double cand = mu_min * (1.0 - std::pow(2.0, -j));
            if (g(cand) > 0.0) {
                hi = cand;
                found = true;
                break;
            }
        }
        if (!found) throw solver_error("no adjustment coefficient in (0, mu_min)", 0.0, mu_min);
    } else {
        hi = 1.0;
        int guard = 0;
        while (g(hi) <= 0.0) {
            hi *= 2.0;
            if (++guard > 200) throw solver_error("no positive root of exponent(-theta)", 0.0, hi);
        }
    }
    double lo = hi;
    while (g(lo) > 0.0) {
        lo /= 2.0;
        if (lo < 1e-300) throw solver_error("no positive root of exponent(-theta)", lo, hi);
    }

    double x = 0.5 * (lo + hi);
    for (int it = 0; it < cfg.max_iterations; ++it) {
        const double f = g(x);
        if (std::abs(f) <= cfg.abs_tol * std::max(1.0, premium_rate_ + arrival_rate_)) return x;
        if (f > 0.0) hi = x; else lo = x;
        const double df = -exponent_derivative(-x);
        double next = (df != 0.0) ? x - f / df : x;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (hi - lo <= cfg.rel_tol * std::max(1.0, x)) return 0.5 * (lo + hi);
        x = next;
    }
    throw solver_error("adjustment coefficient solve did not converge", lo, hi);
}

std::string LevyModel::description() const {
    std::ostringstream os;
    switch (orientation_) {
        case Orientation::SpectrallyPositive:
            os << "spectrally_positive(r=" << premium_rate_ << ", lambda=" << arrival_rate_ << ", "
               << claims_->description() << ")";
            break;
        case Orientation::SpectrallyNegative:
            os << "spectrally_negative(r=" << premium_rate_ << ", lambda=" << arrival_rate_ << ", "
               << claims_->description() << ")";
            break;
        case Orientation::BrownianDrift:
            os << "brownian_drift(mean_rate=" << mean_rate_ << ", variance_rate=" << variance_rate_
               << ")";
            break;
    }
    return os.str();
}

} // namespace levy
