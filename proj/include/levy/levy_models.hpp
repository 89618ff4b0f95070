#pragma once

#include <complex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "levy/errors.hpp"

namespace levy {

class RngStream;

struct RootSolveConfig {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    int max_iterations = 200;
};

// Nonnegative claim-size distribution with an evaluable Laplace-Stieltjes
// transform b(alpha) = E exp(-alpha B), closed-form moments and tail.
//
// Convergence regions: the light-tailed kinds extend to Re(alpha) > -min_rate();
// Pareto-Lomax is finite only for Re(alpha) >= 0.
class JumpLaw {
public:
    struct Exponential {
        double rate; // mu > 0
    };
    struct Erlang {
        int shape;   // m >= 1
        double rate; // mu > 0
    };
    struct Hyperexponential {
        std::vector<double> weights; // positive, sum to 1
        std::vector<double> rates;   // positive
    };
    struct ParetoLomax {
        double shape; // a > 1, ccdf (1 + x/scale)^-a
        double scale; // s > 0
    };
    struct Deterministic {
        double value; // d > 0
    };

    static JumpLaw exponential(double rate);
    static JumpLaw erlang(int shape, double rate);
    static JumpLaw hyperexponential(std::vector<double> weights, std::vector<double> rates);
    static JumpLaw pareto_lomax(double shape, double scale);
    static JumpLaw deterministic(double value);

    double lst(double alpha) const;
    std::complex<double> lst(std::complex<double> alpha) const;
    double lst_derivative(double alpha) const;        // b'(alpha) = -E[B exp(-alpha B)]
    double lst_second_derivative(double alpha) const; // b''(alpha) = E[B^2 exp(-alpha B)]

    double mean() const;
    double second_moment() const; // throws moment_error when infinite
    bool has_finite_second_moment() const;

    double ccdf(double x) const; // P(B > x)

    // b(alpha) is finite for Re(alpha) > -min_rate(); min_rate() == 0 for
    // Pareto-Lomax and +infinity for a deterministic size.
    double min_rate() const;
    bool light_tailed() const { return min_rate() > 0.0; }

    double sample(RngStream& rng) const;

    std::string description() const;

    template <typename Visitor>
    decltype(auto) visit(Visitor&& v) const {
        return std::visit(std::forward<Visitor>(v), law_);
    }

private:
    using Storage = std::variant<Exponential, Erlang, Hyperexponential, ParetoLomax, Deterministic>;
    explicit JumpLaw(Storage law) : law_(std::move(law)) {}
    Storage law_;
};

enum class Orientation { SpectrallyPositive, SpectrallyNegative, BrownianDrift };

// A spectrally one-sided Levy process.
//
//   SpectrallyPositive: Y(t) = -r t + sum_{i<=N(t)} B_i, exponent
//       phi(alpha) = log E exp(-alpha Y(1)) = r alpha - lambda (1 - b(alpha)).
//   SpectrallyNegative: Y(t) = r t - sum_{i<=N(t)} B_i, cumulant
//       Phi(alpha) = log E exp(alpha Y(1)) = r alpha - lambda (1 - b(alpha)).
//   BrownianDrift: Y(t) = mu_B t + sigma W(t); spectrally one-sided from both
//       sides, so both the phi and Phi conventions apply with quadratic
//       exponents and closed-form inverses.
//
// exponent() is the model's own convention: phi for SpectrallyPositive and
// BrownianDrift, Phi for SpectrallyNegative. The Phi side of a BrownianDrift
// model is reachable through sn_cumulant()/sn_inverse().
class LevyModel {
public:
    static LevyModel spectrally_positive(double premium_rate, double arrival_rate, JumpLaw claims);
    static LevyModel spectrally_negative(double premium_rate, double arrival_rate, JumpLaw claims);
    static LevyModel brownian_drift(double mean_rate, double variance_rate);

    Orientation orientation() const { return orientation_; }
    bool is_compound_poisson() const { return orientation_ != Orientation::BrownianDrift; }

    double premium_rate() const;
    double arrival_rate() const;
    const JumpLaw& claims() const;
    double brownian_mean_rate() const;
    double brownian_variance_rate() const;

    double exponent(double alpha) const;
    std::complex<double> exponent(std::complex<double> alpha) const;
    double exponent_derivative(double alpha) const;
    double exponent_second_derivative(double alpha) const;

    // Safety loading exponent'(0): r - lambda E B for the compound-Poisson
    // kinds, -mu_B for BrownianDrift.
    double loading() const;

    // True when the all-time running maximum is finite almost surely:
    // exponent'(0) > 0 for SpectrallyPositive/BrownianDrift, and
    // cumulant'(0) < 0 for SpectrallyNegative.
    bool running_max_finite() const;

    // Right-inverse of the exponent on its increasing branch (the unique
    // solution alpha >= argmin of exponent with exponent(alpha) = beta).
    double exponent_inverse(double beta, const RootSolveConfig& cfg = {}) const;

    // Spectrally negative side: defined for SpectrallyNegative (same as
    // exponent()/exponent_inverse()) and BrownianDrift models.
    double sn_cumulant(double alpha) const;
    double sn_inverse(double beta, const RootSolveConfig& cfg = {}) const;

    // Unique theta* > 0 with exponent(-theta*) = 0. Requires a light-tailed
    // claim law and positive loading.
    double adjustment_coefficient(const RootSolveConfig& cfg = {}) const;

    std::string description() const;

private:
    LevyModel(Orientation o, double r, double lambda, JumpLaw claims);
    LevyModel(double mean_rate, double variance_rate);

    double cp_exponent_real(double alpha) const;
    void require_compound_poisson(const char* what) const;

    Orientation orientation_;
    double premium_rate_ = 0.0;
    double arrival_rate_ = 0.0;
    std::optional<JumpLaw> claims_; // absent for BrownianDrift
    double mean_rate_ = 0.0;
    double variance_rate_ = 0.0;
};

} // namespace levy
