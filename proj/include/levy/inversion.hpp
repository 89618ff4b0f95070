#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "levy/levy_models.hpp"

namespace levy {

// Complementary distribution function on a grid, clipped to [0, 1]; the
// largest pre-clip excursion outside [0, 1] is recorded.
struct TailCurve {
    std::vector<double> u;
    std::vector<double> ccdf;
    double max_clip_excess = 0.0;
};

enum class InversionMethod { EulerSummation, GaverStehfest };

struct InversionConfig {
    InversionMethod method = InversionMethod::EulerSummation;

    // Euler summation (Abate-Whitt): discretization error ~ exp(-decay);
    // terms + average binomial-averaged partial sums, stable for 15..50 total.
    int euler_terms = 32;
    int euler_average = 16;
    double euler_decay = 19.4;

    // Gaver-Stehfest: even order, stable at double precision for 10..18.
    int stehfest_order = 14;

    double target_accuracy = 1e-8;

    // Exponential tilt: the inversion is performed on the transform of
    // exp(tilt*u) * ccdf(u) and the result is un-tilted afterwards. With
    // tilt near the dominant decay rate this keeps the working values O(1),
    // so exponentially small tails come out with small *relative* error
    // instead of the ~1e-8 absolute floor of the plain double-precision
    // contour sum. The transform must be evaluable at arguments with real
    // part down to -tilt (exclusive).
    double tilt = 0.0;

    void validate() const;
};

using ComplexTransform = std::function<std::complex<double>(std::complex<double>)>;
using RealTransform = std::function<double(double)>;

// Inverts the Laplace-Stieltjes transform of a nonnegative random variable X
// into u -> P(X > u), via the ordinary Laplace transform (1 - lst(s))/s.
TailCurve invert_ccdf(const ComplexTransform& lst, std::span<const double> u_grid,
                      const InversionConfig& cfg = {});

// Real-argument-only evaluators can use Gaver-Stehfest; requesting Euler
// summation for one is a configuration error.
TailCurve invert_ccdf(const RealTransform& lst, std::span<const double> u_grid,
                      const InversionConfig& cfg);

struct Theorem1Config {
    int initial_panels = 8;
    int max_panels = 128;
    std::size_t paths_per_node = 20000;
    double horizon_tail_mass = 1e-12; // truncate where exp(-beta t) drops below this
    int threads = 1;
};

struct Theorem1Estimate {
    double value;
    double std_error;
    int panels;
};

// Monte-Carlo/quadrature estimate of the double integral
//   I = int_0^inf (1/t) e^{-beta t} (1 - e^{-omega t})
//         E[(1 - e^{-alpha Y(t)}) 1{Y(t) > 0}] dt,
// so that exp(-I) reproduces the inspected-max transform. Gauss-Legendre
// panels in t; exact sampling of Y(t) at each node with a per-node random
// stream; panels are doubled until the change is below the Monte-Carlo
// standard error. Deterministic given (seed, panel count).
Theorem1Estimate theorem1_exponent_estimate(const LevyModel& model, double beta, double omega,
                                            double alpha, const Theorem1Config& cfg,
                                            std::uint64_t seed);

} // namespace levy
