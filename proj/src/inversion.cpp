#include "levy/inversion.hpp"

#include <cmath>
#include <thread>
#include <vector>

#include "levy/rng.hpp"

namespace levy {

namespace {

constexpr double kAtomProbe = 1e10; // ccdf(0) = 1 - lim lst; probed at this argument

double clip_unit(double v, double& excess) {
    if (v < 0.0) {
        excess = std::max(excess, -v);
        return 0.0;
    }
    if (v > 1.0) {
        excess = std::max(excess, v - 1.0);
        return 1.0;
    }
    return v;
}

// (1 - lst(s - tilt)) / (s - tilt): ordinary Laplace transform of the tilted ccdf.
std::complex<double> ccdf_transform(const ComplexTransform& lst, std::complex<double> s,
                                    double tilt) {
    const std::complex<double> arg = s - tilt;
    return (1.0 - lst(arg)) / arg;
}

double euler_point(const ComplexTransform& lst, double u, const InversionConfig& cfg) {
    const int n_base = cfg.euler_terms;
    const int m_avg = cfg.euler_average;
    const double a_decay = cfg.euler_decay;

    const double half_a = 0.5 * a_decay / u;
    const std::complex<double> s0(half_a, 0.0);
    double sum = 0.5 * ccdf_transform(lst, s0, cfg.tilt).real();

    std::vector<double> partial(static_cast<std::size_t>(m_avg) + 1);
    double sign = -1.0;
    for (int k = 1; k <= n_base + m_avg; ++k) {
        const std::complex<double> sk(half_a, k * M_PI / u);
        sum += sign * ccdf_transform(lst, sk, cfg.tilt).real();
        sign = -sign;
        if (k >= n_base) partial[static_cast<std::size_t>(k - n_base)] = sum;
    }

    // binomial average of the last m_avg+1 partial sums
    double avg = 0.0;
    double binom = 1.0;
    double binom_sum = 0.0;
    for (int m = 0; m <= m_avg; ++m) {
        avg += binom * partial[static_cast<std::size_t>(m)];
        binom_sum += binom;
        binom = binom * (m_avg - m) / (m + 1.0);
    }
    avg /= binom_sum;

    return std::exp(0.5 * a_decay) / u * avg;
}

std::vector<double> stehfest_weights(int order) {
    const int half = order / 2;
    std::vector<double> fact(static_cast<std::size_t>(order) + 1, 1.0);
    for (int i = 1; i <= order; ++i) fact[static_cast<std::size_t>(i)] = fact[static_cast<std::size_t>(i - 1)] * i;
    std::vector<double> w(static_cast<std::size_t>(order) + 1, 0.0);
    for (int k = 1; k <= order; ++k) {
        double sum = 0.0;
        for (int j = (k + 1) / 2; j <= std::min(k, half); ++j) {
            double term = std::pow(static_cast<double>(j), half) * fact[static_cast<std::size_t>(2 * j)];
            term /= fact[static_cast<std::size_t>(half - j)] * fact[static_cast<std::size_t>(j)] *
                    fact[static_cast<std::size_t>(j - 1)] * fact[static_cast<std::size_t>(k - j)] *
                    fact[static_cast<std::size_t>(2 * j - k)];
            sum += term;
        }
        w[static_cast<std::size_t>(k)] = ((k + half) % 2 == 0 ? 1.0 : -1.0) * sum;
    }
    return w;
}

double stehfest_point(const RealTransform& lst, double u, const InversionConfig& cfg,
                      const std::vector<double>& weights) {
    const double ln2_over_u = M_LN2 / u;
    double sum = 0.0;
    for (int k = 1; k <= cfg.stehfest_order; ++k) {
        const double s = k * ln2_over_u;
        const double arg = s - cfg.tilt;
        sum += weights[static_cast<std::size_t>(k)] * (1.0 - lst(arg)) / arg;
    }
    return ln2_over_u * sum;
}

} // namespace

void InversionConfig::validate() const {
    if (method == InversionMethod::EulerSummation) {
        const int total = euler_terms + euler_average;
        if (euler_terms < 1 || euler_average < 1 || total < 15 || total > 50) {
            throw std::invalid_argument(
                "euler summation needs 15..50 total terms (terms + average)");
        }
        if (!(euler_decay > 0.0)) throw std::invalid_argument("euler decay must be > 0");
    } else {
        if (stehfest_order < 10 || stehfest_order > 18 || stehfest_order % 2 != 0) {
            throw std::invalid_argument("gaver-stehfest order must be even and within 10..18");
        }
    }
    if (!(target_accuracy > 0.0)) throw std::invalid_argument("target accuracy must be > 0");
    if (tilt < 0.0) throw std::invalid_argument("tilt must be >= 0");
}

TailCurve invert_ccdf(const ComplexTransform& lst, std::span<const double> u_grid,
                      const InversionConfig& cfg) {
    cfg.validate();
    TailCurve out;
    out.u.assign(u_grid.begin(), u_grid.end());
    out.ccdf.reserve(u_grid.size());

    std::vector<double> gs_weights;
    if (cfg.method == InversionMethod::GaverStehfest) gs_weights = stehfest_weights(cfg.stehfest_order);

    for (double u : u_grid) {
        if (u < 0.0) throw std::domain_error("invert_ccdf requires u >= 0");
        double value;
        if (u == 0.0) {
            value = 1.0 - lst(std::complex<double>(kAtomProbe, 0.0)).real();
        } else if (cfg.method == InversionMethod::EulerSummation) {
            value = std::exp(-cfg.tilt * u) * euler_point(lst, u, cfg);
        } else {
            RealTransform real_lst = [&lst](double a) {
                return lst(std::complex<double>(a, 0.0)).real();
            };
            value = std::exp(-cfg.tilt * u) * stehfest_point(real_lst, u, cfg, gs_weights);
        }
        out.ccdf.push_back(clip_unit(value, out.max_clip_excess));
    }
    return out;
}

TailCurve invert_ccdf(const RealTransform& lst, std::span<const double> u_grid,
                      const InversionConfig& cfg) {
    cfg.validate();
    if (cfg.method == InversionMethod::EulerSummation) {
        throw config_error("inversion.method",
                           "euler summation evaluates the transform at complex arguments; "
                           "this transform is real-only, use gaver-stehfest");
    }
    TailCurve out;
    out.u.assign(u_grid.begin(), u_grid.end());
    out.ccdf.reserve(u_grid.size());
    const std::vector<double> weights = stehfest_weights(cfg.stehfest_order);
    for (double u : u_grid) {
        if (u < 0.0) throw std::domain_error("invert_ccdf requires u >= 0");
        double value;
        if (u == 0.0) {
            value = 1.0 - lst(kAtomProbe);
        } else {
            value = std::exp(-cfg.tilt * u) * stehfest_point(lst, u, cfg, weights);
        }
        out.ccdf.push_back(clip_unit(value, out.max_clip_excess));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Theorem-1 style exponent estimate

namespace {

// 10-point Gauss-Legendre rule on [-1, 1].
constexpr int kGlPoints = 10;
constexpr double kGlNode[kGlPoints] = {
    -0.9739065285171717, -0.8650633666889845, -0.6794095682990244, -0.4333953941292472,
    -0.1488743389816312, 0.1488743389816312,  0.4333953941292472,  0.6794095682990244,
    0.8650633666889845,  0.9739065285171717};
constexpr double kGlWeight[kGlPoints] = {
    0.0666713443086881, 0.1494513491505806, 0.2190863625159820, 0.2692667193099963,
    0.2955242247147529, 0.2955242247147529, 0.2692667193099963, 0.2190863625159820,
    0.1494513491505806, 0.0666713443086881};

struct NodeResult {
    double mean = 0.0;
    double var_of_mean = 0.0;
};

// Exact draw of Y(t) for the supported models.
double sample_endpoint(const LevyModel& model, double t, RngStream& rng) {
    switch (model.orientation()) {
        case Orientation::BrownianDrift:
            return rng.normal(model.brownian_mean_rate() * t,
                              std::sqrt(model.brownian_variance_rate() * t));
        case Orientation::SpectrallyPositive: {
            double v = -model.premium_rate() * t;
            const double lambda = model.arrival_rate();
            if (lambda > 0.0) {
                for (double s = rng.exponential(lambda); s <= t; s += rng.exponential(lambda)) {
                    v += model.claims().sample(rng);
                }
            }
            return v;
        }
        case Orientation::SpectrallyNegative: {
            double v = model.premium_rate() * t;
            const double lambda = model.arrival_rate();
            if (lambda > 0.0) {
                for (double s = rng.exponential(lambda); s <= t; s += rng.exponential(lambda)) {
                    v -= model.claims().sample(rng);
                }
            }
            return v;
        }
    }
    return 0.0;
}

NodeResult estimate_node(const LevyModel& model, double t, double alpha, std::size_t paths,
                         std::uint64_t master, std::uint64_t stream_id) {
    RngStream rng(master, stream_id);
    double sum = 0.0;
    double sumsq = 0.0;
    for (std::size_t i = 0; i < paths; ++i) {
        const double y = sample_endpoint(model, t, rng);
        const double h = y > 0.0 ? -std::expm1(-alpha * y) : 0.0;
        sum += h;
        sumsq += h * h;
    }
    const double n = static_cast<double>(paths);
    const double mean = sum / n;
    const double var = std::max(0.0, (sumsq - n * mean * mean) / (n - 1.0));
    return NodeResult{mean, var / n};
}

struct LevelEstimate {
    double value = 0.0;
    double variance = 0.0;
};

LevelEstimate evaluate_level(const LevyModel& model, double beta, double omega, double alpha,
                             double t_max, int panels, std::size_t paths, int threads,
                             std::uint64_t seed) {
    const int n_nodes = panels * kGlPoints;
    std::vector<double> node_t(static_cast<std::size_t>(n_nodes));
    std::vector<double> node_c(static_cast<std::size_t>(n_nodes));
    const double width = t_max / panels;
    for (int p = 0; p < panels; ++p) {
        const double lo = p * width;
        for (int g = 0; g < kGlPoints; ++g) {
            const int idx = p * kGlPoints + g;
            const double t = lo + 0.5 * width * (1.0 + kGlNode[g]);
            // (1 - exp(-omega t))/t extends continuously to omega at t = 0
            const double tfactor = t > 0.0 ? -std::expm1(-omega * t) / t : omega;
            node_t[static_cast<std::size_t>(idx)] = t;
            node_c[static_cast<std::size_t>(idx)] = 0.5 * width * kGlWeight[g] *
                                                    std::exp(-beta * t) * tfactor;
        }
    }

    // per-node streams derived from (seed, panel count); node index is the id
    const std::uint64_t master = derive_seed(seed, static_cast<std::uint64_t>(panels));
    std::vector<NodeResult> results(static_cast<std::size_t>(n_nodes));
    const int workers = std::max(1, std::min(threads, n_nodes));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (int idx = w; idx < n_nodes; idx += workers) {
                results[static_cast<std::size_t>(idx)] =
                    estimate_node(model, node_t[static_cast<std::size_t>(idx)], alpha, paths,
                                  master, static_cast<std::uint64_t>(idx));
            }
        });
    }
    for (auto& th : pool) th.join();

    LevelEstimate level;
    for (int idx = 0; idx < n_nodes; ++idx) {
        const double c = node_c[static_cast<std::size_t>(idx)];
        level.value += c * results[static_cast<std::size_t>(idx)].mean;
        level.variance += c * c * results[static_cast<std::size_t>(idx)].var_of_mean;
    }
    return level;
}

} // namespace

Theorem1Estimate theorem1_exponent_estimate(const LevyModel& model, double beta, double omega,
                                            double alpha, const Theorem1Config& cfg,
                                            std::uint64_t seed) {
    if (!(beta > 0.0)) {
        throw std::domain_error(
            "theorem1_exponent_estimate requires beta > 0 (killing makes the time integral "
            "converge)");
    }
    if (!(omega > 0.0)) throw std::domain_error("theorem1_exponent_estimate requires omega > 0");
    if (alpha < 0.0) throw std::domain_error("theorem1_exponent_estimate requires alpha >= 0");
    if (alpha == 0.0) return Theorem1Estimate{0.0, 0.0, 0};
    if (cfg.initial_panels < 1 || cfg.max_panels < cfg.initial_panels || cfg.paths_per_node < 2) {
        throw std::invalid_argument("invalid Theorem1Config");
    }

    const double t_max = -std::log(cfg.horizon_tail_mass) / beta;

    int panels = cfg.initial_panels;
    LevelEstimate current =
        evaluate_level(model, beta, omega, alpha, t_max, panels, cfg.paths_per_node, cfg.threads, seed);
    while (panels * 2 <= cfg.max_panels) {
        const LevelEstimate refined = evaluate_level(model, beta, omega, alpha, t_max, panels * 2,
                                                     cfg.paths_per_node, cfg.threads, seed);
        const double change = std::abs(refined.value - current.value);
        const double se = std::sqrt(refined.variance);
        panels *= 2;
        current = refined;
        if (change <= std::max(se, 1e-12 * std::max(1.0, std::abs(refined.value)))) {
            return Theorem1Estimate{current.value, std::sqrt(current.variance), panels};
        }
    }
    throw solver_error("theorem1_exponent_estimate: quadrature did not settle below the "
                       "Monte-Carlo standard error",
                       static_cast<double>(panels), static_cast<double>(cfg.max_panels));
}

} // namespace levy
