#include "levy/mc_engine.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <thread>

namespace levy {

namespace {

// Disjoint stream namespaces for operations that draw several independent
// sample sets from one master seed.
constexpr std::uint64_t kSaltRunningMax = 1;
constexpr std::uint64_t kSaltInspected = 2;
constexpr std::uint64_t kSaltLindley = 3;
constexpr std::uint64_t kSaltKsA = 101;
constexpr std::uint64_t kSaltKsB1 = 102;
constexpr std::uint64_t kSaltKsB2 = 103;
constexpr std::uint64_t kSaltSum = 201;
constexpr std::uint64_t kSaltMax = 202;
constexpr std::uint64_t kSaltMin = 203;
constexpr std::uint64_t kSaltAiLhs = 301;
constexpr std::uint64_t kSaltAiZ = 302;
constexpr std::uint64_t kSaltAiRuin = 303;

constexpr double kKsCritical01 = 1.6276236; // K^{-1}(0.99), asymptotic two-sample scale

template <typename Fn>
void parallel_paths(std::size_t n, int threads, const Fn& fn) {
    const int workers = std::max(1, std::min<int>(threads, static_cast<int>(std::min<std::size_t>(n, 256))));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (std::size_t i = static_cast<std::size_t>(w); i < n; i += static_cast<std::size_t>(workers)) {
                fn(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

double brownian_interval_max(double mean_rate, double variance_rate, double horizon,
                             RngStream& rng) {
    // max of a Brownian bridge above a Gaussian endpoint: conditional on
    // Y(T) = y, P(M >= m) = exp(-2 m (m - y) / (sigma^2 T)) for m >= max(0, y)
    const double y = rng.normal(mean_rate * horizon, std::sqrt(variance_rate * horizon));
    const double c = -0.5 * variance_rate * horizon * std::log(rng.uniform());
    return 0.5 * (y + std::sqrt(y * y + 4.0 * c));
}

struct InspectedPathStats {
    double max = 0.0;
    double min = 0.0;
    double last = 0.0;
};

InspectedPathStats inspected_path_stats(const LevyModel& model, const InspectionScheme& scheme,
                                        RngStream& rng) {
    const double beta = scheme.killing_rate;
    const double phase_rate = scheme.phase_rate();
    const int k = scheme.erlang_shape;
    InspectedPathStats out;

    if (model.orientation() == Orientation::BrownianDrift) {
        const double mu = model.brownian_mean_rate();
        const double sd_rate = std::sqrt(model.brownian_variance_rate());
        const double total = phase_rate + beta;
        double v = 0.0;
        int phases = 0;
        for (;;) {
            const double g = rng.exponential(total);
            v += rng.normal(mu * g, sd_rate * std::sqrt(g));
            if (rng.uniform() * total < phase_rate) {
                if (++phases == k) {
                    phases = 0;
                    out.last = v;
                    out.max = std::max(out.max, v);
                    out.min = std::min(out.min, v);
                }
            } else {
                return out;
            }
        }
    }

    const double lambda = model.arrival_rate();
    const double r = model.premium_rate();
    const double drift = model.orientation() == Orientation::SpectrallyPositive ? -r : r;
    const double jump_sign = model.orientation() == Orientation::SpectrallyPositive ? 1.0 : -1.0;
    const JumpLaw& law = model.claims();
    const double total = lambda + phase_rate + beta;
    double v = 0.0;
    int phases = 0;
    for (;;) {
        const double g = rng.exponential(total);
        v += drift * g;
        const double pick = rng.uniform() * total;
        if (pick < lambda) {
            v += jump_sign * law.sample(rng);
        } else if (pick < lambda + phase_rate) {
            if (++phases == k) {
                phases = 0;
                out.last = v;
                out.max = std::max(out.max, v);
                out.min = std::min(out.min, v);
            }
        } else {
            return out;
        }
    }
}

EmpiricalSample steady_state_inspected(const LevyModel& model, const InspectionScheme& scheme,
                                       const SimConfig& cfg);

} // namespace

// ---------------------------------------------------------------------------
// EmpiricalSample

double EmpiricalSample::mean() const {
    if (values.empty()) throw std::invalid_argument("empty sample");
    double s = 0.0;
    for (double v : values) s += v;
    return s / static_cast<double>(values.size());
}

double EmpiricalSample::variance() const {
    if (values.size() < 2) throw std::invalid_argument("variance needs at least two values");
    const double m = mean();
    double s = 0.0;
    for (double v : values) s += (v - m) * (v - m);
    return s / static_cast<double>(values.size() - 1);
}

double EmpiricalSample::std_error() const {
    return std::sqrt(variance() / static_cast<double>(values.size()));
}

double EmpiricalSample::ccdf(double u) const {
    if (values.empty()) throw std::invalid_argument("empty sample");
    std::size_t count = 0;
    for (double v : values) {
        if (v > u) ++count;
    }
    return static_cast<double>(count) / static_cast<double>(values.size());
}

double EmpiricalSample::zero_fraction() const {
    if (values.empty()) throw std::invalid_argument("empty sample");
    std::size_t count = 0;
    for (double v : values) {
        if (v == 0.0) ++count;
    }
    return static_cast<double>(count) / static_cast<double>(values.size());
}

LstEstimate empirical_lst(const EmpiricalSample& sample, double alpha) {
    if (sample.values.empty()) throw std::invalid_argument("empirical_lst: empty sample");
    if (alpha < 0.0) throw std::domain_error("empirical_lst requires alpha >= 0");
    if (alpha == 0.0) return LstEstimate{1.0, 0.0};
    const double n = static_cast<double>(sample.values.size());
    double s = 0.0;
    double ss = 0.0;
    for (double v : sample.values) {
        const double e = std::exp(-alpha * v);
        s += e;
        ss += e * e;
    }
    const double mean = s / n;
    const double var = n > 1.5 ? std::max(0.0, (ss - n * mean * mean) / (n - 1.0)) : 0.0;
    return LstEstimate{mean, std::sqrt(var / n)};
}

// ---------------------------------------------------------------------------
// exact event-driven draws

double running_max_killed_once(const LevyModel& model, double zeta, RngStream& rng) {
    switch (model.orientation()) {
        case Orientation::BrownianDrift: {
            const double horizon = rng.exponential(zeta);
            return brownian_interval_max(model.brownian_mean_rate(),
                                         model.brownian_variance_rate(), horizon, rng);
        }
        case Orientation::SpectrallyPositive: {
            const double lambda = model.arrival_rate();
            if (lambda == 0.0) return 0.0;
            const double r = model.premium_rate();
            const JumpLaw& law = model.claims();
            const double total = lambda + zeta;
            double v = 0.0;
            double m = 0.0;
            for (;;) {
                const double g = rng.exponential(total);
                if (rng.uniform() * total >= lambda) return m;
                v += -r * g + law.sample(rng);
                m = std::max(m, v);
            }
        }
        case Orientation::SpectrallyNegative: {
            const double lambda = model.arrival_rate();
            const double r = model.premium_rate();
            const JumpLaw& law = model.claims();
            const double total = lambda + zeta;
            double v = 0.0;
            double m = 0.0;
            for (;;) {
                const double g = rng.exponential(total);
                v += r * g;
                m = std::max(m, v);
                if (rng.uniform() * total >= lambda) return m;
                v -= law.sample(rng);
            }
        }
    }
    return 0.0;
}

EmpiricalSample sample_running_max_killed(const LevyModel& model, double zeta,
                                          const SimConfig& cfg) {
    if (!(zeta > 0.0)) throw std::domain_error("sample_running_max_killed requires zeta > 0");
    if (cfg.paths < 1) throw std::invalid_argument("need at least one path");
    EmpiricalSample sample;
    sample.master_seed = cfg.seed;
    sample.stream_salt = cfg.stream_salt + kSaltRunningMax;
    sample.values.resize(cfg.paths);
    const std::uint64_t master = derive_seed(cfg.seed, sample.stream_salt);
    parallel_paths(cfg.paths, cfg.threads, [&](std::size_t i) {
        RngStream rng(master, i);
        sample.values[i] = running_max_killed_once(model, zeta, rng);
    });
    return sample;
}

EmpiricalSample sample_inspected_max(const LevyModel& model, const InspectionScheme& scheme,
                                     const SimConfig& cfg) {
    if (cfg.paths < 1) throw std::invalid_argument("need at least one path");
    if (scheme.killing_rate == 0.0) {
        return steady_state_inspected(model, scheme, cfg);
    }
    EmpiricalSample sample;
    sample.master_seed = cfg.seed;
    sample.stream_salt = cfg.stream_salt + kSaltInspected;
    sample.values.resize(cfg.paths);
    const std::uint64_t master = derive_seed(cfg.seed, sample.stream_salt);
    parallel_paths(cfg.paths, cfg.threads, [&](std::size_t i) {
        RngStream rng(master, i);
        sample.values[i] = inspected_path_stats(model, scheme, rng).max;
    });
    return sample;
}

Sampler make_interval_max_sampler(const LevyModel& model, double horizon_rate) {
    if (!(horizon_rate > 0.0)) throw std::domain_error("interval max sampler requires rate > 0");
    return [model, horizon_rate](RngStream& rng) {
        return running_max_killed_once(model, horizon_rate, rng);
    };
}

Sampler make_exponential_sampler(double rate) {
    if (!(rate > 0.0)) throw std::domain_error("exponential sampler requires rate > 0");
    return [rate](RngStream& rng) { return rng.exponential(rate); };
}

// ---------------------------------------------------------------------------
// Lindley recursion

CustomerCountLaw CustomerCountLaw::geometric(double q) {
    if (!(q >= 0.0 && q < 1.0)) throw std::domain_error("geometric count law requires 0 <= q < 1");
    return CustomerCountLaw(false, q, 0.0);
}

CustomerCountLaw CustomerCountLaw::poisson_inspection(double beta, double omega) {
    if (!(beta > 0.0)) throw std::domain_error("poisson_inspection count law requires beta > 0");
    return geometric(omega / (beta + omega));
}

CustomerCountLaw CustomerCountLaw::erlang_inspection(double beta, double omega, int k) {
    if (!(beta > 0.0)) throw std::domain_error("erlang_inspection count law requires beta > 0");
    if (k < 1) throw std::domain_error("erlang_inspection count law requires k >= 1");
    return geometric(std::pow(k * omega / (k * omega + beta), k));
}

CustomerCountLaw CustomerCountLaw::steady_state(double rho) {
    if (!(rho < 1.0)) {
        throw regime_error("steady-state Lindley chain is unstable: E[service] >= E[interarrival] "
                           "(rho = " + std::to_string(rho) + ")");
    }
    if (!(rho >= 0.0)) throw std::domain_error("utilization must be nonnegative");
    return CustomerCountLaw(true, 0.0, rho);
}

long CustomerCountLaw::sample_count(RngStream& rng) const {
    if (steady_) throw std::logic_error("steady-state law has no per-draw count");
    if (q_ == 0.0) return 0;
    return static_cast<long>(std::floor(std::log(rng.uniform()) / std::log(q_)));
}

EmpiricalSample lindley_chain(const Sampler& interarrival, const Sampler& service,
                              const CustomerCountLaw& count_law, const SimConfig& cfg) {
    if (cfg.paths < 1) throw std::invalid_argument("need at least one path");
    EmpiricalSample sample;
    sample.master_seed = cfg.seed;
    sample.stream_salt = cfg.stream_salt + kSaltLindley;
    const std::uint64_t master = derive_seed(cfg.seed, sample.stream_salt);

    if (count_law.is_steady_state()) {
        const double rho = count_law.utilization();
        const double relax = 1.0 / (1.0 - rho);
        const std::size_t burn =
            cfg.burn_in.value_or(static_cast<std::size_t>(std::ceil(10.0 * relax)));
        const std::size_t stride =
            std::max<std::size_t>(1, cfg.stride.value_or(static_cast<std::size_t>(std::ceil(relax))));
        sample.values.reserve(cfg.paths);
        RngStream rng(master, 0);
        double w = 0.0;
        for (std::size_t step = 0; step < burn; ++step) {
            w = std::max(0.0, w + service(rng) - interarrival(rng));
        }
        for (std::size_t i = 0; i < cfg.paths; ++i) {
            for (std::size_t s = 0; s < stride; ++s) {
                w = std::max(0.0, w + service(rng) - interarrival(rng));
            }
            sample.values.push_back(w);
        }
        return sample;
    }

    sample.values.resize(cfg.paths);
    parallel_paths(cfg.paths, cfg.threads, [&](std::size_t i) {
        RngStream rng(master, i);
        const long n = count_law.sample_count(rng);
        double w = 0.0;
        for (long m = 0; m < n; ++m) {
            w = std::max(0.0, w + service(rng) - interarrival(rng));
        }
        sample.values[i] = w;
    });
    return sample;
}

namespace {

// beta = 0: the inspected maximum is the stationary waiting time of the
// Lindley dual with service Z+ and interarrival Z- over exp(k*omega) phases.
EmpiricalSample steady_state_inspected(const LevyModel& model, const InspectionScheme& scheme,
                                       const SimConfig& cfg) {
    if (!model.running_max_finite()) {
        throw std::domain_error(
            "inspected maximum with beta = 0 requires a finite running maximum "
            "(positive safety loading); model " + model.description() + " does not satisfy it");
    }
    const double phase_rate = scheme.phase_rate();
    const int k = scheme.erlang_shape;

    Sampler sub_service;
    Sampler sub_inter;
    double rho;
    if (model.orientation() == Orientation::SpectrallyNegative) {
        // mirror: -Y is spectrally positive with exponent Phi, so the phase
        // infimum is an exact event-driven draw on the mirrored model and the
        // phase supremum is exp(Psi(k omega))
        const LevyModel mirrored = LevyModel::spectrally_positive(
            model.premium_rate(), model.arrival_rate(), model.claims());
        const double sup_rate = model.sn_inverse(phase_rate);
        sub_service = make_exponential_sampler(sup_rate);
        sub_inter = make_interval_max_sampler(mirrored, phase_rate);
        const double ez_plus = 1.0 / sup_rate;
        const double ez_minus = 1.0 / sup_rate - model.loading() / phase_rate;
        rho = ez_plus / ez_minus;
    } else {
        const double inf_rate = model.exponent_inverse(phase_rate);
        sub_service = make_interval_max_sampler(model, phase_rate);
        sub_inter = make_exponential_sampler(inf_rate);
        const double ez_plus = 1.0 / inf_rate - model.loading() / phase_rate;
        rho = ez_plus * inf_rate;
    }

    Sampler service = [sub_service, k](RngStream& rng) {
        double s = 0.0;
        for (int i = 0; i < k; ++i) s += sub_service(rng);
        return s;
    };
    Sampler inter = [sub_inter, k](RngStream& rng) {
        double s = 0.0;
        for (int i = 0; i < k; ++i) s += sub_inter(rng);
        return s;
    };

    SimConfig chain_cfg = cfg;
    chain_cfg.stream_salt = cfg.stream_salt + kSaltInspected;
    EmpiricalSample sample =
        lindley_chain(inter, service, CustomerCountLaw::steady_state(rho), chain_cfg);
    sample.stream_salt = cfg.stream_salt + kSaltInspected;
    return sample;
}

} // namespace

// ---------------------------------------------------------------------------
// statistical verification suite

double two_sample_ks(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("two_sample_ks: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == v) ++i;
        while (j < b.size() && b[j] == v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    // once one sample is exhausted the ecdf gap only shrinks
    return d;
}

KsTestResult ks_decomposition_test(const LevyModel& model, double beta, double omega,
                                   const SimConfig& cfg) {
    if (!(beta > 0.0)) throw std::domain_error("ks_decomposition_test requires beta > 0");
    if (!(omega > 0.0)) throw std::domain_error("ks_decomposition_test requires omega > 0");

    SimConfig cfg_a = cfg;
    cfg_a.stream_salt = cfg.stream_salt + kSaltKsA;
    SimConfig cfg_b1 = cfg;
    cfg_b1.stream_salt = cfg.stream_salt + kSaltKsB1;
    SimConfig cfg_b2 = cfg;
    cfg_b2.stream_salt = cfg.stream_salt + kSaltKsB2;

    EmpiricalSample a = sample_running_max_killed(model, beta, cfg_a);
    const EmpiricalSample b1 =
        sample_inspected_max(model, InspectionScheme::poisson(beta, omega), cfg_b1);
    const EmpiricalSample b2 = sample_running_max_killed(model, beta + omega, cfg_b2);

    std::vector<double> b(b1.values.size());
    for (std::size_t i = 0; i < b.size(); ++i) b[i] = b1.values[i] + b2.values[i];

    const std::size_t na = a.values.size();
    const std::size_t nb = b.size();
    const double stat = two_sample_ks(std::move(a.values), std::move(b));
    const double critical =
        kKsCritical01 * std::sqrt(static_cast<double>(na + nb) / (static_cast<double>(na) * static_cast<double>(nb)));
    return KsTestResult{stat, critical, stat < critical, na, nb};
}

MinmaxSumResult minmax_sum_check(const LevyModel& model, double beta, double omega,
                                 std::span<const double> frequencies, const SimConfig& cfg) {
    if (!(beta > 0.0)) throw std::domain_error("minmax_sum_check requires beta > 0");
    if (!(omega > 0.0)) throw std::domain_error("minmax_sum_check requires omega > 0");
    const InspectionScheme scheme = InspectionScheme::poisson(beta, omega);

    auto collect = [&](std::uint64_t salt, auto&& extract) {
        std::vector<double> vals(cfg.paths);
        const std::uint64_t master = derive_seed(cfg.seed, cfg.stream_salt + salt);
        parallel_paths(cfg.paths, cfg.threads, [&](std::size_t i) {
            RngStream rng(master, i);
            vals[i] = extract(inspected_path_stats(model, scheme, rng));
        });
        return vals;
    };

    const std::vector<double> sums = collect(kSaltSum, [](const InspectedPathStats& s) { return s.last; });
    const std::vector<double> maxs = collect(kSaltMax, [](const InspectedPathStats& s) { return s.max; });
    const std::vector<double> mins = collect(kSaltMin, [](const InspectedPathStats& s) { return s.min; });

    auto ecf = [](const std::vector<double>& v, double freq, double& out_var) {
        double cr = 0.0, ci = 0.0, crr = 0.0, cii = 0.0;
        for (double x : v) {
            const double c = std::cos(freq * x);
            const double s = std::sin(freq * x);
            cr += c;
            ci += s;
            crr += c * c;
            cii += s * s;
        }
        const double n = static_cast<double>(v.size());
        const double mr = cr / n;
        const double mi = ci / n;
        const double var = std::max(0.0, (crr - n * mr * mr) + (cii - n * mi * mi)) /
                           std::max(1.0, n - 1.0);
        out_var = var / n; // total complex variance of the mean
        return std::complex<double>(mr, mi);
    };

    MinmaxSumResult result;
    result.max_deviation = 0.0;
    result.pass = true;
    for (double f : frequencies) {
        double v1, v2, v3;
        const std::complex<double> c1 = ecf(sums, f, v1);
        const std::complex<double> c2 = ecf(maxs, f, v2);
        const std::complex<double> c3 = ecf(mins, f, v3);
        const double dev = std::abs(c1 - c2 * c3);
        const double se = std::sqrt(v1 + std::norm(c3) * v2 + std::norm(c2) * v3);
        result.rows.push_back({f, dev, se});
        result.max_deviation = std::max(result.max_deviation, dev);
        if (f != 0.0 && dev > 4.0 * se) result.pass = false;
    }
    return result;
}

std::vector<AiIdentityRow> ai_identity_check(const LevyModel& model, double omega,
                                             std::span<const double> u_grid,
                                             const SimConfig& cfg) {
    if (model.orientation() != Orientation::SpectrallyPositive) {
        throw regime_error("ai_identity_check requires a spectrally positive model");
    }
    if (!(model.loading() > 0.0)) {
        throw std::domain_error("ai_identity_check requires positive safety loading");
    }
    if (!(omega > 0.0)) throw std::domain_error("ai_identity_check requires omega > 0");

    const double psi_omega = model.exponent_inverse(omega);

    // lhs: stationary inspected tail via the Lindley dual
    SimConfig lhs_cfg = cfg;
    lhs_cfg.stream_salt = cfg.stream_salt + kSaltAiLhs;
    const EmpiricalSample lhs_sample =
        sample_inspected_max(model, InspectionScheme::poisson(0.0, omega), lhs_cfg);

    // batch-means standard error: thinned stationary draws keep some serial
    // correlation, so a plain binomial error bar would be optimistic
    const std::size_t n = lhs_sample.values.size();
    const std::size_t n_batches = std::min<std::size_t>(100, std::max<std::size_t>(10, n / 100));
    const std::size_t batch_len = n / n_batches;

    auto lhs_estimate = [&](double u, double& se_out) {
        double p = 0.0;
        std::vector<double> batch_means;
        batch_means.reserve(n_batches);
        for (std::size_t b = 0; b < n_batches; ++b) {
            std::size_t count = 0;
            for (std::size_t i = b * batch_len; i < (b + 1) * batch_len; ++i) {
                if (lhs_sample.values[i] > u) ++count;
            }
            batch_means.push_back(static_cast<double>(count) / static_cast<double>(batch_len));
        }
        double m = 0.0;
        for (double bm : batch_means) m += bm;
        m /= static_cast<double>(n_batches);
        double var = 0.0;
        for (double bm : batch_means) var += (bm - m) * (bm - m);
        var /= static_cast<double>(n_batches - 1);
        se_out = std::sqrt(var / static_cast<double>(n_batches));
        p = m;
        return p;
    };

    bool exponential_claims = false;
    double mu = 0.0;
    model.claims().visit([&](const auto& law) {
        if constexpr (std::is_same_v<std::decay_t<decltype(law)>, JumpLaw::Exponential>) {
            exponential_claims = true;
            mu = law.rate;
        }
    });

    std::vector<AiIdentityRow> rows;
    rows.reserve(u_grid.size());

    if (exponential_claims) {
        const double r = model.premium_rate();
        const double lambda = model.arrival_rate();
        const double theta = mu - lambda / r;
        const double tilt_factor = psi_omega / (psi_omega + theta);
        for (double u : u_grid) {
            double se = 0.0;
            const double lhs = lhs_estimate(u, se);
            const double rhs = (lambda / (r * mu)) * std::exp(-theta * u) * tilt_factor;
            rows.push_back({u, lhs, rhs, se});
        }
        return rows;
    }

    // fallback: estimate the continuously-observed ruin curve empirically and
    // average it over Z- draws
    SimConfig ruin_cfg = cfg;
    ruin_cfg.stream_salt = cfg.stream_salt + kSaltAiRuin;
    const double r = model.premium_rate();
    const double lambda = model.arrival_rate();
    const double rho0 = lambda * model.claims().mean() / r;
    const JumpLaw claims = model.claims();
    Sampler ruin_service = [claims](RngStream& rng) { return claims.sample(rng); };
    const EmpiricalSample ruin_sample =
        lindley_chain(make_exponential_sampler(lambda / r), ruin_service,
                      CustomerCountLaw::steady_state(rho0), ruin_cfg);
    std::vector<double> sorted_ruin = ruin_sample.values;
    std::sort(sorted_ruin.begin(), sorted_ruin.end());
    auto ruin_ccdf = [&](double v) {
        const auto it = std::upper_bound(sorted_ruin.begin(), sorted_ruin.end(), v);
        return static_cast<double>(sorted_ruin.end() - it) / static_cast<double>(sorted_ruin.size());
    };

    RngStream zrng(derive_seed(cfg.seed, cfg.stream_salt + kSaltAiZ), 0);
    const std::size_t m = std::max<std::size_t>(1000, cfg.paths / 10);
    for (double u : u_grid) {
        double se_lhs = 0.0;
        const double lhs = lhs_estimate(u, se_lhs);
        double s = 0.0;
        double ss = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double p = ruin_ccdf(u + zrng.exponential(psi_omega));
            s += p;
            ss += p * p;
        }
        const double rhs = s / static_cast<double>(m);
        const double var_z = std::max(0.0, (ss - m * rhs * rhs) / (static_cast<double>(m) - 1.0));
        const double se_curve = std::sqrt(rhs * (1.0 - rhs) / static_cast<double>(sorted_ruin.size()));
        const double se_rhs = std::sqrt(var_z / static_cast<double>(m) + se_curve * se_curve);
        rows.push_back({u, lhs, rhs, std::sqrt(se_lhs * se_lhs + se_rhs * se_rhs)});
    }
    return rows;
}

void write_sample_csv(const EmpiricalSample& sample, const std::string& quantity,
                      const std::filesystem::path& path, const std::string& comment) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    if (!comment.empty()) out << "# " << comment << "\n";
    out << quantity << " seed=" << sample.master_seed << " n=" << sample.values.size() << "\n";
    char buf[40];
    for (double v : sample.values) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        out << buf << "\n";
    }
}

// ---------------------------------------------------------------------------
// path record for coupling / exactness checks

double CompoundPoissonPath::value_at(double t) const {
    double v = drift * t;
    for (std::size_t i = 0; i < jump_times.size() && jump_times[i] <= t; ++i) {
        v += jump_sign * jump_sizes[i];
    }
    return v;
}

double CompoundPoissonPath::event_driven_max() const {
    double m = 0.0;
    double v = 0.0;
    double prev = 0.0;
    if (jump_sign > 0.0) {
        // upward jumps, downward drift: peaks sit immediately after jumps
        for (std::size_t i = 0; i < jump_times.size(); ++i) {
            v += drift * (jump_times[i] - prev) + jump_sizes[i];
            prev = jump_times[i];
            m = std::max(m, v);
        }
    } else {
        // upward drift, downward jumps: peaks sit just before jumps and at killing
        for (std::size_t i = 0; i < jump_times.size(); ++i) {
            const double pre_jump = v + drift * (jump_times[i] - prev);
            m = std::max(m, pre_jump);
            v = pre_jump - jump_sizes[i];
            prev = jump_times[i];
        }
        m = std::max(m, v + drift * (kill_time - prev));
    }
    return m;
}

CompoundPoissonPath simulate_cp_path(const LevyModel& model, double zeta, RngStream& rng) {
    if (model.orientation() == Orientation::BrownianDrift) {
        throw regime_error("simulate_cp_path requires a compound-Poisson model");
    }
    CompoundPoissonPath path;
    const bool sp = model.orientation() == Orientation::SpectrallyPositive;
    path.drift = sp ? -model.premium_rate() : model.premium_rate();
    path.jump_sign = sp ? 1.0 : -1.0;
    path.kill_time = rng.exponential(zeta);
    const double lambda = model.arrival_rate();
    if (lambda > 0.0) {
        for (double t = rng.exponential(lambda); t <= path.kill_time; t += rng.exponential(lambda)) {
            path.jump_times.push_back(t);
            path.jump_sizes.push_back(model.claims().sample(rng));
        }
    }
    return path;
}

} // namespace levy
