#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "levy/levy_models.hpp"
#include "levy/rng.hpp"
#include "levy/transforms.hpp"

namespace levy {

struct SimConfig {
    std::size_t paths = 10000;
    std::uint64_t seed = 0;
    int threads = 1;
    // Steady-state (beta = 0) chains only; when unset the defaults are
    // ceil(10/(1-rho)) burn-in customers and a thinning stride of
    // ceil(1/(1-rho)).
    std::optional<std::size_t> burn_in;
    std::optional<std::size_t> stride;
    // Namespaces the derived streams so that independent sample sets can be
    // drawn from one master seed.
    std::uint64_t stream_salt = 0;
};

// A seeded Monte-Carlo sample; reproducible from (master_seed, stream_salt).
struct EmpiricalSample {
    std::vector<double> values;
    std::uint64_t master_seed = 0;
    std::uint64_t stream_salt = 0;

    std::size_t size() const { return values.size(); }
    double mean() const;
    double variance() const; // unbiased
    double std_error() const;
    double ccdf(double u) const;          // fraction strictly above u
    double zero_fraction() const;         // fraction exactly zero
};

struct LstEstimate {
    double value;
    double std_error;
};

// Mean and standard error of exp(-alpha * value) over the sample.
LstEstimate empirical_lst(const EmpiricalSample& sample, double alpha);

// Exact event-driven draw of sup_{s<=T} Y(s), T ~ exp(zeta) independent.
EmpiricalSample sample_running_max_killed(const LevyModel& model, double zeta,
                                          const SimConfig& cfg);

// Exact draw of the running maximum of Y over the inspection epochs of the
// scheme before killing (a draw with no inspections is exactly 0). With
// killing_rate == 0 the draw comes from the stationary Lindley dual and
// requires positive loading.
EmpiricalSample sample_inspected_max(const LevyModel& model, const InspectionScheme& scheme,
                                     const SimConfig& cfg);

using Sampler = std::function<double(RngStream&)>;

// Number of Lindley steps contributing to one output draw.
class CustomerCountLaw {
public:
    // N is geometric: P(N = n) = q^n (1 - q). Covers Poisson inspection
    // (q = omega/(beta+omega)) and Erlang inspection (q = (k w/(k w + beta))^k).
    static CustomerCountLaw geometric(double q);
    static CustomerCountLaw poisson_inspection(double beta, double omega);
    static CustomerCountLaw erlang_inspection(double beta, double omega, int k);
    // One long stationary chain with burn-in and thinning; rho = E[service] /
    // E[interarrival] must be < 1.
    static CustomerCountLaw steady_state(double rho);

    bool is_steady_state() const { return steady_; }
    double utilization() const { return rho_; }
    long sample_count(RngStream& rng) const; // geometric draws only

private:
    CustomerCountLaw(bool steady, double q, double rho) : steady_(steady), q_(q), rho_(rho) {}
    bool steady_ = false;
    double q_ = 0.0;
    double rho_ = 0.0;
};

// W_0 = 0, W_{m+1} = max(0, W_m + service - interarrival); returns W at the
// index drawn from the count law (or thinned stationary samples).
EmpiricalSample lindley_chain(const Sampler& interarrival, const Sampler& service,
                              const CustomerCountLaw& count_law, const SimConfig& cfg);

// Single exact draw / sampler factories used by the Lindley duals.
double running_max_killed_once(const LevyModel& model, double zeta, RngStream& rng);
Sampler make_interval_max_sampler(const LevyModel& model, double horizon_rate);
Sampler make_exponential_sampler(double rate);

struct KsTestResult {
    double statistic;
    double critical_value; // two-sample, level 0.01
    bool pass;
    std::size_t n_a;
    std::size_t n_b;
};

// Two-sample Kolmogorov-Smirnov distance (handles ties).
double two_sample_ks(std::vector<double> a, std::vector<double> b);

// Compares sup Y(T_beta) against the independent sum of the inspected max and
// sup Y(T_{beta+omega}), drawn from disjoint streams.
KsTestResult ks_decomposition_test(const LevyModel& model, double beta, double omega,
                                   const SimConfig& cfg);

struct MinmaxSumResult {
    struct Row {
        double frequency;
        double deviation; // |ecf(sum) - ecf(max) * ecf(min)|
        double std_error; // combined
    };
    std::vector<Row> rows;
    double max_deviation;
    bool pass; // every deviation within 4 combined standard errors
};

// Checks that the inspected endpoint decomposes into independent inspected
// max and min through empirical characteristic functions (three independent
// replications).
MinmaxSumResult minmax_sum_check(const LevyModel& model, double beta, double omega,
                                 std::span<const double> frequencies, const SimConfig& cfg);

struct AiIdentityRow {
    double u;
    double lhs; // simulated infinite-horizon inspected tail at u
    double rhs; // E p(u + Z-), closed form for exponential claims
    double combined_std_error;
};

// Infinite-horizon identity relating bankruptcy and ruin probabilities:
// lhs = P(Y_{0,omega} > u) from the stationary Lindley chain, rhs = E p(u+Z-)
// with Z- ~ exp(psi(omega)). Exponential claims use the closed-form p; other
// laws fall back to an empirical p curve.
std::vector<AiIdentityRow> ai_identity_check(const LevyModel& model, double omega,
                                             std::span<const double> u_grid, const SimConfig& cfg);

// Single-column CSV: header row names the quantity, seed and size; an
// optional comment line (e.g. a config hash) is emitted first.
void write_sample_csv(const EmpiricalSample& sample, const std::string& quantity,
                      const std::filesystem::path& path, const std::string& comment = {});

// Event log of one compound-Poisson path over a killed horizon; exposes exact
// re-evaluation of Y at arbitrary times for coupling and regression checks.
struct CompoundPoissonPath {
    double drift;                  // signed drift rate per unit time
    double jump_sign;              // +1 upward jumps, -1 downward
    std::vector<double> jump_times;
    std::vector<double> jump_sizes;
    double kill_time;

    double value_at(double t) const;
    double event_driven_max() const;
};

CompoundPoissonPath simulate_cp_path(const LevyModel& model, double zeta, RngStream& rng);

} // namespace levy
