#include "levy/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <vector>

#include "levy/inversion.hpp"
#include "levy/levy_models.hpp"
#include "levy/mc_engine.hpp"
#include "levy/risk_analytics.hpp"
#include "levy/transforms.hpp"

namespace levy {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// config reading helpers (every failure carries the offending field path)

const json& need(const json& node, const std::string& path, const char* key) {
    if (!node.is_object() || !node.contains(key)) {
        throw config_error(path + "." + key, "missing required field");
    }
    return node.at(key);
}

double need_number(const json& node, const std::string& path, const char* key) {
    const json& v = need(node, path, key);
    if (!v.is_number()) throw config_error(path + "." + key, "expected a number");
    return v.get<double>();
}

double optional_number(const json& node, const std::string& path, const char* key,
                       double fallback) {
    if (!node.is_object() || !node.contains(key)) return fallback;
    const json& v = node.at(key);
    if (!v.is_number()) throw config_error(path + "." + key, "expected a number");
    return v.get<double>();
}

long need_integer(const json& node, const std::string& path, const char* key) {
    const json& v = need(node, path, key);
    if (!v.is_number_integer()) throw config_error(path + "." + key, "expected an integer");
    return v.get<long>();
}

std::string need_string(const json& node, const std::string& path, const char* key) {
    const json& v = need(node, path, key);
    if (!v.is_string()) throw config_error(path + "." + key, "expected a string");
    return v.get<std::string>();
}

std::vector<double> number_list(const json& v, const std::string& path) {
    if (!v.is_array() || v.empty()) throw config_error(path, "expected a nonempty array of numbers");
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& e : v) {
        if (!e.is_number()) throw config_error(path, "expected a nonempty array of numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

std::vector<double> need_grid(const json& config, const char* name) {
    if (!config.contains("grids") || !config.at("grids").contains(name)) {
        throw config_error(std::string("grids.") + name, "missing required grid");
    }
    return number_list(config.at("grids").at(name), std::string("grids.") + name);
}

JumpLaw parse_claims(const json& node, const std::string& path) {
    const std::string kind = need_string(node, path, "kind");
    try {
        if (kind == "exponential") {
            return JumpLaw::exponential(need_number(node, path, "rate"));
        }
        if (kind == "erlang") {
            return JumpLaw::erlang(static_cast<int>(need_integer(node, path, "shape")),
                                   need_number(node, path, "rate"));
        }
        if (kind == "hyperexponential") {
            return JumpLaw::hyperexponential(
                number_list(need(node, path, "weights"), path + ".weights"),
                number_list(need(node, path, "rates"), path + ".rates"));
        }
        if (kind == "pareto_lomax") {
            return JumpLaw::pareto_lomax(need_number(node, path, "shape"),
                                         need_number(node, path, "scale"));
        }
        if (kind == "deterministic") {
            return JumpLaw::deterministic(need_number(node, path, "value"));
        }
    } catch (const std::invalid_argument& ex) {
        throw config_error(path, ex.what());
    }
    throw config_error(path + ".kind",
                       "unknown claim law '" + kind +
                           "' (exponential|erlang|hyperexponential|pareto_lomax|deterministic)");
}

LevyModel parse_model(const json& config) {
    const json& node = need(config, "", "model");
    const std::string orientation = need_string(node, "model", "orientation");
    try {
        if (orientation == "spectrally_positive" || orientation == "spectrally_negative") {
            const double r = need_number(node, "model", "premium_rate");
            const double lambda = need_number(node, "model", "arrival_rate");
            JumpLaw claims = parse_claims(need(node, "model", "claims"), "model.claims");
            return orientation == "spectrally_positive"
                       ? LevyModel::spectrally_positive(r, lambda, std::move(claims))
                       : LevyModel::spectrally_negative(r, lambda, std::move(claims));
        }
        if (orientation == "brownian_drift") {
            return LevyModel::brownian_drift(need_number(node, "model", "mean_rate"),
                                             need_number(node, "model", "variance_rate"));
        }
    } catch (const std::invalid_argument& ex) {
        throw config_error("model", ex.what());
    }
    throw config_error("model.orientation",
                       "unknown orientation '" + orientation +
                           "' (spectrally_positive|spectrally_negative|brownian_drift)");
}

InspectionScheme parse_scheme(const json& config) {
    const json& node = need(config, "", "scheme");
    const double beta = need_number(node, "scheme", "beta");
    const double omega = need_number(node, "scheme", "omega");
    const long k = node.contains("erlang_shape") ? need_integer(node, "scheme", "erlang_shape") : 1;
    if (beta < 0.0) throw config_error("scheme.beta", "must be >= 0");
    if (!(omega > 0.0)) throw config_error("scheme.omega", "must be > 0");
    if (k < 1) throw config_error("scheme.erlang_shape", "must be >= 1");
    return InspectionScheme::erlang(beta, omega, static_cast<int>(k));
}

struct SimBlock {
    std::size_t paths;
    std::uint64_t seed;
    std::optional<std::size_t> burn_in;
    std::optional<std::size_t> stride;
    std::size_t paths_per_node;
};

SimBlock parse_simulation(const json& config) {
    const json& node = need(config, "", "simulation");
    const long paths = need_integer(node, "simulation", "paths");
    if (paths < 1) throw config_error("simulation.paths", "must be >= 1");
    if (!node.contains("seed")) {
        throw config_error("simulation.seed", "a seed is mandatory for simulation-backed commands");
    }
    const long seed = need_integer(node, "simulation", "seed");
    if (seed < 0) throw config_error("simulation.seed", "must be >= 0");
    SimBlock out{static_cast<std::size_t>(paths), static_cast<std::uint64_t>(seed), {}, {}, 20000};
    if (node.contains("burn_in")) {
        const long b = need_integer(node, "simulation", "burn_in");
        if (b < 0) throw config_error("simulation.burn_in", "must be >= 0");
        out.burn_in = static_cast<std::size_t>(b);
    }
    if (node.contains("stride")) {
        const long s = need_integer(node, "simulation", "stride");
        if (s < 1) throw config_error("simulation.stride", "must be >= 1");
        out.stride = static_cast<std::size_t>(s);
    }
    if (node.contains("paths_per_node")) {
        const long p = need_integer(node, "simulation", "paths_per_node");
        if (p < 2) throw config_error("simulation.paths_per_node", "must be >= 2");
        out.paths_per_node = static_cast<std::size_t>(p);
    }
    return out;
}

InversionConfig parse_inversion(const json& config) {
    InversionConfig cfg;
    if (!config.contains("inversion")) return cfg;
    const json& node = config.at("inversion");
    if (node.contains("method")) {
        const std::string method = need_string(node, "inversion", "method");
        if (method == "euler") cfg.method = InversionMethod::EulerSummation;
        else if (method == "gaver_stehfest") cfg.method = InversionMethod::GaverStehfest;
        else throw config_error("inversion.method", "expected euler|gaver_stehfest");
    }
    cfg.euler_terms = static_cast<int>(optional_number(node, "inversion", "euler_terms", cfg.euler_terms));
    cfg.euler_average =
        static_cast<int>(optional_number(node, "inversion", "euler_average", cfg.euler_average));
    cfg.euler_decay = optional_number(node, "inversion", "euler_decay", cfg.euler_decay);
    cfg.stehfest_order =
        static_cast<int>(optional_number(node, "inversion", "stehfest_order", cfg.stehfest_order));
    cfg.target_accuracy = optional_number(node, "inversion", "target_accuracy", cfg.target_accuracy);
    cfg.tilt = optional_number(node, "inversion", "tilt", cfg.tilt);
    try {
        cfg.validate();
    } catch (const std::invalid_argument& ex) {
        throw config_error("inversion", ex.what());
    }
    return cfg;
}

// ---------------------------------------------------------------------------
// output helpers

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::string& hash_line,
              const std::string& header)
        : out_(path) {
        if (!out_) throw std::runtime_error("cannot open " + path.string() + " for writing");
        out_ << "# " << hash_line << "\n" << header << "\n";
    }

    void row(std::initializer_list<double> values) {
        bool first = true;
        for (double v : values) {
            if (!first) out_ << ",";
            out_ << fmt17(v);
            first = false;
        }
        out_ << "\n";
    }

private:
    std::ofstream out_;
};

void write_json_report(const std::filesystem::path& path, const json& report) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << report.dump(2) << "\n";
}

struct Logger {
    bool verbose;
    void info(const std::string& msg) const {
        if (verbose) std::cerr << "[levyinspect] " << msg << "\n";
    }
};

// ---------------------------------------------------------------------------
// commands

int cmd_eval_transform(const json& config, const CliOptions& opt, const std::string& hash) {
    const LevyModel model = parse_model(config);
    const InspectionScheme scheme = parse_scheme(config);
    const std::vector<double> alphas = need_grid(config, "alpha");
    const LstCurve curve = eval_lst_curve(model, scheme, alphas);
    CsvWriter csv(opt.out_dir / "transform.csv", "config_hash=" + hash + " seed=none",
                  "alpha,value");
    for (std::size_t i = 0; i < curve.alphas.size(); ++i) {
        csv.row({curve.alphas[i], curve.values[i]});
    }
    return 0;
}

int cmd_invert(const json& config, const CliOptions& opt, const std::string& hash) {
    const LevyModel model = parse_model(config);
    const InspectionScheme scheme = parse_scheme(config);
    if (!scheme.is_poisson()) {
        throw regime_error("invert requires a Poisson scheme: the Erlang inspected-max transform "
                           "has no closed form");
    }
    const std::vector<double> u = need_grid(config, "u");
    const InversionConfig inv = parse_inversion(config);
    const InspectedMaxLst lst(model, scheme.killing_rate, scheme.rate);
    const TailCurve curve = invert_ccdf([&](std::complex<double> s) { return lst(s); }, u, inv);
    CsvWriter csv(opt.out_dir / "tail.csv", "config_hash=" + hash + " seed=none", "u,ccdf");
    for (std::size_t i = 0; i < curve.u.size(); ++i) {
        csv.row({curve.u[i], curve.ccdf[i]});
    }
    return 0;
}

int cmd_simulate(const json& config, const CliOptions& opt, const std::string& hash,
                 const Logger& log) {
    const LevyModel model = parse_model(config);
    const InspectionScheme scheme = parse_scheme(config);
    const SimBlock sim = parse_simulation(config);
    const std::vector<double> alphas = need_grid(config, "alpha");

    SimConfig cfg;
    cfg.paths = sim.paths;
    cfg.seed = sim.seed;
    cfg.threads = opt.threads;
    cfg.burn_in = sim.burn_in;
    cfg.stride = sim.stride;

    log.info("simulating " + std::to_string(sim.paths) + " inspected-max draws");
    const EmpiricalSample sample = sample_inspected_max(model, scheme, cfg);
    write_sample_csv(sample, "inspected_max", opt.out_dir / "sample.csv",
                     "config_hash=" + hash + " seed=" + std::to_string(sim.seed));

    if (scheme.is_poisson()) {
        CsvWriter csv(opt.out_dir / "compare.csv",
                      "config_hash=" + hash + " seed=" + std::to_string(sim.seed),
                      "alpha,empirical,std_error,closed_form,abs_z");
        const InspectedMaxLst lst(model, scheme.killing_rate, scheme.rate);
        for (double a : alphas) {
            const LstEstimate est = empirical_lst(sample, a);
            const double truth = lst(a);
            const double z = est.std_error > 0.0 ? std::abs(est.value - truth) / est.std_error : 0.0;
            csv.row({a, est.value, est.std_error, truth, z});
        }
        return 0;
    }

    // Erlang scheme: check the inspection-count law and the sub-interval
    // maxima against their closed forms
    if (!(scheme.killing_rate > 0.0)) {
        throw std::domain_error("simulate with an Erlang scheme requires beta > 0 for the "
                                "inspection-count comparison");
    }
    {
        std::vector<std::size_t> counts;
        const std::uint64_t master = derive_seed(sim.seed, 7001);
        std::vector<long> ns(sim.paths);
        for (std::size_t i = 0; i < sim.paths; ++i) {
            RngStream rng(master, i);
            const long n = CustomerCountLaw::erlang_inspection(scheme.killing_rate, scheme.rate,
                                                               scheme.erlang_shape)
                               .sample_count(rng);
            ns[i] = n;
            if (static_cast<std::size_t>(n) >= counts.size()) counts.resize(static_cast<std::size_t>(n) + 1, 0);
            ++counts[static_cast<std::size_t>(n)];
        }
        CsvWriter csv(opt.out_dir / "counts.csv",
                      "config_hash=" + hash + " seed=" + std::to_string(sim.seed),
                      "n,observed,pmf,abs_z");
        const std::size_t show = std::min<std::size_t>(counts.size(), 9);
        for (std::size_t n = 0; n < show; ++n) {
            const double obs = static_cast<double>(counts[n]) / static_cast<double>(sim.paths);
            const double pmf =
                erlang_count_pmf(scheme.killing_rate, scheme.rate, scheme.erlang_shape,
                                 static_cast<long>(n));
            const double se = std::sqrt(pmf * (1.0 - pmf) / static_cast<double>(sim.paths));
            csv.row({static_cast<double>(n), obs, pmf, se > 0.0 ? std::abs(obs - pmf) / se : 0.0});
        }
    }
    {
        SimConfig sub_cfg = cfg;
        sub_cfg.stream_salt = 7100;
        const double zeta = scheme.killing_rate + scheme.phase_rate();
        const EmpiricalSample subs = sample_running_max_killed(model, zeta, sub_cfg);
        CsvWriter csv(opt.out_dir / "subinterval_compare.csv",
                      "config_hash=" + hash + " seed=" + std::to_string(sim.seed),
                      "alpha,empirical,std_error,closed_form,abs_z");
        for (double a : alphas) {
            const LstEstimate est = empirical_lst(subs, a);
            const double truth = erlang_component_lsts(model, scheme.killing_rate, scheme.rate,
                                                       scheme.erlang_shape, a)
                                     .z_plus_lst;
            const double z = est.std_error > 0.0 ? std::abs(est.value - truth) / est.std_error : 0.0;
            csv.row({a, est.value, est.std_error, truth, z});
        }
    }
    return 0;
}

int cmd_verify(const json& config, const CliOptions& opt, const std::string& hash,
               const Logger& log) {
    const LevyModel model = parse_model(config);
    const InspectionScheme scheme = parse_scheme(config);
    if (!scheme.is_poisson()) {
        throw regime_error("verify requires a Poisson scheme");
    }
    if (!(scheme.killing_rate > 0.0)) {
        throw std::domain_error("verify requires beta > 0 (the decomposition checks kill the path)");
    }
    const SimBlock sim = parse_simulation(config);
    const std::vector<double> alphas = need_grid(config, "alpha");
    const std::vector<double> freqs = need_grid(config, "frequency");
    const std::vector<double> us = need_grid(config, "u");
    const double beta = scheme.killing_rate;
    const double omega = scheme.rate;

    SimConfig cfg;
    cfg.paths = sim.paths;
    cfg.seed = sim.seed;
    cfg.threads = opt.threads;

    json checks = json::array();
    bool all_pass = true;

    {
        log.info("factorization residual");
        const double resid = factorization_residual(model, beta, omega, alphas);
        const bool pass = resid <= 1e-12;
        checks.push_back({{"name", "factorization_residual"},
                          {"pass", pass},
                          {"statistic", resid},
                          {"threshold", 1e-12}});
        all_pass = all_pass && pass;
    }
    {
        log.info("ks decomposition test");
        const KsTestResult ks = ks_decomposition_test(model, beta, omega, cfg);
        checks.push_back({{"name", "ks_decomposition"},
                          {"pass", ks.pass},
                          {"statistic", ks.statistic},
                          {"threshold", ks.critical_value}});
        all_pass = all_pass && ks.pass;
    }
    {
        log.info("min/max sum characteristic-function check");
        const MinmaxSumResult mm = minmax_sum_check(model, beta, omega, freqs, cfg);
        json rows = json::array();
        for (const auto& row : mm.rows) {
            rows.push_back({{"frequency", row.frequency},
                            {"deviation", row.deviation},
                            {"std_error", row.std_error}});
        }
        checks.push_back({{"name", "minmax_sum"},
                          {"pass", mm.pass},
                          {"statistic", mm.max_deviation},
                          {"rows", rows}});
        all_pass = all_pass && mm.pass;
    }
    {
        log.info("theorem-1 style exponent estimate");
        Theorem1Config t1;
        t1.threads = opt.threads;
        t1.paths_per_node = sim.paths_per_node;
        const InspectedMaxLst lst(model, beta, omega);
        json rows = json::array();
        bool pass = true;
        for (double a : alphas) {
            const Theorem1Estimate est = theorem1_exponent_estimate(model, beta, omega, a, t1, sim.seed);
            const double target = -std::log(lst(a));
            const bool row_pass = std::abs(est.value - target) <= 3.0 * est.std_error ||
                                  std::abs(est.value - target) <= 1e-12;
            rows.push_back({{"alpha", a},
                            {"estimate", est.value},
                            {"std_error", est.std_error},
                            {"target", target},
                            {"pass", row_pass}});
            pass = pass && row_pass;
        }
        checks.push_back({{"name", "exponent_integral"}, {"pass", pass}, {"rows", rows}});
        all_pass = all_pass && pass;
    }
    if (model.orientation() == Orientation::SpectrallyPositive && model.loading() > 0.0) {
        log.info("infinite-horizon identity check");
        SimConfig ai_cfg = cfg;
        ai_cfg.burn_in = sim.burn_in;
        ai_cfg.stride = sim.stride;
        const auto rows = ai_identity_check(model, omega, us, ai_cfg);
        json jrows = json::array();
        bool pass = true;
        for (const auto& row : rows) {
            const bool row_pass = std::abs(row.lhs - row.rhs) <= 4.0 * row.combined_std_error;
            jrows.push_back({{"u", row.u},
                             {"lhs", row.lhs},
                             {"rhs", row.rhs},
                             {"combined_std_error", row.combined_std_error},
                             {"pass", row_pass}});
            pass = pass && row_pass;
        }
        checks.push_back({{"name", "ruin_bankruptcy_identity"}, {"pass", pass}, {"rows", jrows}});
        all_pass = all_pass && pass;
    } else {
        checks.push_back({{"name", "ruin_bankruptcy_identity"},
                          {"pass", true},
                          {"skipped", "requires a spectrally positive model with positive loading"}});
    }

    json report;
    report["config_hash"] = hash;
    report["seed"] = sim.seed;
    report["checks"] = checks;
    report["all_pass"] = all_pass;
    write_json_report(opt.out_dir / "verify_report.json", report);
    return all_pass ? 0 : 1;
}

int cmd_risk(const json& config, const CliOptions& opt, const std::string& hash,
             const Logger& log) {
    const LevyModel model = parse_model(config);
    const InspectionScheme scheme = parse_scheme(config);
    const std::vector<double> us = need_grid(config, "u");
    const double omega = scheme.rate;

    const bool heavy = model.is_compound_poisson() && !model.claims().light_tailed();

    json report;
    report["config_hash"] = hash;

    if (!heavy) {
        const BankruptcyLight at_zero = bankruptcy_asymptote_light(model, omega, 0.0);
        const double theta = *at_zero.report.decay_rate;
        const double gamma = *at_zero.report.ruin_prefactor;
        const double gamma_tilde = *at_zero.report.bankruptcy_prefactor;

        bool exponential_claims = false;
        if (model.is_compound_poisson()) {
            model.claims().visit([&](const auto& law) {
                if constexpr (std::is_same_v<std::decay_t<decltype(law)>, JumpLaw::Exponential>) {
                    exponential_claims = true;
                }
            });
        }

        InversionConfig inv = parse_inversion(config);
        inv.tilt = theta; // keep the deep tail in relative precision
        const RunningMaxLst ruin_lst(model, 0.0);
        const InspectedMaxLst bank_lst(model, 0.0, omega);
        const TailCurve ruin_curve =
            exponential_claims
                ? TailCurve{}
                : invert_ccdf([&](std::complex<double> s) { return ruin_lst(s); }, us, inv);
        const TailCurve bank_curve =
            invert_ccdf([&](std::complex<double> s) { return bank_lst(s); }, us, inv);

        log.info("writing light-tailed risk curves");
        CsvWriter ruin_csv(opt.out_dir / "risk_ruin.csv", "config_hash=" + hash + " seed=none",
                           "u,exact_or_inverted,asymptote,ratio");
        CsvWriter bank_csv(opt.out_dir / "risk_bankruptcy.csv",
                           "config_hash=" + hash + " seed=none",
                           "u,exact_or_inverted,asymptote,ratio");
        for (std::size_t i = 0; i < us.size(); ++i) {
            const double u = us[i];
            const double p = exponential_claims ? ruin_exact_exponential(model, u)
                                                : ruin_curve.ccdf[i];
            const double p_asym = gamma * std::exp(-theta * u);
            ruin_csv.row({u, p, p_asym, p_asym > 0.0 ? p / p_asym : 0.0});
            const double pt = bank_curve.ccdf[i];
            const double pt_asym = gamma_tilde * std::exp(-theta * u);
            bank_csv.row({u, pt, pt_asym, pt_asym > 0.0 ? pt / pt_asym : 0.0});
        }

        report["regime"] = "light";
        report["theta_star"] = theta;
        report["gamma"] = gamma;
        report["gamma_tilde"] = gamma_tilde;
        report["gamma_star_omega"] = *at_zero.report.inspection_factor;
        report["fixed_point_residual"] = at_zero.fixed_point_residual;
        write_json_report(opt.out_dir / "risk_report.json", report);
        return 0;
    }

    // heavy tail: asymptote plus a Lindley-simulated curve
    if (!config.contains("simulation")) {
        throw config_error("simulation",
                           "heavy-tailed risk curves are simulation-backed; provide a simulation "
                           "block with paths and seed");
    }
    const SimBlock sim = parse_simulation(config);
    SimConfig cfg;
    cfg.paths = sim.paths;
    cfg.seed = sim.seed;
    cfg.threads = opt.threads;
    cfg.burn_in = sim.burn_in;
    cfg.stride = sim.stride;

    log.info("heavy tail: stationary Lindley estimate of the inspected tail");
    const EmpiricalSample bank_sample =
        sample_inspected_max(model, InspectionScheme::poisson(0.0, omega), cfg);

    SimConfig ruin_cfg = cfg;
    ruin_cfg.stream_salt = 9000;
    const double rho0 = model.arrival_rate() * model.claims().mean() / model.premium_rate();
    const JumpLaw claims = model.claims();
    Sampler service = [claims](RngStream& rng) { return claims.sample(rng); };
    const EmpiricalSample ruin_sample =
        lindley_chain(make_exponential_sampler(model.arrival_rate() / model.premium_rate()),
                      service, CustomerCountLaw::steady_state(rho0), ruin_cfg);

    CsvWriter ruin_csv(opt.out_dir / "risk_ruin.csv",
                       "config_hash=" + hash + " seed=" + std::to_string(sim.seed),
                       "u,exact_or_inverted,asymptote,ratio");
    CsvWriter bank_csv(opt.out_dir / "risk_bankruptcy.csv",
                       "config_hash=" + hash + " seed=" + std::to_string(sim.seed),
                       "u,exact_or_inverted,asymptote,ratio");
    for (double u : us) {
        const double asym = bankruptcy_asymptote_heavy(model, u).value;
        const double p = ruin_sample.ccdf(u);
        const double pt = bank_sample.ccdf(u);
        ruin_csv.row({u, p, asym, asym > 0.0 ? p / asym : 0.0});
        bank_csv.row({u, pt, asym, asym > 0.0 ? pt / asym : 0.0});
    }

    report["regime"] = "heavy";
    report["seed"] = sim.seed;
    report["heavy_prefactor"] = *bankruptcy_asymptote_heavy(model, 0.0).report.heavy_prefactor;
    report["zplus_tail_prefactor"] = model.arrival_rate() / omega;
    report["omega_independent"] = true;
    write_json_report(opt.out_dir / "risk_report.json", report);
    return 0;
}

int cmd_rule_of_thumb(const json& config, const CliOptions& opt, const std::string& hash) {
    const LevyModel model = parse_model(config);
    const std::vector<double> eps = need_grid(config, "epsilon");
    CsvWriter csv(opt.out_dir / "rule_of_thumb.csv", "config_hash=" + hash + " seed=none",
                  "epsilon,omega_rule,omega_exact");
    for (double e : eps) {
        const RuleOfThumb rot = rule_of_thumb_rate(model, e);
        csv.row({e, rot.omega_rule, rot.omega_exact});
    }
    return 0;
}

} // namespace

std::string config_hash(const json& config) {
    const std::string dump = config.dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

int run_with_config(const json& config, const CliOptions& options) {
    const Logger log{options.log_level == "debug" || options.log_level == "info"};
    try {
        if (!config.is_object()) throw config_error("config", "expected a JSON object");
        const std::string command = need_string(config, "", "command");
        std::filesystem::create_directories(options.out_dir);
        const std::string hash = config_hash(config);

        if (command == "eval-transform") return cmd_eval_transform(config, options, hash);
        if (command == "invert") return cmd_invert(config, options, hash);
        if (command == "simulate") return cmd_simulate(config, options, hash, log);
        if (command == "verify") return cmd_verify(config, options, hash, log);
        if (command == "risk") return cmd_risk(config, options, hash, log);
        if (command == "rule-of-thumb") return cmd_rule_of_thumb(config, options, hash);
        throw config_error("command", "unknown command '" + command +
                                          "' (eval-transform|invert|simulate|verify|risk|rule-of-thumb)");
    } catch (const config_error& ex) {
        std::cerr << "configuration error: " << ex.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& ex) {
        std::cerr << "configuration error: " << ex.what() << "\n";
        return 2;
    } catch (const solver_error& ex) {
        std::cerr << "numerical error: " << ex.what() << "\n";
        return 4;
    } catch (const std::domain_error& ex) {
        std::cerr << "regime error: " << ex.what() << "\n";
        return 3;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
}

int run(const CliOptions& options) {
    json config;
    try {
        std::ifstream in(options.config_path);
        if (!in) {
            std::cerr << "configuration error: config: cannot open "
                      << options.config_path.string() << "\n";
            return 2;
        }
        config = json::parse(in);
    } catch (const std::exception& ex) {
        std::cerr << "configuration error: config: " << ex.what() << "\n";
        return 2;
    }
    return run_with_config(config, options);
}

} // namespace levy
