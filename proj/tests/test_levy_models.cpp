#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "levy/levy_models.hpp"
#include "reference_values.hpp"

using levy::JumpLaw;
using levy::LevyModel;

namespace {

LevyModel canonical_sp() {
    return LevyModel::spectrally_positive(1.0, 0.5, JumpLaw::exponential(1.0));
}

LevyModel canonical_sn() {
    return LevyModel::spectrally_negative(1.0, 0.5, JumpLaw::exponential(1.0));
}

LevyModel canonical_bd() { return LevyModel::brownian_drift(-1.0, 1.0); }

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g;
    g.reserve(n);
    const double step = std::log(hi / lo) / (n - 1);
    for (int i = 0; i < n; ++i) g.push_back(lo * std::exp(i * step));
    return g;
}

// a few deterministic pseudo-random models for property checks
std::vector<LevyModel> property_models() {
    std::vector<LevyModel> models;
    models.push_back(canonical_sp());
    models.push_back(canonical_sn());
    models.push_back(canonical_bd());
    models.push_back(LevyModel::spectrally_positive(2.0, 1.3, JumpLaw::erlang(3, 2.0)));
    models.push_back(LevyModel::spectrally_positive(
        1.5, 0.8, JumpLaw::hyperexponential({0.4, 0.6}, {0.5, 2.0})));
    models.push_back(LevyModel::spectrally_negative(0.7, 1.1, JumpLaw::erlang(2, 1.7)));
    models.push_back(LevyModel::spectrally_positive(1.0, 0.25, JumpLaw::deterministic(1.5)));
    models.push_back(LevyModel::brownian_drift(-0.3, 2.0));
    models.push_back(LevyModel::spectrally_positive(1.0, 0.5, JumpLaw::pareto_lomax(2.0, 1.0)));
    return models;
}

} // namespace

TEST_CASE("jump transform closed forms") {
    const JumpLaw exp1 = JumpLaw::exponential(1.0);
    CHECK(exp1.lst(0.0) == 1.0);
    CHECK(exp1.lst(1.0) == doctest::Approx(0.5).epsilon(1e-14));

    const JumpLaw erl = JumpLaw::erlang(2, 1.0);
    CHECK(erl.lst(1.0) == doctest::Approx(0.25).epsilon(1e-14));

    const JumpLaw hyper = JumpLaw::hyperexponential({0.4, 0.6}, {0.5, 2.0});
    CHECK(hyper.lst(1.0) == doctest::Approx(0.4 * 0.5 / 1.5 + 0.6 * 2.0 / 3.0).epsilon(1e-14));
    CHECK(hyper.mean() == doctest::Approx(0.4 / 0.5 + 0.6 / 2.0).epsilon(1e-14));

    const JumpLaw det = JumpLaw::deterministic(2.0);
    CHECK(det.lst(1.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
    CHECK(det.lst(-3.0) == doctest::Approx(std::exp(6.0)).epsilon(1e-14));
}

TEST_CASE("pareto transform against the tabulated quadrature values") {
    const JumpLaw par = JumpLaw::pareto_lomax(2.0, 1.0);
    CHECK(par.lst(0.0) == 1.0);
    CHECK(par.lst(0.5) == doctest::Approx(ref::pareto21_lst_at_half).epsilon(1e-9));
    CHECK(par.lst(1.0) == doctest::Approx(ref::pareto21_lst_at_1).epsilon(1e-9));
    CHECK(par.lst(2.0) == doctest::Approx(ref::pareto21_lst_at_2).epsilon(1e-9));
    CHECK(par.lst_derivative(1.0) == doctest::Approx(-ref::pareto21_minus_dlst_at_1).epsilon(1e-8));
    CHECK(par.lst_second_derivative(1.0) == doctest::Approx(ref::pareto21_ddlst_at_1).epsilon(1e-8));
    CHECK(par.mean() == doctest::Approx(1.0).epsilon(1e-14));

    // complex path (continued fraction) agrees with quadrature on the real axis
    const std::complex<double> real_arg(1.0, 1e-12);
    CHECK(par.lst(real_arg).real() == doctest::Approx(ref::pareto21_lst_at_1).epsilon(1e-8));
}

TEST_CASE("transform domain errors name the law and the boundary") {
    const JumpLaw exp1 = JumpLaw::exponential(1.0);
    CHECK_THROWS_AS((void)exp1.lst(-2.0), std::domain_error);
    const JumpLaw par = JumpLaw::pareto_lomax(2.0, 1.0);
    CHECK_THROWS_AS((void)par.lst(-0.1), std::domain_error);
    CHECK_THROWS_WITH_AS((void)par.second_moment(),
                         doctest::Contains("infinite"), levy::moment_error);
}

TEST_CASE("jump law construction rejects bad parameters") {
    CHECK_THROWS_AS(JumpLaw::exponential(0.0), std::invalid_argument);
    CHECK_THROWS_AS(JumpLaw::erlang(0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(JumpLaw::pareto_lomax(1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(JumpLaw::hyperexponential({0.5, 0.6}, {1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(JumpLaw::deterministic(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(LevyModel::brownian_drift(0.0, 0.0), std::invalid_argument);
}

TEST_CASE("laplace exponent of the canonical model") {
    const LevyModel sp = canonical_sp();
    CHECK(sp.exponent(0.0) == 0.0);
    CHECK(sp.exponent(1.0) == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(sp.exponent_derivative(0.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(sp.loading() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(sp.running_max_finite());

    const LevyModel sn = canonical_sn();
    CHECK(sn.exponent(1.0) == doctest::Approx(0.75).epsilon(1e-14));
    CHECK_FALSE(sn.running_max_finite()); // needs negative loading on this side

    const LevyModel bd = canonical_bd();
    CHECK(bd.exponent(1.0) == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(bd.sn_cumulant(1.0) == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(bd.loading() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("complex evaluation agrees with the real path") {
    for (const LevyModel& model : property_models()) {
        for (double a : {0.1, 0.7, 1.9, 4.0}) {
            const std::complex<double> via_complex = model.exponent(std::complex<double>(a, 0.0));
            CHECK(std::abs(via_complex.real() - model.exponent(a)) <= 1e-13 * std::max(1.0, std::abs(model.exponent(a))));
            CHECK(std::abs(via_complex.imag()) <= 1e-13);
        }
    }
}

TEST_CASE("exponent inverse on the canonical models") {
    const LevyModel sp = canonical_sp();
    CHECK(sp.exponent_inverse(0.0) == 0.0);
    CHECK(sp.exponent_inverse(1.0) == doctest::Approx(ref::cp_psi(1.0)).epsilon(1e-12));
    CHECK(sp.exponent_inverse(2.0) == doctest::Approx(ref::cp_psi(2.0)).epsilon(1e-12));
    CHECK(ref::cp_psi(1.0) == doctest::Approx(1.2807764064044151).epsilon(1e-12));
    CHECK(ref::cp_psi(2.0) == doctest::Approx(2.3507810593582122).epsilon(1e-12));

    const LevyModel bd = canonical_bd();
    CHECK(bd.exponent_inverse(1.0) == doctest::Approx(std::sqrt(3.0) - 1.0).epsilon(1e-13));
    CHECK(bd.sn_inverse(1.0) == doctest::Approx(std::sqrt(3.0) + 1.0).epsilon(1e-13));
    CHECK(bd.sn_inverse(0.0) == doctest::Approx(2.0).epsilon(1e-13));

    // spectrally negative with negative loading: right inverse at 0 is the
    // positive zero of the cumulant
    const LevyModel sn_loaded =
        LevyModel::spectrally_negative(0.4, 0.5, JumpLaw::exponential(1.0));
    CHECK(sn_loaded.exponent_inverse(0.0) == doctest::Approx(0.25).epsilon(1e-10));
}

TEST_CASE("beta = 0 inverse requires the loading condition of the orientation") {
    const LevyModel sn = canonical_sn();
    CHECK_THROWS_AS((void)sn.exponent_inverse(0.0), std::domain_error);
    const LevyModel sp_heavy_load =
        LevyModel::spectrally_positive(1.0, 2.0, JumpLaw::exponential(1.0));
    CHECK_THROWS_AS((void)sp_heavy_load.exponent_inverse(0.0), std::domain_error);
    CHECK_THROWS_AS((void)canonical_sp().exponent_inverse(-1.0), std::domain_error);
}

TEST_CASE("round trip, monotonicity and convexity over the property models") {
    const std::vector<double> betas = log_grid(1e-6, 1e3, 40);
    for (const LevyModel& model : property_models()) {
        double prev = -1.0;
        for (double beta : betas) {
            const double alpha = model.exponent_inverse(beta);
            CHECK(std::abs(model.exponent(alpha) - beta) <= 1e-10 * std::max(1.0, beta));
            CHECK(alpha > prev);
            prev = alpha;
        }
    }

    // convexity of the exponent via second divided differences
    for (const LevyModel& model : property_models()) {
        const std::vector<double> grid = log_grid(0.05, 8.0, 25);
        for (std::size_t i = 2; i < grid.size(); ++i) {
            const double x0 = grid[i - 2], x1 = grid[i - 1], x2 = grid[i];
            const double d1 = (model.exponent(x1) - model.exponent(x0)) / (x1 - x0);
            const double d2 = (model.exponent(x2) - model.exponent(x1)) / (x2 - x1);
            CHECK((d2 - d1) / (x2 - x0) >= -1e-9);
        }
    }
}

TEST_CASE("adjustment coefficient") {
    const LevyModel sp = canonical_sp();
    const double theta = sp.adjustment_coefficient();
    CHECK(theta == doctest::Approx(0.5).epsilon(1e-12)); // mu - lambda/r
    CHECK(std::abs(sp.exponent(-theta)) <= 1e-11);
    CHECK(sp.exponent_derivative(-theta) < 0.0);

    const LevyModel lean = LevyModel::spectrally_positive(1.0, 0.9, JumpLaw::exponential(1.0));
    CHECK(lean.adjustment_coefficient() == doctest::Approx(0.1).epsilon(1e-10));

    const LevyModel heavy = LevyModel::spectrally_positive(1.0, 0.5, JumpLaw::pareto_lomax(2.0, 1.0));
    CHECK_THROWS_AS((void)heavy.adjustment_coefficient(), levy::regime_error);

    // deterministic claims are light-tailed with an unbounded transform domain
    const LevyModel det = LevyModel::spectrally_positive(1.0, 0.25, JumpLaw::deterministic(1.5));
    const double theta_det = det.adjustment_coefficient();
    CHECK(theta_det > 0.0);
    CHECK(std::abs(det.exponent(-theta_det)) <= 1e-11);

    CHECK(canonical_bd().adjustment_coefficient() == doctest::Approx(2.0).epsilon(1e-14));

    const LevyModel no_claims = LevyModel::spectrally_positive(1.0, 0.0, JumpLaw::exponential(1.0));
    CHECK_THROWS_AS((void)no_claims.adjustment_coefficient(), levy::solver_error);
}

TEST_CASE("pareto exponent inverse hits the pretabulated roots") {
    const LevyModel par = LevyModel::spectrally_positive(1.0, 0.5, JumpLaw::pareto_lomax(2.0, 1.0));
    CHECK(par.exponent_inverse(0.5) == doctest::Approx(ref::pareto_psi_half).epsilon(1e-8));
    CHECK(par.exponent_inverse(1.0) == doctest::Approx(ref::pareto_psi_1).epsilon(1e-8));
    CHECK(par.exponent_inverse(2.0) == doctest::Approx(ref::pareto_psi_2).epsilon(1e-8));
}
