#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "levy/transforms.hpp"
#include "reference_values.hpp"

using levy::InspectionScheme;
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

std::vector<LevyModel> supported_models() {
    return {canonical_sp(), canonical_sn(), canonical_bd(),
            LevyModel::spectrally_positive(2.0, 1.3, JumpLaw::erlang(3, 2.0)),
            LevyModel::spectrally_negative(0.7, 1.1, JumpLaw::erlang(2, 1.7)),
            LevyModel::brownian_drift(-0.3, 2.0)};
}

} // namespace

TEST_CASE("running-max transform values") {
    const LevyModel sp = canonical_sp();
    CHECK(levy::lst_running_max(sp, 1.0, 0.0) == 1.0);
    CHECK(levy::lst_running_max(sp, 1.0, 1.0) ==
          doctest::Approx(ref::cp_running_max_lst(1.0, 1.0)).epsilon(1e-12));
    CHECK(levy::lst_running_max(sp, 2.0, 1.0) ==
          doctest::Approx(ref::cp_running_max_lst(2.0, 1.0)).epsilon(1e-12));
    // frozen decimal values of the two reference ratios
    CHECK(ref::cp_running_max_lst(1.0, 1.0) == doctest::Approx(0.87689437438233945).epsilon(1e-12));
    CHECK(ref::cp_running_max_lst(2.0, 1.0) == doctest::Approx(0.91937515251343026).epsilon(1e-12));

    const LevyModel sn = canonical_sn();
    CHECK(levy::lst_running_max(sn, 1.0, 1.0) ==
          doctest::Approx(ref::cp_psi(1.0) / (ref::cp_psi(1.0) + 1.0)).epsilon(1e-12));

    CHECK_THROWS_AS((void)levy::lst_running_max(sp, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS((void)levy::lst_running_max(sp, -1.0, 1.0), std::domain_error);
}

TEST_CASE("running-max transform has a removable singularity at psi(zeta)") {
    const LevyModel sp = canonical_sp();
    const double psi1 = ref::cp_psi(1.0);
    const double at_root = levy::lst_running_max(sp, 1.0, psi1);
    // limit value zeta / (psi * exponent'(psi))
    const double expected = 1.0 / (psi1 * sp.exponent_derivative(psi1));
    CHECK(at_root == doctest::Approx(expected).epsilon(1e-10));
    // continuity across the guarded window
    const double left = levy::lst_running_max(sp, 1.0, psi1 - 1e-7);
    const double right = levy::lst_running_max(sp, 1.0, psi1 + 1e-7);
    CHECK(std::abs(left - at_root) < 1e-6);
    CHECK(std::abs(right - at_root) < 1e-6);
}

TEST_CASE("inspected-max transform values") {
    const LevyModel sp = canonical_sp();
    CHECK(levy::lst_inspected_max(sp, 1.0, 1.0, 0.0) == 1.0);
    const double v11 = levy::lst_inspected_max(sp, 1.0, 1.0, 1.0);
    CHECK(v11 == doctest::Approx(ref::cp_inspected_max_lst(1.0, 1.0, 1.0)).epsilon(1e-12));
    CHECK(ref::cp_inspected_max_lst(1.0, 1.0, 1.0) ==
          doctest::Approx(0.95379385878011289).epsilon(1e-12));

    const LevyModel sn = canonical_sn();
    for (double a : {0.5, 1.0, 2.0}) {
        CHECK(levy::lst_inspected_max(sn, 1.0, 1.0, a) ==
              doctest::Approx(ref::sn_inspected_max_lst(1.0, 1.0, a)).epsilon(1e-12));
    }
    // alpha -> infinity limit is the atom
    CHECK(levy::lst_inspected_max(sn, 1.0, 1.0, 1e12) ==
          doctest::Approx(ref::cp_psi(1.0) / ref::cp_psi(2.0)).epsilon(1e-9));

    const LevyModel bd = canonical_bd();
    for (double a : {0.5, 1.0, 2.0}) {
        CHECK(levy::lst_inspected_max(bd, 1.0, 1.0, a) ==
              doctest::Approx(ref::bd_inspected_max_lst(1.0, 1.0, a)).epsilon(1e-12));
    }

    CHECK_THROWS_AS((void)levy::lst_inspected_max(canonical_sn(), 0.0, 1.0, 1.0),
                    std::domain_error);
    CHECK_THROWS_AS(
        (void)levy::lst_inspected_max(sp, InspectionScheme::erlang(1.0, 1.0, 2), 1.0),
        levy::regime_error);
}

TEST_CASE("infinite-horizon transforms") {
    const LevyModel sp = canonical_sp();
    // generalized Pollaczek-Khinchine form: loading * alpha / exponent(alpha)
    for (double a : {0.3, 1.0, 2.5}) {
        CHECK(levy::lst_alltime_max(sp, a) ==
              doctest::Approx(0.5 * a / ref::cp_exponent(a)).epsilon(1e-13));
    }
    // exponential claims: the infinite-horizon inspected maximum is an atom
    // plus one exponential, so its transform is (0.5 psi(1) a + 0.5)/(a + 0.5)
    for (double a : {0.3, 1.0, 2.5}) {
        CHECK(levy::lst_inspected_max(sp, 0.0, 1.0, a) ==
              doctest::Approx((0.5 * ref::cp_psi(1.0) * a + 0.5) / (a + 0.5)).epsilon(1e-12));
    }
    CHECK_THROWS_AS((void)levy::lst_alltime_max(canonical_sn(), 1.0), std::domain_error);
}

TEST_CASE("sn atom") {
    CHECK(levy::sn_atom(canonical_sn(), 1.0, 1.0) ==
          doctest::Approx(ref::cp_psi(1.0) / ref::cp_psi(2.0)).epsilon(1e-12));
    CHECK(ref::cp_psi(1.0) / ref::cp_psi(2.0) == doctest::Approx(0.54483015392087620).epsilon(1e-12));
    // vanishing inspection rate: the atom swallows everything
    CHECK(levy::sn_atom(canonical_sn(), 1.0, 1e-12) == doctest::Approx(1.0).epsilon(1e-9));
    // beta = 0 with negative loading
    const LevyModel sn_loaded = LevyModel::spectrally_negative(0.4, 0.5, JumpLaw::exponential(1.0));
    const double psi1 = sn_loaded.sn_inverse(1.0);
    CHECK(levy::sn_atom(sn_loaded, 0.0, 1.0) == doctest::Approx(0.25 / psi1).epsilon(1e-10));
    CHECK_THROWS_AS((void)levy::sn_atom(canonical_sp(), 1.0, 1.0), std::domain_error);
}

TEST_CASE("increment components") {
    const LevyModel sp = canonical_sp();
    const auto at_zero = levy::lst_increment_components(sp, 1.0, 1.0, 0.0);
    CHECK(at_zero.z_plus == 1.0);
    CHECK(at_zero.z_minus == 1.0);

    const auto at_one = levy::lst_increment_components(sp, 1.0, 1.0, 1.0);
    CHECK(at_one.z_plus == doctest::Approx(ref::cp_running_max_lst(2.0, 1.0)).epsilon(1e-12));
    CHECK(at_one.z_minus ==
          doctest::Approx(ref::cp_psi(2.0) / (ref::cp_psi(2.0) + 1.0)).epsilon(1e-12));
    CHECK(ref::cp_psi(2.0) / (ref::cp_psi(2.0) + 1.0) ==
          doctest::Approx(0.70156211871642434).epsilon(1e-12));

    CHECK_THROWS_AS((void)levy::lst_increment_components(canonical_sn(), 1.0, 1.0, 1.0),
                    std::domain_error);
}

TEST_CASE("running-max moments") {
    const LevyModel sp = canonical_sp();
    const auto m1 = levy::running_max_moments(sp, 1.0);
    CHECK(m1.mean == doctest::Approx(ref::cp_running_max_mean(1.0)).epsilon(1e-12));
    CHECK(m1.variance == doctest::Approx(ref::cp_running_max_var(1.0)).epsilon(1e-12));
    CHECK(ref::cp_running_max_mean(1.0) == doctest::Approx(0.28077640640441515).epsilon(1e-12));
    CHECK(ref::cp_running_max_var(1.0) == doctest::Approx(0.64038820320220757).epsilon(1e-12));

    // vanishing horizon
    CHECK(levy::running_max_mean(sp, 1e9) < 1e-8);

    // heavy tail: mean available, variance is not
    const LevyModel heavy = LevyModel::spectrally_positive(1.0, 0.5, JumpLaw::pareto_lomax(2.0, 1.0));
    CHECK(levy::running_max_mean(heavy, 1.0) > 0.0);
    CHECK_THROWS_AS((void)levy::running_max_moments(heavy, 1.0), levy::moment_error);
}

TEST_CASE("inspected-max moments") {
    const LevyModel sp = canonical_sp();
    const auto m = levy::inspected_max_moments(sp, 1.0, 1.0);
    CHECK(m.mean == doctest::Approx(ref::cp_running_max_mean(1.0) - ref::cp_running_max_mean(2.0))
                        .epsilon(1e-12));
    CHECK(m.mean == doctest::Approx(0.10538587672530905).epsilon(1e-10));
    CHECK(m.variance ==
          doctest::Approx(ref::cp_running_max_var(1.0) - ref::cp_running_max_var(2.0)).epsilon(1e-12));
    CHECK(m.variance >= 0.0);
    CHECK(m.mean >= 0.0);
    // vanishing inspection rate
    CHECK(levy::inspected_max_mean(sp, 1.0, 1e-9) < 1e-8);
}

TEST_CASE("moment-derivative consistency via Richardson finite differences") {
    const LevyModel sp = canonical_sp();
    const levy::Moments m = levy::inspected_max_moments(sp, 1.0, 1.0);
    const levy::InspectedMaxLst lst(sp, 1.0, 1.0);

    auto central_first = [&](double h) { return (lst(h) - lst(-h)) / (2.0 * h); };
    auto central_second = [&](double h) { return (lst(h) - 2.0 * lst(0.0) + lst(-h)) / (h * h); };

    const double h = 1e-4;
    const double d1 = (4.0 * central_first(h / 2.0) - central_first(h)) / 3.0;
    const double d2 = (4.0 * central_second(h / 2.0) - central_second(h)) / 3.0;

    const double fd_mean = -d1;
    const double fd_var = d2 - d1 * d1;
    CHECK(std::abs(fd_mean - m.mean) <= 1e-6 * std::abs(m.mean));
    CHECK(std::abs(fd_var - m.variance) <= 1e-6 * std::abs(m.variance));
}

TEST_CASE("factorization residual is at rounding level for all model kinds") {
    const std::vector<double> grid = log_grid(0.01, 10.0, 40);
    CHECK(levy::factorization_residual(canonical_sp(), 1.0, 1.0, grid) <= 1e-12);
    CHECK(levy::factorization_residual(canonical_sn(), 1.0, 1.0, grid) <= 1e-12);
    CHECK(levy::factorization_residual(canonical_bd(), 1.0, 1.0, grid) <= 1e-12);
}

TEST_CASE("transform bounds, monotonicity and log-convexity") {
    const std::vector<double> grid = log_grid(0.05, 12.0, 30);
    for (const LevyModel& model : supported_models()) {
        const levy::InspectedMaxLst lst(model, 1.0, 1.0);
        double prev = 1.0;
        std::vector<double> logs;
        CHECK(lst(0.0) == 1.0);
        for (double a : grid) {
            const double v = lst(a);
            CHECK(v > 0.0);
            CHECK(v <= 1.0);
            CHECK(v <= prev + 1e-12);
            prev = v;
            logs.push_back(std::log(v));
        }
        for (std::size_t i = 2; i < grid.size(); ++i) {
            const double d1 = (logs[i - 1] - logs[i - 2]) / (grid[i - 1] - grid[i - 2]);
            const double d2 = (logs[i] - logs[i - 1]) / (grid[i] - grid[i - 1]);
            CHECK((d2 - d1) / (grid[i] - grid[i - 2]) >= -1e-9);
        }
    }
}

TEST_CASE("omega monotonicity and the constant product") {
    const LevyModel sp = canonical_sp();
    const double beta = 1.0;
    const double alpha = 1.0;
    double prev_inspected = 2.0;
    double prev_running = 0.0;
    const double product_ref =
        levy::lst_inspected_max(sp, beta, 0.5, alpha) * levy::lst_running_max(sp, beta + 0.5, alpha);
    for (double omega : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        const double inspected = levy::lst_inspected_max(sp, beta, omega, alpha);
        const double running = levy::lst_running_max(sp, beta + omega, alpha);
        CHECK(inspected < prev_inspected);
        CHECK(running > prev_running);
        CHECK(inspected * running == doctest::Approx(product_ref).epsilon(1e-12));
        prev_inspected = inspected;
        prev_running = running;
    }
}

TEST_CASE("sn structural law: atom plus exponential") {
    const LevyModel sn = canonical_sn();
    const double atom = levy::sn_atom(sn, 1.0, 1.0);
    const double rate = sn.sn_inverse(1.0);
    for (double a : log_grid(0.01, 50.0, 20)) {
        const double direct = levy::lst_inspected_max(sn, 1.0, 1.0, a);
        const double structural = atom + (1.0 - atom) * rate / (rate + a);
        CHECK(direct == doctest::Approx(structural).epsilon(1e-12));
    }
}

TEST_CASE("erlang inspection count pmf") {
    // k = 1 reduces to the shifted-geometric law
    for (long n : {0L, 1L, 5L}) {
        const double q = 1.0 / 2.0; // omega/(beta+omega) at beta = omega
        CHECK(levy::erlang_count_pmf(1.0, 1.0, 1, n) ==
              doctest::Approx(std::pow(q, static_cast<double>(n)) * (1.0 - q)).epsilon(1e-14));
    }
    CHECK(levy::erlang_count_pmf(1.0, 1.0, 2, 0) == doctest::Approx(5.0 / 9.0).epsilon(1e-14));
    CHECK(levy::erlang_count_pmf(1.0, 1.0, 2, 1) == doctest::Approx(20.0 / 81.0).epsilon(1e-14));
    double total = 0.0;
    for (long n = 0; n < 400; ++n) total += levy::erlang_count_pmf(1.0, 1.0, 2, n);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("erlang sub-interval components") {
    const LevyModel sp = canonical_sp();
    // k = 1 reproduces the plain increment components
    const auto erl = levy::erlang_component_lsts(sp, 1.0, 1.0, 1, 1.0);
    const auto plain = levy::lst_increment_components(sp, 1.0, 1.0, 1.0);
    CHECK(erl.z_plus_lst == doctest::Approx(plain.z_plus).epsilon(1e-14));
    CHECK(erl.z_minus_rate == doctest::Approx(ref::cp_psi(2.0)).epsilon(1e-12));

    // beta = 0, omega = 1, k = 2: sub-interval horizon rate is 2
    const auto erl2 = levy::erlang_component_lsts(sp, 0.0, 1.0, 2, 1.0);
    CHECK(erl2.z_plus_lst == doctest::Approx(ref::cp_running_max_lst(2.0, 1.0)).epsilon(1e-12));
    CHECK(levy::erlang_component_lsts(sp, 0.0, 1.0, 2, 0.0).z_plus_lst == 1.0);
}

TEST_CASE("lst curve evaluation guards its domain") {
    const LevyModel sp = canonical_sp();
    const std::vector<double> alphas = {0.0, 1.0};
    const levy::LstCurve curve = levy::eval_lst_curve(sp, InspectionScheme::poisson(1.0, 1.0), alphas);
    CHECK(curve.values[0] == 1.0);
    const std::vector<double> bad = {-1.0};
    CHECK_THROWS_AS((void)levy::eval_lst_curve(sp, InspectionScheme::poisson(1.0, 1.0), bad),
                    std::domain_error);
}
