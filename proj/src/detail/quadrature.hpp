#pragma once

#include <cmath>
#include <functional>

namespace levy::detail {

// Adaptive Simpson on [a, b] with interval-doubling error control.
// `f` must be finite on (a, b); endpoint values are evaluated, so map away
// integrable singularities before calling.
template <typename F>
double adaptive_simpson(const F& f, double a, double b, double rel_tol, double abs_tol,
                        int max_depth = 60) {
    struct Ctx {
        const F& f;
        double rel_tol;
        double abs_tol;
    };

    auto simpson = [](double fa, double fm, double fb, double h) {
        return h / 6.0 * (fa + 4.0 * fm + fb);
    };

    std::function<double(const Ctx&, double, double, double, double, double, double, int)> rec =
        [&](const Ctx& c, double lo, double hi, double flo, double fmid, double fhi, double whole,
            int depth) -> double {
        const double m = 0.5 * (lo + hi);
        const double lm = 0.5 * (lo + m);
        const double rm = 0.5 * (m + hi);
        const double flm = c.f(lm);
        const double frm = c.f(rm);
        const double left = simpson(flo, flm, fmid, m - lo);
        const double right = simpson(fmid, frm, fhi, hi - m);
        const double delta = left + right - whole;
        if (depth <= 0 ||
            std::abs(delta) <= 15.0 * (c.abs_tol + c.rel_tol * std::abs(left + right))) {
            return left + right + delta / 15.0;
        }
        return rec(c, lo, m, flo, flm, fmid, left, depth - 1) +
               rec(c, m, hi, fmid, frm, fhi, right, depth - 1);
    };

    Ctx ctx{f, rel_tol, abs_tol};
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = simpson(fa, fm, fb, b - a);
    return rec(ctx, a, b, fa, fm, fb, whole, max_depth);
}

} // namespace levy::detail
