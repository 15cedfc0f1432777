#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

namespace hetlab {

namespace detail {

template <class F>
double simpson_rec(const F& f, double a, double m, double b, double fa, double fm,
                   double fb, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_rec(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Adaptive Simpson with absolute tolerance. Non-finite samples (e.g. an
// integrable log singularity hit exactly) are treated as zero; callers
// split intervals at known singular points so this only affects the
// endpoints of a vanishing neighbourhood. The range is pre-split into
// uniform panels so that integrands whose mass sits far from the
// midpoints (densities over a wide range) cannot fool the coarse
// first-level error estimate into terminating at zero.
template <class F>
double adaptive_simpson(const F& f, double a, double b, double abs_tol = 1e-9,
                        int max_depth = 48) {
    auto safe = [&f](double x) {
        const double v = f(x);
        return std::isfinite(v) ? v : 0.0;
    };
    constexpr int kPanels = 64;
    const double h = (b - a) / kPanels;
    const double tol = abs_tol / kPanels;
    double sum = 0.0;
    for (int k = 0; k < kPanels; ++k) {
        const double pa = a + k * h, pb = a + (k + 1) * h;
        const double m = 0.5 * (pa + pb);
        const double fa = safe(pa), fm = safe(m), fb = safe(pb);
        const double whole = (pb - pa) / 6.0 * (fa + 4.0 * fm + fb);
        sum += detail::simpson_rec(safe, pa, m, pb, fa, fm, fb, whole, tol, max_depth);
    }
    return sum;
}

// Integrates over [a, b] split at the given interior points (points
// outside (a, b) are ignored). Tolerance is divided across pieces.
template <class F>
double adaptive_simpson_split(const F& f, double a, double b,
                              std::vector<double> points, double abs_tol = 1e-9) {
    points.push_back(a);
    points.push_back(b);
    std::sort(points.begin(), points.end());
    std::vector<double> knots;
    for (double x : points)
        if (x >= a && x <= b && (knots.empty() || x > knots.back())) knots.push_back(x);
    double sum = 0.0;
    const double tol = abs_tol / static_cast<double>(knots.size());
    for (std::size_t i = 0; i + 1 < knots.size(); ++i)
        sum += adaptive_simpson(f, knots[i], knots[i + 1], tol);
    return sum;
}

}  // namespace hetlab
