// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "relaysec/scenario.hpp"

namespace relaysec {

class QuadratureError : public std::runtime_error {
public:
    QuadratureError(double achieved, double requested)
        : std::runtime_error("quadrature did not converge: achieved relative tolerance " +
                             std::to_string(achieved) + ", requested " +
                             std::to_string(requested)),
          achieved_(achieved) {}
    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

/// Angular measure of the circle of radius r centred at c that lies inside
/// the closed unit square.  Each square side cuts one arc off the circle;
/// the arcs are merged so corner overlaps are not double-counted.
inline double in_square_angle(Point c, double r) {
    constexpr double pi = std::numbers::pi;
    constexpr double two_pi = 2.0 * std::numbers::pi;
    std::array<std::pair<double, double>, 8> iv;
    int cnt = 0;
    auto add_arc = [&](double center, double half) {
        double lo = std::fmod(center - half, two_pi);
        if (lo < 0.0) lo += two_pi;
        const double hi = lo + 2.0 * half;
        if (hi <= two_pi) {
            iv[cnt++] = {lo, hi};
        } else {
            iv[cnt++] = {lo, two_pi};
            iv[cnt++] = {0.0, hi - two_pi};
        }
    };
    if (r > 1.0 - c.x) add_arc(0.0, std::acos(std::min(1.0, (1.0 - c.x) / r)));
    if (r > c.x) add_arc(pi, std::acos(std::min(1.0, c.x / r)));
    if (r > 1.0 - c.y) add_arc(0.5 * pi, std::acos(std::min(1.0, (1.0 - c.y) / r)));
    if (r > c.y) add_arc(1.5 * pi, std::acos(std::min(1.0, c.y / r)));
    if (cnt == 0) return two_pi;

    std::sort(iv.begin(), iv.begin() + cnt);
    double covered = 0.0;
    double cur_lo = iv[0].first, cur_hi = iv[0].second;
    for (int i = 1; i < cnt; ++i) {
        if (iv[i].first <= cur_hi) {
            cur_hi = std::max(cur_hi, iv[i].second);
        } else {
            covered += cur_hi - cur_lo;
            cur_lo = iv[i].first;
            cur_hi = iv[i].second;
        }
    }
    covered += cur_hi - cur_lo;
    return std::max(0.0, two_pi - covered);
}

namespace detail {

inline double simpson_rule(double a, double fa, double fm, double b, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <class F>
void adaptive_simpson_rec(F&& f, double a, double fa, double b, double fb, double m, double fm,
                          double whole, double tol, int depth, double& sum, double& err) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson_rule(a, fa, flm, m, fm);
    const double right = simpson_rule(m, fm, frm, b, fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        sum += left + right + delta / 15.0;
        err += std::abs(delta) / 15.0;
        return;
    }
    adaptive_simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1, sum, err);
    adaptive_simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1, sum, err);
}

/// Adaptive Simpson on [a, b]; abs_tol is the absolute error budget for the
/// interval, err accumulates the achieved error estimate.
template <class F>
double adaptive_simpson(F&& f, double a, double b, double abs_tol, double& err) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = simpson_rule(a, fa, fm, b, fb);
    double sum = 0.0;
    adaptive_simpson_rec(f, a, fa, b, fb, m, fm, whole, abs_tol, 48, sum, err);
    return sum;
}

}  // namespace detail

/// Integral of |p - c|^{-alpha} over the unit square with the disc of radius
/// `exclusion` around c removed.  Reduced to a radial integral against the
/// exact in-square angular measure; the integrand r^{1-alpha} Theta(r) is
/// smooth between the distances from c to the square's sides and corners, so
/// those radii split the adaptive passes.
inline double disc_excluded_integral(Point c, double alpha, double exclusion,
                                     double rel_tol = 1e-6) {
    if (!(exclusion > 0.0)) throw std::invalid_argument("exclusion radius must be positive");
    if (!(c.x >= 0.0 && c.x <= 1.0 && c.y >= 0.0 && c.y <= 1.0))
        throw std::invalid_argument("singular point must lie in the unit square");

    double rmax = 0.0;
    for (const Point corner : {Point{0, 0}, Point{0, 1}, Point{1, 0}, Point{1, 1}})
        rmax = std::max(rmax, std::hypot(c.x - corner.x, c.y - corner.y));
    if (exclusion >= rmax) return 0.0;

    std::vector<double> cuts{exclusion, rmax};
    auto add_cut = [&](double d) {
        if (d > exclusion && d < rmax) cuts.push_back(d);
    };
    add_cut(c.x);
    add_cut(1.0 - c.x);
    add_cut(c.y);
    add_cut(1.0 - c.y);
    for (const Point corner : {Point{0, 0}, Point{0, 1}, Point{1, 0}, Point{1, 1}})
        add_cut(std::hypot(c.x - corner.x, c.y - corner.y));
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    auto integrand = [&](double r) { return std::pow(r, 1.0 - alpha) * in_square_angle(c, r); };

    // rough midpoint pass to turn the relative tolerance into per-segment
    // absolute budgets
    double rough = 0.0;
    std::vector<double> seg_rough(cuts.size() - 1, 0.0);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = cuts[i], b = cuts[i + 1];
        double acc = 0.0;
        constexpr int kPre = 64;
        for (int k = 0; k < kPre; ++k) {
            // geometric midpoints resolve the r^{1-alpha} growth near a
            const double t0 = static_cast<double>(k) / kPre;
            const double t1 = static_cast<double>(k + 1) / kPre;
            const double r0 = a * std::pow(b / a, t0);
            const double r1 = a * std::pow(b / a, t1);
            acc += integrand(0.5 * (r0 + r1)) * (r1 - r0);
        }
        seg_rough[i] = std::abs(acc);
        rough += acc;
    }
    const double budget = std::max(rel_tol * std::abs(rough), 1e-300);

    double total = 0.0;
    double err = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double share = seg_rough[i] / std::max(std::abs(rough), 1e-300);
        const double tol = budget * std::max(share, 1.0 / (8.0 * cuts.size()));
        total += detail::adaptive_simpson(integrand, cuts[i], cuts[i + 1], tol, err);
    }
    if (err > 4.0 * rel_tol * std::abs(total))
        throw QuadratureError(err / std::max(std::abs(total), 1e-300), rel_tol);
    return total;
}

}  // namespace relaysec
