// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "relaysec/quadrature.hpp"
#include "relaysec/scenario.hpp"

namespace relaysec {

/// A closed-form bound value: the formula output as written (which can leave
/// [0, 1] for extreme parameters) together with its clamp to a probability.
struct BoundPair {
    double raw = 0.0;
    double clamped = 0.0;

    static BoundPair from_raw(double raw) noexcept {
        return BoundPair{raw, std::min(1.0, std::max(0.0, raw))};
    }
};

enum class InfeasibleCause {
    none,          // feasible
    empty_window,  // both limits exist but tau_min > tau_max
    reliability,   // the selection region alone exceeds the outage budget
    secrecy,       // no finite tau can meet the secrecy target
};

/// Admissible noise-threshold interval [tau_min, tau_max].  tau_max is
/// +infinity when the reliability target imposes no constraint.
struct TauWindow {
    double tau_min = 0.0;
    double tau_max = std::numeric_limits<double>::infinity();
    bool feasible = false;
    InfeasibleCause cause = InfeasibleCause::none;
};

/// Outage of a two-hop chain from independent per-hop outages.
inline double union_outage(double p1, double p2) {
    if (!(p1 >= 0.0 && p1 <= 1.0)) throw std::domain_error("p1 must be in [0, 1]");
    if (!(p2 >= 0.0 && p2 <= 1.0)) throw std::domain_error("p2 must be in [0, 1]");
    return p1 + p2 - p1 * p2;
}

namespace detail {

/// 1 - sqrt(1 - eps), computed without cancellation for small eps.
inline double one_minus_sqrt_one_minus(double eps) {
    return eps / (1.0 + std::sqrt(1.0 - eps));
}

/// Expected noise-set size (n-1)(1 - e^{-tau}).
inline double expected_noise_count(int n, double tau) {
    return static_cast<double>(n - 1) * -std::expm1(-tau);
}

/// Two-hop composition 2q - q^2 of a per-hop term.
inline double two_hop(double q) { return q * (2.0 - q); }

}  // namespace detail

/// Transmission-outage bound for optimal relay selection (protocol 1):
/// per-hop term q = [1 - e^{-2 gr (n-1)(1-e^{-tau}) tau}]^n.
inline BoundPair tx_bound_optimal(int n, double gamma_r, double tau) {
    const double expo = 2.0 * gamma_r * detail::expected_noise_count(n, tau) * tau;
    const double q = std::pow(-std::expm1(-expo), n);
    return BoundPair::from_raw(detail::two_hop(q));
}

/// Transmission-outage bound for random relay selection (protocol 2):
/// per-hop term q = 1 - e^{-gr (n-1)(1-e^{-tau}) tau}.
inline BoundPair tx_bound_random(int n, double gamma_r, double tau) {
    const double expo = gamma_r * detail::expected_noise_count(n, tau) * tau;
    const double q = -std::expm1(-expo);
    return BoundPair::from_raw(detail::two_hop(q));
}

/// Secrecy-outage bound, identical for protocols 1 and 2: per-hop term
/// s = m (1/(1+ge))^{(n-1)(1-e^{-tau})}.
inline BoundPair sec_bound_equal(int n, int m, double gamma_e, double tau) {
    const double s =
        static_cast<double>(m) *
        std::exp(-detail::expected_noise_count(n, tau) * std::log1p(gamma_e));
    return BoundPair::from_raw(detail::two_hop(s));
}

/// Largest tau meeting the transmission target under protocol 1; +infinity
/// when eps_t = 1 (no reliability requirement).
inline double tau_max_optimal(int n, double gamma_r, double eps_t) {
    if (eps_t >= 1.0) return std::numeric_limits<double>::infinity();
    const double at = detail::one_minus_sqrt_one_minus(eps_t);
    const double inner = std::pow(at, 1.0 / n);
    const double radicand = -std::log1p(-inner) / (2.0 * gamma_r * (n - 1));
    return std::sqrt(radicand);
}

/// Largest tau meeting the transmission target under protocol 2.
inline double tau_max_random(int n, double gamma_r, double eps_t) {
    if (eps_t >= 1.0) return std::numeric_limits<double>::infinity();
    const double radicand = -std::log1p(-eps_t) / (2.0 * gamma_r * (n - 1));
    return std::sqrt(radicand);
}

/// Smallest tau meeting the secrecy target (protocols 1 and 2 share it).
/// Returns nullopt when no finite tau suffices; negative formula values
/// clamp to 0 (the target is already met without jamming).
inline std::optional<double> tau_min_equal(int n, double gamma_e, double eps_s, int m) {
    if (m == 0) return 0.0;
    const double as = detail::one_minus_sqrt_one_minus(eps_s);
    const double t = std::log(as / m) / ((n - 1) * std::log1p(gamma_e));
    if (t <= -1.0) return std::nullopt;
    return std::max(0.0, -std::log1p(t));
}

/// Eavesdropper tolerance under protocol 1.
inline double m_max_optimal(int n, double gamma_r, double gamma_e, double eps_t, double eps_s) {
    const double as = detail::one_minus_sqrt_one_minus(eps_s);
    if (eps_t >= 1.0) return as > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    const double at = detail::one_minus_sqrt_one_minus(eps_t);
    const double expo =
        std::sqrt(-(n - 1) * std::log1p(-std::pow(at, 1.0 / n)) / (2.0 * gamma_r));
    return as * std::exp(expo * std::log1p(gamma_e));
}

/// Eavesdropper tolerance under protocol 2.
inline double m_max_random(int n, double gamma_r, double gamma_e, double eps_t, double eps_s) {
    const double as = detail::one_minus_sqrt_one_minus(eps_s);
    if (eps_t >= 1.0) return as > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    const double expo = std::sqrt(-(n - 1) * std::log1p(-eps_t) / (2.0 * gamma_r));
    return as * std::exp(expo * std::log1p(gamma_e));
}

/// Noise-threshold window for the equal-path-loss protocols.
inline TauWindow tau_window_equal(int protocol, int n, double gamma_r, double gamma_e,
                                  double eps_t, double eps_s, int m) {
    if (protocol != 1 && protocol != 2) throw std::invalid_argument("protocol must be 1 or 2");
    TauWindow w;
    const auto lo = tau_min_equal(n, gamma_e, eps_s, m);
    if (!lo) {
        w.feasible = false;
        w.cause = InfeasibleCause::secrecy;
        w.tau_min = std::numeric_limits<double>::infinity();
        w.tau_max = protocol == 1 ? tau_max_optimal(n, gamma_r, eps_t)
                                  : tau_max_random(n, gamma_r, eps_t);
        return w;
    }
    w.tau_min = *lo;
    w.tau_max = protocol == 1 ? tau_max_optimal(n, gamma_r, eps_t)
                              : tau_max_random(n, gamma_r, eps_t);
    w.feasible = w.tau_min <= w.tau_max;
    w.cause = w.feasible ? InfeasibleCause::none : InfeasibleCause::empty_window;
    return w;
}

// ---------------------------------------------------------------------------
// distance-dependent scenario (protocol 3)
// ---------------------------------------------------------------------------

/// Geometric constants of the region protocol.  theta and phi are closed
/// forms; varphi1, varphi2 and psi are the unit-square integrals of
/// d^{-alpha} around (0.5, 0.5), (1, 0.5) and (0, 0), each regularized by
/// removing a disc of radius `exclusion_radius` around its singular point.
struct GeoConstants {
    double theta = 0.0;
    double varphi1 = 0.0;
    double varphi2 = 0.0;
    double phi = 0.0;
    double psi = 0.0;
    double exclusion_radius = 0.0;

    // parameters the constants were computed for
    int n = 0;
    double a = 0.0;
    double b = 0.0;
    double alpha = 0.0;
};

inline double theta_empty_region(int n, double a, double b) {
    return std::pow(1.0 - (1.0 - 2.0 * a) * (1.0 - 2.0 * b), n);
}

inline GeoConstants geo_constants(int n, double a, double b, double alpha,
                                  double exclusion_radius, double rel_tol = 1e-6) {
    GeoConstants g;
    g.n = n;
    g.a = a;
    g.b = b;
    g.alpha = alpha;
    g.exclusion_radius = exclusion_radius;
    g.theta = theta_empty_region(n, a, b);
    g.phi = std::sqrt((1.0 - a) * (1.0 - a) + (0.5 - b) * (0.5 - b));
    g.varphi1 = disc_excluded_integral(Point{0.5, 0.5}, alpha, exclusion_radius, rel_tol);
    g.varphi2 = disc_excluded_integral(Point{1.0, 0.5}, alpha, exclusion_radius, rel_tol);
    g.psi = disc_excluded_integral(Point{0.0, 0.0}, alpha, exclusion_radius, rel_tol);
    return g;
}

namespace detail {
inline void check_consts(const ScenarioGeo& s, const GeoConstants& c) {
    if (c.n != s.base.n || c.a != s.a || c.b != s.b || c.alpha != s.alpha)
        throw std::invalid_argument("geo constants were computed for different parameters");
}
}  // namespace detail

/// Transmission-outage bound for the region protocol:
/// [1 - e^{-gr tau (n-1)(1-e^{-tau}) (varphi1+varphi2) phi^alpha}](1-theta) + theta.
inline BoundPair tx_bound_region(const ScenarioGeo& s, const GeoConstants& c) {
    detail::check_consts(s, c);
    const double expo = s.base.gamma_r * s.base.tau *
                        detail::expected_noise_count(s.base.n, s.base.tau) *
                        (c.varphi1 + c.varphi2) * std::pow(c.phi, s.alpha);
    const double conditional = -std::expm1(-expo);
    return BoundPair::from_raw(conditional * (1.0 - c.theta) + c.theta);
}

/// Secrecy-outage bound for the region protocol: per-hop term
/// u = m [pi r0^2 + (1/(1+ge psi r0^alpha))^{(n-1)(1-e^{-tau})} (1 - pi r0^2)].
inline BoundPair sec_bound_region(const ScenarioGeo& s, const GeoConstants& c) {
    detail::check_consts(s, c);
    const double near_mass = std::numbers::pi * s.r0 * s.r0;
    const double base = std::log1p(s.base.gamma_e * c.psi * std::pow(s.r0, s.alpha));
    const double suppressed =
        std::exp(-detail::expected_noise_count(s.base.n, s.base.tau) * base);
    const double u = static_cast<double>(s.base.m) * (near_mass + suppressed * (1.0 - near_mass));
    return BoundPair::from_raw(detail::two_hop(u));
}

/// Noise-threshold window for the region protocol, with the two distinct
/// infeasibility causes: the empty-region probability already exceeding the
/// transmission budget, and the near-eavesdropper mass already exceeding the
/// secrecy budget.
inline TauWindow tau_window_region(const ScenarioGeo& s, const Requirements& req,
                                   const GeoConstants& c) {
    detail::check_consts(s, c);
    TauWindow w;
    const int n = s.base.n;

    // reliability side
    if (c.theta > req.eps_t) {
        w.feasible = false;
        w.cause = InfeasibleCause::reliability;
        w.tau_max = 0.0;
        w.tau_min = 0.0;
        return w;
    }
    if (req.eps_t >= 1.0) {
        w.tau_max = std::numeric_limits<double>::infinity();
    } else {
        const double num = -std::log((1.0 - req.eps_t) / (1.0 - c.theta)) * std::pow(c.phi, -s.alpha);
        w.tau_max = std::sqrt(num / (s.base.gamma_r * (n - 1) * (c.varphi1 + c.varphi2)));
    }

    // secrecy side
    const double as = detail::one_minus_sqrt_one_minus(req.eps_s);
    const double near_mass = std::numbers::pi * s.r0 * s.r0;
    if (s.base.m == 0) {
        w.tau_min = 0.0;
    } else {
        const double headroom = as / s.base.m - near_mass;
        if (headroom <= 0.0) {
            w.feasible = false;
            w.cause = InfeasibleCause::secrecy;
            w.tau_min = std::numeric_limits<double>::infinity();
            return w;
        }
        const double denom = (n - 1) * std::log1p(s.base.gamma_e * c.psi * std::pow(s.r0, s.alpha));
        if (denom <= 0.0) {
            // r0 = 0: jamming does not enter the bound; feasible only if the
            // target is met with no suppression at all
            if (as / s.base.m >= 1.0) {
                w.tau_min = 0.0;
            } else {
                w.feasible = false;
                w.cause = InfeasibleCause::secrecy;
                w.tau_min = std::numeric_limits<double>::infinity();
                return w;
            }
        } else {
            const double t = std::log(headroom / (1.0 - near_mass)) / denom;
            if (t <= -1.0) {
                w.feasible = false;
                w.cause = InfeasibleCause::secrecy;
                w.tau_min = std::numeric_limits<double>::infinity();
                return w;
            }
            w.tau_min = std::max(0.0, -std::log1p(t));
        }
    }

    w.feasible = w.tau_min <= w.tau_max;
    w.cause = w.feasible ? InfeasibleCause::none : InfeasibleCause::empty_window;
    return w;
}

/// Eavesdropper tolerance under the region protocol; nullopt when the
/// empty-region probability alone exceeds the transmission budget.
inline std::optional<double> m_max_region(const ScenarioGeo& s, const Requirements& req,
                                          const GeoConstants& c) {
    detail::check_consts(s, c);
    if (c.theta > req.eps_t) return std::nullopt;
    const int n = s.base.n;
    const double as = detail::one_minus_sqrt_one_minus(req.eps_s);
    if (as == 0.0) return 0.0;
    const double near_mass = std::numbers::pi * s.r0 * s.r0;
    double omega;
    if (req.eps_t >= 1.0) {
        omega = 0.0;
    } else {
        const double radicand = -(n - 1) * std::log((1.0 - req.eps_t) / (1.0 - c.theta)) /
                                (s.base.gamma_r * (c.varphi1 + c.varphi2) * std::pow(c.phi, s.alpha));
        const double base = std::log1p(s.base.gamma_e * c.psi * std::pow(s.r0, s.alpha));
        omega = std::exp(-std::sqrt(radicand) * base);
    }
    return as / (near_mass + (1.0 - near_mass) * omega);
}

// ---------------------------------------------------------------------------
// exact inversions of the tau upper limits
// ---------------------------------------------------------------------------

namespace detail {

/// Solve (1 - e^{-t}) t = k for t >= 0 by bisection; the map is strictly
/// increasing from 0.
inline double invert_gap(double k) {
    if (k <= 0.0) return 0.0;
    if (std::isinf(k)) return std::numeric_limits<double>::infinity();
    double lo = 0.0;
    double hi = std::max(1.0, std::sqrt(k) + 1.0);
    auto g = [](double t) { return -std::expm1(-t) * t; };
    while (g(hi) < k) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (g(mid) < k)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-15 * hi) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace detail

/// The closed-form tau_max values replace (1 - e^{-tau}) by tau before
/// inverting, which understates the admissible threshold.  These variants
/// invert the exact per-hop relation instead; they always dominate the
/// closed forms.
inline double tau_max_optimal_exact(int n, double gamma_r, double eps_t) {
    if (eps_t >= 1.0) return std::numeric_limits<double>::infinity();
    const double at = detail::one_minus_sqrt_one_minus(eps_t);
    const double k = -std::log1p(-std::pow(at, 1.0 / n)) / (2.0 * gamma_r * (n - 1));
    return detail::invert_gap(k);
}

inline double tau_max_random_exact(int n, double gamma_r, double eps_t) {
    if (eps_t >= 1.0) return std::numeric_limits<double>::infinity();
    const double k = -std::log1p(-eps_t) / (2.0 * gamma_r * (n - 1));
    return detail::invert_gap(k);
}

inline double tau_max_region_exact(const ScenarioGeo& s, const Requirements& req,
                                   const GeoConstants& c) {
    detail::check_consts(s, c);
    if (c.theta > req.eps_t) return 0.0;
    if (req.eps_t >= 1.0) return std::numeric_limits<double>::infinity();
    const double k = -std::log((1.0 - req.eps_t) / (1.0 - c.theta)) * std::pow(c.phi, -s.alpha) /
                     (s.base.gamma_r * (s.base.n - 1) * (c.varphi1 + c.varphi2));
    return detail::invert_gap(k);
}

}  // namespace relaysec
