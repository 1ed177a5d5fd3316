// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "relaysec/analytic.hpp"
#include "relaysec/rng.hpp"
#include "support/bounds_oracle.hpp"

using namespace relaysec;

namespace {
ScenarioGeo make_geo(int n, int m, double tau, double a, double b, double alpha, double r0) {
    ScenarioGeo g;
    g.base = ScenarioEqual{n, m, 1.0, 1.0, tau, 1.0, 0.0};
    g.alpha = alpha;
    g.a = a;
    g.b = b;
    g.r0 = r0;
    return g;
}
}  // namespace

TEST_CASE("union outage") {
    CHECK(union_outage(0.0, 0.4) == Catch::Approx(0.4));
    CHECK(union_outage(1.0, 0.3) == Catch::Approx(1.0));
    CHECK(union_outage(0.5, 0.5) == Catch::Approx(0.75));
    CHECK_THROWS_AS(union_outage(-0.1, 0.5), std::domain_error);
    CHECK_THROWS_AS(union_outage(0.5, 1.5), std::domain_error);
}

TEST_CASE("transmission bounds vanish at tau = 0") {
    CHECK(tx_bound_optimal(10, 1.0, 0.0).raw == 0.0);
    CHECK(tx_bound_random(10, 1.0, 0.0).raw == 0.0);
}

TEST_CASE("pinned equal-path-loss bound values") {
    CHECK(tx_bound_optimal(10, 1.0, 0.2).raw ==
          Catch::Approx(0.0012791134162799753).epsilon(1e-12));
    CHECK(sec_bound_equal(10, 2, 1.0, 0.5).raw ==
          Catch::Approx(0.31407963075049111).epsilon(1e-12));
    CHECK(tx_bound_random(10, 1.0, 0.2).raw ==
          Catch::Approx(0.47929378806713087).epsilon(1e-12));
}

TEST_CASE("secrecy bound edge cases") {
    CHECK(sec_bound_equal(10, 0, 1.0, 0.5).raw == 0.0);
    // tau = 0: per-hop term is exactly m
    CHECK(sec_bound_equal(10, 2, 1.0, 0.0).raw == Catch::Approx(2.0 * 2 - 4.0));
    CHECK(sec_bound_equal(10, 1, 1.0, 0.0).raw == Catch::Approx(1.0));
}

TEST_CASE("bounds stay in range after clamping") {
    for (int n : {2, 5, 20}) {
        for (double tau : {0.0, 0.05, 0.3, 1.0, 5.0}) {
            for (int m : {0, 1, 3, 8}) {
                for (const BoundPair b : {tx_bound_optimal(n, 1.3, tau),
                                          tx_bound_random(n, 1.3, tau),
                                          sec_bound_equal(n, m, 0.7, tau)}) {
                    CHECK(b.clamped >= 0.0);
                    CHECK(b.clamped <= 1.0);
                    CHECK(b.clamped == Catch::Approx(std::min(1.0, std::max(0.0, b.raw))));
                }
            }
        }
    }
}

TEST_CASE("transmission bounds are nondecreasing in tau and gamma_r") {
    double prev_opt = -1.0, prev_rand = -1.0;
    for (double tau = 0.0; tau <= 2.0; tau += 0.05) {
        const double o = tx_bound_optimal(8, 1.0, tau).raw;
        const double r = tx_bound_random(8, 1.0, tau).raw;
        CHECK(o >= prev_opt);
        CHECK(r >= prev_rand);
        prev_opt = o;
        prev_rand = r;
    }
    prev_opt = prev_rand = -1.0;
    for (double gr = 0.1; gr <= 4.0; gr += 0.1) {
        const double o = tx_bound_optimal(8, gr, 0.2).raw;
        const double r = tx_bound_random(8, gr, 0.2).raw;
        CHECK(o >= prev_opt);
        CHECK(r >= prev_rand);
        prev_opt = o;
        prev_rand = r;
    }
}

TEST_CASE("secrecy per-hop term decreases in tau and n") {
    auto per_hop = [](int n, double tau) {
        return 2.0 * std::exp(-(n - 1) * (1.0 - std::exp(-tau)) * std::log(2.0));
    };
    double prev = 1e300;
    for (double tau = 0.0; tau <= 2.0; tau += 0.1) {
        const double s = per_hop(10, tau);
        CHECK(s <= prev);
        prev = s;
    }
    prev = 1e300;
    for (int n = 2; n <= 30; ++n) {
        const double s = per_hop(n, 0.4);
        CHECK(s <= prev);
        prev = s;
    }
}

TEST_CASE("pinned tau window values") {
    CHECK(tau_max_optimal(10, 1.0, 0.1) == Catch::Approx(0.27476514608650237).epsilon(1e-12));
    CHECK(*tau_min_equal(10, 1.0, 0.1, 2) == Catch::Approx(0.88469186965680529).epsilon(1e-12));
    CHECK(tau_max_random(10, 1.0, 0.1) == Catch::Approx(0.076507267504403463).epsilon(1e-12));
}

TEST_CASE("tau limits at the boundary targets") {
    CHECK(tau_max_optimal(10, 1.0, 0.0) == 0.0);
    CHECK(tau_max_random(10, 1.0, 0.0) == 0.0);
    CHECK(std::isinf(tau_max_optimal(10, 1.0, 1.0)));  // unconstrained
    CHECK(std::isinf(tau_max_random(10, 1.0, 1.0)));

    // m exactly at the no-jamming secrecy level: tau_min = 0
    CHECK(*tau_min_equal(10, 1.0, 1.0, 1) == 0.0);
    // nearly there: a barely positive threshold suffices
    const double snug = *tau_min_equal(10, 1.0, 0.9999, 1);
    CHECK(snug > 0.0);
    CHECK(snug < 0.002);
    // m = 0 never needs jamming
    CHECK(*tau_min_equal(10, 1.0, 0.1, 0) == 0.0);
    // far too many eavesdroppers: no finite tau works
    CHECK_FALSE(tau_min_equal(3, 0.2, 0.01, 50).has_value());
}

TEST_CASE("tau_max is strictly increasing in eps_t") {
    double prev_o = -1.0, prev_r = -1.0;
    for (double e = 0.0; e < 1.0; e += 0.05) {
        const double o = tau_max_optimal(6, 0.8, e);
        const double r = tau_max_random(6, 0.8, e);
        CHECK(o > prev_o);
        CHECK(r > prev_r);
        prev_o = o;
        prev_r = r;
    }
}

TEST_CASE("tau_max scales as 1/sqrt(n-1)") {
    const double v5 = tau_max_random(5, 1.0, 0.1);
    const double v17 = tau_max_random(17, 1.0, 0.1);
    CHECK(v17 == Catch::Approx(v5 * std::sqrt(4.0 / 16.0)).epsilon(1e-12));
}

TEST_CASE("closed-form inversion identities") {
    // the tau_max formulas satisfy their defining relation exactly
    for (int n : {3, 10, 25}) {
        for (double gr : {0.5, 1.0, 2.0}) {
            for (double et : {0.05, 0.1, 0.4, 0.9}) {
                const double t1 = tau_max_optimal(n, gr, et);
                const double at = et / (1.0 + std::sqrt(1.0 - et));
                const double lhs1 = 2.0 * gr * (n - 1) * t1 * t1;
                CHECK(lhs1 == Catch::Approx(-std::log1p(-std::pow(at, 1.0 / n))).epsilon(1e-12));

                const double t2 = tau_max_random(n, gr, et);
                const double lhs2 = 2.0 * gr * (n - 1) * t2 * t2;
                CHECK(lhs2 == Catch::Approx(-std::log1p(-et)).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("exact tau inversion dominates the closed form") {
    for (int n : {3, 10, 25}) {
        for (double et : {0.05, 0.2, 0.6}) {
            const double taylor_o = tau_max_optimal(n, 1.0, et);
            const double exact_o = tau_max_optimal_exact(n, 1.0, et);
            CHECK(exact_o >= taylor_o);
            // the exact root satisfies (1-e^{-t}) t = taylor^2
            const double gap = -std::expm1(-exact_o) * exact_o;
            CHECK(gap == Catch::Approx(taylor_o * taylor_o).epsilon(1e-9));

            const double taylor_r = tau_max_random(n, 1.0, et);
            const double exact_r = tau_max_random_exact(n, 1.0, et);
            CHECK(exact_r >= taylor_r);
            CHECK(-std::expm1(-exact_r) * exact_r ==
                  Catch::Approx(taylor_r * taylor_r).epsilon(1e-9));
        }
    }
}

TEST_CASE("pinned tolerance values") {
    CHECK(m_max_optimal(10, 1.0, 1.0, 0.1, 0.1) ==
          Catch::Approx(0.28488638457919294).epsilon(1e-12));
    CHECK(m_max_random(10, 1.0, 1.0, 0.1, 0.1) ==
          Catch::Approx(0.082706106966365990).epsilon(1e-12));
}

TEST_CASE("tolerance edge cases") {
    CHECK(m_max_optimal(10, 1.0, 1.0, 0.1, 0.0) == 0.0);
    CHECK(m_max_random(10, 1.0, 1.0, 0.1, 0.0) == 0.0);
    const double as = 1.0 - std::sqrt(0.9);
    CHECK(m_max_optimal(10, 1.0, 1.0, 0.0, 0.1) == Catch::Approx(as).epsilon(1e-12));
    CHECK(m_max_random(10, 1.0, 1.0, 0.0, 0.1) == Catch::Approx(as).epsilon(1e-12));
}

TEST_CASE("optimal selection tolerates at least as many eavesdroppers") {
    for (int n : {3, 8, 20}) {
        for (double et : {0.02, 0.1, 0.5}) {
            for (double es : {0.05, 0.3, 0.9}) {
                CHECK(m_max_optimal(n, 1.0, 1.0, et, es) >= m_max_random(n, 1.0, 1.0, et, es));
            }
        }
    }
}

TEST_CASE("tolerances grow with the targets and with n") {
    double prev = -1.0;
    for (double es = 0.0; es <= 1.0; es += 0.05) {
        const double v = m_max_random(10, 1.0, 1.0, 0.1, es);
        CHECK(v >= prev);
        prev = v;
    }
    prev = -1.0;
    for (double et = 0.0; et < 1.0; et += 0.05) {
        const double v = m_max_random(10, 1.0, 1.0, et, 0.1);
        CHECK(v >= prev);
        prev = v;
    }
    prev = -1.0;
    for (int n = 2; n <= 40; ++n) {
        const double v = m_max_optimal(n, 1.0, 1.0, 0.1, 0.1);
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("equal-path-loss tau window") {
    // feasible: m below the tolerance at these parameters
    const TauWindow ok = tau_window_equal(2, 20, 1.0, 1.0, 0.1, 0.9, 1);
    CHECK(ok.feasible);
    CHECK(ok.tau_min <= ok.tau_max);
    CHECK(ok.cause == InfeasibleCause::none);

    // m far above the tolerance
    const TauWindow bad = tau_window_equal(1, 10, 1.0, 1.0, 0.1, 0.1, 50);
    CHECK_FALSE(bad.feasible);

    // eps_t = 0 with unreachable secrecy: tau_max = 0 < tau_min
    const TauWindow crossed = tau_window_equal(2, 10, 1.0, 1.0, 0.0, 0.1, 2);
    CHECK_FALSE(crossed.feasible);
    CHECK(crossed.cause == InfeasibleCause::empty_window);
    CHECK(crossed.tau_max == 0.0);
    CHECK(crossed.tau_min > 0.0);
}

TEST_CASE("window feasibility tracks the tolerance limit") {
    for (int n : {5, 10, 20}) {
        const double mm = m_max_random(n, 1.0, 1.0, 0.1, 0.9);
        const int below = static_cast<int>(std::floor(mm));
        if (below >= 1) {
            CHECK(tau_window_equal(2, n, 1.0, 1.0, 0.1, 0.9, below).feasible);
        }
        const int above = static_cast<int>(std::ceil(mm)) + 1;
        CHECK_FALSE(tau_window_equal(2, n, 1.0, 1.0, 0.1, 0.9, above).feasible);
    }
}

// --------------------------------------------------------------------------
// region protocol
// --------------------------------------------------------------------------

TEST_CASE("region transmission bound endpoints") {
    const GeoConstants c0 = geo_constants(10, 0.0, 0.0, 2.0, 1e-3);
    ScenarioGeo g = make_geo(10, 2, 0.0, 0.0, 0.0, 2.0, 0.05);
    CHECK(tx_bound_region(g, c0).raw == 0.0);  // tau = 0, theta = 0

    const GeoConstants c1 = geo_constants(10, 0.5, 0.5, 2.0, 1e-3);
    g = make_geo(10, 2, 0.3, 0.5, 0.5, 2.0, 0.05);
    CHECK(tx_bound_region(g, c1).raw == Catch::Approx(1.0));  // empty region
}

TEST_CASE("pinned region bound values") {
    const GeoConstants c = geo_constants(10, 0.25, 0.25, 2.0, 1e-3);
    const ScenarioGeo tx_point = make_geo(10, 2, 0.1, 0.25, 0.25, 2.0, 0.05);
    CHECK(tx_bound_region(tx_point, c).raw == Catch::Approx(0.9629182250774016).epsilon(1e-5));

    const ScenarioGeo sec_point = make_geo(10, 2, 0.5, 0.25, 0.25, 2.0, 0.05);
    CHECK(sec_bound_region(sec_point, c).raw == Catch::Approx(0.3310771057250905).epsilon(1e-5));
}

TEST_CASE("region secrecy bound edge cases") {
    const GeoConstants c = geo_constants(10, 0.25, 0.25, 2.0, 1e-3);
    ScenarioGeo g = make_geo(10, 0, 0.5, 0.25, 0.25, 2.0, 0.05);
    CHECK(sec_bound_region(g, c).raw == 0.0);  // m = 0

    // r0 = 0: the suppression base collapses to 1 and the per-hop term is m
    g = make_geo(10, 1, 0.5, 0.25, 0.25, 2.0, 0.0);
    CHECK(sec_bound_region(g, c).raw == Catch::Approx(1.0));
}

TEST_CASE("constants provenance is enforced") {
    const GeoConstants c = geo_constants(10, 0.25, 0.25, 2.0, 1e-3);
    const ScenarioGeo other = make_geo(12, 2, 0.1, 0.25, 0.25, 2.0, 0.05);
    CHECK_THROWS(tx_bound_region(other, c));
}

TEST_CASE("region tau window distinguishes its infeasibility causes") {
    // reliability: the empty-region probability alone exceeds eps_t
    const GeoConstants tight = geo_constants(5, 0.25, 0.25, 2.0, 1e-3);
    const ScenarioGeo g5 = make_geo(5, 1, 0.1, 0.25, 0.25, 2.0, 0.05);
    const TauWindow wr = tau_window_region(g5, Requirements{0.1, 0.9}, tight);
    CHECK_FALSE(wr.feasible);
    CHECK(wr.cause == InfeasibleCause::reliability);

    // secrecy: near-eavesdropper mass alone exceeds the budget
    const GeoConstants c10 = geo_constants(10, 0.25, 0.25, 2.0, 1e-3);
    const ScenarioGeo heavy = make_geo(10, 5, 0.1, 0.25, 0.25, 2.0, 0.3);
    const TauWindow ws = tau_window_region(heavy, Requirements{0.5, 0.2}, c10);
    CHECK_FALSE(ws.feasible);
    CHECK(ws.cause == InfeasibleCause::secrecy);

    // the acceptance-grid secrecy target is unreachable for m = 2 as well
    const ScenarioGeo grid_pt = make_geo(10, 2, 0.1, 0.25, 0.25, 2.0, 0.05);
    const TauWindow wg = tau_window_region(grid_pt, Requirements{0.1, 0.1}, c10);
    CHECK_FALSE(wg.feasible);
    CHECK(wg.cause == InfeasibleCause::secrecy);
}

TEST_CASE("a feasible region window exists and brackets correctly") {
    // found by scanning: lax secrecy target, wide region, coarse exclusion
    const GeoConstants c = geo_constants(10, 0.05, 0.05, 2.0, 1e-2);
    const ScenarioGeo g = make_geo(10, 1, 0.02, 0.05, 0.05, 2.0, 0.25);
    const Requirements req{0.5, 0.99};
    const TauWindow w = tau_window_region(g, req, c);
    REQUIRE(w.feasible);
    CHECK(w.tau_min > 0.0);
    CHECK(w.tau_min <= w.tau_max);

    // the tolerance limit is consistent with the window at m = 1
    const auto mm = m_max_region(g, req, c);
    REQUIRE(mm.has_value());
    CHECK(*mm >= 1.0);
}

TEST_CASE("region tolerance limit") {
    const GeoConstants c = geo_constants(10, 0.25, 0.25, 2.0, 1e-3);
    const ScenarioGeo g = make_geo(10, 2, 0.1, 0.25, 0.25, 2.0, 0.05);

    // pinned from an independent evaluation
    const auto mm = m_max_region(g, Requirements{0.1, 0.1}, c);
    REQUIRE(mm.has_value());
    CHECK(*mm == Catch::Approx(0.05146396946776166).epsilon(1e-5));

    // reliability-infeasible marker
    const GeoConstants c5 = geo_constants(5, 0.25, 0.25, 2.0, 1e-3);
    const ScenarioGeo g5 = make_geo(5, 2, 0.1, 0.25, 0.25, 2.0, 0.05);
    CHECK_FALSE(m_max_region(g5, Requirements{0.1, 0.1}, c5).has_value());

    // eps_t at the empty-region boundary: omega = 1 and the limit collapses
    const double theta = c.theta;
    const auto boundary = m_max_region(g, Requirements{theta, 0.19}, c);
    REQUIRE(boundary.has_value());
    const double as = 1.0 - std::sqrt(1.0 - 0.19);
    CHECK(*boundary == Catch::Approx(as).epsilon(1e-12));

    // r0 = 0 removes the near-eavesdropper mass
    const ScenarioGeo free = make_geo(10, 2, 0.1, 0.25, 0.25, 2.0, 0.0);
    const auto open = m_max_region(free, Requirements{0.1, 0.19}, c);
    REQUIRE(open.has_value());
    CHECK(*open == Catch::Approx(as).epsilon(1e-12));  // omega = 1 when r0 = 0
}

TEST_CASE("closed forms match the extended-precision oracle on a small grid") {
    Philox rng(271828, 0);
    for (int iter = 0; iter < 50; ++iter) {
        const int n = 2 + static_cast<int>(rng.uniform_below(30));
        const int m = 1 + static_cast<int>(rng.uniform_below(8));
        const double gr = 0.2 + 3.0 * rng.uniform01();
        const double ge = 0.2 + 3.0 * rng.uniform01();
        const double tau = 2.0 * rng.uniform01();
        const double et = 0.01 + 0.95 * rng.uniform01();
        const double es = 0.01 + 0.95 * rng.uniform01();

        CHECK(tx_bound_optimal(n, gr, tau).raw ==
              Catch::Approx(static_cast<double>(oracle::tx_bound_optimal(n, gr, tau)))
                  .epsilon(1e-10));
        CHECK(tx_bound_random(n, gr, tau).raw ==
              Catch::Approx(static_cast<double>(oracle::tx_bound_random(n, gr, tau)))
                  .epsilon(1e-10));
        CHECK(sec_bound_equal(n, m, ge, tau).raw ==
              Catch::Approx(static_cast<double>(oracle::sec_bound_equal(n, m, ge, tau)))
                  .margin(1e-10));
        CHECK(m_max_optimal(n, gr, ge, et, es) ==
              Catch::Approx(static_cast<double>(oracle::m_max_optimal(n, gr, ge, et, es)))
                  .epsilon(1e-10));
    }
}
