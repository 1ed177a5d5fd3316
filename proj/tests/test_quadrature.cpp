// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "relaysec/analytic.hpp"
#include "relaysec/quadrature.hpp"
#include "support/riemann_oracle.hpp"

using namespace relaysec;
constexpr double kPi = std::numbers::pi;

TEST_CASE("in-square angle: interior centre") {
    const Point c{0.5, 0.5};
    CHECK(in_square_angle(c, 0.3) == Catch::Approx(2.0 * kPi));
    // circle pokes through all four sides
    const double r = 0.6;
    CHECK(in_square_angle(c, r) ==
          Catch::Approx(2.0 * kPi - 8.0 * std::acos(0.5 / r)).epsilon(1e-12));
}

TEST_CASE("in-square angle: edge and corner centres") {
    CHECK(in_square_angle(Point{1.0, 0.5}, 0.3) == Catch::Approx(kPi));
    CHECK(in_square_angle(Point{0.0, 0.0}, 0.7) == Catch::Approx(kPi / 2.0));
    CHECK(in_square_angle(Point{0.0, 0.0}, 1.2) ==
          Catch::Approx(kPi / 2.0 - 2.0 * std::acos(1.0 / 1.2)).epsilon(1e-12));
    // beyond the far corner nothing is inside
    CHECK(in_square_angle(Point{0.0, 0.0}, 1.5) == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("in-square angle agrees with indicator sampling") {
    for (const Point c : {Point{0.5, 0.5}, Point{1.0, 0.5}, Point{0.0, 0.0}, Point{0.3, 0.8}}) {
        for (double r : {0.2, 0.45, 0.7, 0.95, 1.3}) {
            int inside = 0;
            const int k = 200'000;
            for (int i = 0; i < k; ++i) {
                const double t = 2.0 * kPi * (i + 0.5) / k;
                const double x = c.x + r * std::cos(t);
                const double y = c.y + r * std::sin(t);
                inside += x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0;
            }
            const double sampled = 2.0 * kPi * inside / k;
            CHECK(in_square_angle(c, r) == Catch::Approx(sampled).margin(2e-4));
        }
    }
}

TEST_CASE("alpha = 0 reduces to areas") {
    // constant integrand: unit square minus the in-square part of the disc
    for (double d : {1e-2, 1e-3}) {
        CHECK(disc_excluded_integral(Point{0.5, 0.5}, 0.0, d) ==
              Catch::Approx(1.0 - kPi * d * d).epsilon(1e-9));
        CHECK(disc_excluded_integral(Point{1.0, 0.5}, 0.0, d) ==
              Catch::Approx(1.0 - kPi * d * d / 2.0).epsilon(1e-9));
        CHECK(disc_excluded_integral(Point{0.0, 0.0}, 0.0, d) ==
              Catch::Approx(1.0 - kPi * d * d / 4.0).epsilon(1e-9));
    }
}

TEST_CASE("pinned integral values") {
    // frozen from an independent high-precision evaluation
    CHECK(disc_excluded_integral(Point{0.5, 0.5}, 2.0, 1e-3) ==
          Catch::Approx(39.73884409778391).epsilon(2e-6));
    CHECK(disc_excluded_integral(Point{1.0, 0.5}, 2.0, 1e-3) ==
          Catch::Approx(20.72690852065735).epsilon(2e-6));
    CHECK(disc_excluded_integral(Point{0.0, 0.0}, 2.0, 1e-3) ==
          Catch::Approx(11.02350406959778).epsilon(2e-6));
    CHECK(disc_excluded_integral(Point{0.5, 0.5}, 3.0, 1e-2) ==
          Catch::Approx(617.0048222189739).epsilon(2e-6));
    CHECK(disc_excluded_integral(Point{0.0, 0.0}, 4.0, 1e-3) ==
          Catch::Approx(785397.5206983666).epsilon(2e-6));
}

TEST_CASE("brute-force grid agreement at one point") {
    // the full grid/runtime matrix lives in the acceptance suite
    const double quad = disc_excluded_integral(Point{0.5, 0.5}, 2.0, 1e-2);
    const double ref = oracle::riemann_disc_excluded(0.5, 0.5, 2.0, 1e-2, 4000, 4000);
    CHECK(quad == Catch::Approx(ref).epsilon(1e-4));
}

TEST_CASE("geo constants bundle") {
    const GeoConstants g = geo_constants(10, 0.25, 0.25, 2.0, 1e-3);
    CHECK(g.theta == Catch::Approx(0.05631351470947266).epsilon(1e-12));
    CHECK(g.phi == Catch::Approx(0.7905694150420948).epsilon(1e-12));
    CHECK(g.exclusion_radius == 1e-3);
    CHECK(g.varphi1 == Catch::Approx(39.73884409778391).epsilon(2e-6));
    CHECK(g.psi == Catch::Approx(11.02350406959778).epsilon(2e-6));

    // endpoints of the empty-region probability
    CHECK(theta_empty_region(7, 0.0, 0.0) == 0.0);
    CHECK(theta_empty_region(7, 0.5, 0.5) == 1.0);
    // a=0, b=0.5 puts the far corner at distance 1
    const GeoConstants edge = geo_constants(3, 0.0, 0.5, 2.0, 1e-2);
    CHECK(edge.phi == Catch::Approx(1.0));
}

TEST_CASE("invalid quadrature inputs") {
    CHECK_THROWS(disc_excluded_integral(Point{0.5, 0.5}, 2.0, 0.0));
    CHECK_THROWS(disc_excluded_integral(Point{1.5, 0.5}, 2.0, 1e-3));
    // exclusion covering the whole square leaves nothing
    CHECK(disc_excluded_integral(Point{0.5, 0.5}, 2.0, 2.0) == 0.0);
}
