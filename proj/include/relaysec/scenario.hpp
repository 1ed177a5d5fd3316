// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>

namespace relaysec {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// Network parameterization for the equal-path-loss scenario (protocols 1
/// and 2): n candidate relays, m eavesdroppers, SINR thresholds, the
/// noise-set gain threshold tau, and the power levels.  All values are
/// linear scale.
struct ScenarioEqual {
    int n = 2;
    int m = 0;
    double gamma_r = 1.0;
    double gamma_e = 1.0;
    double tau = 0.0;
    double es = 1.0;
    double n0 = 0.0;
};

/// Distance-dependent scenario (protocol 3): adds the path-loss exponent,
/// the relay-selection rectangle margins and the perfect-eavesdropping
/// radius.  Source and destination sit at fixed coordinates on the unit
/// square.
struct ScenarioGeo {
    ScenarioEqual base;
    double alpha = 2.0;
    double a = 0.0;
    double b = 0.0;
    double r0 = 0.0;

    static constexpr Point source{0.0, 0.5};
    static constexpr Point destination{1.0, 0.5};
};

/// Outage targets: maximum transmission outage and maximum secrecy outage.
struct Requirements {
    double eps_t = 0.0;
    double eps_s = 0.0;
};

inline ScenarioEqual validate_equal(const ScenarioEqual& s) {
    if (!(s.n >= 2)) throw std::invalid_argument("n must be >= 2");
    if (!(s.m >= 0)) throw std::invalid_argument("m must be >= 0");
    if (!(s.gamma_r > 0.0)) throw std::invalid_argument("gamma_r must be positive");
    if (!(s.gamma_e > 0.0)) throw std::invalid_argument("gamma_e must be positive");
    if (!(s.tau >= 0.0)) throw std::invalid_argument("tau must be >= 0");
    if (!(s.es > 0.0)) throw std::invalid_argument("es must be positive");
    if (!(s.n0 >= 0.0)) throw std::invalid_argument("n0 must be >= 0");
    return s;
}

inline ScenarioGeo validate_geo(const ScenarioGeo& s) {
    validate_equal(s.base);
    if (!(s.alpha >= 2.0)) throw std::invalid_argument("alpha must be >= 2");
    if (!(s.a >= 0.0 && s.a <= 0.5)) throw std::invalid_argument("a must be in [0, 0.5]");
    if (!(s.b >= 0.0 && s.b <= 0.5)) throw std::invalid_argument("b must be in [0, 0.5]");
    if (!(s.r0 >= 0.0 && s.r0 <= 1.0)) throw std::invalid_argument("r0 must be in [0, 1]");
    return s;
}

inline Requirements validate_requirements(const Requirements& r) {
    if (!(r.eps_t >= 0.0 && r.eps_t <= 1.0)) throw std::invalid_argument("eps_t must be in [0, 1]");
    if (!(r.eps_s >= 0.0 && r.eps_s <= 1.0)) throw std::invalid_argument("eps_s must be in [0, 1]");
    return r;
}

}  // namespace relaysec
