// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <span>
#include <stdexcept>

#include "relaysec/rng.hpp"

namespace relaysec {

/// Squared channel magnitude |h|^2 under Rayleigh fading; unit-mean
/// exponential across independent draws.
struct ChannelGain {
    double value = 0.0;
};

struct Interferer {
    ChannelGain gain;
    double distance = 1.0;
};

inline ChannelGain sample_gain(Philox& rng) noexcept { return ChannelGain{rng.exp1()}; }

/// d^{-alpha} from a squared distance.  The common integer exponents avoid
/// the pow call on the simulation hot path.
inline double path_gain_sq(double dist_sq, double alpha) noexcept {
    if (alpha == 2.0) return 1.0 / dist_sq;
    if (alpha == 4.0) return 1.0 / (dist_sq * dist_sq);
    if (alpha == 3.0) return 1.0 / (dist_sq * std::sqrt(dist_sq));
    return std::pow(dist_sq, -0.5 * alpha);
}

/// SINR with the zero-denominator case (no interference, no environment
/// noise) kept as an explicit infinite state: such a link is never in
/// transmission outage and always decodable by an eavesdropper, for any
/// finite threshold.
class SinrValue {
public:
    static SinrValue finite(double v) noexcept { return SinrValue{v, false}; }
    static SinrValue infinite() noexcept { return SinrValue{0.0, true}; }

    bool is_infinite() const noexcept { return infinite_; }
    double value() const { return value_; }

    /// Outage predicate: SINR <= threshold.
    bool at_most(double threshold) const noexcept {
        return !infinite_ && value_ <= threshold;
    }
    /// Decodability predicate: SINR >= threshold.
    bool at_least(double threshold) const noexcept {
        return infinite_ || value_ >= threshold;
    }

private:
    SinrValue(double v, bool inf) noexcept : value_(v), infinite_(inf) {}
    double value_;
    bool infinite_;
};

inline SinrValue sinr_ratio(double signal_power, double interference_plus_noise) noexcept {
    if (interference_plus_noise <= 0.0) {
        return signal_power > 0.0 ? SinrValue::infinite() : SinrValue::finite(0.0);
    }
    return SinrValue::finite(signal_power / interference_plus_noise);
}

/// Received SINR: E_s g d^{-alpha} / (sum_i E_s g_i d_i^{-alpha} + N_0/2).
inline SinrValue sinr(ChannelGain signal_gain, double signal_distance,
                      std::span<const Interferer> interferers, double alpha,
                      double es, double n0) {
    if (!(signal_distance > 0.0)) throw std::invalid_argument("signal_distance must be positive");
    if (!(es > 0.0)) throw std::invalid_argument("es must be positive");
    if (!(n0 >= 0.0)) throw std::invalid_argument("n0 must be >= 0");
    double interference = 0.0;
    for (const Interferer& it : interferers) {
        if (!(it.distance > 0.0)) throw std::invalid_argument("interferer distance must be positive");
        interference += es * it.gain.value * path_gain_sq(it.distance * it.distance, alpha);
    }
    const double signal =
        es * signal_gain.value * path_gain_sq(signal_distance * signal_distance, alpha);
    return sinr_ratio(signal, interference + n0 / 2.0);
}

/// CDF of min(g1, g2) for two independent unit-mean exponential gains.
inline double min_pair_cdf(double x) noexcept {
    return x > 0.0 ? -std::expm1(-2.0 * x) : 0.0;
}

/// CDF of the largest of n independent min-pairs.
inline double max_of_min_cdf(double x, int n) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    return x > 0.0 ? std::pow(min_pair_cdf(x), n) : 0.0;
}

}  // namespace relaysec
