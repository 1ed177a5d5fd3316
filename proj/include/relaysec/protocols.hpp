// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "relaysec/channel.hpp"
#include "relaysec/rng.hpp"
#include "relaysec/scenario.hpp"

namespace relaysec {

/// Selected relay index, or "no relay available" (possible under the
/// region-based selection when the rectangle is empty).
struct RelayChoice {
    int index = -1;

    static RelayChoice none() noexcept { return RelayChoice{-1}; }
    static RelayChoice at(int j) noexcept { return RelayChoice{j}; }
    bool available() const noexcept { return index >= 0; }
};

/// Indices of the relays that transmit noise during a hop; never contains
/// the selected relay.
struct NoiseSet {
    std::vector<int> members;
};

/// Protocol 1 selection: argmax over j of min(gain to source, gain to
/// destination); ties break to the lowest index.
inline RelayChoice select_relay_optimal(std::span<const ChannelGain> gains_to_source,
                                        std::span<const ChannelGain> gains_to_dest) {
    if (gains_to_source.size() != gains_to_dest.size())
        throw std::invalid_argument("gain lists must have equal length");
    if (gains_to_source.size() < 2) throw std::invalid_argument("n must be >= 2");
    int best = 0;
    double best_min = std::min(gains_to_source[0].value, gains_to_dest[0].value);
    for (std::size_t j = 1; j < gains_to_source.size(); ++j) {
        const double mj = std::min(gains_to_source[j].value, gains_to_dest[j].value);
        if (mj > best_min) {
            best_min = mj;
            best = static_cast<int>(j);
        }
    }
    return RelayChoice::at(best);
}

/// Protocol 2 selection: uniform over all candidates.
inline RelayChoice select_relay_random(int n, Philox& rng) {
    if (n < 2) throw std::invalid_argument("n must be >= 2");
    return RelayChoice::at(static_cast<int>(rng.uniform_below(static_cast<std::uint32_t>(n))));
}

/// Protocol 3 selection: uniform over the relays inside the closed rectangle
/// [a, 1-a] x [b, 1-b]; an empty rectangle yields no relay, not an error.
inline RelayChoice select_relay_region(std::span<const Point> positions, double a, double b,
                                       Philox& rng) {
    if (!(a >= 0.0 && a <= 0.5 && b >= 0.0 && b <= 0.5))
        throw std::invalid_argument("a and b must be in [0, 0.5]");
    int count = 0;
    int last = -1;
    // first pass: count qualifiers so a single uniform draw suffices
    for (std::size_t j = 0; j < positions.size(); ++j) {
        const Point& p = positions[j];
        if (p.x >= a && p.x <= 1.0 - a && p.y >= b && p.y <= 1.0 - b) {
            ++count;
            last = static_cast<int>(j);
        }
    }
    if (count == 0) return RelayChoice::none();
    if (count == 1) return RelayChoice::at(last);
    int pick = static_cast<int>(rng.uniform_below(static_cast<std::uint32_t>(count)));
    for (std::size_t j = 0; j < positions.size(); ++j) {
        const Point& p = positions[j];
        if (p.x >= a && p.x <= 1.0 - a && p.y >= b && p.y <= 1.0 - b) {
            if (pick-- == 0) return RelayChoice::at(static_cast<int>(j));
        }
    }
    return RelayChoice::none();  // unreachable
}

/// Noise-set membership rule: { j != exclude : gain[j] < tau }, strict.
inline void noise_set_into(std::span<const ChannelGain> gains_to_target, double tau, int exclude,
                           std::vector<int>& out) {
    if (exclude < 0 || static_cast<std::size_t>(exclude) >= gains_to_target.size())
        throw std::invalid_argument("exclude index out of range");
    out.clear();
    for (std::size_t j = 0; j < gains_to_target.size(); ++j) {
        if (static_cast<int>(j) != exclude && gains_to_target[j].value < tau)
            out.push_back(static_cast<int>(j));
    }
}

inline NoiseSet noise_set(std::span<const ChannelGain> gains_to_target, double tau, int exclude) {
    NoiseSet s;
    noise_set_into(gains_to_target, tau, exclude, s.members);
    return s;
}

}  // namespace relaysec
