// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>

namespace relaysec {

/// Counter-based generator: Philox4x32-10 (Salmon et al. 2011).
///
/// The engine is keyed by a 64-bit seed and addressed by a 64-bit stream id
/// plus a 64-bit block position, so block i of stream s is a pure function of
/// (seed, s, i).  Monte Carlo trials use their trial index as the stream id,
/// which makes results independent of worker count and scheduling order.
/// Output is bit-identical across platforms.
class Philox {
public:
    Philox(std::uint64_t seed, std::uint64_t stream) noexcept
        : seed_lo_(static_cast<std::uint32_t>(seed)),
          seed_hi_(static_cast<std::uint32_t>(seed >> 32)),
          stream_lo_(static_cast<std::uint32_t>(stream)),
          stream_hi_(static_cast<std::uint32_t>(stream >> 32)) {}

    std::uint64_t next_u64() noexcept {
        if (idx_ == 2) {
            refill();
            idx_ = 0;
        }
        return block_[idx_++];
    }

    /// Uniform draw on [0, 1) with 53 random bits.
    double uniform01() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Unit-mean exponential via inverse CDF (deterministic given the stream).
    double exp1() noexcept { return -std::log1p(-uniform01()); }

    /// Uniform integer in [0, n), unbiased via rejection.
    std::uint32_t uniform_below(std::uint32_t n) noexcept {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n + 1) % n;
        std::uint64_t v = next_u64();
        while (v > limit) v = next_u64();
        return static_cast<std::uint32_t>(v % n);
    }

    /// One raw 128-bit block for the given counter/key, exposed for the
    /// known-answer tests.
    static void block4x32(const std::uint32_t ctr[4], const std::uint32_t key[2],
                          std::uint32_t out[4]) noexcept {
        std::uint32_t x0 = ctr[0], x1 = ctr[1], x2 = ctr[2], x3 = ctr[3];
        std::uint32_t k0 = key[0], k1 = key[1];
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * x0;
            const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * x2;
            const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
            const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
            const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
            x0 = hi1 ^ x1 ^ k0;
            x1 = lo1;
            const std::uint32_t nx2 = hi0 ^ x3 ^ k1;
            x3 = lo0;
            x2 = nx2;
            k0 += 0x9E3779B9u;
            k1 += 0xBB67AE85u;
        }
        out[0] = x0;
        out[1] = x1;
        out[2] = x2;
        out[3] = x3;
    }

private:
    void refill() noexcept {
        const std::uint32_t ctr[4] = {static_cast<std::uint32_t>(pos_),
                                      static_cast<std::uint32_t>(pos_ >> 32),
                                      stream_lo_, stream_hi_};
        const std::uint32_t key[2] = {seed_lo_, seed_hi_};
        std::uint32_t out[4];
        block4x32(ctr, key, out);
        block_[0] = out[0] | (std::uint64_t{out[1]} << 32);
        block_[1] = out[2] | (std::uint64_t{out[3]} << 32);
        ++pos_;
    }

    std::uint32_t seed_lo_, seed_hi_;
    std::uint32_t stream_lo_, stream_hi_;
    std::uint64_t pos_ = 0;
    std::uint64_t block_[2] = {0, 0};
    int idx_ = 2;
};

/// Stream id reserved for draws that are not tied to a trial (for example
/// frozen node placements); trial indices stay below 2^63.
inline constexpr std::uint64_t kAuxStream = std::uint64_t{1} << 63;

}  // namespace relaysec
