// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "relaysec/channel.hpp"
#include "relaysec/protocols.hpp"
#include "relaysec/rng.hpp"
#include "relaysec/scenario.hpp"

namespace relaysec {

enum class Protocol : int {
    optimal = 1,  // best min(source, destination) link
    random = 2,   // uniform selection
    region = 3,   // uniform selection inside [a,1-a] x [b,1-b]
};

/// Per-realization outage record.  relay_unavailable (region protocol only)
/// counts as transmission outage on both hops and suppresses the secrecy
/// flags, since no transmission occurred.
struct TrialOutcome {
    bool hop1_tx_outage = false;
    bool hop2_tx_outage = false;
    bool hop1_sec_outage = false;
    bool hop2_sec_outage = false;
    bool relay_unavailable = false;
};

/// Wilson score interval for a binomial proportion (z defaults to the 99%
/// normal quantile).
inline std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials,
                                                 double z = 2.576) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (successes > trials) throw std::invalid_argument("successes must be <= trials");
    const double nn = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = p + z2 / (2.0 * nn);
    const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
    return {std::max(0.0, (center - half) / denom), std::min(1.0, (center + half) / denom)};
}

struct OutageEstimate {
    std::uint64_t successes = 0;
    std::uint64_t trials = 0;
    double p_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;

    static OutageEstimate from_counts(std::uint64_t successes, std::uint64_t trials, double z = 2.576) {
        OutageEstimate e;
        e.successes = successes;
        e.trials = trials;
        e.p_hat = static_cast<double>(successes) / static_cast<double>(trials);
        std::tie(e.ci_low, e.ci_high) = wilson_interval(successes, trials, z);
        return e;
    }
};

/// Pure counts; the cross-worker reduction is a plain sum.
struct TrialCounts {
    std::uint64_t trials = 0;
    std::uint64_t tx = 0;        // hop1 or hop2 transmission outage, or no relay
    std::uint64_t sec = 0;       // hop1 or hop2 secrecy outage
    std::uint64_t tx_hop1 = 0;
    std::uint64_t tx_hop2 = 0;
    std::uint64_t sec_hop1 = 0;
    std::uint64_t sec_hop2 = 0;
    std::uint64_t relay_unavailable = 0;

    void add(const TrialOutcome& o) noexcept {
        ++trials;
        tx += (o.hop1_tx_outage || o.hop2_tx_outage || o.relay_unavailable) ? 1 : 0;
        sec += (o.hop1_sec_outage || o.hop2_sec_outage) ? 1 : 0;
        tx_hop1 += o.hop1_tx_outage ? 1 : 0;
        tx_hop2 += o.hop2_tx_outage ? 1 : 0;
        sec_hop1 += o.hop1_sec_outage ? 1 : 0;
        sec_hop2 += o.hop2_sec_outage ? 1 : 0;
        relay_unavailable += o.relay_unavailable ? 1 : 0;
    }
    TrialCounts& operator+=(const TrialCounts& r) noexcept {
        trials += r.trials;
        tx += r.tx;
        sec += r.sec;
        tx_hop1 += r.tx_hop1;
        tx_hop2 += r.tx_hop2;
        sec_hop1 += r.sec_hop1;
        sec_hop2 += r.sec_hop2;
        relay_unavailable += r.relay_unavailable;
        return *this;
    }
};

namespace detail {

/// Reused per-worker buffers.
struct TrialWorkspace {
    std::vector<ChannelGain> s_gains;
    std::vector<ChannelGain> d_gains;
    std::vector<ChannelGain> r_gains;
    std::vector<int> set1;
    std::vector<int> set2;
    std::vector<Point> relays;
    std::vector<Point> eves;
    std::vector<double> pg_hop1;  // path gains from each relay to the hop receiver
    std::vector<double> pg_hop2;
};

/// Optional hook so tests can observe in-trial structure.
struct TrialTrace {
    std::vector<double> noise_gains_hop1;  // membership gains of the hop-1 noise set
    std::vector<double> noise_gains_hop2;
};

/// One equal-path-loss trial.  Draw order is fixed and documented so results
/// are reproducible from (seed, trial index) alone:
///   gains S->R_j (j = 0..n-1), gains D->R_j (j = 0..n-1),
///   [protocol 2: one selection draw],
///   gains R_j->R_{j*} (j != j*, ascending),
///   per eavesdropper of hop 1: signal gain then one gain per noise relay,
///   per eavesdropper of hop 2: signal gain then one gain per noise relay.
inline TrialOutcome run_trial_equal_ws(Protocol protocol, const ScenarioEqual& s, Philox& rng,
                                       TrialWorkspace& ws, TrialTrace* trace = nullptr) {
    const int n = s.n;
    ws.s_gains.resize(n);
    ws.d_gains.resize(n);
    ws.r_gains.resize(n);
    for (int j = 0; j < n; ++j) ws.s_gains[j] = sample_gain(rng);
    for (int j = 0; j < n; ++j) ws.d_gains[j] = sample_gain(rng);

    int jstar;
    if (protocol == Protocol::optimal) {
        jstar = select_relay_optimal(ws.s_gains, ws.d_gains).index;
    } else if (protocol == Protocol::random) {
        jstar = select_relay_random(n, rng).index;
    } else {
        throw std::invalid_argument("equal-path-loss trials run protocol 1 or 2");
    }

    ws.r_gains[jstar] = ChannelGain{0.0};
    for (int j = 0; j < n; ++j) {
        if (j != jstar) ws.r_gains[j] = sample_gain(rng);
    }
    noise_set_into(ws.r_gains, s.tau, jstar, ws.set1);
    noise_set_into(ws.d_gains, s.tau, jstar, ws.set2);

    const double half_noise = s.n0 / 2.0;
    TrialOutcome out;

    // hop 1: S -> R_{j*}, noise set 1 interferes at the selected relay
    {
        double interference = 0.0;
        for (int j : ws.set1) interference += s.es * ws.r_gains[j].value;
        out.hop1_tx_outage =
            sinr_ratio(s.es * ws.s_gains[jstar].value, interference + half_noise).at_most(s.gamma_r);
    }
    // hop 1 eavesdroppers
    for (int i = 0; i < s.m; ++i) {
        const double sig = s.es * rng.exp1();
        double interference = 0.0;
        for (std::size_t k = 0; k < ws.set1.size(); ++k) interference += s.es * rng.exp1();
        out.hop1_sec_outage |= sinr_ratio(sig, interference + half_noise).at_least(s.gamma_e);
    }
    // hop 2: R_{j*} -> D, noise set 2 interferes at the destination
    {
        double interference = 0.0;
        for (int j : ws.set2) interference += s.es * ws.d_gains[j].value;
        out.hop2_tx_outage =
            sinr_ratio(s.es * ws.d_gains[jstar].value, interference + half_noise).at_most(s.gamma_r);
    }
    for (int i = 0; i < s.m; ++i) {
        const double sig = s.es * rng.exp1();
        double interference = 0.0;
        for (std::size_t k = 0; k < ws.set2.size(); ++k) interference += s.es * rng.exp1();
        out.hop2_sec_outage |= sinr_ratio(sig, interference + half_noise).at_least(s.gamma_e);
    }

    if (trace) {
        trace->noise_gains_hop1.clear();
        trace->noise_gains_hop2.clear();
        for (int j : ws.set1) trace->noise_gains_hop1.push_back(ws.r_gains[j].value);
        for (int j : ws.set2) trace->noise_gains_hop2.push_back(ws.d_gains[j].value);
    }
    return out;
}

inline double dist_sq(Point p, Point q) noexcept {
    const double dx = p.x - q.x;
    const double dy = p.y - q.y;
    return dx * dx + dy * dy;
}

/// One distance-dependent trial (protocol 3).  Node placements are uniform
/// on the unit square and redrawn every trial unless frozen positions are
/// supplied.  Draw order: relay positions, eavesdropper positions, one
/// selection draw if at least two candidates, hop-1 signal gain, hop-1
/// membership gains, eavesdropper block, hop-2 signal gain, hop-2 membership
/// gains, eavesdropper block.
inline TrialOutcome run_trial_geo_ws(const ScenarioGeo& s, Philox& rng, TrialWorkspace& ws,
                                     const std::vector<Point>* frozen_relays = nullptr,
                                     const std::vector<Point>* frozen_eves = nullptr,
                                     TrialTrace* trace = nullptr) {
    const int n = s.base.n;
    const int m = s.base.m;
    if (frozen_relays) {
        ws.relays = *frozen_relays;
        ws.eves = *frozen_eves;
    } else {
        ws.relays.resize(n);
        ws.eves.resize(m);
        for (int j = 0; j < n; ++j) ws.relays[j] = Point{rng.uniform01(), rng.uniform01()};
        for (int i = 0; i < m; ++i) ws.eves[i] = Point{rng.uniform01(), rng.uniform01()};
    }

    const RelayChoice choice = select_relay_region(ws.relays, s.a, s.b, rng);
    if (!choice.available()) {
        TrialOutcome out;
        out.relay_unavailable = true;
        out.hop1_tx_outage = true;
        out.hop2_tx_outage = true;
        return out;
    }
    const int jstar = choice.index;
    const Point rstar = ws.relays[jstar];
    const double alpha = s.alpha;
    const double es = s.base.es;
    const double half_noise = s.base.n0 / 2.0;
    const double r0_sq = s.r0 * s.r0;

    ws.r_gains.resize(n);
    ws.d_gains.resize(n);
    TrialOutcome out;

    // hop 1: S -> R_{j*}
    const double s_sig = rng.exp1();
    ws.r_gains[jstar] = ChannelGain{0.0};
    for (int j = 0; j < n; ++j) {
        if (j != jstar) ws.r_gains[j] = sample_gain(rng);
    }
    noise_set_into(ws.r_gains, s.base.tau, jstar, ws.set1);
    {
        double interference = 0.0;
        for (int j : ws.set1)
            interference +=
                es * ws.r_gains[j].value * path_gain_sq(dist_sq(ws.relays[j], rstar), alpha);
        const double sig = es * s_sig * path_gain_sq(dist_sq(ScenarioGeo::source, rstar), alpha);
        out.hop1_tx_outage = sinr_ratio(sig, interference + half_noise).at_most(s.base.gamma_r);
    }
    for (int i = 0; i < m; ++i) {
        const Point e = ws.eves[i];
        const bool near = dist_sq(e, ScenarioGeo::source) < r0_sq;
        const double sig =
            es * rng.exp1() * path_gain_sq(dist_sq(ScenarioGeo::source, e), alpha);
        double interference = 0.0;
        for (int j : ws.set1)
            interference += es * rng.exp1() * path_gain_sq(dist_sq(ws.relays[j], e), alpha);
        out.hop1_sec_outage |=
            near || sinr_ratio(sig, interference + half_noise).at_least(s.base.gamma_e);
    }

    // hop 2: R_{j*} -> D
    const double d_sig = rng.exp1();
    ws.d_gains[jstar] = ChannelGain{0.0};
    for (int j = 0; j < n; ++j) {
        if (j != jstar) ws.d_gains[j] = sample_gain(rng);
    }
    noise_set_into(ws.d_gains, s.base.tau, jstar, ws.set2);
    {
        double interference = 0.0;
        for (int j : ws.set2)
            interference += es * ws.d_gains[j].value *
                            path_gain_sq(dist_sq(ws.relays[j], ScenarioGeo::destination), alpha);
        const double sig =
            es * d_sig * path_gain_sq(dist_sq(rstar, ScenarioGeo::destination), alpha);
        out.hop2_tx_outage = sinr_ratio(sig, interference + half_noise).at_most(s.base.gamma_r);
    }
    for (int i = 0; i < m; ++i) {
        const Point e = ws.eves[i];
        const bool near = dist_sq(e, rstar) < r0_sq;
        const double sig = es * rng.exp1() * path_gain_sq(dist_sq(rstar, e), alpha);
        double interference = 0.0;
        for (int j : ws.set2)
            interference += es * rng.exp1() * path_gain_sq(dist_sq(ws.relays[j], e), alpha);
        out.hop2_sec_outage |=
            near || sinr_ratio(sig, interference + half_noise).at_least(s.base.gamma_e);
    }

    if (trace) {
        trace->noise_gains_hop1.clear();
        trace->noise_gains_hop2.clear();
        for (int j : ws.set1) trace->noise_gains_hop1.push_back(ws.r_gains[j].value);
        for (int j : ws.set2) trace->noise_gains_hop2.push_back(ws.d_gains[j].value);
    }
    return out;
}

}  // namespace detail

inline TrialOutcome run_trial_equal(Protocol protocol, const ScenarioEqual& s, Philox& rng) {
    detail::TrialWorkspace ws;
    return detail::run_trial_equal_ws(protocol, s, rng, ws);
}

inline TrialOutcome run_trial_geo(const ScenarioGeo& s, Philox& rng) {
    detail::TrialWorkspace ws;
    return detail::run_trial_geo_ws(s, rng, ws);
}

struct EstimateOptions {
    unsigned workers = 0;          // 0 = hardware concurrency
    bool freeze_positions = false; // region protocol: place nodes once
    double z = 2.576;
};

struct EstimateResult {
    TrialCounts counts;
    OutageEstimate transmission;
    OutageEstimate secrecy;
};

namespace detail {

template <class TrialFn>
EstimateResult estimate_impl(std::uint64_t trials, std::uint64_t seed, const EstimateOptions& opts,
                             TrialFn&& trial) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    unsigned workers = opts.workers != 0 ? opts.workers : std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, trials));

    std::vector<TrialCounts> partial(workers);
    auto run_range = [&](unsigned w, std::uint64_t lo, std::uint64_t hi) {
        TrialWorkspace ws;
        TrialCounts counts;
        for (std::uint64_t i = lo; i < hi; ++i) {
            Philox rng(seed, i);  // stream depends only on (seed, trial index)
            counts.add(trial(rng, ws));
        }
        partial[w] = counts;
    };

    if (workers == 1) {
        run_range(0, 0, trials);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        const std::uint64_t chunk = trials / workers;
        const std::uint64_t rem = trials % workers;
        std::uint64_t lo = 0;
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t hi = lo + chunk + (w < rem ? 1 : 0);
            pool.emplace_back(run_range, w, lo, hi);
            lo = hi;
        }
        for (auto& t : pool) t.join();
    }

    EstimateResult res;
    for (const TrialCounts& c : partial) res.counts += c;
    res.transmission = OutageEstimate::from_counts(res.counts.tx, res.counts.trials, opts.z);
    res.secrecy = OutageEstimate::from_counts(res.counts.sec, res.counts.trials, opts.z);
    return res;
}

}  // namespace detail

inline EstimateResult estimate_equal(Protocol protocol, const ScenarioEqual& s,
                                     std::uint64_t trials, std::uint64_t seed,
                                     EstimateOptions opts = {}) {
    validate_equal(s);
    if (protocol != Protocol::optimal && protocol != Protocol::random)
        throw std::invalid_argument("equal-path-loss estimation runs protocol 1 or 2");
    return detail::estimate_impl(trials, seed, opts,
                                 [&](Philox& rng, detail::TrialWorkspace& ws) {
                                     return detail::run_trial_equal_ws(protocol, s, rng, ws);
                                 });
}

inline EstimateResult estimate_geo(const ScenarioGeo& s, std::uint64_t trials, std::uint64_t seed,
                                   EstimateOptions opts = {}) {
    validate_geo(s);
    std::optional<std::vector<Point>> frozen_relays;
    std::optional<std::vector<Point>> frozen_eves;
    if (opts.freeze_positions) {
        Philox rng(seed, kAuxStream);
        frozen_relays.emplace(s.base.n);
        frozen_eves.emplace(s.base.m);
        for (auto& p : *frozen_relays) p = Point{rng.uniform01(), rng.uniform01()};
        for (auto& p : *frozen_eves) p = Point{rng.uniform01(), rng.uniform01()};
    }
    return detail::estimate_impl(
        trials, seed, opts, [&](Philox& rng, detail::TrialWorkspace& ws) {
            return detail::run_trial_geo_ws(s, rng, ws,
                                            frozen_relays ? &*frozen_relays : nullptr,
                                            frozen_eves ? &*frozen_eves : nullptr);
        });
}

}  // namespace relaysec
