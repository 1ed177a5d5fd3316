// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: closed-form outage bounds, noise-threshold
// windows, eavesdropper-tolerance limits, and Monte Carlo validation for the
// three cooperative-jamming relay protocols.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "relaysec/relaysec.hpp"

namespace {

using namespace relaysec;

struct CommonOpts {
    std::string config_path;
    bool db = false;
    double exclusion_radius = 1e-3;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    bool trials_set = false;
    bool seed_set = false;
    std::string workers = "";
    std::string csv_path;
    bool exact_tau = false;
    bool require_feasible = false;
    bool freeze_positions = false;
    std::string sweep;
    double bound_scale = 1.0;
};

Config load_config(const CommonOpts& opts) {
    std::ifstream in(opts.config_path, std::ios::binary);
    if (!in) throw ConfigError(0, "cannot open config file: " + opts.config_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    Config cfg = parse_config(buf.str());
    if (opts.db) {
        auto to_linear = [](std::optional<double>& v) {
            if (v) v = std::pow(10.0, *v / 10.0);
        };
        to_linear(cfg.gamma_r);
        to_linear(cfg.gamma_e);
    }
    return cfg;
}

unsigned resolve_workers(const CommonOpts& opts) {
    std::string w = opts.workers;
    if (w.empty()) {
        if (const char* env = std::getenv("RELAYSEC_WORKERS")) w = env;
    }
    if (w.empty() || w == "auto") return 0;
    const long v = std::strtol(w.c_str(), nullptr, 10);
    if (v < 1) throw ConfigError(0, "workers must be a positive integer or 'auto'");
    return static_cast<unsigned>(v);
}

std::uint64_t resolve_trials(const CommonOpts& opts, const Config& cfg) {
    if (opts.trials_set) return opts.trials;
    if (cfg.trials) return *cfg.trials;
    return opts.trials;
}

std::uint64_t resolve_seed(const CommonOpts& opts, const Config& cfg) {
    if (opts.seed_set) return opts.seed;
    if (cfg.seed) return *cfg.seed;
    return opts.seed;
}

/// Writes either to stdout ("-" or empty path for commands that default to
/// stdout) or to a file.
class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty() && path != "-") {
            file_.open(path, std::ios::binary);
            if (!file_) throw ConfigError(0, "cannot open output file: " + path);
            out_ = &file_;
        } else {
            out_ = &std::cout;
        }
    }
    std::ostream& stream() { return *out_; }

private:
    std::ofstream file_;
    std::ostream* out_ = nullptr;
};

/// Geometric-constant cache: the quadrature values depend only on
/// (alpha, exclusion radius), so sweeps over other keys reuse them.
class GeoConstantsCache {
public:
    GeoConstants get(int n, double a, double b, double alpha, double exclusion) {
        const auto key = std::pair{alpha, exclusion};
        auto it = integrals_.find(key);
        if (it == integrals_.end()) {
            Integrals v;
            v.varphi1 = disc_excluded_integral(Point{0.5, 0.5}, alpha, exclusion);
            v.varphi2 = disc_excluded_integral(Point{1.0, 0.5}, alpha, exclusion);
            v.psi = disc_excluded_integral(Point{0.0, 0.0}, alpha, exclusion);
            it = integrals_.emplace(key, v).first;
        }
        GeoConstants g;
        g.n = n;
        g.a = a;
        g.b = b;
        g.alpha = alpha;
        g.exclusion_radius = exclusion;
        g.theta = theta_empty_region(n, a, b);
        g.phi = std::sqrt((1.0 - a) * (1.0 - a) + (0.5 - b) * (0.5 - b));
        g.varphi1 = it->second.varphi1;
        g.varphi2 = it->second.varphi2;
        g.psi = it->second.psi;
        return g;
    }

private:
    struct Integrals {
        double varphi1, varphi2, psi;
    };
    std::map<std::pair<double, double>, Integrals> integrals_;
};

struct PointResult {
    CsvRow row;
    std::optional<double> tx_clamped, sec_clamped;
};

/// Fill a row's scenario columns from the config.
CsvRow scenario_row(const Config& cfg, int protocol) {
    CsvRow r;
    r.protocol = protocol;
    r.n = cfg.n;
    r.m = cfg.m;
    r.gamma_r = cfg.gamma_r;
    r.gamma_e = cfg.gamma_e;
    r.tau = cfg.tau;
    r.eps_t = cfg.eps_t;
    r.eps_s = cfg.eps_s;
    if (protocol == 3) {
        r.alpha = cfg.alpha;
        r.a = cfg.a;
        r.b = cfg.b;
        r.r0 = cfg.r0;
    }
    return r;
}

PointResult bounds_for(const Config& cfg, GeoConstantsCache& cache, const CommonOpts& opts) {
    const int protocol = protocol_of(cfg);
    PointResult res;
    res.row = scenario_row(cfg, protocol);
    if (protocol == 3) {
        const ScenarioGeo geo = geo_scenario(cfg);
        const GeoConstants consts =
            cache.get(geo.base.n, geo.a, geo.b, geo.alpha, opts.exclusion_radius);
        const BoundPair tx = tx_bound_region(geo, consts);
        const BoundPair sec = sec_bound_region(geo, consts);
        res.row.tx_bound_raw = tx.raw;
        res.row.tx_bound = tx.clamped;
        res.row.sec_bound_raw = sec.raw;
        res.row.sec_bound = sec.clamped;
        res.tx_clamped = tx.clamped;
        res.sec_clamped = sec.clamped;
    } else {
        const ScenarioEqual s = equal_scenario(cfg);
        const BoundPair tx = protocol == 1 ? tx_bound_optimal(s.n, s.gamma_r, s.tau)
                                           : tx_bound_random(s.n, s.gamma_r, s.tau);
        const BoundPair sec = sec_bound_equal(s.n, s.m, s.gamma_e, s.tau);
        res.row.tx_bound_raw = tx.raw;
        res.row.tx_bound = tx.clamped;
        res.row.sec_bound_raw = sec.raw;
        res.row.sec_bound = sec.clamped;
        res.tx_clamped = tx.clamped;
        res.sec_clamped = sec.clamped;
    }
    return res;
}

EstimateResult simulate_point(const Config& cfg, const CommonOpts& opts, std::uint64_t trials,
                              std::uint64_t seed) {
    const int protocol = protocol_of(cfg);
    EstimateOptions eopts;
    eopts.workers = resolve_workers(opts);
    eopts.freeze_positions = opts.freeze_positions;
    if (protocol == 3) return estimate_geo(geo_scenario(cfg), trials, seed, eopts);
    return estimate_equal(static_cast<Protocol>(protocol), equal_scenario(cfg), trials, seed,
                          eopts);
}

// ---------------------------------------------------------------------------
// sweep grids
// ---------------------------------------------------------------------------

struct SweepSpec {
    std::string key;
    double start = 0.0;
    double stop = 0.0;
    int steps = 0;
};

SweepSpec parse_sweep(const std::string& text, int protocol) {
    SweepSpec sp;
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ConfigError(0, "sweep must look like key=start:stop:steps");
    sp.key = text.substr(0, eq);
    const std::string rest = text.substr(eq + 1);
    const auto c1 = rest.find(':');
    const auto c2 = rest.find(':', c1 == std::string::npos ? std::string::npos : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw ConfigError(0, "sweep must look like key=start:stop:steps");
    try {
        sp.start = std::stod(rest.substr(0, c1));
        sp.stop = std::stod(rest.substr(c1 + 1, c2 - c1 - 1));
        sp.steps = std::stoi(rest.substr(c2 + 1));
    } catch (const std::exception&) {
        throw ConfigError(0, "invalid sweep range, expected key=start:stop:steps");
    }
    if (sp.steps < 2) throw ConfigError(0, "sweep needs steps >= 2");
    if (!(sp.start < sp.stop)) throw ConfigError(0, "sweep needs start < stop");
    static const std::vector<std::string> equal_keys = {"n",  "m",  "gamma_r", "gamma_e",
                                                        "tau", "es", "n0"};
    static const std::vector<std::string> geo_keys = {"alpha", "a", "b", "r0"};
    const bool is_equal_key =
        std::find(equal_keys.begin(), equal_keys.end(), sp.key) != equal_keys.end();
    const bool is_geo_key = std::find(geo_keys.begin(), geo_keys.end(), sp.key) != geo_keys.end();
    if (!is_equal_key && !is_geo_key)
        throw ConfigError(0, "'" + sp.key + "' is not a sweepable scenario key");
    if (is_geo_key && protocol != 3)
        throw ConfigError(0, "'" + sp.key + "' applies only to protocol 3");
    return sp;
}

Config apply_sweep_value(Config cfg, const SweepSpec& sp, double value) {
    if (sp.key == "n")
        cfg.n = static_cast<int>(std::llround(value));
    else if (sp.key == "m")
        cfg.m = static_cast<int>(std::llround(value));
    else if (sp.key == "gamma_r")
        cfg.gamma_r = value;
    else if (sp.key == "gamma_e")
        cfg.gamma_e = value;
    else if (sp.key == "tau")
        cfg.tau = value;
    else if (sp.key == "es")
        cfg.es = value;
    else if (sp.key == "n0")
        cfg.n0 = value;
    else if (sp.key == "alpha")
        cfg.alpha = value;
    else if (sp.key == "a")
        cfg.a = value;
    else if (sp.key == "b")
        cfg.b = value;
    else if (sp.key == "r0")
        cfg.r0 = value;
    return cfg;
}

std::vector<Config> sweep_grid(const Config& base, const std::string& sweep_text) {
    if (sweep_text.empty()) return {base};
    const SweepSpec sp = parse_sweep(sweep_text, protocol_of(base));
    std::vector<Config> grid;
    grid.reserve(sp.steps);
    for (int i = 0; i < sp.steps; ++i) {
        const double v = sp.start + (sp.stop - sp.start) * i / (sp.steps - 1);
        grid.push_back(apply_sweep_value(base, sp, v));
    }
    return grid;
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

int cmd_bounds(const CommonOpts& opts) {
    const Config cfg = load_config(opts);
    GeoConstantsCache cache;
    const PointResult pr = bounds_for(cfg, cache, opts);
    if (!opts.csv_path.empty()) {
        Output out(opts.csv_path);
        out.stream() << csv_header() << '\n' << csv_row(pr.row) << '\n';
        return 0;
    }
    std::cout << "protocol " << pr.row.protocol << " bounds\n";
    std::cout << "  transmission: raw " << fmt_g9(*pr.row.tx_bound_raw) << "  clamped "
              << fmt_g9(*pr.row.tx_bound) << '\n';
    std::cout << "  secrecy:      raw " << fmt_g9(*pr.row.sec_bound_raw) << "  clamped "
              << fmt_g9(*pr.row.sec_bound) << '\n';
    if (pr.row.protocol == 3) {
        const ScenarioGeo geo = geo_scenario(cfg);
        const GeoConstants c = cache.get(geo.base.n, geo.a, geo.b, geo.alpha, opts.exclusion_radius);
        std::cout << "  constants: theta " << fmt_g9(c.theta) << "  phi " << fmt_g9(c.phi)
                  << "  varphi1 " << fmt_g9(c.varphi1) << "  varphi2 " << fmt_g9(c.varphi2)
                  << "  psi " << fmt_g9(c.psi) << "  exclusion_radius "
                  << fmt_g9(c.exclusion_radius) << '\n';
    }
    return 0;
}

int cmd_tau_window(const CommonOpts& opts) {
    const Config cfg = load_config(opts);
    const int protocol = protocol_of(cfg);
    const Requirements req = config_requirements(cfg);
    TauWindow w;
    if (protocol == 3) {
        const ScenarioGeo geo = geo_scenario(cfg);
        GeoConstantsCache cache;
        const GeoConstants c = cache.get(geo.base.n, geo.a, geo.b, geo.alpha, opts.exclusion_radius);
        w = tau_window_region(geo, req, c);
        if (opts.exact_tau && w.cause != InfeasibleCause::reliability) {
            w.tau_max = tau_max_region_exact(geo, req, c);
            if (w.cause != InfeasibleCause::secrecy) {
                w.feasible = w.tau_min <= w.tau_max;
                w.cause = w.feasible ? InfeasibleCause::none : InfeasibleCause::empty_window;
            }
        }
    } else {
        const ScenarioEqual s = equal_scenario(cfg);
        w = tau_window_equal(protocol, s.n, s.gamma_r, s.gamma_e, req.eps_t, req.eps_s, s.m);
        if (opts.exact_tau) {
            w.tau_max = protocol == 1 ? tau_max_optimal_exact(s.n, s.gamma_r, req.eps_t)
                                      : tau_max_random_exact(s.n, s.gamma_r, req.eps_t);
            if (w.cause != InfeasibleCause::secrecy) {
                w.feasible = w.tau_min <= w.tau_max;
                w.cause = w.feasible ? InfeasibleCause::none : InfeasibleCause::empty_window;
            }
        }
    }

    std::cout << "tau_min (secrecy)     = " << fmt_g9(w.tau_min) << '\n';
    std::cout << "tau_max (reliability) = " << fmt_g9(w.tau_max) << '\n';
    if (w.feasible) {
        std::cout << "window: feasible\n";
    } else if (w.cause == InfeasibleCause::secrecy) {
        if (protocol == 3)
            std::cout << "window: infeasible: near-eavesdropper budget\n";
        else
            std::cout << "window: infeasible: secrecy target unreachable for m="
                      << *cfg.m << '\n';
    } else if (w.cause == InfeasibleCause::reliability) {
        std::cout << "window: infeasible: selection-region outage exceeds eps_t\n";
    } else {
        std::cout << "window: infeasible: tau_max=" << fmt_g9(w.tau_max) << " < tau_min\n";
    }
    return (!w.feasible && opts.require_feasible) ? 3 : 0;
}

int cmd_m_max(const CommonOpts& opts) {
    const Config cfg = load_config(opts);
    const int protocol = protocol_of(cfg);
    const Requirements req = config_requirements(cfg);
    std::optional<double> value;
    if (protocol == 3) {
        const ScenarioGeo geo = geo_scenario(cfg);
        GeoConstantsCache cache;
        const GeoConstants c = cache.get(geo.base.n, geo.a, geo.b, geo.alpha, opts.exclusion_radius);
        value = m_max_region(geo, req, c);
    } else {
        // tolerance limits need no tau or m; read the keys directly
        const int n = detail::require_key(cfg.n, "n");
        const double gr = detail::require_key(cfg.gamma_r, "gamma_r");
        const double ge = detail::require_key(cfg.gamma_e, "gamma_e");
        if (n < 2) throw ConfigError(0, "n must be >= 2");
        if (!(gr > 0.0) || !(ge > 0.0)) throw ConfigError(0, "gamma thresholds must be positive");
        value = protocol == 1 ? m_max_optimal(n, gr, ge, req.eps_t, req.eps_s)
                              : m_max_random(n, gr, ge, req.eps_t, req.eps_s);
    }
    if (!value) {
        std::cout << "reliability-infeasible: selection-region outage exceeds eps_t\n";
        return opts.require_feasible ? 3 : 0;
    }
    std::cout << "m_max = " << fmt_g9(*value) << '\n';
    if (std::isinf(*value))
        std::cout << "floor = unbounded\n";
    else
        std::cout << "floor = " << static_cast<long long>(std::floor(*value)) << '\n';
    return 0;
}

int cmd_simulate(const CommonOpts& opts) {
    const Config cfg = load_config(opts);
    GeoConstantsCache cache;
    PointResult pr = bounds_for(cfg, cache, opts);
    const std::uint64_t trials = resolve_trials(opts, cfg);
    const std::uint64_t seed = resolve_seed(opts, cfg);
    const EstimateResult est = simulate_point(cfg, opts, trials, seed);
    pr.row.trials = trials;
    pr.row.seed = seed;
    pr.row.tx_phat = est.transmission.p_hat;
    pr.row.tx_ci_lo = est.transmission.ci_low;
    pr.row.tx_ci_hi = est.transmission.ci_high;
    pr.row.sec_phat = est.secrecy.p_hat;
    pr.row.sec_ci_lo = est.secrecy.ci_low;
    pr.row.sec_ci_hi = est.secrecy.ci_high;
    Output out(opts.csv_path);
    out.stream() << csv_header() << '\n' << csv_row(pr.row) << '\n';
    return 0;
}

int run_grid(const CommonOpts& opts, bool validating) {
    const Config base = load_config(opts);
    const std::vector<Config> grid = sweep_grid(base, opts.sweep);
    GeoConstantsCache cache;
    Output out(opts.csv_path);
    out.stream() << csv_header();
    if (validating) out.stream() << ",tx_pass,tx_slack,sec_pass,sec_slack";
    out.stream() << '\n';

    bool all_pass = true;
    for (const Config& cfg : grid) {
        PointResult pr = bounds_for(cfg, cache, opts);
        const std::uint64_t trials = resolve_trials(opts, cfg);
        const std::uint64_t seed = resolve_seed(opts, cfg);
        const EstimateResult est = simulate_point(cfg, opts, trials, seed);
        pr.row.trials = trials;
        pr.row.seed = seed;
        pr.row.tx_phat = est.transmission.p_hat;
        pr.row.tx_ci_lo = est.transmission.ci_low;
        pr.row.tx_ci_hi = est.transmission.ci_high;
        pr.row.sec_phat = est.secrecy.p_hat;
        pr.row.sec_ci_lo = est.secrecy.ci_low;
        pr.row.sec_ci_hi = est.secrecy.ci_high;
        out.stream() << csv_row(pr.row);
        if (validating) {
            const double tx_bound = *pr.tx_clamped * opts.bound_scale;
            const double sec_bound = *pr.sec_clamped * opts.bound_scale;
            const bool tx_pass = est.transmission.ci_low <= tx_bound;
            const bool sec_pass = est.secrecy.ci_low <= sec_bound;
            all_pass = all_pass && tx_pass && sec_pass;
            out.stream() << ',' << (tx_pass ? 1 : 0) << ','
                         << fmt_g9(tx_bound - est.transmission.p_hat) << ','
                         << (sec_pass ? 1 : 0) << ','
                         << fmt_g9(sec_bound - est.secrecy.p_hat);
        }
        out.stream() << '\n';
    }
    return validating && !all_pass ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"closed-form outage bounds and Monte Carlo validation for "
                 "cooperative-jamming relay protocols"};
    app.require_subcommand(1);

    CommonOpts opts;
    auto add_common = [&](CLI::App* sub, bool sim_opts) {
        sub->add_option("--config", opts.config_path, "scenario file")->required();
        sub->add_flag("--db", opts.db, "gamma_r/gamma_e in the config are dB values");
        sub->add_option("--exclusion-radius", opts.exclusion_radius,
                        "regularization radius for the geometric integrals")
            ->check(CLI::PositiveNumber);
        if (sim_opts) {
            sub->add_option("--trials", opts.trials, "Monte Carlo trials")
                ->check(CLI::PositiveNumber)
                ->trigger_on_parse()
                ->each([&](const std::string&) { opts.trials_set = true; });
            sub->add_option("--seed", opts.seed, "base RNG seed")
                ->trigger_on_parse()
                ->each([&](const std::string&) { opts.seed_set = true; });
            sub->add_option("--workers", opts.workers, "worker threads (count or 'auto')");
            sub->add_flag("--freeze-positions", opts.freeze_positions,
                          "sample node placements once instead of per trial (protocol 3)");
        }
    };

    CLI::App* bounds = app.add_subcommand("bounds", "print the closed-form outage bounds");
    add_common(bounds, false);
    bounds->add_option("--csv", opts.csv_path, "write a CSV row instead of text");

    CLI::App* window = app.add_subcommand("tau-window", "print the admissible tau interval");
    add_common(window, false);
    window->add_flag("--exact-tau", opts.exact_tau,
                     "invert the per-hop relation exactly instead of the closed form");
    window->add_flag("--require-feasible", opts.require_feasible,
                     "exit with status 3 when the window is infeasible");

    CLI::App* mmax = app.add_subcommand("m-max", "print the eavesdropper tolerance");
    add_common(mmax, false);
    mmax->add_flag("--require-feasible", opts.require_feasible,
                   "exit with status 3 when reliability-infeasible");

    CLI::App* simulate = app.add_subcommand("simulate", "run trials and emit one CSV row");
    add_common(simulate, true);
    simulate->add_option("--csv", opts.csv_path, "output path ('-' = stdout)");

    CLI::App* validate =
        app.add_subcommand("validate", "compare empirical estimates against the bounds");
    add_common(validate, true);
    validate->add_option("--csv", opts.csv_path, "output path ('-' = stdout)");
    validate->add_option("--sweep", opts.sweep, "grid spec key=start:stop:steps");
    validate->add_option("--bound-scale", opts.bound_scale, "test hook: scale bounds")
        ->group("");  // hidden

    CLI::App* sweep = app.add_subcommand("sweep", "bounds plus estimates over a parameter grid");
    add_common(sweep, true);
    sweep->add_option("--csv", opts.csv_path, "output path ('-' = stdout)");
    sweep->add_option("--sweep", opts.sweep, "grid spec key=start:stop:steps")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (bounds->parsed()) return cmd_bounds(opts);
        if (window->parsed()) return cmd_tau_window(opts);
        if (mmax->parsed()) return cmd_m_max(opts);
        if (simulate->parsed()) return cmd_simulate(opts);
        if (validate->parsed()) return run_grid(opts, true);
        if (sweep->parsed()) return run_grid(opts, false);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
