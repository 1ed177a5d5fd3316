// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <charconv>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "relaysec/scenario.hpp"

namespace relaysec {

class ConfigError : public std::runtime_error {
public:
    ConfigError(int line, const std::string& what)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

/// Parsed scenario file.  Every key is optional at this stage; commands
/// materialize the scenario they need and report missing keys by name.
struct Config {
    std::optional<int> protocol;
    std::optional<int> n;
    std::optional<int> m;
    std::optional<double> gamma_r;
    std::optional<double> gamma_e;
    std::optional<double> tau;
    std::optional<double> es;
    std::optional<double> n0;
    std::optional<double> alpha;
    std::optional<double> a;
    std::optional<double> b;
    std::optional<double> r0;
    std::optional<double> eps_t;
    std::optional<double> eps_s;
    std::optional<std::uint64_t> trials;
    std::optional<std::uint64_t> seed;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline double parse_double(std::string_view v, int line, std::string_view key) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        throw ConfigError(line, "invalid numeric value for '" + std::string(key) + "': " + std::string(v));
    return out;
}

inline long long parse_int(std::string_view v, int line, std::string_view key) {
    long long out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        throw ConfigError(line, "invalid integer value for '" + std::string(key) + "': " + std::string(v));
    return out;
}

inline std::uint64_t parse_u64(std::string_view v, int line, std::string_view key) {
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        throw ConfigError(line, "invalid unsigned value for '" + std::string(key) + "': " + std::string(v));
    return out;
}

}  // namespace detail

/// Parse the line-oriented `key = value` scenario format.  '#' starts a
/// comment, blank lines are skipped, unknown and duplicate keys are errors
/// reported with their line number.
inline Config parse_config(std::string_view text) {
    Config cfg;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        const std::size_t hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;

        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError(line_no, "expected 'key = value'");
        const std::string_view key = detail::trim(line.substr(0, eq));
        const std::string_view val = detail::trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(line_no, "missing key before '='");
        if (val.empty()) throw ConfigError(line_no, "missing value for '" + std::string(key) + "'");

        auto set_double = [&](std::optional<double>& slot) {
            if (slot) throw ConfigError(line_no, "duplicate key '" + std::string(key) + "'");
            slot = detail::parse_double(val, line_no, key);
        };
        auto set_count = [&](std::optional<int>& slot, int lo) {
            if (slot) throw ConfigError(line_no, "duplicate key '" + std::string(key) + "'");
            const long long v = detail::parse_int(val, line_no, key);
            if (v < lo || v > 1'000'000'000)
                throw ConfigError(line_no, "'" + std::string(key) + "' out of range");
            slot = static_cast<int>(v);
        };
        auto set_u64 = [&](std::optional<std::uint64_t>& slot) {
            if (slot) throw ConfigError(line_no, "duplicate key '" + std::string(key) + "'");
            slot = detail::parse_u64(val, line_no, key);
        };

        if (key == "protocol") {
            if (cfg.protocol) throw ConfigError(line_no, "duplicate key 'protocol'");
            const long long v = detail::parse_int(val, line_no, key);
            if (v < 1 || v > 3) throw ConfigError(line_no, "protocol must be 1, 2 or 3");
            cfg.protocol = static_cast<int>(v);
        } else if (key == "n") {
            set_count(cfg.n, 0);
        } else if (key == "m") {
            set_count(cfg.m, 0);
        } else if (key == "gamma_r") {
            set_double(cfg.gamma_r);
        } else if (key == "gamma_e") {
            set_double(cfg.gamma_e);
        } else if (key == "tau") {
            set_double(cfg.tau);
        } else if (key == "es") {
            set_double(cfg.es);
        } else if (key == "n0") {
            set_double(cfg.n0);
        } else if (key == "alpha") {
            set_double(cfg.alpha);
        } else if (key == "a") {
            set_double(cfg.a);
        } else if (key == "b") {
            set_double(cfg.b);
        } else if (key == "r0") {
            set_double(cfg.r0);
        } else if (key == "eps_t") {
            set_double(cfg.eps_t);
        } else if (key == "eps_s") {
            set_double(cfg.eps_s);
        } else if (key == "trials") {
            set_u64(cfg.trials);
        } else if (key == "seed") {
            set_u64(cfg.seed);
        } else {
            throw ConfigError(line_no, "unknown key '" + std::string(key) + "'");
        }
    }
    return cfg;
}

/// Serialize with shortest round-trip formatting; parse(serialize(c)) == c.
inline std::string serialize_config(const Config& cfg) {
    std::string out;
    auto emit_num = [&](const char* key, double v) {
        char buf[64];
        const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
        (void)ec;
        out += key;
        out += " = ";
        out.append(buf, ptr);
        out += '\n';
    };
    auto emit_int = [&](const char* key, long long v) {
        out += key;
        out += " = ";
        out += std::to_string(v);
        out += '\n';
    };
    if (cfg.protocol) emit_int("protocol", *cfg.protocol);
    if (cfg.n) emit_int("n", *cfg.n);
    if (cfg.m) emit_int("m", *cfg.m);
    if (cfg.gamma_r) emit_num("gamma_r", *cfg.gamma_r);
    if (cfg.gamma_e) emit_num("gamma_e", *cfg.gamma_e);
    if (cfg.tau) emit_num("tau", *cfg.tau);
    if (cfg.es) emit_num("es", *cfg.es);
    if (cfg.n0) emit_num("n0", *cfg.n0);
    if (cfg.alpha) emit_num("alpha", *cfg.alpha);
    if (cfg.a) emit_num("a", *cfg.a);
    if (cfg.b) emit_num("b", *cfg.b);
    if (cfg.r0) emit_num("r0", *cfg.r0);
    if (cfg.eps_t) emit_num("eps_t", *cfg.eps_t);
    if (cfg.eps_s) emit_num("eps_s", *cfg.eps_s);
    if (cfg.trials) { out += "trials = " + std::to_string(*cfg.trials) + '\n'; }
    if (cfg.seed) { out += "seed = " + std::to_string(*cfg.seed) + '\n'; }
    return out;
}

namespace detail {
template <class T>
const T& require_key(const std::optional<T>& slot, const char* key) {
    if (!slot) throw ConfigError(0, std::string("missing required key '") + key + "'");
    return *slot;
}
}  // namespace detail

inline int protocol_of(const Config& cfg) { return detail::require_key(cfg.protocol, "protocol"); }

/// Materialize and validate the equal-path-loss scenario (es and n0 default
/// to 1 and 0 when omitted).
inline ScenarioEqual equal_scenario(const Config& cfg) {
    ScenarioEqual s;
    s.n = detail::require_key(cfg.n, "n");
    s.m = detail::require_key(cfg.m, "m");
    s.gamma_r = detail::require_key(cfg.gamma_r, "gamma_r");
    s.gamma_e = detail::require_key(cfg.gamma_e, "gamma_e");
    s.tau = detail::require_key(cfg.tau, "tau");
    s.es = cfg.es.value_or(1.0);
    s.n0 = cfg.n0.value_or(0.0);
    return validate_equal(s);
}

inline ScenarioGeo geo_scenario(const Config& cfg) {
    ScenarioGeo g;
    g.base = equal_scenario(cfg);
    g.alpha = detail::require_key(cfg.alpha, "alpha");
    g.a = detail::require_key(cfg.a, "a");
    g.b = detail::require_key(cfg.b, "b");
    g.r0 = detail::require_key(cfg.r0, "r0");
    return validate_geo(g);
}

inline Requirements config_requirements(const Config& cfg) {
    Requirements r;
    r.eps_t = detail::require_key(cfg.eps_t, "eps_t");
    r.eps_s = detail::require_key(cfg.eps_s, "eps_s");
    return validate_requirements(r);
}

}  // namespace relaysec
