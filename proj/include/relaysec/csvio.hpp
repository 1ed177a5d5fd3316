// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

namespace relaysec {

/// Locale-independent number formatting with 9 significant digits.
inline std::string fmt_g9(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[48];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 9);
    (void)ec;
    return std::string(buf, ptr);
}

/// One row of the v1 results schema.  Cells stay empty for parameters that do
/// not apply to the protocol or command at hand.
struct CsvRow {
    int protocol = 0;
    std::optional<int> n, m;
    std::optional<double> gamma_r, gamma_e, tau;
    std::optional<double> alpha, a, b, r0;
    std::optional<double> eps_t, eps_s;
    std::optional<std::uint64_t> trials, seed;
    std::optional<double> tx_bound_raw, tx_bound, sec_bound_raw, sec_bound;
    std::optional<double> tx_phat, tx_ci_lo, tx_ci_hi;
    std::optional<double> sec_phat, sec_ci_lo, sec_ci_hi;
};

inline const char* csv_header() {
    return "protocol,n,m,gamma_r,gamma_e,tau,alpha,a,b,r0,eps_t,eps_s,trials,seed,"
           "tx_bound_raw,tx_bound,sec_bound_raw,sec_bound,"
           "tx_phat,tx_ci_lo,tx_ci_hi,sec_phat,sec_ci_lo,sec_ci_hi";
}

inline std::string csv_row(const CsvRow& r) {
    std::string out = std::to_string(r.protocol);
    auto cell_i = [&](const std::optional<int>& v) {
        out += ',';
        if (v) out += std::to_string(*v);
    };
    auto cell_u = [&](const std::optional<std::uint64_t>& v) {
        out += ',';
        if (v) out += std::to_string(*v);
    };
    auto cell_d = [&](const std::optional<double>& v) {
        out += ',';
        if (v) out += fmt_g9(*v);
    };
    cell_i(r.n);
    cell_i(r.m);
    cell_d(r.gamma_r);
    cell_d(r.gamma_e);
    cell_d(r.tau);
    cell_d(r.alpha);
    cell_d(r.a);
    cell_d(r.b);
    cell_d(r.r0);
    cell_d(r.eps_t);
    cell_d(r.eps_s);
    cell_u(r.trials);
    cell_u(r.seed);
    cell_d(r.tx_bound_raw);
    cell_d(r.tx_bound);
    cell_d(r.sec_bound_raw);
    cell_d(r.sec_bound);
    cell_d(r.tx_phat);
    cell_d(r.tx_ci_lo);
    cell_d(r.tx_ci_hi);
    cell_d(r.sec_phat);
    cell_d(r.sec_ci_lo);
    cell_d(r.sec_ci_hi);
    return out;
}

}  // namespace relaysec
