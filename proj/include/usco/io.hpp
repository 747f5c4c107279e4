// io.hpp — CSV and flat key=value output; every float printed with 12
// significant digits so reruns are byte-identical.

#pragma once

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "usco/dynamics.hpp"
#include "usco/errors.hpp"
#include "usco/fock.hpp"
#include "usco/measures.hpp"

namespace usco::io {

inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

inline std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw validation_error("cannot open output file: " + path);
    return out;
}

// Header t,n_a,n_b,logneg,trace,parity; one row per recorded sample.
inline void write_time_series(const std::string& path, const dynamics::TimeSeries& ts) {
    auto out = open_out(path);
    out << "t,n_a,n_b,logneg,trace,parity\n";
    for (size_t i = 0; i < ts.times.size(); ++i)
        out << format_number(ts.times[i]) << ',' << format_number(ts.n_a[i]) << ','
            << format_number(ts.n_b[i]) << ',' << format_number(ts.logneg[i]) << ','
            << format_number(ts.norm_or_trace[i]) << ',' << format_number(ts.parity[i]) << '\n';
}

// |C_{m,n}| grid, one row per basis state in composite-index order.
inline void write_amplitude_grid(const std::string& path, const StateVector& psi) {
    auto out = open_out(path);
    out << "m,n,abs_amp\n";
    for (int m = 0; m < psi.cutoff.n_a; ++m)
        for (int n = 0; n < psi.cutoff.n_b; ++n)
            out << m << ',' << n << ',' << format_number(std::abs(psi.amp(m, n))) << '\n';
}

inline void write_sweep(const std::string& path, const std::vector<measures::SweepPoint>& pts) {
    auto out = open_out(path);
    out << "g,n_avg,logneg\n";
    for (const auto& p : pts)
        out << format_number(p.g) << ',' << format_number(p.n_avg) << ','
            << format_number(p.logneg) << '\n';
}

inline void write_pairs(const std::string& path, const std::string& header,
                        const std::vector<std::pair<double, double>>& rows) {
    auto out = open_out(path);
    out << header << '\n';
    for (const auto& [x, y] : rows) out << format_number(x) << ',' << format_number(y) << '\n';
}

// Flat key = value file; insertion order preserved.
inline void write_key_value(const std::string& path,
                            const std::vector<std::pair<std::string, std::string>>& entries) {
    auto out = open_out(path);
    for (const auto& [k, v] : entries) out << k << " = " << v << '\n';
}

// Parses "key = value" lines; '#' starts a comment, blank lines ignored.
inline std::map<std::string, std::string> read_key_value(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    auto trim = [](std::string s) {
        const char* ws = " \t\r\n";
        size_t b = s.find_first_not_of(ws);
        size_t e = s.find_last_not_of(ws);
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        std::string t = trim(line);
        if (t.empty()) continue;
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw validation_error(path + ":" + std::to_string(lineno) +
                                   ": expected 'key = value', got '" + t + "'");
        kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
    }
    return kv;
}

} // namespace usco::io
