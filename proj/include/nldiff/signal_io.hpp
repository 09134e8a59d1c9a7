#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "nldiff/core.hpp"

namespace nldiff {

/// CSV signal format: optional first line `h=<spacing>`, then one sample per
/// line. Values round-trip losslessly at 17 significant digits.
inline Signal1D read_signal_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw format_error("cannot open '" + path + "'");
    Signal1D u;
    u.h = 1.0;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        // trim trailing CR from DOS files
        while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
            line.pop_back();
        if (line.empty())
            continue;
        if (lineno == 1 && line.rfind("h=", 0) == 0) {
            try {
                u.h = std::stod(line.substr(2));
            } catch (const std::exception&) {
                throw format_error(path + ":1: bad header '" + line + "'");
            }
            if (!(u.h > 0.0))
                throw format_error(path + ":1: spacing must be positive");
            continue;
        }
        try {
            std::size_t used = 0;
            const double v = std::stod(line, &used);
            if (used != line.size())
                throw std::invalid_argument(line);
            u.values.push_back(v);
        } catch (const std::exception&) {
            throw format_error(path + ":" + std::to_string(lineno) + ": bad sample '" + line + "'");
        }
    }
    if (u.values.empty())
        throw format_error(path + ": no samples");
    if (u.values.size() < 2)
        throw format_error(path + ": need at least 2 samples");
    u.validate();
    return u;
}

inline void write_signal_csv(const std::string& path, const Signal1D& u) {
    std::ofstream out(path);
    if (!out)
        throw format_error("cannot write '" + path + "'");
    char buf[64];
    std::snprintf(buf, sizeof(buf), "h=%.17g\n", u.h);
    out << buf;
    for (double v : u.values) {
        std::snprintf(buf, sizeof(buf), "%.17g\n", v);
        out << buf;
    }
    if (!out)
        throw format_error("write failed for '" + path + "'");
}

/// out.csv, step 12 -> out_t12.csv
inline std::string snapshot_path(const std::string& path, int step) {
    const std::size_t dot = path.find_last_of('.');
    const std::size_t slash = path.find_last_of("/\\");
    const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
    const std::string stem = has_ext ? path.substr(0, dot) : path;
    const std::string ext = has_ext ? path.substr(dot) : "";
    return stem + "_t" + std::to_string(step) + ext;
}

} // namespace nldiff
