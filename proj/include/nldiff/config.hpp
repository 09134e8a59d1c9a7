#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "nldiff/core.hpp"

namespace nldiff {

/// Everything a pipeline run needs, serializable to `key=value` lines.
/// Command-line flags override file values; resolution happens in the CLI.
struct RunConfig {
    std::string mode;        // denoise1d|denoise2d|pm1d|pm2d|linear|synth|metrics
    std::string input;
    std::string output;
    std::string reference;   // ground truth for metrics reporting
    std::string metrics_out; // per-step metrics CSV path
    std::string kind = "spiketrain"; // synth kind

    double tau = 0.1;
    int steps = 300;
    int l = 20;
    int q1 = 2;
    int q2 = 2;
    int modes = 3;
    int bmesh = 400;
    double eps_tv = 0.0; // 0 = auto: 1e-4 of the input dynamic range
    double eps_g = 0.05;
    std::string edge_stop_form = "poly"; // poly|pm
    double lambda = 0.1;
    double sigma0 = -1.0; // <0 = mode default (0 for 1D, 0.5 px for 2D)
    double t_total = 1.0; // linear diffusion time
    double noise_sigma = 0.0;
    int refresh_every = 1;
    int snapshot_stride = 0;
    std::uint64_t seed = 0;
    int threads = 0;

    std::map<std::string, std::string> to_map() const {
        std::map<std::string, std::string> kv;
        auto put = [&kv](const std::string& k, const std::string& v) { kv[k] = v; };
        auto putd = [&kv](const std::string& k, double v) {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.17g", v);
            kv[k] = buf;
        };
        put("mode", mode);
        put("in", input);
        put("out", output);
        put("ref", reference);
        put("metrics", metrics_out);
        put("kind", kind);
        putd("tau", tau);
        kv["steps"] = std::to_string(steps);
        kv["l"] = std::to_string(l);
        kv["q1"] = std::to_string(q1);
        kv["q2"] = std::to_string(q2);
        kv["modes"] = std::to_string(modes);
        kv["bmesh"] = std::to_string(bmesh);
        putd("eps-tv", eps_tv);
        putd("eps-g", eps_g);
        put("edge-stop", edge_stop_form);
        putd("lambda", lambda);
        putd("sigma0", sigma0);
        putd("t", t_total);
        putd("noise", noise_sigma);
        kv["refresh-every"] = std::to_string(refresh_every);
        kv["snapshot-stride"] = std::to_string(snapshot_stride);
        kv["seed"] = std::to_string(seed);
        kv["threads"] = std::to_string(threads);
        return kv;
    }

    void set(const std::string& key, const std::string& value) {
        auto as_int = [&](int& dst) { dst = std::stoi(value); };
        auto as_double = [&](double& dst) { dst = std::stod(value); };
        try {
            if (key == "mode") mode = value;
            else if (key == "in") input = value;
            else if (key == "out") output = value;
            else if (key == "ref") reference = value;
            else if (key == "metrics") metrics_out = value;
            else if (key == "kind") kind = value;
            else if (key == "tau") as_double(tau);
            else if (key == "steps") as_int(steps);
            else if (key == "l") as_int(l);
            else if (key == "q1") as_int(q1);
            else if (key == "q2") as_int(q2);
            else if (key == "modes") as_int(modes);
            else if (key == "bmesh") as_int(bmesh);
            else if (key == "eps-tv") as_double(eps_tv);
            else if (key == "eps-g") as_double(eps_g);
            else if (key == "edge-stop") edge_stop_form = value;
            else if (key == "lambda") as_double(lambda);
            else if (key == "sigma0") as_double(sigma0);
            else if (key == "t") as_double(t_total);
            else if (key == "noise") as_double(noise_sigma);
            else if (key == "refresh-every") as_int(refresh_every);
            else if (key == "snapshot-stride") as_int(snapshot_stride);
            else if (key == "seed") seed = std::stoull(value);
            else if (key == "threads") as_int(threads);
            else throw format_error("config: unknown key '" + key + "'");
        } catch (const format_error&) {
            throw;
        } catch (const std::exception&) {
            throw format_error("config: bad value for '" + key + "': '" + value + "'");
        }
    }
};

inline RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
            line.pop_back();
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos || line[start] == '#')
            continue;
        const std::size_t eq = line.find('=', start);
        if (eq == std::string::npos)
            throw format_error("config line " + std::to_string(lineno) + ": expected key=value");
        cfg.set(line.substr(start, eq - start), line.substr(eq + 1));
    }
    return cfg;
}

inline RunConfig read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw format_error("cannot open config '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

inline std::string config_to_text(const RunConfig& cfg) {
    std::ostringstream out;
    for (const auto& [k, v] : cfg.to_map())
        out << k << '=' << v << '\n';
    return out.str();
}

inline void write_config(const std::string& path, const RunConfig& cfg) {
    std::ofstream out(path);
    if (!out)
        throw format_error("cannot write config '" + path + "'");
    out << config_to_text(cfg);
}

} // namespace nldiff
