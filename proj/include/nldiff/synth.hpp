#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "nldiff/core.hpp"
#include "nldiff/rng.hpp"

namespace nldiff {

struct SynthParams {
    int length = 520;       // 1D sample count
    int width = 126;        // 2D dimensions
    int height = 126;
    double h = 1.0;         // 1D grid spacing
    int events = 4;         // plateaus (piecewise) or spikes (spiketrain)
    int rise = 3;           // spike rise width in samples
    int decay = 9;          // spike decay width in samples
    double amplitude = 1.0; // spike/step height
    double noise_sigma = 0.0;
};

/// Piecewise-constant signal: `events` plateaus with seeded levels, so
/// events-1 jump locations.
inline Signal1D synth_piecewise(const SynthParams& p, std::uint64_t seed) {
    if (p.length < 2 * p.events || p.events < 1)
        throw argument_error("synth_piecewise: too many plateaus for the length");
    Rng rng(seed);
    Signal1D u;
    u.h = p.h;
    u.values.assign(static_cast<std::size_t>(p.length), 0.0);
    // plateau boundaries at roughly equal spacing with seeded jitter
    std::vector<int> cuts{0};
    for (int k = 1; k < p.events; ++k) {
        const double base = static_cast<double>(k) * p.length / p.events;
        cuts.push_back(static_cast<int>(base + rng.uniform(-0.2, 0.2) * p.length / p.events));
    }
    cuts.push_back(p.length);
    for (int k = 0; k < p.events; ++k) {
        const double level = rng.uniform();
        for (int i = cuts[k]; i < cuts[k + 1]; ++i)
            u.values[static_cast<std::size_t>(i)] = level;
    }
    return u;
}

/// Spike train: flat baseline with isolated events, each a monotone linear
/// rise over `rise` samples followed by a monotone exponential-like decay
/// over `decay` samples.
inline Signal1D synth_spiketrain(const SynthParams& p, std::uint64_t seed) {
    const int width = p.rise + p.decay;
    if (p.events < 1 || p.rise < 1 || p.decay < 1)
        throw argument_error("synth_spiketrain: bad event shape");
    if (p.length < (width + 8) * p.events)
        throw argument_error("synth_spiketrain: events do not fit");
    Rng rng(seed);
    Signal1D u;
    u.h = p.h;
    u.values.assign(static_cast<std::size_t>(p.length), 0.0);
    const int slot = p.length / p.events;
    for (int k = 0; k < p.events; ++k) {
        const int lo = k * slot + width;
        const int hi = (k + 1) * slot - 2 * width;
        const int start = lo + (hi > lo ? static_cast<int>(rng.integer(static_cast<std::uint64_t>(hi - lo))) : 0);
        for (int i = 0; i < p.rise; ++i)
            u.values[static_cast<std::size_t>(start + i)] =
                p.amplitude * static_cast<double>(i + 1) / p.rise;
        for (int i = 0; i < p.decay; ++i) {
            const double t = static_cast<double>(i + 1) / p.decay;
            u.values[static_cast<std::size_t>(start + p.rise + i)] =
                p.amplitude * (std::exp(-3.0 * t) - std::exp(-3.0)) / (1.0 - std::exp(-3.0));
        }
    }
    return u;
}

/// Vertical step edge of the given height through the image center.
inline Image2D synth_step_edge(const SynthParams& p) {
    Image2D img(p.width, p.height);
    const int edge = p.width / 2;
    const double lo = 0.5 - 0.5 * p.amplitude;
    const double hi = 0.5 + 0.5 * p.amplitude;
    for (int y = 0; y < p.height; ++y)
        for (int x = 0; x < p.width; ++x)
            img.at(x, y) = x < edge ? lo : hi;
    return img;
}

/// Quadrant test card: two flat plateaus with a step edge between them on
/// top, fine sinusoidal texture bottom-left, a flat field with a bright
/// disk bottom-right.
inline Image2D synth_test_card(const SynthParams& p) {
    Image2D img(p.width, p.height);
    const int mx = p.width / 2;
    const int my = p.height / 2;
    for (int y = 0; y < p.height; ++y) {
        for (int x = 0; x < p.width; ++x) {
            double v;
            if (y < my) {
                v = (x < mx) ? 0.25 : 0.75;
            } else if (x < mx) {
                v = 0.5 + 0.15 * std::sin(2.0 * std::numbers::pi * x / 3.0) *
                              std::sin(2.0 * std::numbers::pi * y / 3.0);
            } else {
                const double dx = x - (mx + p.width) / 2.0;
                const double dy = y - (my + p.height) / 2.0;
                v = (dx * dx + dy * dy < 0.02 * p.width * p.height) ? 0.85 : 0.35;
            }
            img.at(x, y) = v;
        }
    }
    return img;
}

struct SynthSignal {
    Signal1D clean;
    Signal1D noisy;
};

struct SynthImage {
    Image2D clean;
    Image2D noisy;
};

inline SynthSignal synth_signal(const std::string& kind, const SynthParams& p, std::uint64_t seed) {
    SynthSignal s;
    if (kind == "piecewise")
        s.clean = synth_piecewise(p, seed);
    else if (kind == "spiketrain")
        s.clean = synth_spiketrain(p, seed);
    else
        throw argument_error("synth: unknown 1D kind '" + kind + "'");
    s.noisy = add_awgn(s.clean, p.noise_sigma, seed + 1);
    return s;
}

inline SynthImage synth_image(const std::string& kind, const SynthParams& p, std::uint64_t seed) {
    SynthImage s;
    if (kind == "step2d")
        s.clean = synth_step_edge(p);
    else if (kind == "testcard")
        s.clean = synth_test_card(p);
    else
        throw argument_error("synth: unknown 2D kind '" + kind + "'");
    s.noisy = add_awgn(s.clean, p.noise_sigma, seed + 1);
    return s;
}

inline bool synth_kind_is_1d(const std::string& kind) {
    return kind == "piecewise" || kind == "spiketrain";
}

inline bool synth_kind_is_2d(const std::string& kind) {
    return kind == "step2d" || kind == "testcard";
}

} // namespace nldiff
