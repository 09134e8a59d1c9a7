#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "nldiff/core.hpp"

namespace nldiff {

/// Reproducible random source: mt19937_64 (bit-exact by the standard) with
/// hand-rolled uniform and Box-Muller transforms, so streams do not depend on
/// the standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform double in [0,1) with 53 random bits.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    std::uint64_t integer(std::uint64_t n) { return gen_() % n; } // small n only

    /// Standard normal via Box-Muller; second sample of each pair is cached.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0)
            u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

inline Signal1D add_awgn(const Signal1D& u, double sigma_noise, std::uint64_t seed) {
    if (sigma_noise < 0.0)
        throw argument_error("add_awgn: sigma must be >= 0");
    Signal1D out = u;
    if (sigma_noise == 0.0)
        return out;
    Rng rng(seed);
    for (double& v : out.values)
        v += sigma_noise * rng.normal();
    return out;
}

// 2D variant clamps back into [0,1].
inline Image2D add_awgn(const Image2D& img, double sigma_noise, std::uint64_t seed) {
    if (sigma_noise < 0.0)
        throw argument_error("add_awgn: sigma must be >= 0");
    Image2D out = img;
    if (sigma_noise == 0.0)
        return out;
    Rng rng(seed);
    for (double& v : out.pixels)
        v = std::clamp(v + sigma_noise * rng.normal(), 0.0, 1.0);
    return out;
}

} // namespace nldiff
