#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "nldiff/edge_stop.hpp"
#include "nldiff/errors.hpp"

namespace nldiff {

/// Uniformly sampled real signal; h is the grid spacing in abscissa units.
struct Signal1D {
    std::vector<double> values;
    double h = 1.0;

    Signal1D() = default;
    Signal1D(std::vector<double> v, double spacing) : values(std::move(v)), h(spacing) {
        validate();
    }

    std::size_t size() const { return values.size(); }

    void validate() const {
        if (values.size() < 2)
            throw argument_error("Signal1D: need at least 2 samples");
        if (!(h > 0.0))
            throw argument_error("Signal1D: grid spacing must be positive");
        for (double v : values)
            if (!std::isfinite(v))
                throw argument_error("Signal1D: non-finite sample");
    }
};

/// Row-major grayscale raster. Values are doubles; normalized images live in [0,1].
struct Image2D {
    int width = 0;
    int height = 0;
    std::vector<double> pixels; // row-major, pixels[y*width + x]

    Image2D() = default;
    Image2D(int w, int h, double fill = 0.0)
        : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, fill) {
        if (w <= 0 || h <= 0)
            throw argument_error("Image2D: dimensions must be positive");
    }

    double& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
    double at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
    std::size_t size() const { return pixels.size(); }

    void validate() const {
        if (width <= 0 || height <= 0)
            throw argument_error("Image2D: dimensions must be positive");
        if (pixels.size() != static_cast<std::size_t>(width) * height)
            throw argument_error("Image2D: pixel count does not match dimensions");
        for (double v : pixels)
            if (!std::isfinite(v))
                throw argument_error("Image2D: non-finite pixel");
    }
};

/// Forward window length in samples (1D nonlocal term).
struct Window1D {
    int l = 20;

    void validate(std::size_t signal_len) const {
        if (l < 1)
            throw argument_error("Window1D: l must be >= 1");
        if (static_cast<std::size_t>(l) >= signal_len)
            throw argument_error("Window1D: l must be smaller than the signal length");
    }
};

/// Rectangular window Q = (-q1,q1) x (-q2,q2) in pixels (2D nonlocal term).
struct Window2D {
    int q1 = 2;
    int q2 = 2;

    void validate(int width, int height) const {
        if (q1 < 1 || q2 < 1)
            throw argument_error("Window2D: half-widths must be >= 1");
        if (2 * q1 >= width || 2 * q2 >= height)
            throw argument_error("Window2D: window does not fit inside the image");
    }
};

struct SolverParams {
    double tau = 0.1;          // time step
    int steps = 300;           // iteration count
    double eps_tv = 1e-4;      // denominator regularizer
    EdgeStopSpec edge_stop{};
    double sigma0 = 0.0;       // presmoothing std dev (1D: abscissa units; 2D: pixels)

    void validate() const {
        if (!(tau > 0.0))
            throw argument_error("SolverParams: tau must be positive");
        if (steps < 0)
            throw argument_error("SolverParams: steps must be >= 0");
        if (!(eps_tv > 0.0))
            throw argument_error("SolverParams: eps_tv must be positive");
        if (sigma0 < 0.0)
            throw argument_error("SolverParams: sigma0 must be >= 0");
        edge_stop.validate();
    }
};

/// Quantized raster -> [0,1] doubles. Exact inverse is quantize() below.
inline Image2D normalize(const std::vector<std::uint32_t>& raw, int width, int height,
                         std::uint32_t maxval) {
    if (maxval < 1)
        throw argument_error("normalize: maxval must be >= 1");
    if (raw.size() != static_cast<std::size_t>(width) * height)
        throw argument_error("normalize: sample count does not match dimensions");
    Image2D img(width, height);
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i] > maxval)
            throw format_error("normalize: sample " + std::to_string(raw[i]) +
                               " exceeds maxval " + std::to_string(maxval));
        img.pixels[i] = static_cast<double>(raw[i]) / static_cast<double>(maxval);
    }
    return img;
}

inline std::vector<std::uint32_t> quantize(const Image2D& img, std::uint32_t maxval) {
    std::vector<std::uint32_t> raw(img.size());
    for (std::size_t i = 0; i < img.size(); ++i) {
        double v = std::clamp(img.pixels[i], 0.0, 1.0);
        raw[i] = static_cast<std::uint32_t>(std::lround(v * maxval));
    }
    return raw;
}

// Reflection index without repeating the edge sample: ..., u[2], u[1], [u[0], ...,
// u[n-1]], u[n-2], u[n-3], ...  Triangle-wave fold of period 2n-2, so any k works.
inline std::size_t reflect_index(long k, std::size_t n) {
    if (n == 1)
        return 0;
    const long period = 2 * static_cast<long>(n) - 2;
    long m = k % period;
    if (m < 0)
        m += period;
    if (m >= static_cast<long>(n))
        m = period - m;
    return static_cast<std::size_t>(m);
}

inline Signal1D mirror_pad_1d(const Signal1D& u, int margin) {
    if (margin < 0)
        throw argument_error("mirror_pad_1d: margin must be >= 0");
    if (static_cast<std::size_t>(margin) >= u.size())
        throw argument_error("mirror_pad_1d: margin must be smaller than the signal length");
    Signal1D out;
    out.h = u.h;
    out.values.resize(u.size() + 2 * static_cast<std::size_t>(margin));
    const long n = static_cast<long>(u.size());
    for (long i = -margin; i < n + margin; ++i)
        out.values[static_cast<std::size_t>(i + margin)] = u.values[reflect_index(i, u.size())];
    return out;
}

inline Image2D mirror_pad_2d(const Image2D& img, int q1, int q2) {
    if (q1 < 0 || q2 < 0)
        throw argument_error("mirror_pad_2d: margins must be >= 0");
    if (q1 >= img.width || q2 >= img.height)
        throw argument_error("mirror_pad_2d: margin exceeds image size");
    Image2D out(img.width + 2 * q1, img.height + 2 * q2);
    for (int y = -q2; y < img.height + q2; ++y) {
        const std::size_t sy = reflect_index(y, static_cast<std::size_t>(img.height));
        for (int x = -q1; x < img.width + q1; ++x) {
            const std::size_t sx = reflect_index(x, static_cast<std::size_t>(img.width));
            out.at(x + q1, y + q2) = img.pixels[sy * img.width + sx];
        }
    }
    return out;
}

inline Image2D crop_center(const Image2D& img, int q1, int q2) {
    if (img.width <= 2 * q1 || img.height <= 2 * q2)
        throw argument_error("crop_center: margins exceed image size");
    Image2D out(img.width - 2 * q1, img.height - 2 * q2);
    for (int y = 0; y < out.height; ++y)
        for (int x = 0; x < out.width; ++x)
            out.at(x, y) = img.at(x + q1, y + q2);
    return out;
}

} // namespace nldiff
