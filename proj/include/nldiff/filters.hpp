#pragma once

#include <cmath>
#include <vector>

#include "nldiff/core.hpp"

namespace nldiff {

/// Symmetric Gaussian taps exp(-k^2/(2 sigma^2)), k = -r..r, truncated at
/// radius_factor*sigma and renormalized to sum 1.
inline std::vector<double> gaussian_kernel(double sigma, double radius_factor = 4.0) {
    if (sigma <= 0.0)
        return {1.0};
    const int r = std::max(1, static_cast<int>(std::ceil(radius_factor * sigma)));
    std::vector<double> k(2 * r + 1);
    double sum = 0.0;
    for (int i = -r; i <= r; ++i) {
        k[i + r] = std::exp(-0.5 * (i / sigma) * (i / sigma));
        sum += k[i + r];
    }
    for (double& v : k)
        v /= sum;
    return k;
}

// Half-sample reflection (edge repeated): ..., u[1], u[0], [u[0], ..., u[n-1]],
// u[n-1], u[n-2], ...  Makes symmetric convolutions doubly stochastic, so the
// sample mean is conserved exactly.
inline std::size_t reflect_half_index(long k, std::size_t n) {
    const long period = 2 * static_cast<long>(n);
    long m = k % period;
    if (m < 0)
        m += period;
    if (m >= static_cast<long>(n))
        m = period - 1 - m;
    return static_cast<std::size_t>(m);
}

/// Convolution with reflection boundary.
inline std::vector<double> convolve_reflect(const std::vector<double>& u,
                                            const std::vector<double>& kernel) {
    const int r = static_cast<int>(kernel.size() / 2);
    std::vector<double> out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        double acc = 0.0;
        for (int k = -r; k <= r; ++k)
            acc += kernel[k + r] * u[reflect_half_index(static_cast<long>(i) + k, u.size())];
        out[i] = acc;
    }
    return out;
}

inline Signal1D gaussian_smooth(const Signal1D& u, double sigma_samples,
                                double radius_factor = 4.0) {
    if (sigma_samples < 0.0)
        throw argument_error("gaussian_smooth: sigma must be >= 0");
    if (sigma_samples == 0.0)
        return u;
    Signal1D out = u;
    out.values = convolve_reflect(u.values, gaussian_kernel(sigma_samples, radius_factor));
    return out;
}

// Separable: rows then columns.
inline Image2D gaussian_smooth(const Image2D& img, double sigma_px,
                               double radius_factor = 4.0) {
    if (sigma_px < 0.0)
        throw argument_error("gaussian_smooth: sigma must be >= 0");
    if (sigma_px == 0.0)
        return img;
    const std::vector<double> k = gaussian_kernel(sigma_px, radius_factor);
    const int r = static_cast<int>(k.size() / 2);
    Image2D tmp(img.width, img.height);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            double acc = 0.0;
            for (int d = -r; d <= r; ++d)
                acc += k[d + r] * img.at(static_cast<int>(reflect_half_index(x + d, img.width)), y);
            tmp.at(x, y) = acc;
        }
    }
    Image2D out(img.width, img.height);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            double acc = 0.0;
            for (int d = -r; d <= r; ++d)
                acc += k[d + r] * tmp.at(x, static_cast<int>(reflect_half_index(y + d, img.height)));
            out.at(x, y) = acc;
        }
    }
    return out;
}

} // namespace nldiff
