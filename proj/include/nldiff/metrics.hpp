#pragma once

#include <cmath>
#include <limits>

#include "nldiff/core.hpp"

namespace nldiff {

inline double mse(const std::vector<double>& ref, const std::vector<double>& test) {
    if (ref.size() != test.size() || ref.empty())
        throw argument_error("mse: shape mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < ref.size(); ++i) {
        const double d = ref[i] - test[i];
        acc += d * d;
    }
    return acc / static_cast<double>(ref.size());
}

inline double mse(const Signal1D& ref, const Signal1D& test) { return mse(ref.values, test.values); }

inline double mse(const Image2D& ref, const Image2D& test) {
    if (ref.width != test.width || ref.height != test.height)
        throw argument_error("mse: shape mismatch");
    return mse(ref.pixels, test.pixels);
}

/// 10*log10(peak^2 / mse); +inf for identical inputs.
inline double psnr_from_mse(double mse_value, double peak = 1.0) {
    if (mse_value <= 0.0)
        return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(peak * peak / mse_value);
}

inline double psnr(const Signal1D& ref, const Signal1D& test, double peak = 1.0) {
    return psnr_from_mse(mse(ref, test), peak);
}

inline double psnr(const Image2D& ref, const Image2D& test, double peak = 1.0) {
    return psnr_from_mse(mse(ref, test), peak);
}

} // namespace nldiff
