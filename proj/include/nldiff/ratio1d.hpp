#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "nldiff/core.hpp"
#include "nldiff/edge_stop.hpp"

namespace nldiff {

/// |u[i+l] - u[i]| : net increment over the forward window.
inline double local_variation_1d(std::span<const double> u, std::size_t i, int l) {
    if (l < 1 || i + static_cast<std::size_t>(l) >= u.size())
        throw argument_error("local_variation_1d: window exceeds signal");
    return std::abs(u[i + static_cast<std::size_t>(l)] - u[i]);
}

/// Sum of absolute successive differences over the forward window.
inline double total_variation_1d(std::span<const double> u, std::size_t i, int l) {
    if (l < 1 || i + static_cast<std::size_t>(l) >= u.size())
        throw argument_error("total_variation_1d: window exceeds signal");
    double tv = 0.0;
    for (int j = 0; j < l; ++j)
        tv += std::abs(u[i + j + 1] - u[i + j]);
    return tv;
}

/// Nonlocal ratio R[i] = LV_i / (eps_tv + TV_i) on the mirror-padded signal,
/// one value per original sample. R is in [0,1); TV_i = 0 gives R[i] = 0.
inline std::vector<double> ratio_field_1d(const Signal1D& u, Window1D w, double eps_tv) {
    w.validate(u.size());
    if (!(eps_tv > 0.0))
        throw argument_error("ratio_field_1d: eps_tv must be positive");
    const Signal1D padded = mirror_pad_1d(u, w.l);
    std::span<const double> p(padded.values);
    std::vector<double> r(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        const std::size_t ip = i + static_cast<std::size_t>(w.l);
        const double lv = local_variation_1d(p, ip, w.l);
        const double tv = total_variation_1d(p, ip, w.l);
        r[i] = (tv == 0.0) ? 0.0 : lv / (eps_tv + tv);
    }
    return r;
}

/// Per-node diffusivity g(R[i]).
inline std::vector<double> diffusivity_field_1d(const Signal1D& u, Window1D w,
                                                double eps_tv, const EdgeStopSpec& spec) {
    std::vector<double> g = ratio_field_1d(u, w, eps_tv);
    for (double& v : g)
        v = edge_stop(spec, v);
    return g;
}

} // namespace nldiff
