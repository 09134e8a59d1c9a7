#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "nldiff/core.hpp"

namespace nldiff {

/// One harmonic mode on Q = (-q1,q1) x (-q2,q2), evaluated in window-centered
/// coordinates. Families: the affine functions x~, y~, x~*y~ and, per
/// wavenumber k, the four sin/sinh products anchored at the four edges. The
/// sinh wavenumber matches the sin wavenumber, so the Laplacian vanishes
/// identically for any aspect ratio.
struct HarmonicMode {
    enum class Family { aff_x, aff_y, aff_xy, sin_x_ym, sin_y_x, sin_x_y, sin_y_xm };

    Family family = Family::aff_x;
    int k = 0;          // wavenumber index (sin families)
    double w = 0.0;     // angular wavenumber: k*pi/span of the sin axis
    double sx = 0.0;    // window spans 2*q1, 2*q2
    double sy = 0.0;
    double inv_norm = 1.0;

    // x,y are window-centered; internally shifted to [0,sx] x [0,sy].
    double value(double x, double y) const {
        const double xt = x + 0.5 * sx;
        const double yt = y + 0.5 * sy;
        switch (family) {
        case Family::aff_x: return xt * inv_norm;
        case Family::aff_y: return yt * inv_norm;
        case Family::aff_xy: return xt * yt * inv_norm;
        case Family::sin_x_ym: return std::sin(w * xt) * std::sinh(w * (sy - yt)) * inv_norm;
        case Family::sin_y_x: return std::sin(w * yt) * std::sinh(w * xt) * inv_norm;
        case Family::sin_x_y: return std::sin(w * xt) * std::sinh(w * yt) * inv_norm;
        case Family::sin_y_xm: return std::sin(w * yt) * std::sinh(w * (sx - xt)) * inv_norm;
        }
        return 0.0;
    }

    void gradient(double x, double y, double& gx, double& gy) const {
        const double xt = x + 0.5 * sx;
        const double yt = y + 0.5 * sy;
        switch (family) {
        case Family::aff_x: gx = inv_norm; gy = 0.0; return;
        case Family::aff_y: gx = 0.0; gy = inv_norm; return;
        case Family::aff_xy: gx = yt * inv_norm; gy = xt * inv_norm; return;
        case Family::sin_x_ym:
            gx = w * std::cos(w * xt) * std::sinh(w * (sy - yt)) * inv_norm;
            gy = -w * std::sin(w * xt) * std::cosh(w * (sy - yt)) * inv_norm;
            return;
        case Family::sin_y_x:
            gx = w * std::sin(w * yt) * std::cosh(w * xt) * inv_norm;
            gy = w * std::cos(w * yt) * std::sinh(w * xt) * inv_norm;
            return;
        case Family::sin_x_y:
            gx = w * std::cos(w * xt) * std::sinh(w * yt) * inv_norm;
            gy = w * std::sin(w * xt) * std::cosh(w * yt) * inv_norm;
            return;
        case Family::sin_y_xm:
            gx = -w * std::sin(w * yt) * std::cosh(w * (sx - xt)) * inv_norm;
            gy = w * std::cos(w * yt) * std::sinh(w * (sx - xt)) * inv_norm;
            return;
        }
        gx = gy = 0.0;
    }
};

/// Truncated harmonic basis: 3 affine modes plus 4 sin/sinh modes per
/// wavenumber k = 1..M, i.e. 4M+3 modes total.
struct HarmonicBasis {
    Window2D window{};
    int max_k = 0;
    std::vector<HarmonicMode> modes;

    int mode_count() const { return static_cast<int>(modes.size()); }
};

inline HarmonicBasis build_basis(Window2D w, int M) {
    if (M < 0)
        throw argument_error("build_basis: M must be >= 0");
    if (w.q1 < 1 || w.q2 < 1)
        throw argument_error("build_basis: window half-widths must be >= 1");

    const double sx = 2.0 * w.q1;
    const double sy = 2.0 * w.q2;

    HarmonicBasis basis;
    basis.window = w;
    basis.max_k = M;
    basis.modes.reserve(static_cast<std::size_t>(4 * M + 3));

    auto add = [&](HarmonicMode::Family fam, int k) {
        HarmonicMode m;
        m.family = fam;
        m.k = k;
        m.sx = sx;
        m.sy = sy;
        // Normalize so the sup of |grad f|_1 over the closed window is 1:
        // the gradient components of sin/sinh modes trace (cos*sinh, sin*cosh)
        // circles, whose l1 sup at transverse distance t is w*hypot(sinh, cosh).
        double norm = 1.0;
        switch (fam) {
        case HarmonicMode::Family::aff_x: norm = 1.0; break;
        case HarmonicMode::Family::aff_y: norm = 1.0; break;
        case HarmonicMode::Family::aff_xy: norm = sx + sy; break;
        case HarmonicMode::Family::sin_x_ym:
        case HarmonicMode::Family::sin_x_y:
            m.w = k * std::numbers::pi / sx;
            norm = m.w * std::hypot(std::sinh(m.w * sy), std::cosh(m.w * sy));
            break;
        case HarmonicMode::Family::sin_y_x:
        case HarmonicMode::Family::sin_y_xm:
            m.w = k * std::numbers::pi / sy;
            norm = m.w * std::hypot(std::sinh(m.w * sx), std::cosh(m.w * sx));
            break;
        }
        m.inv_norm = 1.0 / norm;
        basis.modes.push_back(m);
    };

    add(HarmonicMode::Family::aff_x, 0);
    add(HarmonicMode::Family::aff_y, 0);
    add(HarmonicMode::Family::aff_xy, 0);
    for (int k = 1; k <= M; ++k) {
        add(HarmonicMode::Family::sin_x_ym, k);
        add(HarmonicMode::Family::sin_y_x, k);
        add(HarmonicMode::Family::sin_x_y, k);
        add(HarmonicMode::Family::sin_y_xm, k);
    }
    return basis;
}

} // namespace nldiff
