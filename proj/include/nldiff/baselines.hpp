#pragma once

#include <cmath>
#include <vector>

#include "nldiff/core.hpp"
#include "nldiff/edge_stop.hpp"
#include "nldiff/filters.hpp"
#include "nldiff/solver1d.hpp"
#include "nldiff/solver2d.hpp"

namespace nldiff {

/// Perona-Malik diffusivity from the local gradient: g = 1/(1+(|du/dx|/lambda)^2)
/// at the nodes, central differences on the mirror-padded signal.
inline std::vector<double> pm_diffusivity_1d(const Signal1D& u, double lambda) {
    if (!(lambda > 0.0))
        throw argument_error("pm_diffusivity_1d: lambda must be positive");
    std::vector<double> g(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double up = u.values[reflect_index(static_cast<long>(i) + 1, u.size())];
        const double um = u.values[reflect_index(static_cast<long>(i) - 1, u.size())];
        g[i] = perona_malik_g(std::abs(0.5 * (up - um)) / u.h, lambda);
    }
    return g;
}

/// Same semi-implicit stencil as the nonlocal solver; only the diffusivity
/// input differs.
inline Signal1D perona_malik_step(const Signal1D& u, double lambda, double tau) {
    return semi_implicit_step(u, pm_diffusivity_1d(u, lambda), tau);
}

inline Image2D pm_diffusivity_2d(const Image2D& u, double lambda) {
    if (!(lambda > 0.0))
        throw argument_error("pm_diffusivity_2d: lambda must be positive");
    const Image2D padded = mirror_pad_2d(u, 1, 1);
    Image2D g(u.width, u.height);
    for (int y = 0; y < u.height; ++y) {
        for (int x = 0; x < u.width; ++x) {
            const auto [gx, gy] = gradient_2d(padded, x + 1, y + 1);
            g.at(x, y) = perona_malik_g(std::hypot(gx, gy), lambda);
        }
    }
    return g;
}

inline Image2D perona_malik_step(const Image2D& u, double lambda, double tau, int threads = 1) {
    return euler_step_2d(u, pm_diffusivity_2d(u, lambda), tau, threads);
}

/// Linear diffusion for total time t: Gaussian convolution with sigma =
/// sqrt(2t). A wide kernel truncation keeps the semigroup property tight.
inline Signal1D linear_diffusion(const Signal1D& u, double t_total) {
    if (t_total < 0.0)
        throw argument_error("linear_diffusion: time must be >= 0");
    if (t_total == 0.0)
        return u;
    return gaussian_smooth(u, std::sqrt(2.0 * t_total) / u.h, 6.0);
}

inline Image2D linear_diffusion(const Image2D& img, double t_total) {
    if (t_total < 0.0)
        throw argument_error("linear_diffusion: time must be >= 0");
    if (t_total == 0.0)
        return img;
    return gaussian_smooth(img, std::sqrt(2.0 * t_total), 6.0);
}

} // namespace nldiff
