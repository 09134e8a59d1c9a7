#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "nldiff/core.hpp"
#include "nldiff/filters.hpp"
#include "nldiff/parallel.hpp"
#include "nldiff/ratio2d.hpp"
#include "nldiff/solver1d.hpp"
#include "nldiff/tv2d.hpp"

namespace nldiff {

/// Central-difference gradient at an interior pixel of a padded image.
inline std::pair<double, double> gradient_2d(const Image2D& padded, int x, int y) {
    if (x < 1 || y < 1 || x + 1 >= padded.width || y + 1 >= padded.height)
        throw argument_error("gradient_2d: pixel too close to the border");
    return {0.5 * (padded.at(x + 1, y) - padded.at(x - 1, y)),
            0.5 * (padded.at(x, y + 1) - padded.at(x, y - 1))};
}

/// Largest stable time step for the explicit scheme: Gershgorin bound on the
/// five-point flux stencil with h = 1.
inline double stable_tau_limit(double g_max) { return 1.0 / (4.0 * g_max); }

/// Forward Euler step of div(g grad u) in flux form: face diffusivities are
/// arithmetic means of the node values and boundary faces carry zero flux.
/// The update is a convex combination whenever tau <= 1/(4 max g), which
/// gives mean conservation and the discrete extremum bounds.
inline Image2D euler_step_2d(const Image2D& u, const Image2D& g_field, double tau,
                             int threads = 1) {
    if (g_field.width != u.width || g_field.height != u.height)
        throw argument_error("euler_step_2d: diffusivity field size mismatch");
    if (!(tau > 0.0))
        throw argument_error("euler_step_2d: tau must be positive");
    double g_max = 0.0;
    for (double g : g_field.pixels) {
        if (!(g > 0.0))
            throw argument_error("euler_step_2d: diffusivities must be positive");
        g_max = std::max(g_max, g);
    }
    if (tau > stable_tau_limit(g_max) * (1.0 + 1e-12))
        throw argument_error("euler_step_2d: tau violates the stability bound 1/(4 max g)");

    Image2D out(u.width, u.height);
    parallel_rows(u.height, resolve_threads(threads), [&](int y0, int y1, int) {
        for (int y = y0; y < y1; ++y) {
            for (int x = 0; x < u.width; ++x) {
                const double uc = u.at(x, y);
                const double gc = g_field.at(x, y);
                double flux = 0.0;
                if (x + 1 < u.width)
                    flux += 0.5 * (gc + g_field.at(x + 1, y)) * (u.at(x + 1, y) - uc);
                if (x > 0)
                    flux += 0.5 * (gc + g_field.at(x - 1, y)) * (u.at(x - 1, y) - uc);
                if (y + 1 < u.height)
                    flux += 0.5 * (gc + g_field.at(x, y + 1)) * (u.at(x, y + 1) - uc);
                if (y > 0)
                    flux += 0.5 * (gc + g_field.at(x, y - 1)) * (u.at(x, y - 1) - uc);
                out.at(x, y) = uc + tau * flux;
            }
        }
    });
    return out;
}

inline Image2D diffusivity_from_ratio(const Image2D& r, const EdgeStopSpec& spec) {
    Image2D g = r;
    for (double& v : g.pixels)
        v = edge_stop(spec, v);
    return g;
}

inline StepMetrics image_metrics(const Image2D& u, int step) {
    StepMetrics m;
    m.step = step;
    double sum = 0.0, sq = 0.0;
    for (double v : u.pixels) {
        sum += v;
        sq += v * v;
    }
    m.mean = sum / static_cast<double>(u.size());
    m.l2 = std::sqrt(sq);
    double tv = 0.0;
    for (int y = 0; y + 1 < u.height; ++y)
        for (int x = 0; x + 1 < u.width; ++x)
            tv += cell_tv(u.at(x, y), u.at(x + 1, y), u.at(x, y + 1), u.at(x + 1, y + 1));
    m.tv = tv;
    return m;
}

struct RunResult2D {
    Image2D final;
    std::vector<std::pair<int, Image2D>> snapshots;
    std::vector<StepMetrics> metrics;
    std::int64_t clamp_events = 0;
};

struct Run2DOptions {
    int modes = 3;        // M
    int boundary_mesh = 400; // requested L
    int refresh_every = 1;   // recompute the ratio field every k steps
    int snapshot_stride = 0;
    int threads = 0;
};

/// Presmooth, then iterate: ratio field -> edge-stop diffusivity -> explicit
/// Euler step. The boundary tables are built once and shared.
inline RunResult2D run_2d(const Image2D& img, const SolverParams& params, Window2D w,
                          const Run2DOptions& opt = {}) {
    params.validate();
    img.validate();
    w.validate(img.width, img.height);
    if (opt.refresh_every < 1)
        throw argument_error("run_2d: refresh_every must be >= 1");

    const HarmonicBasis basis = build_basis(w, opt.modes);
    const BoundaryTables tables = boundary_tables(basis, w, opt.boundary_mesh);

    RunResult2D res;
    Image2D u = gaussian_smooth(img, params.sigma0);
    res.metrics.push_back(image_metrics(u, 0));

    Image2D g;
    for (int k = 1; k <= params.steps; ++k) {
        if (g.size() == 0 || (k - 1) % opt.refresh_every == 0) {
            RatioField2D rf = ratio_field_2d(u, w, tables, params.eps_tv, opt.threads);
            res.clamp_events += rf.clamp_events;
            g = diffusivity_from_ratio(rf.r, params.edge_stop);
        }
        u = euler_step_2d(u, g, params.tau, opt.threads);
        res.metrics.push_back(image_metrics(u, k));
        if (opt.snapshot_stride > 0 && k % opt.snapshot_stride == 0 && k != params.steps)
            res.snapshots.emplace_back(k, u);
    }
    res.final = std::move(u);
    return res;
}

} // namespace nldiff
