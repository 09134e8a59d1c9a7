#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "nldiff/core.hpp"
#include "nldiff/filters.hpp"
#include "nldiff/ratio1d.hpp"
#include "nldiff/tridiag.hpp"

namespace nldiff {

/// Implicit operator B = I - tau*A for the semi-implicit step, from per-node
/// diffusivities. Half-node values are arithmetic means; boundary rows carry
/// zero flux, so every column of B sums to 1 and B is strictly dominant for
/// any tau > 0.
inline Tridiagonal assemble_1d(const std::vector<double>& g_field, double tau, double h) {
    if (!(tau >= 0.0))
        throw argument_error("assemble_1d: tau must be >= 0");
    if (!(h > 0.0))
        throw argument_error("assemble_1d: h must be positive");
    const std::size_t n = g_field.size();
    if (n < 2)
        throw argument_error("assemble_1d: need at least 2 nodes");

    const double s = tau / (2.0 * h * h);
    Tridiagonal m;
    m.lower.resize(n - 1);
    m.diag.resize(n);
    m.upper.resize(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const double beta = (i > 0) ? s * (g_field[i - 1] + g_field[i]) : 0.0;
        const double gamma = (i + 1 < n) ? s * (g_field[i] + g_field[i + 1]) : 0.0;
        if (i > 0)
            m.lower[i - 1] = -beta;
        if (i + 1 < n)
            m.upper[i] = -gamma;
        m.diag[i] = 1.0 + beta + gamma;
    }
    return m;
}

/// One semi-implicit step with an externally supplied diffusivity field.
inline Signal1D semi_implicit_step(const Signal1D& u, const std::vector<double>& g_field,
                                   double tau) {
    if (g_field.size() != u.size())
        throw argument_error("semi_implicit_step: diffusivity field size mismatch");
    const Tridiagonal m = assemble_1d(g_field, tau, u.h);
    Signal1D out;
    out.h = u.h;
    out.values = thomas_solve(m, u.values);
    return out;
}

inline Signal1D gaussian_presmooth(const Signal1D& u, double sigma_samples) {
    return gaussian_smooth(u, sigma_samples, 4.0);
}

/// Diffusivity frozen at U^k, new level solved implicitly.
inline Signal1D step_1d(const Signal1D& u, const SolverParams& params, Window1D w) {
    params.validate();
    return semi_implicit_step(u, diffusivity_field_1d(u, w, params.eps_tv, params.edge_stop),
                              params.tau);
}

struct StepMetrics {
    int step = 0;
    double mean = 0.0;
    double l2 = 0.0;
    double tv = 0.0;
};

inline StepMetrics signal_metrics(const Signal1D& u, int step) {
    StepMetrics m;
    m.step = step;
    double sum = 0.0, sq = 0.0, tv = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        sum += u.values[i];
        sq += u.values[i] * u.values[i];
        if (i + 1 < u.size())
            tv += std::abs(u.values[i + 1] - u.values[i]);
    }
    m.mean = sum / static_cast<double>(u.size());
    m.l2 = std::sqrt(sq);
    m.tv = tv;
    return m;
}

struct RunResult1D {
    Signal1D final;
    std::vector<std::pair<int, Signal1D>> snapshots; // (step, state)
    std::vector<StepMetrics> metrics;                // step 0 = presmoothed input
};

/// Presmooth once (sigma0 in abscissa units, converted to samples via h),
/// then iterate the semi-implicit scheme.
inline RunResult1D run_1d(const Signal1D& u_initial, const SolverParams& params, Window1D w,
                          int snapshot_stride = 0) {
    params.validate();
    w.validate(u_initial.size());

    RunResult1D res;
    Signal1D u = gaussian_presmooth(u_initial, params.sigma0 / u_initial.h);
    res.metrics.push_back(signal_metrics(u, 0));
    for (int k = 1; k <= params.steps; ++k) {
        u = step_1d(u, params, w);
        res.metrics.push_back(signal_metrics(u, k));
        if (snapshot_stride > 0 && k % snapshot_stride == 0 && k != params.steps)
            res.snapshots.emplace_back(k, u);
    }
    res.final = std::move(u);
    return res;
}

} // namespace nldiff
