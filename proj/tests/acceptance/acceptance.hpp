#pragma once

// Acceptance criteria for the denoising artifact. Each criterion prints one
// PASS/FAIL line; failures carry the measured quantity and its threshold.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "nldiff/nldiff.hpp"

namespace acceptance {

using namespace nldiff;
using Clock = std::chrono::steady_clock;

inline int g_failures = 0;

inline void record(int criterion, const std::string& name, bool pass,
                   const std::string& detail = "") {
    std::printf("[%s] criterion %2d: %s%s%s\n", pass ? "PASS" : "FAIL", criterion, name.c_str(),
                detail.empty() ? "" : " ", detail.c_str());
    std::fflush(stdout);
    if (!pass)
        ++g_failures;
}

inline std::string fmt(const char* f, double a, double b) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), f, a, b);
    return buf;
}

inline double elapsed_s(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// ---------------------------------------------------------------------------
// criterion 1: ratio bounds on random signals and images
// ---------------------------------------------------------------------------
inline void criterion1() {
    const auto t0 = Clock::now();
    Rng rng(1001);
    bool bounds_ok = true;
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 8 + static_cast<int>(rng.integer(200));
        Signal1D u(std::vector<double>(static_cast<std::size_t>(n)), 1.0);
        for (double& v : u.values)
            v = rng.uniform(-3, 3);
        const int l = 1 + static_cast<int>(rng.integer(static_cast<std::uint64_t>(n - 1)));
        for (double r : ratio_field_1d(u, {l}, 1e-4))
            if (!(r >= 0.0 && r <= 1.0))
                bounds_ok = false;
    }

    const Window2D w{2, 2};
    const BoundaryTables tables = boundary_tables(build_basis(w, 3), w, 400);
    std::int64_t clamps = 0;
    std::int64_t pixels = 0;
    for (int trial = 0; trial < 200; ++trial) {
        Image2D img(32, 32);
        for (double& v : img.pixels)
            v = rng.uniform();
        const RatioField2D rf = ratio_field_2d(img, w, tables, 1e-4, 0);
        clamps += rf.clamp_events;
        pixels += static_cast<std::int64_t>(img.size());
        for (double r : rf.r.pixels)
            if (!(r >= 0.0 && r <= 1.0))
                bounds_ok = false;
    }
    const double clamp_frac = static_cast<double>(clamps) / static_cast<double>(pixels);
    const double secs = elapsed_s(t0);
    record(1, "ratio fields stay in [0,1]", bounds_ok);
    record(1, "2D clamp events under 0.5%",
           clamp_frac <= 0.005, fmt("(frac=%.3g, thr=%.3g)", clamp_frac, 0.005));
    record(1, "runtime under 2 min", secs <= 120.0, fmt("(t=%.1fs, thr=%.0fs)", secs, 120.0));
}

// ---------------------------------------------------------------------------
// criterion 2: 1D scheme invariants per step
// ---------------------------------------------------------------------------
inline void criterion2() {
    Rng rng(1002);
    const double taus[] = {0.01, 0.1, 1.0, 10.0};
    double worst_mass = 0.0, worst_extremum = 0.0, worst_l2 = 0.0, worst_const = 0.0;
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 16 + static_cast<int>(rng.integer(497)); // 16..512
        Signal1D u(std::vector<double>(static_cast<std::size_t>(n)), 1.0);
        for (double& v : u.values)
            v = rng.uniform();
        SolverParams params;
        params.tau = taus[trial % 4];
        const int l = 1 + static_cast<int>(rng.integer(static_cast<std::uint64_t>(n / 2)));
        const Signal1D next = step_1d(u, params, {l});

        const double mass0 = std::accumulate(u.values.begin(), u.values.end(), 0.0);
        const double mass1 = std::accumulate(next.values.begin(), next.values.end(), 0.0);
        worst_mass = std::max(worst_mass, std::abs(mass1 - mass0) / std::max(1.0, std::abs(mass0)));

        const auto [mn, mx] = std::minmax_element(u.values.begin(), u.values.end());
        double l20 = 0.0, l21 = 0.0;
        for (std::size_t i = 0; i < u.values.size(); ++i) {
            worst_extremum = std::max({worst_extremum, *mn - next.values[i], next.values[i] - *mx});
            l20 += u.values[i] * u.values[i];
            l21 += next.values[i] * next.values[i];
        }
        worst_l2 = std::max(worst_l2, std::sqrt(l21) - std::sqrt(l20));

        Signal1D flat(std::vector<double>(static_cast<std::size_t>(n), 0.37), 1.0);
        const Signal1D fnext = step_1d(flat, params, {l});
        for (double v : fnext.values)
            worst_const = std::max(worst_const, std::abs(v - 0.37));
    }
    record(2, "mass conserved to 1e-10 relative", worst_mass <= 1e-10,
           fmt("(err=%.3g, thr=%.3g)", worst_mass, 1e-10));
    record(2, "maximum principle to 1e-12", worst_extremum <= 1e-12,
           fmt("(err=%.3g, thr=%.3g)", worst_extremum, 1e-12));
    record(2, "L2 norm nonincreasing", worst_l2 <= 1e-12,
           fmt("(growth=%.3g, thr=%.3g)", worst_l2, 1e-12));
    record(2, "constants are fixed points", worst_const <= 1e-12,
           fmt("(err=%.3g, thr=%.3g)", worst_const, 1e-12));
}

// ---------------------------------------------------------------------------
// criterion 3: tridiagonal solver vs dense elimination oracle
// ---------------------------------------------------------------------------
namespace detail {

inline std::vector<double> dense_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col]))
                piv = r;
        std::swap(a[col], a[piv]);
        std::swap(b[col], b[piv]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            if (f == 0.0)
                continue;
            for (std::size_t k = col; k < n; ++k)
                a[r][k] -= f * a[col][k];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double acc = b[i];
        for (std::size_t k = i + 1; k < n; ++k)
            acc -= a[i][k] * x[k];
        x[i] = acc / a[i][i];
    }
    return x;
}

} // namespace detail

inline void criterion3() {
    Rng rng(1003);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 2 + rng.integer(120);
        Tridiagonal m;
        m.diag.resize(n);
        m.lower.resize(n - 1);
        m.upper.resize(n - 1);
        for (auto& v : m.lower)
            v = rng.uniform(-1, 1);
        for (auto& v : m.upper)
            v = rng.uniform(-1, 1);
        for (std::size_t i = 0; i < n; ++i) {
            const double lo = i > 0 ? std::abs(m.lower[i - 1]) : 0.0;
            const double up = i + 1 < n ? std::abs(m.upper[i]) : 0.0;
            m.diag[i] = (rng.uniform() < 0.5 ? -1.0 : 1.0) * (lo + up + rng.uniform(0.1, 2.0));
        }
        std::vector<double> rhs(n);
        for (auto& v : rhs)
            v = rng.uniform(-5, 5);
        const auto x = thomas_solve(m, rhs);
        std::vector<std::vector<double>> dense(n, std::vector<double>(n, 0.0));
        for (std::size_t i = 0; i < n; ++i) {
            dense[i][i] = m.diag[i];
            if (i > 0)
                dense[i][i - 1] = m.lower[i - 1];
            if (i + 1 < n)
                dense[i][i + 1] = m.upper[i];
        }
        const auto ref = detail::dense_solve(std::move(dense), rhs);
        for (std::size_t i = 0; i < n; ++i)
            worst = std::max(worst, std::abs(x[i] - ref[i]));
    }
    record(3, "Thomas matches dense elimination on 1000 systems", worst <= 1e-10,
           fmt("(err=%.3g, thr=%.3g)", worst, 1e-10));
}

// ---------------------------------------------------------------------------
// criterion 4: cell TV closed form vs quadrature; box sums vs brute force
// ---------------------------------------------------------------------------
inline void criterion4() {
    Rng rng(1004);
    double worst_quad = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const double u00 = rng.uniform(-1, 1), u10 = rng.uniform(-1, 1);
        const double u01 = rng.uniform(-1, 1), u11 = rng.uniform(-1, 1);
        const double exact = cell_tv(u00, u10, u01, u11);
        // tensor midpoint quadrature dense enough for the kinked integrand
        const int n = 1024;
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            const double y = (i + 0.5) / n;
            acc += std::abs((u10 - u00) * (1.0 - y) + (u11 - u01) * y);
            acc += std::abs((u01 - u00) * (1.0 - y) + (u11 - u10) * y); // x-roles swapped
        }
        acc /= n;
        worst_quad = std::max(worst_quad, std::abs(exact - acc));
    }

    double worst_box = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const int wpx = 10 + static_cast<int>(rng.integer(30));
        const int hpx = 10 + static_cast<int>(rng.integer(30));
        Image2D img(wpx, hpx);
        for (double& v : img.pixels)
            v = rng.uniform();
        const int q1 = 1 + static_cast<int>(rng.integer(3));
        const int q2 = 1 + static_cast<int>(rng.integer(3));
        const Image2D padded = mirror_pad_2d(img, q1, q2);
        const Image2D fast = tv_field(padded, {q1, q2});
        const Image2D cells = cell_tv_field(padded);
        for (int y = 0; y < img.height; ++y)
            for (int x = 0; x < img.width; ++x) {
                double acc = 0.0;
                for (int cy = y; cy < y + 2 * q2; ++cy)
                    for (int cx = x; cx < x + 2 * q1; ++cx)
                        acc += cells.at(cx, cy);
                worst_box = std::max(worst_box, std::abs(acc - fast.at(x, y)));
            }
    }
    record(4, "cell TV matches tensor quadrature", worst_quad <= 1e-6,
           fmt("(err=%.3g, thr=%.3g)", worst_quad, 1e-6));
    record(4, "box aggregation equals brute force", worst_box <= 1e-12,
           fmt("(err=%.3g, thr=%.3g)", worst_box, 1e-12));
}

// ---------------------------------------------------------------------------
// criterion 5: LP certification, vertex-enumeration oracle, monotone in M
// ---------------------------------------------------------------------------
namespace detail {

inline double enumerate_optimum_3d(const std::vector<double>& c, const std::vector<double>& rows,
                                   std::size_t m) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            for (std::size_t k = j + 1; k < m; ++k) {
                const double* r0 = rows.data() + 3 * i;
                const double* r1 = rows.data() + 3 * j;
                const double* r2 = rows.data() + 3 * k;
                const double det = r0[0] * (r1[1] * r2[2] - r1[2] * r2[1]) -
                                   r0[1] * (r1[0] * r2[2] - r1[2] * r2[0]) +
                                   r0[2] * (r1[0] * r2[1] - r1[1] * r2[0]);
                if (std::abs(det) < 1e-10)
                    continue;
                double a0 = ((r1[1] * r2[2] - r1[2] * r2[1]) - r0[1] * (r2[2] - r1[2]) +
                             r0[2] * (r2[1] - r1[1])) /
                            det;
                double a1 = (r0[0] * (r2[2] - r1[2]) - (r1[0] * r2[2] - r1[2] * r2[0]) +
                             r0[2] * (r1[0] - r2[0])) /
                            det;
                double a2 = (r0[0] * (r1[1] - r2[1]) - r0[1] * (r1[0] - r2[0]) +
                             (r1[0] * r2[1] - r1[1] * r2[0])) /
                            det;
                bool feasible = true;
                for (std::size_t r = 0; r < m && feasible; ++r) {
                    const double* g = rows.data() + 3 * r;
                    if (g[0] * a0 + g[1] * a1 + g[2] * a2 > 1.0 + 1e-9)
                        feasible = false;
                }
                if (feasible)
                    best = std::max(best, c[0] * a0 + c[1] * a1 + c[2] * a2);
            }
    return best;
}

} // namespace detail

inline void criterion5() {
    Rng rng(1005);
    const Window2D w{2, 2};

    // certified solves across random patches, all four mode counts
    std::vector<BoundaryTables> tables;
    for (int M = 0; M <= 3; ++M)
        tables.push_back(boundary_tables(build_basis(w, M), w, M == 0 ? 64 : 400));
    double worst_feas = 0.0, worst_dual = 0.0, worst_gap = 0.0, worst_lambda = 0.0;
    double worst_mono = 0.0, worst_oracle = 0.0;

    for (int patch = 0; patch < 100; ++patch) {
        Image2D img(8, 8);
        for (double& v : img.pixels)
            v = rng.uniform();
        const Image2D padded = mirror_pad_2d(img, w.q1, w.q2);
        double prev = -1.0;
        for (int M = 0; M <= 3; ++M) {
            const BoundaryTables& t = tables[static_cast<std::size_t>(M)];
            std::vector<double> c;
            lp_objective(t, padded, 4 + w.q1, 4 + w.q2, c);
            const std::vector<double> ones(static_cast<std::size_t>(t.rows()), 1.0);
            lp::DenseSimplex solver(t.constraints.data(), ones.data(), t.rows(), t.mode_count());
            const lp::Solution sol = solver.solve(c);
            const lp::Certificate cert = lp::certify(t.constraints.data(), ones.data(), t.rows(),
                                                     t.mode_count(), c, sol);
            worst_feas = std::max(worst_feas, cert.feasibility);
            worst_dual = std::max(worst_dual, cert.dual_residual / (1.0 + std::abs(sol.value)));
            worst_gap = std::max(worst_gap, cert.gap / (1.0 + std::abs(sol.value)));
            worst_lambda = std::max(worst_lambda, -cert.lambda_min);
            if (M > 0)
                worst_mono = std::max(worst_mono, prev - sol.value);
            prev = sol.value;

            if (M == 0) {
                const double oracle = detail::enumerate_optimum_3d(
                    c, t.constraints, static_cast<std::size_t>(t.rows()));
                worst_oracle = std::max(worst_oracle, std::abs(oracle - sol.value));
            }
        }
    }
    record(5, "solutions feasible to 1e-9", worst_feas <= 1e-9,
           fmt("(err=%.3g, thr=%.3g)", worst_feas, 1e-9));
    record(5, "optimality certificates verified",
           worst_dual <= 1e-8 && worst_gap <= 1e-8 && worst_lambda <= 1e-9,
           fmt("(dual=%.3g, gap=%.3g)", worst_dual, worst_gap));
    record(5, "optimum matches vertex enumeration at M=0", worst_oracle <= 1e-8,
           fmt("(err=%.3g, thr=%.3g)", worst_oracle, 1e-8));
    record(5, "optimum nondecreasing in M", worst_mono <= 1e-9,
           fmt("(drop=%.3g, thr=%.3g)", worst_mono, 1e-9));
}

// ---------------------------------------------------------------------------
// criterion 6: harmonicity and divergence-theorem checks
// ---------------------------------------------------------------------------
inline void criterion6() {
    Rng rng(1006);
    double worst_lap = 0.0, worst_div = 0.0;
    for (Window2D w : {Window2D{2, 2}, Window2D{3, 2}}) {
        const HarmonicBasis basis = build_basis(w, 3);
        for (const auto& m : basis.modes) {
            for (int pt = 0; pt < 100; ++pt) {
                const double x = rng.uniform(-0.9 * w.q1, 0.9 * w.q1);
                const double y = rng.uniform(-0.9 * w.q2, 0.9 * w.q2);
                const double eta = 1e-4;
                const double lap = (m.value(x + eta, y) + m.value(x - eta, y) +
                                    m.value(x, y + eta) + m.value(x, y - eta) -
                                    4.0 * m.value(x, y)) /
                                   (eta * eta);
                const double fxx =
                    (m.value(x + eta, y) + m.value(x - eta, y) - 2.0 * m.value(x, y)) / (eta * eta);
                const double fyy =
                    (m.value(x, y + eta) + m.value(x, y - eta) - 2.0 * m.value(x, y)) / (eta * eta);
                const double scale = 1.0 + std::abs(fxx) + std::abs(fyy);
                worst_lap = std::max(worst_lap, std::abs(lap) / scale);
            }
        }
        const BoundaryTables t = boundary_tables(basis, w, 400);
        for (int h = 0; h < t.mode_count(); ++h) {
            double sum = 0.0;
            for (int j = 0; j < t.node_count(); ++j)
                sum += t.H[static_cast<std::size_t>(j) * t.mode_count() + h];
            worst_div = std::max(worst_div, std::abs(sum));
        }
    }
    record(6, "modes are harmonic (FD Laplacian)", worst_lap <= 1e-6,
           fmt("(err=%.3g, thr=%.3g)", worst_lap, 1e-6));
    record(6, "H rows annihilate constants", worst_div <= 1e-8,
           fmt("(err=%.3g, thr=%.3g)", worst_div, 1e-8));
}

// ---------------------------------------------------------------------------
// criterion 7: linear-image calibration
// ---------------------------------------------------------------------------
inline void criterion7() {
    const auto t0 = Clock::now();
    const Window2D w{2, 2};
    const BoundaryTables tables = boundary_tables(build_basis(w, 3), w, 400);
    Image2D img(24, 20);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            img.at(x, y) = static_cast<double>(x);
    const Image2D padded = mirror_pad_2d(img, w.q1, w.q2);
    LvSolver solver(tables);
    double worst_n = 0.0;
    for (int y = 4; y < 16; ++y)
        for (int x = 4; x < 20; ++x)
            worst_n = std::max(worst_n,
                               std::abs(solver.numerator(padded, x + w.q1, y + w.q2) - 16.0));
    const RatioField2D rf = ratio_field_2d(img, w, tables, 1e-4, 0);
    double min_r = 1.0;
    for (int y = 4; y < 16; ++y)
        for (int x = 4; x < 20; ++x)
            min_r = std::min(min_r, rf.r.at(x, y));
    const double secs = elapsed_s(t0);
    record(7, "N = |Q| within 2% for u=x", worst_n <= 0.02 * 16.0,
           fmt("(err=%.3g, thr=%.3g)", worst_n, 0.32));
    record(7, "R >= 0.9 on the ramp", min_r >= 0.9, fmt("(min=%.3g, thr=%.3g)", min_r, 0.9));
    record(7, "runtime under 10 s", secs <= 10.0, fmt("(t=%.2fs, thr=%.0fs)", secs, 10.0));
}

// ---------------------------------------------------------------------------
// criterion 8: paper-scale 2D run
// ---------------------------------------------------------------------------
inline void criterion8() {
    SynthParams sp;
    sp.width = 126;
    sp.height = 126;
    sp.noise_sigma = 0.05;
    const SynthImage synth = synth_image("testcard", sp, 42);

    SolverParams params;
    params.tau = 0.2;
    params.steps = 300;
    params.eps_tv = 1e-4;
    params.sigma0 = 0.5;
    Run2DOptions opt;
    opt.modes = 3;
    opt.boundary_mesh = 400;
    opt.threads = 0; // all cores

    const auto t0 = Clock::now();
    const RunResult2D res = run_2d(synth.noisy, params, {2, 2}, opt);
    const double secs = elapsed_s(t0);

    // reference mean: the presmoothed initial state (metrics row 0)
    const double mean_in = res.metrics.front().mean;
    double worst_mean = 0.0;
    for (const auto& m : res.metrics)
        worst_mean = std::max(worst_mean, std::abs(m.mean - mean_in));

    auto patch_var = [](const Image2D& im, int x0, int y0, int x1, int y1) {
        double s = 0.0, s2 = 0.0;
        for (int y = y0; y < y1; ++y)
            for (int x = x0; x < x1; ++x) {
                s += im.at(x, y);
                s2 += im.at(x, y) * im.at(x, y);
            }
        const double cnt = static_cast<double>(x1 - x0) * (y1 - y0);
        return s2 / cnt - (s / cnt) * (s / cnt);
    };
    // flat patch inside the 0.25 quadrant, away from edges
    const double var_noisy = patch_var(synth.noisy, 8, 8, 40, 40);
    const double var_out = patch_var(res.final, 8, 8, 40, 40);
    const double var_ratio = var_noisy / std::max(var_out, 1e-300);

    // step edge between the two upper quadrants: band means a few px out
    auto edge_height = [](const Image2D& im) {
        const int cx = im.width / 2;
        double left = 0.0, right = 0.0;
        int cnt = 0;
        for (int y = 8; y < im.height / 2 - 8; ++y)
            for (int d = 3; d <= 8; ++d) {
                left += im.at(cx - 1 - d, y);
                right += im.at(cx + d, y);
                ++cnt;
            }
        return (right - left) / cnt;
    };
    const double clean_height = edge_height(synth.clean);
    const double retained = edge_height(res.final) / clean_height;

    record(8, "runtime under 10 min", secs <= 600.0, fmt("(t=%.0fs, thr=%.0fs)", secs, 600.0));
    record(8, "mean conserved to 1e-8", worst_mean <= 1e-8,
           fmt("(err=%.3g, thr=%.3g)", worst_mean, 1e-8));
    record(8, "flat-region variance reduced 5x", var_ratio >= 5.0,
           fmt("(ratio=%.3g, thr=%.3g)", var_ratio, 5.0));
    record(8, "step-edge height retained 80%", retained >= 0.8,
           fmt("(retained=%.3g, thr=%.3g)", retained, 0.8));
}

// ---------------------------------------------------------------------------
// criterion 9: feature preservation vs Perona-Malik at matched smoothing
// ---------------------------------------------------------------------------

// Frozen regression baseline for the seeded spike-train comparison.
// Calibrated once from this exact configuration; enforced within +-5%.
inline constexpr double kFrozenAmplitudeRatio = -1.0; // set after calibration

inline void criterion9() {
    SynthParams sp;
    sp.length = 520;
    sp.events = 4;
    sp.rise = 3;
    sp.decay = 9;
    sp.amplitude = 1.0;
    sp.noise_sigma = 0.05;
    const SynthSignal synth = synth_signal("spiketrain", sp, 7);

    SolverParams params;
    params.tau = 0.1;
    params.steps = 300;
    params.eps_tv = 1e-4;
    const Signal1D nonlocal = run_1d(synth.noisy, params, {20}).final;

    // flat-region mask: clean == 0 and at least a window away from any event
    std::vector<bool> flat(synth.clean.values.size(), true);
    for (std::size_t i = 0; i < flat.size(); ++i)
        if (synth.clean.values[i] != 0.0)
            for (long d = -24; d <= 24; ++d) {
                const long j = static_cast<long>(i) + d;
                if (j >= 0 && j < static_cast<long>(flat.size()))
                    flat[static_cast<std::size_t>(j)] = false;
            }
    auto flat_std = [&](const Signal1D& s) {
        double acc = 0.0;
        int cnt = 0;
        for (std::size_t i = 0; i < flat.size(); ++i)
            if (flat[i]) {
                acc += s.values[i] * s.values[i];
                ++cnt;
            }
        return std::sqrt(acc / cnt);
    };
    const double target_std = flat_std(nonlocal);

    // run PM until its flat-region noise matches (never fewer than 1 step)
    Signal1D pm = synth.noisy;
    int pm_steps = 0;
    while (flat_std(pm) > target_std && pm_steps < 200000) {
        pm = perona_malik_step(pm, 0.1, params.tau);
        ++pm_steps;
    }

    auto retention = [&](const Signal1D& s) {
        // mean over events of the retained peak amplitude
        double total = 0.0;
        int events = 0;
        std::size_t i = 0;
        while (i < synth.clean.values.size()) {
            if (synth.clean.values[i] != 0.0) {
                std::size_t j = i;
                while (j < synth.clean.values.size() && synth.clean.values[j] != 0.0)
                    ++j;
                double peak = 0.0;
                for (std::size_t k = i; k < j; ++k)
                    peak = std::max(peak, s.values[k]);
                total += peak / sp.amplitude;
                ++events;
                i = j;
            } else {
                ++i;
            }
        }
        return total / events;
    };
    const double keep_nl = retention(nonlocal);
    const double keep_pm = retention(pm);
    const double ratio = keep_nl / std::max(keep_pm, 1e-12);

    std::printf("  [info] criterion 9: nl=%.4f pm=%.4f ratio=%.4f pm_steps=%d noise(nl)=%.5f\n",
                keep_nl, keep_pm, ratio, pm_steps, target_std);
    record(9, "nonlocal retains 3x more spike amplitude", ratio >= 3.0,
           fmt("(ratio=%.3g, thr=%.3g)", ratio, 3.0));
    if (kFrozenAmplitudeRatio > 0.0) {
        const double rel = std::abs(ratio - kFrozenAmplitudeRatio) / kFrozenAmplitudeRatio;
        record(9, "ratio matches the frozen baseline within 5%", rel <= 0.05,
               fmt("(rel=%.3g, thr=%.3g)", rel, 0.05));
    } else {
        record(9, "frozen baseline recorded", false, "(calibration pending)");
    }
}

// ---------------------------------------------------------------------------
// criterion 10: end-to-end CLI determinism
// ---------------------------------------------------------------------------
namespace detail {

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline bool run_cli(const std::string& bin, const std::string& args) {
    const std::string cmd = bin + " " + args + " > /dev/null 2>&1";
    return std::system(cmd.c_str()) == 0;
}

} // namespace detail

inline void criterion10(const std::string& nldiff_bin) {
    namespace fs = std::filesystem;
    if (nldiff_bin.empty()) {
        record(10, "CLI determinism", false, "(no --nldiff binary given)");
        return;
    }
    const fs::path base = fs::temp_directory_path() / "nldiff_acceptance";
    std::error_code ec;
    fs::remove_all(base, ec);
    fs::create_directories(base / "a");
    fs::create_directories(base / "b");

    bool all_ok = true;
    const std::vector<std::string> outputs{"sig.csv", "sig_noisy.csv", "den1.csv", "m1.csv",
                                           "img.pgm", "img_noisy.pgm", "den2.pgm", "m2.csv",
                                           "den2.png"};
    for (const char* run : {"a", "b"}) {
        const std::string d = (base / run).string() + "/";
        bool ok = true;
        ok &= detail::run_cli(nldiff_bin, "synth --kind spiketrain --seed 7 --noise 0.05 --out " +
                                              d + "sig.csv");
        ok &= detail::run_cli(nldiff_bin, "denoise1d --in " + d + "sig_noisy.csv --out " + d +
                                              "den1.csv --l 20 --tau 0.1 --steps 40 "
                                              "--sigma0 0.01 --metrics " + d + "m1.csv");
        ok &= detail::run_cli(nldiff_bin, "synth --kind step2d --seed 3 --noise 0.05 --out " + d +
                                              "img.pgm");
        ok &= detail::run_cli(nldiff_bin, "denoise2d --in " + d + "img_noisy.pgm --out " + d +
                                              "den2.pgm --q 2 --modes 1 --bmesh 64 --steps 5 "
                                              "--threads 2 --metrics " + d + "m2.csv");
        ok &= detail::run_cli(nldiff_bin, "linear --in " + d + "img_noisy.pgm --out " + d +
                                              "den2.png --t 2.0");
        if (!ok) {
            record(10, "CLI pipelines exit cleanly", false, std::string("(run ") + run + ")");
            all_ok = false;
        }
    }
    if (all_ok) {
        record(10, "CLI pipelines exit cleanly", true);
        bool identical = true;
        std::string first_diff;
        for (const auto& name : outputs) {
            const std::string a = detail::slurp(base / "a" / name);
            const std::string b = detail::slurp(base / "b" / name);
            if (a.empty() || a != b) {
                identical = false;
                first_diff = name;
                break;
            }
        }
        record(10, "two runs produce byte-identical outputs", identical,
               identical ? "" : "(differs: " + first_diff + ")");
    }
    fs::remove_all(base, ec);
}

inline int run(int only, const std::string& nldiff_bin) {
    g_failures = 0;
    if (only == 0 || only == 1)
        criterion1();
    if (only == 0 || only == 2)
        criterion2();
    if (only == 0 || only == 3)
        criterion3();
    if (only == 0 || only == 4)
        criterion4();
    if (only == 0 || only == 5)
        criterion5();
    if (only == 0 || only == 6)
        criterion6();
    if (only == 0 || only == 7)
        criterion7();
    if (only == 0 || only == 8)
        criterion8();
    if (only == 0 || only == 9)
        criterion9();
    if (only == 0 || only == 10)
        criterion10(nldiff_bin);
    if (g_failures > 0) {
        std::printf("%d acceptance check(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all acceptance checks passed\n");
    return 0;
}

} // namespace acceptance
