#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <vector>

#include "nldiff/boundary_tables.hpp"
#include "nldiff/core.hpp"
#include "nldiff/parallel.hpp"
#include "nldiff/simplex.hpp"
#include "nldiff/tv2d.hpp"

namespace nldiff {

/// Per-worker LP state for local-variation solves.
///
/// The constraint system is huge (4L rows) but only a small subset is ever
/// binding, so the solver works on a growing working set: solve on the
/// current subset, scan the full row set for violations, pull the worst
/// offenders in and re-solve. A solution with no violations is feasible and
/// optimal for the full system (the working set contains every binding row).
/// Every result is certified (feasibility 1e-9, matching multipliers); a
/// failed warm solve is retried cold before giving up.
class LvSolver {
public:
    explicit LvSolver(const BoundaryTables& tables)
        : tables_(tables),
          n_(tables.mode_count()),
          ones_(static_cast<std::size_t>(tables.rows()), 1.0),
          in_working_(static_cast<std::size_t>(tables.rows()), 0) {
        working_.reserve(static_cast<std::size_t>(tables.rows()) * n_);
        row_ids_.reserve(static_cast<std::size_t>(tables.rows()));
        // seed: a uniform subsample of mesh points (all four sign rows each)
        const int stride = std::max(1, tables.mesh_size / 32);
        for (int l = 0; l < tables.mesh_size; l += stride)
            for (int s = 0; s < 4; ++s)
                append_row(4 * l + s);
        solver_.emplace(working_.data(), ones_.data(), static_cast<int>(row_ids_.size()), n_,
                        tables.rows());
    }

    /// Boundary-integral supremum for the window centered at padded pixel
    /// (cx, cy); nonnegative by feasible-set symmetry.
    double numerator(const Image2D& padded, int cx, int cy) {
        lp_objective(tables_, padded, cx, cy, c_);
        for (int round = 0;; ++round) {
            lp::Solution sol = solver_->resolve(c_);
            if (!certified(sol)) {
                sol = solver_->solve(c_);
                if (!certified(sol))
                    throw numerical_error("lv_numerator: optimality certificate failed");
            }
            if (!pull_violations(sol))
                return sol.value;
            if (round > tables_.rows())
                throw numerical_error("lv_numerator: row generation failed to converge");
        }
    }

    const BoundaryTables& tables() const { return tables_; }

private:
    void append_row(int id) {
        if (in_working_[static_cast<std::size_t>(id)])
            return;
        in_working_[static_cast<std::size_t>(id)] = 1;
        const double* g = tables_.row(id);
        working_.insert(working_.end(), g, g + n_);
        row_ids_.push_back(id);
    }

    // scans the full system; true if new rows had to be added
    bool pull_violations(const lp::Solution& sol) {
        const int m = tables_.rows();
        bool added = false;
        // worst violation per mesh point is enough; the four sign rows are
        // mirror images, so check the l1 norm directly
        for (int l = 0; l < tables_.mesh_size; ++l) {
            const double* g =
                tables_.grad.data() + (static_cast<std::size_t>(l) * n_) * 2;
            double vx = 0.0, vy = 0.0;
            for (int k = 0; k < n_; ++k) {
                vx += g[2 * k] * sol.a[static_cast<std::size_t>(k)];
                vy += g[2 * k + 1] * sol.a[static_cast<std::size_t>(k)];
            }
            if (std::abs(vx) + std::abs(vy) > 1.0 + 1e-11) {
                const int sign_row = (vx >= 0 ? (vy >= 0 ? 0 : 1) : (vy >= 0 ? 2 : 3));
                const int id = 4 * l + sign_row;
                if (!in_working_[static_cast<std::size_t>(id)]) {
                    append_row(id);
                    added = true;
                }
            }
        }
        (void)m;
        if (added)
            solver_->set_row_count(static_cast<int>(row_ids_.size()));
        return added;
    }

    bool certified(const lp::Solution& sol) const {
        const lp::Certificate cert =
            lp::certify(working_.data(), ones_.data(), static_cast<int>(row_ids_.size()), n_,
                        c_, sol);
        double cmax = 0.0;
        for (double v : c_)
            cmax = std::max(cmax, std::abs(v));
        const double scale = 1.0 + cmax + std::abs(sol.value);
        // tight thresholds: vertices can have large coordinates, so loose
        // multiplier residuals would hide real suboptimality
        return cert.feasibility <= 1e-9 && cert.lambda_min >= -1e-10 * scale &&
               cert.dual_residual <= 1e-10 * scale && cert.gap <= 1e-9 * scale;
    }

    const BoundaryTables& tables_;
    int n_;
    std::vector<double> ones_;
    std::vector<unsigned char> in_working_;
    std::vector<double> working_; // row-major working subset, stable storage
    std::vector<int> row_ids_;
    std::optional<lp::DenseSimplex> solver_;
    std::vector<double> c_;
};

/// One-shot variant (cold start each call).
inline double lv_numerator(const Image2D& padded, int cx, int cy, const BoundaryTables& tables) {
    LvSolver solver(tables);
    return solver.numerator(padded, cx, cy);
}

struct RatioField2D {
    Image2D r;                 // clamped ratio per original pixel
    std::int64_t clamp_events = 0; // raw ratios above 1 before clamping
};

/// R[x] = clamp(N(x) / (eps_tv + D(x)), 0, 1) over the whole image; the LP
/// runs per pixel with row-wise warm starts, parallel over row blocks.
inline RatioField2D ratio_field_2d(const Image2D& img, Window2D w, const BoundaryTables& tables,
                                   double eps_tv, int threads = 1) {
    img.validate();
    w.validate(img.width, img.height);
    if (!(eps_tv > 0.0))
        throw argument_error("ratio_field_2d: eps_tv must be positive");
    if (tables.window.q1 != w.q1 || tables.window.q2 != w.q2)
        throw argument_error("ratio_field_2d: tables were built for a different window");

    const Image2D padded = mirror_pad_2d(img, w.q1, w.q2);
    const Image2D denom = tv_field(padded, w);

    RatioField2D out;
    out.r = Image2D(img.width, img.height);
    std::atomic<std::int64_t> clamps{0};

    parallel_rows(img.height, resolve_threads(threads), [&](int y0, int y1, int) {
        LvSolver solver(tables);
        std::int64_t local_clamps = 0;
        for (int y = y0; y < y1; ++y) {
            for (int x = 0; x < img.width; ++x) {
                const double d = denom.at(x, y);
                if (d == 0.0) { // locally constant window
                    out.r.at(x, y) = 0.0;
                    continue;
                }
                const double n = solver.numerator(padded, x + w.q1, y + w.q2);
                const double raw = n / (eps_tv + d);
                if (raw > 1.0) {
                    ++local_clamps;
                    out.r.at(x, y) = 1.0;
                } else {
                    out.r.at(x, y) = raw < 0.0 ? 0.0 : raw;
                }
            }
        }
        clamps += local_clamps;
    });
    out.clamp_events = clamps.load();
    return out;
}

} // namespace nldiff
