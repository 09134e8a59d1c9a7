#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "nldiff/errors.hpp"

namespace nldiff::lp {

/// Optimal vertex, objective value and the multiplier vector that certifies
/// optimality: lambda >= 0 with rows^T lambda = c and b.lambda = c.a.
struct Solution {
    std::vector<double> a;
    double value = 0.0;
    std::vector<double> lambda;
    int iterations = 0;
    bool warm = false;
};

struct Certificate {
    double feasibility = 0.0;   // max_i (g_i . a - b_i)
    double dual_residual = 0.0; // max_k |sum_i lambda_i g_ik - c_k|
    double gap = 0.0;           // |b.lambda - c.a|
    double lambda_min = 0.0;
};

inline Certificate certify(const double* rows, const double* b, int m, int n,
                           const std::vector<double>& c, const Solution& sol) {
    Certificate cert;
    cert.lambda_min = 0.0;
    double dual[64] = {}; // n <= 64 per construction below
    for (int i = 0; i < m; ++i) {
        const double* g = rows + static_cast<std::size_t>(i) * n;
        double dot = 0.0;
        for (int k = 0; k < n; ++k)
            dot += g[k] * sol.a[k];
        cert.feasibility = std::max(cert.feasibility, dot - b[i]);
        const double li = sol.lambda[i];
        cert.lambda_min = std::min(cert.lambda_min, li);
        if (li != 0.0)
            for (int k = 0; k < n; ++k)
                dual[k] += li * g[k];
    }
    double ca = 0.0, bl = 0.0;
    for (int k = 0; k < n; ++k) {
        cert.dual_residual = std::max(cert.dual_residual, std::abs(dual[k] - c[k]));
        ca += c[k] * sol.a[k];
    }
    for (int i = 0; i < m; ++i)
        bl += b[i] * sol.lambda[i];
    cert.gap = std::abs(bl - ca);
    return cert;
}

/// Maximizes c.a subject to rows*a <= b with free a and b > 0, by running the
/// revised simplex method on the dual (min b.lambda, rows^T lambda = c,
/// lambda >= 0). The basis is an n x n submatrix of constraint rows, so a
/// pivot costs O(m n); phase 1 starts from artificial columns and phase 2
/// prices with Dantzig's rule, switching to Bland's rule to break cycles.
/// resolve() re-solves for a new objective from the previous optimal basis
/// with dual-simplex steps, which is what makes per-pixel sweeps cheap.
class DenseSimplex {
public:
    DenseSimplex(const double* rows, const double* b, int m, int n, int m_capacity = 0)
        : rows_(rows), b_(b), m_(m), n_(n), m_capacity_(std::max(m, m_capacity)) {
        if (n <= 0 || n > 64 || m < n)
            throw argument_error("DenseSimplex: need n in [1,64] and m >= n");
        binv_.resize(static_cast<std::size_t>(n) * n);
        basic_.resize(static_cast<std::size_t>(n));
        art_sign_.assign(static_cast<std::size_t>(n), 1.0);
        in_basis_.assign(static_cast<std::size_t>(m_capacity_), 0);
        xb_.resize(static_cast<std::size_t>(n));
        y_.resize(static_cast<std::size_t>(n));
        d_.resize(static_cast<std::size_t>(n));
        sigma_.resize(static_cast<std::size_t>(n));
    }

    /// Row-generation support: the caller appended rows at the end of the
    /// (stable) storage behind the constructor pointers. Basic indices keep
    /// their meaning, so the cached basis survives the growth.
    void set_row_count(int m) {
        if (m < m_ || m > m_capacity_)
            throw argument_error("DenseSimplex: bad row count");
        m_ = m;
    }

    int row_count() const { return m_; }

    Solution solve(const std::vector<double>& c) {
        check_objective(c);
        if (trivial(c))
            return zero_solution();
        cold_start(c);
        int iters = run_phase1(c);
        iters += run_phase2(c);
        Solution s = extract(c);
        s.iterations = iters;
        return s;
    }

    /// Warm re-solve for a new objective. The cached basis stays dual
    /// feasible for any c (reduced costs do not depend on the objective), so
    /// only dual-simplex steps are needed; a stalled chain retries under
    /// Bland's rule and only then falls back to the two-phase cold solve.
    /// The basis inverse is refactored from scratch first so drift cannot
    /// accumulate along long pixel chains.
    Solution resolve(const std::vector<double>& c) {
        check_objective(c);
        if (trivial(c))
            return zero_solution();
        if (!reusable_ || !refactor())
            return solve(c);
        const double feas_tol = kTol * (1.0 + max_abs(c));
        compute_xb(c);
        int iters = 0;
        const int bland_after = 150;
        const int cap = 1500;
        while (true) {
            const bool bland = iters > bland_after;
            int leave = -1;
            double worst = -feas_tol;
            for (int i = 0; i < n_; ++i) {
                if (xb_[i] >= -feas_tol)
                    continue;
                const bool better = bland ? (leave < 0 || basic_[i] < basic_[leave])
                                          : (xb_[i] < worst);
                if (better) {
                    worst = xb_[i];
                    leave = i;
                }
            }
            if (leave < 0)
                break;
            if (++iters > cap || !dual_pivot(leave))
                return solve(c); // stalled or lost the basis: start over
            compute_xb(c);
        }
        Solution s = extract(c);
        s.iterations = iters;
        s.warm = true;
        return s;
    }

private:
    static constexpr double kTol = 1e-11;
    static constexpr int kBlandAfter = 600;
    static constexpr int kMaxIter = 20000;

    const double* rows_;
    const double* b_;
    int m_, n_, m_capacity_;
    std::vector<double> binv_; // row-major n x n inverse of the basis matrix
    std::vector<int> basic_;   // basic column ids: [0,m) real, [m,m+n) artificial
    std::vector<double> art_sign_;
    std::vector<unsigned char> in_basis_;
    std::vector<double> xb_, y_, d_, sigma_;
    bool reusable_ = false; // basis is artificial-free and dual feasible

    void check_objective(const std::vector<double>& c) const {
        if (static_cast<int>(c.size()) != n_)
            throw argument_error("DenseSimplex: objective size mismatch");
        for (double v : c)
            if (!std::isfinite(v))
                throw argument_error("DenseSimplex: non-finite objective");
    }

    static double max_abs(const std::vector<double>& v) {
        double r = 0.0;
        for (double x : v)
            r = std::max(r, std::abs(x));
        return r;
    }

    bool trivial(const std::vector<double>& c) const { return max_abs(c) == 0.0; }

    Solution zero_solution() const {
        Solution s;
        s.a.assign(static_cast<std::size_t>(n_), 0.0);
        s.lambda.assign(static_cast<std::size_t>(m_), 0.0);
        return s;
    }

    const double* column(int j) const { return rows_ + static_cast<std::size_t>(j) * n_; }

    double cost_phase2(int j) const { return j < m_ ? b_[j] : 0.0; }

    // Rebuild Binv from the basic columns by Gauss-Jordan with partial
    // pivoting; false if the basis went numerically singular.
    bool refactor() {
        const int n = n_;
        std::vector<double> work(static_cast<std::size_t>(n) * 2 * n, 0.0);
        for (int i = 0; i < n; ++i) {
            const int j = basic_[i];
            for (int r = 0; r < n; ++r)
                work[static_cast<std::size_t>(r) * 2 * n + i] =
                    (j < m_) ? column(j)[r]
                             : (r == j - art_base() ? art_sign_[j - art_base()] : 0.0);
            work[static_cast<std::size_t>(i) * 2 * n + n + i] = 1.0;
        }
        for (int col = 0; col < n; ++col) {
            int piv = col;
            for (int r = col + 1; r < n; ++r)
                if (std::abs(work[static_cast<std::size_t>(r) * 2 * n + col]) >
                    std::abs(work[static_cast<std::size_t>(piv) * 2 * n + col]))
                    piv = r;
            if (std::abs(work[static_cast<std::size_t>(piv) * 2 * n + col]) < 1e-12)
                return false;
            if (piv != col)
                for (int k = 0; k < 2 * n; ++k)
                    std::swap(work[static_cast<std::size_t>(piv) * 2 * n + k],
                              work[static_cast<std::size_t>(col) * 2 * n + k]);
            const double inv = 1.0 / work[static_cast<std::size_t>(col) * 2 * n + col];
            for (int k = 0; k < 2 * n; ++k)
                work[static_cast<std::size_t>(col) * 2 * n + k] *= inv;
            for (int r = 0; r < n; ++r) {
                if (r == col)
                    continue;
                const double f = work[static_cast<std::size_t>(r) * 2 * n + col];
                if (f == 0.0)
                    continue;
                for (int k = 0; k < 2 * n; ++k)
                    work[static_cast<std::size_t>(r) * 2 * n + k] -=
                        f * work[static_cast<std::size_t>(col) * 2 * n + k];
            }
        }
        // inverse of the column-basis matrix: rows of the right half map
        // equations to basic coordinates
        for (int r = 0; r < n; ++r)
            for (int k = 0; k < n; ++k)
                binv_[static_cast<std::size_t>(r) * n + k] =
                    work[static_cast<std::size_t>(r) * 2 * n + n + k];
        return true;
    }

    // Artificial columns use ids at a fixed offset so that growing the row
    // count never re-labels a cached basis.
    int art_base() const { return m_capacity_; }

    void cold_start(const std::vector<double>& c) {
        std::fill(binv_.begin(), binv_.end(), 0.0);
        std::fill(in_basis_.begin(), in_basis_.end(), 0);
        for (int i = 0; i < n_; ++i) {
            art_sign_[i] = (c[i] < 0.0) ? -1.0 : 1.0;
            binv_[static_cast<std::size_t>(i) * n_ + i] = art_sign_[i];
            basic_[i] = art_base() + i;
        }
        reusable_ = false;
    }

    void compute_xb(const std::vector<double>& c) {
        for (int i = 0; i < n_; ++i) {
            const double* row = binv_.data() + static_cast<std::size_t>(i) * n_;
            double acc = 0.0;
            for (int k = 0; k < n_; ++k)
                acc += row[k] * c[k];
            xb_[i] = acc;
        }
    }

    // y = Binv^T costB for the given phase costs
    void compute_y(bool phase1) {
        std::fill(y_.begin(), y_.end(), 0.0);
        for (int i = 0; i < n_; ++i) {
            const double cb = phase1 ? (basic_[i] >= m_ ? 1.0 : 0.0) : cost_phase2(basic_[i]);
            if (cb == 0.0)
                continue;
            const double* row = binv_.data() + static_cast<std::size_t>(i) * n_;
            for (int k = 0; k < n_; ++k)
                y_[k] += cb * row[k];
        }
    }

    void column_direction(int j) {
        if (j < m_) {
            const double* g = column(j);
            for (int i = 0; i < n_; ++i) {
                const double* row = binv_.data() + static_cast<std::size_t>(i) * n_;
                double acc = 0.0;
                for (int k = 0; k < n_; ++k)
                    acc += row[k] * g[k];
                d_[i] = acc;
            }
        } else {
            const int e = j - art_base();
            for (int i = 0; i < n_; ++i)
                d_[i] = binv_[static_cast<std::size_t>(i) * n_ + e] * art_sign_[e];
        }
    }

    void pivot(int leave_pos, int enter_j) {
        const double piv = d_[leave_pos];
        double* prow = binv_.data() + static_cast<std::size_t>(leave_pos) * n_;
        const double inv = 1.0 / piv;
        for (int k = 0; k < n_; ++k)
            prow[k] *= inv;
        for (int i = 0; i < n_; ++i) {
            if (i == leave_pos || d_[i] == 0.0)
                continue;
            double* row = binv_.data() + static_cast<std::size_t>(i) * n_;
            const double f = d_[i];
            for (int k = 0; k < n_; ++k)
                row[k] -= f * prow[k];
        }
        const int old = basic_[leave_pos];
        if (old < m_)
            in_basis_[old] = 0;
        basic_[leave_pos] = enter_j;
        if (enter_j < m_)
            in_basis_[enter_j] = 1;
    }

    // One primal simplex phase; returns iterations, throws on cap.
    int primal_phase(const std::vector<double>& c, bool phase1) {
        int iters = 0;
        while (true) {
            if (++iters > kMaxIter)
                throw numerical_error("simplex: iteration cap exceeded");
            compute_y(phase1);
            const double rc_tol = kTol * (phase1 ? 1.0 : 1.0 + bmax());
            const bool bland = iters > kBlandAfter;
            int enter = -1;
            double best = -rc_tol;
            for (int j = 0; j < m_; ++j) {
                if (in_basis_[j])
                    continue;
                const double* g = column(j);
                double dot = 0.0;
                for (int k = 0; k < n_; ++k)
                    dot += y_[k] * g[k];
                const double r = (phase1 ? 0.0 : b_[j]) - dot;
                if (r < best) {
                    enter = j;
                    if (bland)
                        break;
                    best = r;
                }
            }
            if (enter < 0)
                return iters;

            column_direction(enter);
            compute_xb_current(c, phase1);
            int leave = -1;
            double tmin = std::numeric_limits<double>::infinity();
            for (int i = 0; i < n_; ++i) {
                const bool artificial = basic_[i] >= m_;
                if (artificial && !phase1 && std::abs(d_[i]) > kTol && xb_[i] <= kTol) {
                    leave = i; // keep parked artificials at level zero
                    tmin = 0.0;
                    break;
                }
                if (d_[i] > kTol) {
                    const double t = std::max(xb_[i], 0.0) / d_[i];
                    if (t < tmin - kTol || (t < tmin + kTol && (leave < 0 || basic_[i] < basic_[leave]))) {
                        tmin = t;
                        leave = i;
                    }
                }
            }
            if (leave < 0)
                throw numerical_error("simplex: dual problem unbounded (numerical breakdown)");
            pivot(leave, enter);
        }
    }

    double bmax() const {
        double r = 0.0;
        for (int i = 0; i < m_; ++i)
            r = std::max(r, std::abs(b_[i]));
        return r;
    }

    // xb for the phase costs in play (phase 1 solves against c as well)
    void compute_xb_current(const std::vector<double>& c, bool /*phase1*/) { compute_xb(c); }

    int run_phase1(const std::vector<double>& c) {
        const int iters = primal_phase(c, true);
        compute_xb(c);
        double infeas = 0.0;
        for (int i = 0; i < n_; ++i)
            if (basic_[i] >= m_)
                infeas += std::abs(xb_[i]);
        if (infeas > 1e-9 * (1.0 + max_abs(c)))
            throw numerical_error("simplex: LP is unbounded (objective outside the "
                                  "cone of constraint normals); increase the boundary mesh");
        return iters;
    }

    int run_phase2(const std::vector<double>& c) {
        const int iters = primal_phase(c, false);
        reusable_ = true;
        for (int i = 0; i < n_; ++i)
            if (basic_[i] >= m_)
                reusable_ = false; // parked artificial: do not warm start from here
        return iters;
    }

    // Dual simplex step: basic value xb_[leave] < 0 leaves, the entering
    // column is chosen by the dual ratio test among alpha_j < 0. The
    // polytopes here are massively degenerate (whole edges of the window can
    // be tight at once), so ratio ties are broken toward the largest pivot
    // magnitude, which is what keeps the walk from stalling.
    bool dual_pivot(int leave) {
        const double* lrow = binv_.data() + static_cast<std::size_t>(leave) * n_;
        std::copy(lrow, lrow + n_, sigma_.begin());
        compute_y(false);
        int enter = -1;
        double best = std::numeric_limits<double>::infinity();
        double best_alpha = 0.0;
        for (int j = 0; j < m_; ++j) {
            if (in_basis_[j])
                continue;
            const double* g = column(j);
            double alpha = 0.0, dot = 0.0;
            for (int k = 0; k < n_; ++k) {
                alpha += sigma_[k] * g[k];
                dot += y_[k] * g[k];
            }
            if (alpha < -kTol) {
                const double r = std::max(b_[j] - dot, 0.0);
                const double ratio = r / (-alpha);
                if (ratio < best - kTol ||
                    (ratio < best + kTol && -alpha > -best_alpha)) {
                    best = std::min(ratio, best);
                    best_alpha = alpha;
                    enter = j;
                }
            }
        }
        if (enter < 0)
            return false;
        column_direction(enter);
        if (std::abs(d_[leave]) <= kTol)
            return false;
        pivot(leave, enter);
        return true;
    }

    Solution extract(const std::vector<double>& c) {
        compute_xb(c);
        compute_y(false);
        Solution s;
        s.a.assign(y_.begin(), y_.end());
        s.lambda.assign(static_cast<std::size_t>(m_), 0.0);
        double value = 0.0;
        for (int i = 0; i < n_; ++i) {
            if (basic_[i] < m_) {
                const double v = std::max(xb_[i], 0.0);
                s.lambda[basic_[i]] = v;
                value += b_[basic_[i]] * v;
            }
        }
        s.value = value;
        return s;
    }
};

/// One-shot interface used by tests and callers without warm-start needs.
inline Solution simplex_solve(const std::vector<double>& c, const std::vector<double>& rows,
                              const std::vector<double>& rhs) {
    const int n = static_cast<int>(c.size());
    if (n == 0 || rows.size() % c.size() != 0)
        throw argument_error("simplex_solve: constraint matrix shape mismatch");
    const int m = static_cast<int>(rows.size() / c.size());
    if (rhs.size() != static_cast<std::size_t>(m))
        throw argument_error("simplex_solve: rhs size mismatch");
    for (double v : rhs)
        if (!(v > 0.0))
            throw argument_error("simplex_solve: rhs must be strictly positive");
    DenseSimplex solver(rows.data(), rhs.data(), m, n);
    return solver.solve(c);
}

} // namespace nldiff::lp
