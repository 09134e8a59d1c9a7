#pragma once

#include <cmath>
#include <vector>

#include "nldiff/errors.hpp"

namespace nldiff {

/// Tridiagonal matrix; lower/upper have length n-1, diag length n.
/// Callers that solve with it rely on strict diagonal dominance.
struct Tridiagonal {
    std::vector<double> lower;
    std::vector<double> diag;
    std::vector<double> upper;

    std::size_t size() const { return diag.size(); }

    bool strictly_dominant() const {
        const std::size_t n = diag.size();
        if (n == 0 || lower.size() != n - 1 || upper.size() != n - 1)
            return false;
        for (std::size_t i = 0; i < n; ++i) {
            const double lo = (i > 0) ? std::abs(lower[i - 1]) : 0.0;
            const double up = (i + 1 < n) ? std::abs(upper[i]) : 0.0;
            if (!(std::abs(diag[i]) > lo + up))
                return false;
        }
        return true;
    }

    std::vector<double> multiply(const std::vector<double>& x) const {
        const std::size_t n = diag.size();
        std::vector<double> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            double v = diag[i] * x[i];
            if (i > 0)
                v += lower[i - 1] * x[i - 1];
            if (i + 1 < n)
                v += upper[i] * x[i + 1];
            y[i] = v;
        }
        return y;
    }
};

/// Thomas algorithm without pivoting; requires strict diagonal dominance and
/// refuses to run without it.
inline std::vector<double> thomas_solve(const Tridiagonal& m, const std::vector<double>& rhs) {
    const std::size_t n = m.size();
    if (rhs.size() != n)
        throw argument_error("thomas_solve: rhs size mismatch");
    if (!m.strictly_dominant())
        throw numerical_error("thomas_solve: matrix is not strictly diagonally dominant");
    if (n == 1)
        return {rhs[0] / m.diag[0]};

    std::vector<double> c(n - 1), d(n), x(n);
    c[0] = m.upper.empty() ? 0.0 : m.upper[0] / m.diag[0];
    d[0] = rhs[0] / m.diag[0];
    for (std::size_t i = 1; i < n; ++i) {
        const double denom = m.diag[i] - m.lower[i - 1] * c[i - 1];
        if (i + 1 < n)
            c[i] = m.upper[i] / denom;
        d[i] = (rhs[i] - m.lower[i - 1] * d[i - 1]) / denom;
    }
    x[n - 1] = d[n - 1];
    for (std::size_t i = n - 1; i-- > 0;)
        x[i] = d[i] - c[i] * x[i + 1];
    return x;
}

} // namespace nldiff
