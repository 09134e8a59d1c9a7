#pragma once

#include <cmath>
#include <vector>

#include "nldiff/core.hpp"

namespace nldiff {

// Exact integral of |p + (q-p)t| over t in [0,1].
inline double abs_linear_integral(double p, double q) {
    if (p * q >= 0.0)
        return 0.5 * (std::abs(p) + std::abs(q));
    // sign change: two triangles either side of the root
    return 0.5 * (p * p + q * q) / (std::abs(p) + std::abs(q));
}

/// Exact anisotropic TV of the bilinear interpolant on a unit cell, as a
/// function of the four corner values (u00 u10 bottom, u01 u11 top).
/// dP/dx is linear in y between (u10-u00) and (u11-u01); dP/dy linear in x.
inline double cell_tv(double u00, double u10, double u01, double u11) {
    return abs_linear_integral(u10 - u00, u11 - u01) +
           abs_linear_integral(u01 - u00, u11 - u10);
}

/// Per-cell TV of a padded image; cell (i,j) has corners at nodes
/// (i,j),(i+1,j),(i,j+1),(i+1,j+1). Grid is (width-1) x (height-1).
inline Image2D cell_tv_field(const Image2D& padded) {
    Image2D cells(padded.width - 1, padded.height - 1);
    for (int y = 0; y + 1 < padded.height; ++y)
        for (int x = 0; x + 1 < padded.width; ++x)
            cells.at(x, y) =
                cell_tv(padded.at(x, y), padded.at(x + 1, y),
                        padded.at(x, y + 1), padded.at(x + 1, y + 1));
    return cells;
}

/// Denominator field D[x] = sum of cell TVs over the 2*q1 x 2*q2 cells of the
/// window centered at each original pixel. `padded` must be the image mirror-
/// padded by (q1, q2); the result has the original (unpadded) dimensions.
/// Separable windowed sums; equality with brute-force summation is a test.
inline Image2D tv_field(const Image2D& padded, Window2D w) {
    const int width = padded.width - 2 * w.q1;
    const int height = padded.height - 2 * w.q2;
    if (width <= 0 || height <= 0)
        throw argument_error("tv_field: image is smaller than its padding");
    w.validate(width, height);

    const Image2D cells = cell_tv_field(padded);

    // horizontal windowed sums: hsum(x,y) = sum of cells[x .. x+2q1-1][y]
    const int hw = 2 * w.q1;
    Image2D hsum(cells.width - hw + 1, cells.height);
    for (int y = 0; y < cells.height; ++y) {
        std::vector<double> prefix(static_cast<std::size_t>(cells.width) + 1, 0.0);
        for (int x = 0; x < cells.width; ++x)
            prefix[x + 1] = prefix[x] + cells.at(x, y);
        for (int x = 0; x < hsum.width; ++x)
            hsum.at(x, y) = prefix[x + hw] - prefix[x];
    }

    // vertical windowed sums of the horizontal sums
    const int vw = 2 * w.q2;
    Image2D out(width, height);
    for (int x = 0; x < hsum.width; ++x) {
        std::vector<double> prefix(static_cast<std::size_t>(hsum.height) + 1, 0.0);
        for (int y = 0; y < hsum.height; ++y)
            prefix[y + 1] = prefix[y] + hsum.at(x, y);
        for (int y = 0; y < out.height; ++y)
            out.at(x, y) = prefix[y + vw] - prefix[y];
    }
    return out;
}

} // namespace nldiff
