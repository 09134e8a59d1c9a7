#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "nldiff/core.hpp"
#include "nldiff/harmonic.hpp"

namespace nldiff {

struct BoundaryPoint {
    double x = 0.0, y = 0.0;   // window-centered position on the boundary
    double nx = 0.0, ny = 0.0; // outward normal
};

struct NodeOffset {
    int dx = 0, dy = 0; // lattice offset from the window center
};

/// Precomputed per-window quantities for the local-variation LP:
///  - mesh: L boundary points with outward normals (uniform per edge),
///  - grad:  gradient of every mode at every mesh point,
///  - constraints: the 4L rows (+-gx +- gy) with unit right-hand side,
///  - nodes/H: boundary lattice nodes and coefficients turning their values
///    into the boundary integral of u * (grad f . n) against each mode.
struct BoundaryTables {
    Window2D window{};
    HarmonicBasis basis;
    int mesh_size = 0;                 // effective L
    std::vector<BoundaryPoint> mesh;
    std::vector<double> grad;          // mesh_size x modes x 2
    std::vector<double> constraints;   // (4*mesh_size) x modes, row-major
    std::vector<NodeOffset> nodes;     // 4*(q1+q2) lattice offsets on the boundary
    std::vector<double> H;             // nodes x modes, row per node

    int mode_count() const { return basis.mode_count(); }
    int node_count() const { return static_cast<int>(nodes.size()); }
    int rows() const { return 4 * mesh_size; }
    const double* row(int r) const { return constraints.data() + static_cast<std::size_t>(r) * mode_count(); }
};

namespace detail {

// 8-point Gauss-Legendre on [0,1].
inline constexpr std::array<double, 8> kGl8X = {
    0.019855071751231884, 0.101666761293186630, 0.237233795041835507, 0.408282678752175097,
    0.591717321247824903, 0.762766204958164493, 0.898333238706813370, 0.980144928248768116};
inline constexpr std::array<double, 8> kGl8W = {
    0.050614268145188130, 0.111190517226687235, 0.156853322938943644, 0.181341891689180991,
    0.181341891689180991, 0.156853322938943644, 0.111190517226687235, 0.050614268145188130};

struct EdgeDesc {
    // p(t) = origin + t*dir, t in [0, len]; outward normal fixed per edge.
    double ox, oy, dx, dy, nx, ny;
    int len; // in pixels
};

inline std::vector<EdgeDesc> window_edges(Window2D w) {
    const double q1 = w.q1, q2 = w.q2;
    return {
        {-q1, -q2, 1.0, 0.0, 0.0, -1.0, 2 * w.q1}, // bottom, left to right
        {q1, -q2, 0.0, 1.0, 1.0, 0.0, 2 * w.q2},   // right, bottom to top
        {q1, q2, -1.0, 0.0, 0.0, 1.0, 2 * w.q1},   // top, right to left
        {-q1, q2, 0.0, -1.0, -1.0, 0.0, 2 * w.q2}, // left, top to bottom
    };
}

} // namespace detail

/// Lattice nodes on the window boundary, counterclockwise from (-q1,-q2).
inline std::vector<NodeOffset> boundary_nodes(Window2D w) {
    std::vector<NodeOffset> nodes;
    nodes.reserve(static_cast<std::size_t>(4 * (w.q1 + w.q2)));
    for (int x = -w.q1; x < w.q1; ++x)
        nodes.push_back({x, -w.q2});
    for (int y = -w.q2; y < w.q2; ++y)
        nodes.push_back({w.q1, y});
    for (int x = w.q1; x > -w.q1; --x)
        nodes.push_back({x, w.q2});
    for (int y = w.q2; y > -w.q2; --y)
        nodes.push_back({-w.q1, y});
    return nodes;
}

/// Builds the mesh, gradient samples, LP constraint rows and H coefficients.
/// The requested L is rounded to a whole number of intervals per unit pixel
/// edge (uniform spacing along the whole boundary); u on the boundary is the
/// piecewise-linear interpolant of the lattice node values, integrated with
/// Gauss-Legendre quadrature on every mesh interval.
inline BoundaryTables boundary_tables(const HarmonicBasis& basis, Window2D w, int L) {
    if (basis.window.q1 != w.q1 || basis.window.q2 != w.q2)
        throw argument_error("boundary_tables: basis was built for a different window");
    const int perimeter = 4 * (w.q1 + w.q2);
    const int n_nodes = perimeter; // one lattice node per unit of boundary length
    if (L < 4 * n_nodes)
        throw argument_error("boundary_tables: L must be at least 4x the boundary node count");
    const int per_px = static_cast<int>(std::llround(static_cast<double>(L) / perimeter));

    BoundaryTables t;
    t.window = w;
    t.basis = basis;
    t.mesh_size = per_px * perimeter;
    t.nodes = boundary_nodes(w);

    const int n_modes = basis.mode_count();
    t.mesh.reserve(static_cast<std::size_t>(t.mesh_size));
    t.grad.assign(static_cast<std::size_t>(t.mesh_size) * n_modes * 2, 0.0);
    t.constraints.assign(static_cast<std::size_t>(4 * t.mesh_size) * n_modes, 0.0);
    t.H.assign(static_cast<std::size_t>(n_modes) * n_nodes, 0.0);

    // node lookup by lattice offset
    auto node_index = [&](int dx, int dy) {
        for (std::size_t i = 0; i < t.nodes.size(); ++i)
            if (t.nodes[i].dx == dx && t.nodes[i].dy == dy)
                return static_cast<int>(i);
        throw argument_error("boundary_tables: internal node lookup failure");
    };

    const auto edges = detail::window_edges(w);
    int mesh_cursor = 0;
    for (const auto& e : edges) {
        for (int seg = 0; seg < e.len; ++seg) {
            // segment between consecutive lattice nodes along this edge
            const double s0 = static_cast<double>(seg);
            const int ja = node_index(static_cast<int>(std::lround(e.ox + e.dx * s0)),
                                      static_cast<int>(std::lround(e.oy + e.dy * s0)));
            const int jb = node_index(static_cast<int>(std::lround(e.ox + e.dx * (s0 + 1.0))),
                                      static_cast<int>(std::lround(e.oy + e.dy * (s0 + 1.0))));
            for (int m = 0; m < per_px; ++m) {
                const double t0 = s0 + static_cast<double>(m) / per_px;
                // mesh point at the interval start (edge endpoints are not duplicated)
                BoundaryPoint bp;
                bp.x = e.ox + e.dx * t0;
                bp.y = e.oy + e.dy * t0;
                bp.nx = e.nx;
                bp.ny = e.ny;
                t.mesh.push_back(bp);

                for (int h = 0; h < n_modes; ++h) {
                    double gx, gy;
                    basis.modes[h].gradient(bp.x, bp.y, gx, gy);
                    t.grad[(static_cast<std::size_t>(mesh_cursor) * n_modes + h) * 2 + 0] = gx;
                    t.grad[(static_cast<std::size_t>(mesh_cursor) * n_modes + h) * 2 + 1] = gy;
                    double* base = t.constraints.data() +
                                   static_cast<std::size_t>(4 * mesh_cursor) * n_modes + h;
                    base[0] = gx + gy;
                    base[static_cast<std::size_t>(n_modes)] = gx - gy;
                    base[2 * static_cast<std::size_t>(n_modes)] = -gx + gy;
                    base[3 * static_cast<std::size_t>(n_modes)] = -gx - gy;
                }

                // quadrature over [t0, t0 + 1/per_px] against the two hats
                for (int gq = 0; gq < 8; ++gq) {
                    const double tq = t0 + detail::kGl8X[gq] / per_px;
                    const double wq = detail::kGl8W[gq] / per_px;
                    const double px = e.ox + e.dx * tq;
                    const double py = e.oy + e.dy * tq;
                    const double frac = tq - s0; // position within the segment
                    for (int h = 0; h < n_modes; ++h) {
                        double gx, gy;
                        basis.modes[h].gradient(px, py, gx, gy);
                        const double flux = gx * e.nx + gy * e.ny;
                        t.H[static_cast<std::size_t>(ja) * n_modes + h] += wq * (1.0 - frac) * flux;
                        t.H[static_cast<std::size_t>(jb) * n_modes + h] += wq * frac * flux;
                    }
                }
                ++mesh_cursor;
            }
        }
    }
    return t;
}

/// Objective coefficients c_h = sum_j u(x + node_j) * H[j][h] for the window
/// centered at pixel (cx, cy) of a padded image (margins q1, q2 included).
inline void lp_objective(const BoundaryTables& t, const Image2D& padded, int cx, int cy,
                         std::vector<double>& c) {
    const int n_modes = t.mode_count();
    const int n_nodes = t.node_count();
    c.assign(static_cast<std::size_t>(n_modes), 0.0);
    for (int j = 0; j < n_nodes; ++j) {
        const double u = padded.at(cx + t.nodes[j].dx, cy + t.nodes[j].dy);
        const double* hrow = t.H.data() + static_cast<std::size_t>(j) * n_modes;
        for (int h = 0; h < n_modes; ++h)
            c[static_cast<std::size_t>(h)] += u * hrow[h];
    }
}

} // namespace nldiff
