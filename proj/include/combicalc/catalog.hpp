#pragma once

#include <cmath>
#include <vector>

#include "combicalc/mesh.hpp"
#include "combicalc/refine.hpp"
#include "combicalc/types.hpp"

namespace combicalc {

/**
 * Small reference surfaces. They double as documentation of the mesh
 * encoding: faces are counter-clockwise where geometry exists, boundary
 * edges are listed explicitly.
 */

/// Disc with one vertex, one loop edge around the rim, one face.
inline CombSurface disc_mesh(bool geometry = true) {
    CombSurface s;
    s.vertices.push_back({geometry ? std::optional<Vec2>(Vec2{1.0, 0.0}) : std::nullopt});
    CombSurface::Edge rim{0, 0, {}};
    if (geometry) {
        for (int i = 0; i <= 8; ++i) {
            double t = 2.0 * 3.141592653589793 * i / 8.0;
            rim.poly.push_back({std::cos(t), std::sin(t)});
        }
        rim.poly.front() = rim.poly.back() = {1.0, 0.0};
    }
    s.edges.push_back(rim);
    s.faces.push_back({{DirectedEdge{0, true}}});
    s.boundary_edges = {0};
    return s;
}

/**
 * Annulus with two vertices on each boundary circle and two spokes:
 * 4 vertices, 6 edges, 2 faces. Edges 0/1 are the inner arcs (stored
 * counter-clockwise), 2/3 the outer arcs (stored clockwise), 4/5 the spokes.
 * The rates (1 on edge 0, -1 on edge 2, 0 elsewhere) give the classic
 * whirl-free field that is not a tilt field.
 */
inline CombSurface annulus_mesh(bool geometry = true) {
    const double pi = 3.141592653589793;
    // interior arc samples; endpoints snapped to the exact vertex coordinates
    auto arc = [&](double radius, double from, double to, Vec2 a, Vec2 b) {
        std::vector<Vec2> pts{a};
        for (int i = 1; i < 4; ++i) {
            double t = from + (to - from) * i / 4.0;
            pts.push_back({radius * std::cos(t), radius * std::sin(t)});
        }
        pts.push_back(b);
        return pts;
    };
    CombSurface s;
    auto coord = [&](double x, double y) {
        return geometry ? std::optional<Vec2>(Vec2{x, y}) : std::nullopt;
    };
    s.vertices = {{coord(1, 0)}, {coord(-1, 0)}, {coord(2, 0)}, {coord(-2, 0)}};
    std::vector<Vec2> none;
    s.edges = {
        {0, 1, geometry ? arc(1.0, 0.0, pi, {1, 0}, {-1, 0}) : none},       // 0: inner upper
        {1, 0, geometry ? arc(1.0, pi, 2.0 * pi, {-1, 0}, {1, 0}) : none},  // 1: inner lower
        {3, 2, geometry ? arc(2.0, pi, 0.0, {-2, 0}, {2, 0}) : none},       // 2: outer upper
        {2, 3, geometry ? arc(2.0, 0.0, -pi, {2, 0}, {-2, 0}) : none},      // 3: outer lower
        {0, 2, {}},                                                         // 4: right spoke
        {1, 3, {}},                                                         // 5: left spoke
    };
    s.faces = {
        {{{2, false}, {5, false}, {0, false}, {4, true}}},  // upper half
        {{{3, false}, {4, false}, {1, false}, {5, true}}},  // lower half
    };
    s.boundary_edges = {0, 1, 2, 3};
    return s;
}

/// The whirl-free, non-conservative field on annulus_mesh (canonical).
inline CVF annulus_paper_field(const CombSurface& annulus) {
    CVF f = zero_cvf(annulus);
    f.entries[0].value = 1.0;
    f.entries[2].value = -1.0;
    return f;
}

/// Closed sphere-like surface: two square faces glued along all four edges.
inline CombSurface pillow_mesh() {
    CombSurface s;
    s.vertices.resize(4);
    s.edges = {{0, 1, {}}, {1, 2, {}}, {2, 3, {}}, {3, 0, {}}};
    s.faces = {
        {{{0, true}, {1, true}, {2, true}, {3, true}}},
        {{{3, false}, {2, false}, {1, false}, {0, false}}},
    };
    return s;
}

/// Moebius band: a two-face rectangle with a flipped seam. Not orientable.
inline CombSurface mobius_mesh() {
    CombSurface s;
    s.vertices.resize(4);  // 0 = a, 1 = b, 2 = c, 3 = d
    s.edges = {
        {0, 2, {}},  // 0: bottom left
        {2, 1, {}},  // 1: bottom right
        {1, 3, {}},  // 2: top left
        {3, 0, {}},  // 3: top right
        {0, 1, {}},  // 4: glued seam
        {2, 3, {}},  // 5: middle rung
    };
    s.faces = {
        {{{0, true}, {5, true}, {2, false}, {4, false}}},
        {{{1, true}, {4, false}, {3, false}, {5, false}}},
    };
    s.boundary_edges = {0, 1, 2, 3};
    return s;
}

/// Disc cut into two faces by a middle chord: 2 vertices, 3 parallel edges.
inline CombSurface theta_mesh() {
    CombSurface s;
    s.vertices.resize(2);
    s.edges = {{0, 1, {}}, {0, 1, {}}, {0, 1, {}}};
    s.faces = {
        {{{0, true}, {1, false}}},
        {{{1, true}, {2, false}}},
    };
    s.boundary_edges = {0, 2};
    return s;
}

/// Two triangles sharing a single vertex (vertex 0).
inline CombSurface two_triangles_mesh() {
    CombSurface s;
    s.vertices.resize(5);
    s.edges = {{0, 1, {}}, {1, 2, {}}, {2, 0, {}}, {0, 3, {}}, {3, 4, {}}, {4, 0, {}}};
    s.faces = {
        {{{0, true}, {1, true}, {2, true}}},
        {{{3, true}, {4, true}, {5, true}}},
    };
    s.boundary_edges = {0, 1, 2, 3, 4, 5};
    return s;
}

inline VHRegion unit_square_region() { return {1.0, {0.0, 0.0}, {{0, 0}}}; }

/// Three unit cells in an L.
inline VHRegion lshape_region() { return {1.0, {0.0, 0.0}, {{0, 0}, {1, 0}, {0, 1}}}; }

/// 3x3 block of unit cells minus the center, centered on the origin.
inline VHRegion square_with_hole_region() {
    VHRegion r{1.0, {-1.5, -1.5}, {}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (!(i == 1 && j == 1)) r.cells.push_back({i, j});
    return r;
}

/// A (2k+1) x 3 slab with k single-cell holes along the middle row;
/// k + 1 boundary components.
inline VHRegion holes_region(int k) {
    VHRegion r{1.0, {0.0, 0.0}, {}};
    for (int i = 0; i < 2 * k + 1; ++i)
        for (int j = 0; j < 3; ++j)
            if (!(j == 1 && i % 2 == 1)) r.cells.push_back({i, j});
    return r;
}

}  // namespace combicalc
