#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "combicalc/calculus.hpp"
#include "combicalc/fields.hpp"
#include "combicalc/mesh.hpp"
#include "combicalc/parallel.hpp"
#include "combicalc/quadrature.hpp"
#include "combicalc/smooth.hpp"

namespace combicalc {

/// A union of closed axis-aligned unit cells on a base grid: cell (i, j)
/// covers origin + [i, i+1] x [j, j+1] scaled by h0.
struct VHRegion {
    double h0 = 1.0;
    Vec2 origin{0.0, 0.0};
    std::vector<std::pair<int, int>> cells;
};

inline bool region_connected(const VHRegion& r) {
    if (r.cells.empty()) return true;
    std::set<std::pair<int, int>> cells(r.cells.begin(), r.cells.end());
    std::set<std::pair<int, int>> seen;
    std::queue<std::pair<int, int>> q;
    q.push(*cells.begin());
    seen.insert(*cells.begin());
    while (!q.empty()) {
        auto [i, j] = q.front();
        q.pop();
        const std::pair<int, int> nbrs[4] = {{i + 1, j}, {i - 1, j}, {i, j + 1}, {i, j - 1}};
        for (auto n : nbrs)
            if (cells.count(n) && !seen.count(n)) {
                seen.insert(n);
                q.push(n);
            }
    }
    return seen.size() == cells.size();
}

/**
 * Grid mesh of a V/H region at refinement level n: every base cell is split
 * into 2^n x 2^n squares with straight edges, vertex coordinates attached.
 * Meshes at successive levels nest as point sets. Stored edge directions
 * point in +x / +y, faces are counter-clockwise.
 */
inline CombSurface grid_mesh(const VHRegion& r, unsigned level) {
    if (r.cells.empty()) throw std::invalid_argument("grid_mesh: empty region");
    if (!region_connected(r)) throw std::invalid_argument("grid_mesh: region is not connected");
    const long long k = 1LL << level;
    const double h = r.h0 / static_cast<double>(k);

    std::set<std::pair<long long, long long>> sub;  // fine-grid cells
    for (auto [i, j] : r.cells)
        for (long long a = 0; a < k; ++a)
            for (long long b = 0; b < k; ++b)
                sub.insert({static_cast<long long>(i) * k + a, static_cast<long long>(j) * k + b});

    std::map<std::pair<long long, long long>, VertexId> vid;
    for (auto [I, J] : sub) {
        vid.insert({{I, J}, 0});
        vid.insert({{I + 1, J}, 0});
        vid.insert({{I, J + 1}, 0});
        vid.insert({{I + 1, J + 1}, 0});
    }
    CombSurface s;
    for (auto& [key, id] : vid) {
        id = static_cast<VertexId>(s.vertices.size());
        s.vertices.push_back(
            {Vec2{r.origin.x + h * static_cast<double>(key.first),
                  r.origin.y + h * static_cast<double>(key.second)}});
    }

    // Edge key: (I, J, axis) with axis 0 horizontal to (I+1,J), 1 vertical to (I,J+1).
    std::map<std::tuple<long long, long long, int>, EdgeId> eid;
    auto has = [&](long long I, long long J) { return sub.count({I, J}) != 0; };
    for (auto [I, J] : sub) {
        eid.insert({{I, J, 0}, 0});
        eid.insert({{I, J + 1, 0}, 0});
        eid.insert({{I, J, 1}, 0});
        eid.insert({{I + 1, J, 1}, 0});
    }
    for (auto& [key, id] : eid) {
        auto [I, J, axis] = key;
        id = static_cast<EdgeId>(s.edges.size());
        VertexId src = vid.at({I, J});
        VertexId dst = axis == 0 ? vid.at({I + 1, J}) : vid.at({I, J + 1});
        s.edges.push_back({src, dst, {}});
        int adjacent = axis == 0 ? has(I, J) + has(I, J - 1) : has(I, J) + has(I - 1, J);
        if (adjacent == 1) s.boundary_edges.push_back(id);
    }
    std::sort(s.boundary_edges.begin(), s.boundary_edges.end());

    for (auto [I, J] : sub) {
        CombSurface::Face f;
        f.cycle = {{eid.at({I, J, 0}), true},
                   {eid.at({I + 1, J, 1}), true},
                   {eid.at({I, J + 1, 0}), false},
                   {eid.at({I, J, 1}), false}};
        s.faces.push_back(std::move(f));
    }
    return s;
}

/**
 * Discretize a smooth field onto a mesh with geometry: every edge carries
 * the quadrature approximation of the work integral along its stored
 * direction (the canonical representative of the induced combinatorial
 * field).
 */
template <typename F>
CVF discretize(const F& field, const CombSurface& s, const Quadrature& q) {
    if (!s.has_geometry()) throw std::invalid_argument("discretize: mesh has no geometry");
    CVF out = zero_cvf(s);
    parallel_for(s.edge_count(), [&](std::size_t e) {
        double v = line_integral_polyline(q, field, s.edge_points(static_cast<EdgeId>(e)));
        out.entries[e] = {true, v};
    });
    for (const CVF::Entry& e : out.entries)
        if (!std::isfinite(e.value))
            throw std::runtime_error("discretize: quadrature produced a non-finite value");
    return out;
}

struct ConvergenceRow {
    unsigned level = 0;
    double h = 0.0;
    double value = 0.0;   // whirl / area
    double target = 0.0;  // scurl at the point
    double error = 0.0;
};

/**
 * Circulation-to-curl convergence table: squares of side h0 * 2^-n centered
 * at p, each meshed as a single face, discretized, and compared against the
 * analytic scalar curl at p.
 */
inline std::vector<ConvergenceRow> whirl_curl_convergence(const SmoothField& field, Vec2 p,
                                                          double h0,
                                                          const std::vector<unsigned>& levels,
                                                          const Quadrature& q) {
    std::vector<ConvergenceRow> rows;
    double target = field.scurl(p.x, p.y);
    if (!std::isfinite(target))
        throw std::invalid_argument("whirl_curl_convergence: scalar curl not finite at the point");
    for (unsigned n : levels) {
        double h = h0 / static_cast<double>(1ULL << n);
        VHRegion r{h, {p.x - h / 2.0, p.y - h / 2.0}, {{0, 0}}};
        CombSurface s = grid_mesh(r, 0);
        CVF fg = discretize(field.eval(), s, q);
        Orientation o = std::get<Orientation>(orient(s));
        FSF w = whirl(s, o, fg);
        double value = w.values[0] / (h * h);
        rows.push_back({n, h, value, target, value - target});
    }
    return rows;
}

struct Rect {
    Vec2 lo, hi;
};

struct MvtCheck {
    double circulation_over_area = 0.0;
    double lo = 0.0, hi = 0.0;  // sampled scurl range, widened
    bool contained = false;
};

/**
 * Mean-value containment for single-component fields on an axis-aligned
 * rectangle: circulation/area must land in the sampled scurl range widened
 * by the largest adjacent-sample jump (a discrete modulus bound).
 */
inline MvtCheck mvt_interval_check(const SmoothField& field, const Rect& rect, unsigned k,
                                   const Quadrature& q) {
    if (k < 2) throw std::invalid_argument("mvt_interval_check: need at least a 2x2 sample grid");
    if (!(rect.hi.x > rect.lo.x && rect.hi.y > rect.lo.y))
        throw std::invalid_argument("mvt_interval_check: empty rectangle");

    bool m_zero = true, n_zero = true;
    for (unsigned i = 0; i < k && (m_zero || n_zero); ++i)
        for (unsigned j = 0; j < k; ++j) {
            double x = rect.lo.x + (rect.hi.x - rect.lo.x) * i / (k - 1);
            double y = rect.lo.y + (rect.hi.y - rect.lo.y) * j / (k - 1);
            if (field.M(x, y) != 0.0) m_zero = false;
            if (field.N(x, y) != 0.0) n_zero = false;
        }
    if (!m_zero && !n_zero)
        throw std::invalid_argument("mvt_interval_check: one field component must vanish");

    FieldEval f = field.eval();
    Vec2 a = rect.lo, b{rect.hi.x, rect.lo.y}, c = rect.hi, d{rect.lo.x, rect.hi.y};
    double circulation = line_integral_segment(q, f, a, b) + line_integral_segment(q, f, b, c) +
                         line_integral_segment(q, f, c, d) + line_integral_segment(q, f, d, a);
    double area = (rect.hi.x - rect.lo.x) * (rect.hi.y - rect.lo.y);

    std::vector<std::vector<double>> sc(k, std::vector<double>(k));
    double lo = 0.0, hi = 0.0;
    for (unsigned i = 0; i < k; ++i)
        for (unsigned j = 0; j < k; ++j) {
            double x = rect.lo.x + (rect.hi.x - rect.lo.x) * i / (k - 1);
            double y = rect.lo.y + (rect.hi.y - rect.lo.y) * j / (k - 1);
            sc[i][j] = field.scurl(x, y);
            if (i == 0 && j == 0) lo = hi = sc[i][j];
            lo = std::min(lo, sc[i][j]);
            hi = std::max(hi, sc[i][j]);
        }
    double modulus = 0.0;
    for (unsigned i = 0; i < k; ++i)
        for (unsigned j = 0; j + 1 < k; ++j) {
            modulus = std::max(modulus, std::abs(sc[i][j + 1] - sc[i][j]));
            modulus = std::max(modulus, std::abs(sc[j + 1][i] - sc[j][i]));
        }

    MvtCheck out;
    out.circulation_over_area = circulation / area;
    out.lo = lo - modulus;
    out.hi = hi + modulus;
    out.contained = out.lo <= out.circulation_over_area && out.circulation_over_area <= out.hi;
    return out;
}

struct GreenRow {
    unsigned level = 0;
    double h = 0.0;
    double lhs = 0.0;            // boundary integral of the discretized field
    double rhs = 0.0;            // midpoint Riemann sum of scurl
    double riemann_residual = 0.0;
    double comb_residual = 0.0;  // discrete Green identity residual
    double scale = 0.0;          // sum of |F_G(e)|, the bound scale
};

/**
 * One refinement level of the Green identity check on a V/H region. The
 * combinatorial residual (boundary integral minus total whirl of the
 * discretized field) is rounding-level at every level; the Riemann residual
 * (boundary integral minus midpoint scurl sum) decays with refinement.
 */
inline GreenRow green_residual(const VHRegion& r, const SmoothField& field, unsigned level,
                               const Quadrature& q) {
    CombSurface s = grid_mesh(r, level);
    Orientation o = std::get<Orientation>(orient(s));
    CVF fg = discretize(field.eval(), s, q);

    GreenRow row;
    row.level = level;
    row.h = r.h0 / static_cast<double>(1ULL << level);
    row.scale = cvf_abs_sum(fg);
    row.comb_residual = check_whirl_theorem(s, o, fg);
    row.lhs = detail::integrate_counts(fg, detail::induced_boundary_counts(s, o));

    double rhs = 0.0;
    for (FaceId f = 0; f < s.face_count(); ++f) {
        std::vector<Vec2> poly = detail::face_polygon(s, f);
        double area = std::abs(detail::polygon_signed_area(poly));
        Vec2 center{0.0, 0.0};
        for (const Vec2& p : poly) center = center + p;
        center = (1.0 / static_cast<double>(poly.size())) * center;
        rhs += field.scurl(center.x, center.y) * area;
    }
    row.rhs = rhs;
    row.riemann_residual = std::abs(row.lhs - row.rhs);
    return row;
}

}  // namespace combicalc
