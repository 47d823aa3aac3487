#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "combicalc/types.hpp"

namespace combicalc {

/**
 * A combinatorial surface: a finite graph of vertices and edges together
 * with disc-like faces given as directed boundary cycles. Geometry (planar
 * vertex coordinates and optional edge polylines) is optional; all purely
 * combinatorial operations work without it.
 *
 * Immutable by convention: operations never mutate a surface, they return
 * new ones. Safe to share across threads.
 */
struct CombSurface {
    struct Vertex {
        std::optional<Vec2> xy;
    };
    struct Edge {
        VertexId src = 0;
        VertexId dst = 0;
        // Optional polyline from the source coordinate to the target
        // coordinate. Empty means a straight segment (when geometry exists).
        std::vector<Vec2> poly;
    };
    struct Face {
        std::vector<DirectedEdge> cycle;
    };

    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
    std::vector<Face> faces;
    std::vector<EdgeId> boundary_edges;  // sorted, unique

    std::size_t vertex_count() const { return vertices.size(); }
    std::size_t edge_count() const { return edges.size(); }
    std::size_t face_count() const { return faces.size(); }

    VertexId source(DirectedEdge d) const {
        const Edge& e = edges[d.edge];
        return d.forward ? e.src : e.dst;
    }
    VertexId sink(DirectedEdge d) const {
        const Edge& e = edges[d.edge];
        return d.forward ? e.dst : e.src;
    }

    bool is_boundary_edge(EdgeId e) const {
        return std::binary_search(boundary_edges.begin(), boundary_edges.end(), e);
    }

    bool has_geometry() const {
        if (vertices.empty()) return false;
        for (const Vertex& v : vertices)
            if (!v.xy) return false;
        return true;
    }

    /// Effective polyline of an edge, endpoints included. Requires geometry.
    std::vector<Vec2> edge_points(EdgeId e) const {
        const Edge& ed = edges[e];
        if (!ed.poly.empty()) return ed.poly;
        return {*vertices[ed.src].xy, *vertices[ed.dst].xy};
    }
};

enum class MeshAxiom : std::uint8_t {
    VertexDegree,    // every vertex is an endpoint of at least one edge
    FaceClosedWalk,  // every face boundary is a closed directed walk
    EdgeFaceCount,   // interior edges in two distinct faces, boundary edges in one
    FaceSimpleCycle, // face boundaries are simple cycles
    EdgeGeometry,    // polylines run from source coordinate to target coordinate
};

inline const char* axiom_name(MeshAxiom a) {
    switch (a) {
        case MeshAxiom::VertexDegree: return "vertex-degree";
        case MeshAxiom::FaceClosedWalk: return "face-closed-walk";
        case MeshAxiom::EdgeFaceCount: return "edge-face-count";
        case MeshAxiom::FaceSimpleCycle: return "face-simple-cycle";
        case MeshAxiom::EdgeGeometry: return "edge-geometry";
    }
    return "?";
}

struct Violation {
    MeshAxiom axiom;
    std::uint32_t id;  // offending vertex/edge/face id
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

namespace detail {

/// Occurrences of every edge over all face cycles, in (face, step) order.
/// Each entry is (face, +1/-1 traversal direction).
inline std::vector<std::vector<std::pair<FaceId, int>>>
edge_face_occurrences(const CombSurface& s) {
    std::vector<std::vector<std::pair<FaceId, int>>> occ(s.edge_count());
    for (FaceId f = 0; f < s.face_count(); ++f)
        for (const DirectedEdge& d : s.faces[f].cycle)
            occ[d.edge].push_back({f, d.forward ? +1 : -1});
    return occ;
}

inline bool cycle_closes(const CombSurface& s, const std::vector<DirectedEdge>& cycle) {
    if (cycle.empty()) return false;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        const DirectedEdge& cur = cycle[i];
        const DirectedEdge& nxt = cycle[(i + 1) % cycle.size()];
        if (s.sink(cur) != s.source(nxt)) return false;
    }
    return true;
}

inline bool cycle_is_simple(const CombSurface& s, const std::vector<DirectedEdge>& cycle) {
    std::vector<VertexId> sinks;
    sinks.reserve(cycle.size());
    for (const DirectedEdge& d : cycle) sinks.push_back(s.sink(d));
    std::sort(sinks.begin(), sinks.end());
    return std::adjacent_find(sinks.begin(), sinks.end()) == sinks.end();
}

inline double polygon_signed_area(const std::vector<Vec2>& pts) {
    double twice = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        twice += pts[i].x * pts[i + 1].y - pts[i + 1].x * pts[i].y;
    if (!pts.empty())
        twice += pts.back().x * pts.front().y - pts.front().x * pts.back().y;
    return 0.5 * twice;
}

/// Concatenated boundary polyline of a face following its stored cycle.
inline std::vector<Vec2> face_polygon(const CombSurface& s, FaceId f) {
    std::vector<Vec2> pts;
    for (const DirectedEdge& d : s.faces[f].cycle) {
        std::vector<Vec2> ep = s.edge_points(d.edge);
        if (!d.forward) std::reverse(ep.begin(), ep.end());
        // drop the shared junction point
        std::size_t start = pts.empty() ? 0 : 1;
        pts.insert(pts.end(), ep.begin() + start, ep.end());
    }
    if (pts.size() > 1 && pts.front() == pts.back()) pts.pop_back();
    return pts;
}

}  // namespace detail

/**
 * Check every surface axiom and report each violation. Violations are data,
 * not errors: the report is deterministic, ordered by axiom then id.
 */
inline ValidationReport validate(const CombSurface& s) {
    ValidationReport report;
    auto add = [&](MeshAxiom a, std::uint32_t id, std::string detail) {
        report.violations.push_back({a, id, std::move(detail)});
    };

    // vertex degree
    std::vector<std::uint32_t> degree(s.vertex_count(), 0);
    for (const CombSurface::Edge& e : s.edges) {
        ++degree[e.src];
        ++degree[e.dst];
    }
    for (VertexId v = 0; v < s.vertex_count(); ++v)
        if (degree[v] == 0)
            add(MeshAxiom::VertexDegree, v, "vertex is not an endpoint of any edge");

    // face boundaries are closed directed walks
    std::vector<bool> face_walks(s.face_count(), false);
    for (FaceId f = 0; f < s.face_count(); ++f) {
        face_walks[f] = detail::cycle_closes(s, s.faces[f].cycle);
        if (!face_walks[f])
            add(MeshAxiom::FaceClosedWalk, f, "face boundary is not a closed directed walk");
    }

    // edge/face incidence counts
    auto occ = detail::edge_face_occurrences(s);
    for (EdgeId e = 0; e < s.edge_count(); ++e) {
        std::size_t total = occ[e].size();
        std::set<FaceId> distinct;
        for (auto& [f, d] : occ[e]) distinct.insert(f);
        if (s.is_boundary_edge(e)) {
            if (total != 1)
                add(MeshAxiom::EdgeFaceCount, e,
                    "boundary edge appears " + std::to_string(total) +
                        " times in face boundaries (expected 1)");
        } else {
            if (total != 2 || distinct.size() != 2)
                add(MeshAxiom::EdgeFaceCount, e,
                    "interior edge appears " + std::to_string(total) + " times in " +
                        std::to_string(distinct.size()) + " faces (expected once in each of 2)");
        }
    }

    // face boundaries are simple cycles (only meaningful for closed walks)
    for (FaceId f = 0; f < s.face_count(); ++f)
        if (face_walks[f] && !detail::cycle_is_simple(s, s.faces[f].cycle))
            add(MeshAxiom::FaceSimpleCycle, f, "face boundary revisits a vertex");

    // geometry consistency
    bool any_xy = false, all_xy = true;
    for (const CombSurface::Vertex& v : s.vertices) {
        if (v.xy) any_xy = true;
        else all_xy = false;
    }
    if (any_xy && !all_xy) {
        for (VertexId v = 0; v < s.vertex_count(); ++v)
            if (!s.vertices[v].xy)
                add(MeshAxiom::EdgeGeometry, v, "vertex lacks coordinates while others have them");
    }
    for (EdgeId e = 0; e < s.edge_count(); ++e) {
        const CombSurface::Edge& ed = s.edges[e];
        if (ed.poly.empty()) continue;
        if (!all_xy) {
            add(MeshAxiom::EdgeGeometry, e, "edge polyline present without vertex coordinates");
            continue;
        }
        if (ed.poly.size() < 2) {
            add(MeshAxiom::EdgeGeometry, e, "edge polyline has fewer than 2 points");
            continue;
        }
        if (!(ed.poly.front() == *s.vertices[ed.src].xy) ||
            !(ed.poly.back() == *s.vertices[ed.dst].xy))
            add(MeshAxiom::EdgeGeometry, e, "edge polyline endpoints do not match vertex coordinates");
    }

    std::stable_sort(report.violations.begin(), report.violations.end(),
                     [](const Violation& a, const Violation& b) {
                         if (a.axiom != b.axiom) return a.axiom < b.axiom;
                         return a.id < b.id;
                     });
    return report;
}

/// A sign per face applied to the stored boundary cycle direction.
struct Orientation {
    std::vector<std::int8_t> face_sign;  // +1 or -1
};

/// An odd cycle of face adjacencies that forces an orientation conflict.
struct NonOrientableWitness {
    std::vector<FaceId> face_cycle;
};

using OrientResult = std::variant<Orientation, NonOrientableWitness>;

namespace detail {

inline void require_valid(const CombSurface& s, const char* op) {
    ValidationReport r = validate(s);
    if (!r.ok()) {
        const Violation& v = r.violations.front();
        std::ostringstream msg;
        msg << op << ": invalid surface: axiom " << axiom_name(v.axiom) << " violated at id "
            << v.id << " (" << v.detail << ")";
        throw std::invalid_argument(msg.str());
    }
}

inline void require_oriented(const CombSurface& s, const Orientation& o, const char* op) {
    if (o.face_sign.size() != s.face_count())
        throw std::invalid_argument(std::string(op) + ": orientation does not match surface");
}

/// True when every interior edge receives opposite induced directions.
inline bool orientation_consistent(const CombSurface& s, const Orientation& o) {
    auto occ = edge_face_occurrences(s);
    for (EdgeId e = 0; e < s.edge_count(); ++e) {
        if (occ[e].size() != 2) continue;
        auto [f, df] = occ[e][0];
        auto [g, dg] = occ[e][1];
        if (o.face_sign[f] * df != -o.face_sign[g] * dg) return false;
    }
    return true;
}

}  // namespace detail

/**
 * Orient the surface. With planar geometry, each face gets the standard
 * orientation (sign of its boundary polygon's signed area, so oriented faces
 * keep the surface on the left). Without geometry, signs are propagated so
 * adjacent faces induce opposite directions on shared edges, the smallest
 * face of each component fixed at +1. Returns a witness cycle of face
 * adjacencies when no consistent assignment exists.
 */
inline OrientResult orient(const CombSurface& s) {
    detail::require_valid(s, "orient");

    if (s.has_geometry()) {
        Orientation o;
        o.face_sign.resize(s.face_count(), 1);
        for (FaceId f = 0; f < s.face_count(); ++f) {
            double area = detail::polygon_signed_area(detail::face_polygon(s, f));
            if (area == 0.0)
                throw std::invalid_argument("orient: face " + std::to_string(f) +
                                            " has zero signed area");
            o.face_sign[f] = area > 0.0 ? 1 : -1;
        }
        if (!detail::orientation_consistent(s, o))
            throw std::invalid_argument(
                "orient: planar geometry is inconsistent with face combinatorics");
        return o;
    }

    // Constraint graph: faces adjacent along interior edges. For occurrence
    // directions df, dg the signs must satisfy sf*df == -sg*dg.
    auto occ = detail::edge_face_occurrences(s);
    std::vector<std::vector<std::pair<FaceId, int>>> adj(s.face_count());
    for (EdgeId e = 0; e < s.edge_count(); ++e) {
        if (occ[e].size() != 2) continue;
        auto [f, df] = occ[e][0];
        auto [g, dg] = occ[e][1];
        int rel = -df * dg;  // sg = rel * sf
        adj[f].push_back({g, rel});
        adj[g].push_back({f, rel});
    }

    Orientation o;
    o.face_sign.assign(s.face_count(), 0);
    std::vector<FaceId> parent(s.face_count(), 0);
    for (FaceId root = 0; root < s.face_count(); ++root) {
        if (o.face_sign[root] != 0) continue;
        o.face_sign[root] = 1;
        parent[root] = root;
        std::queue<FaceId> q;
        q.push(root);
        while (!q.empty()) {
            FaceId f = q.front();
            q.pop();
            for (auto [g, rel] : adj[f]) {
                std::int8_t want = static_cast<std::int8_t>(rel * o.face_sign[f]);
                if (o.face_sign[g] == 0) {
                    o.face_sign[g] = want;
                    parent[g] = f;
                    q.push(g);
                } else if (o.face_sign[g] != want) {
                    // Conflict: the tree paths from f and g to the root plus
                    // this adjacency form an odd cycle.
                    auto chain = [&](FaceId x) {
                        std::vector<FaceId> c{x};
                        while (parent[c.back()] != c.back()) c.push_back(parent[c.back()]);
                        return c;
                    };
                    std::vector<FaceId> cf = chain(f), cg = chain(g);
                    while (cf.size() > 1 && cg.size() > 1 &&
                           cf[cf.size() - 2] == cg[cg.size() - 2]) {
                        cf.pop_back();
                        cg.pop_back();
                    }
                    NonOrientableWitness w;
                    w.face_cycle = cf;  // f .. lca
                    for (auto it = cg.rbegin() + 1; it != cg.rend(); ++it)
                        w.face_cycle.push_back(*it);  // lca-child .. g
                    return w;
                }
            }
        }
    }
    return o;
}

/**
 * The boundary of an oriented surface as closed loops of directed edges,
 * each boundary edge carrying the orientation induced by its face. Loops are
 * ordered (and internally rotated to start) by their smallest edge id.
 */
inline std::vector<EdgePath> boundary(const CombSurface& s, const Orientation& o) {
    detail::require_oriented(s, o, "boundary");

    auto occ = detail::edge_face_occurrences(s);
    // Induced directed boundary edges, grouped per source vertex, ascending id.
    std::vector<std::vector<DirectedEdge>> outgoing(s.vertex_count());
    for (EdgeId e : s.boundary_edges) {
        if (occ[e].size() != 1)
            throw std::invalid_argument("boundary: surface does not validate");
        auto [f, d] = occ[e][0];
        DirectedEdge de{e, o.face_sign[f] * d > 0};
        outgoing[s.source(de)].push_back(de);
    }
    for (auto& v : outgoing)
        std::sort(v.begin(), v.end(),
                  [](const DirectedEdge& a, const DirectedEdge& b) { return a.edge < b.edge; });

    std::vector<bool> used(s.edge_count(), false);
    std::vector<EdgePath> loops;
    for (EdgeId start : s.boundary_edges) {
        if (used[start]) continue;
        // The walk starts at the smallest unused boundary edge; at branch
        // vertices it takes the smallest unused outgoing edge.
        auto [f, d] = occ[start][0];
        DirectedEdge cur{start, o.face_sign[f] * d > 0};
        EdgePath loop;
        while (true) {
            used[cur.edge] = true;
            loop.steps.push_back(cur);
            VertexId at = s.sink(cur);
            const DirectedEdge* next = nullptr;
            for (const DirectedEdge& cand : outgoing[at])
                if (!used[cand.edge]) {
                    next = &cand;
                    break;
                }
            if (!next) break;
            cur = *next;
        }
        if (s.sink(loop.steps.back()) != s.source(loop.steps.front()))
            throw std::invalid_argument("boundary: induced boundary edges do not close up");
        loops.push_back(std::move(loop));
    }
    return loops;
}

inline long long euler_characteristic(const CombSurface& s) {
    return static_cast<long long>(s.vertex_count()) - static_cast<long long>(s.edge_count()) +
           static_cast<long long>(s.face_count());
}

struct EdgeSplit {
    EdgeId edge;
};
struct FaceSplit {
    FaceId face;
    VertexId a;
    VertexId b;
};
using SubdivideMove = std::variant<EdgeSplit, FaceSplit>;

namespace detail {

/// Split a polyline at its arclength midpoint. Returns (first, mid, second).
inline std::tuple<std::vector<Vec2>, Vec2, std::vector<Vec2>>
split_polyline(const std::vector<Vec2>& pts) {
    double total = 0.0;
    std::vector<double> seglen(pts.size() - 1);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        Vec2 d = pts[i + 1] - pts[i];
        seglen[i] = std::sqrt(d.dot(d));
        total += seglen[i];
    }
    if (total == 0.0) {
        Vec2 m = pts.front();
        return {{pts.front(), m}, m, {m, pts.back()}};
    }
    double want = total / 2.0, acc = 0.0;
    std::size_t k = 0;
    while (k + 1 < seglen.size() && acc + seglen[k] < want) acc += seglen[k++];
    double t = seglen[k] == 0.0 ? 0.0 : (want - acc) / seglen[k];
    Vec2 m = pts[k] + t * (pts[k + 1] - pts[k]);
    std::vector<Vec2> first(pts.begin(), pts.begin() + k + 1);
    if (!(first.back() == m)) first.push_back(m);
    std::vector<Vec2> second;
    second.push_back(m);
    for (std::size_t i = k + 1; i < pts.size(); ++i)
        if (!(pts[i] == second.back())) second.push_back(pts[i]);
    if (second.size() < 2) second.push_back(m);
    return {first, m, second};
}

}  // namespace detail

/**
 * Elementary refinement moves. Edge-split inserts a midpoint vertex; face-split
 * joins two boundary-cycle vertices of a face by a new interior edge. Both
 * preserve validity and the Euler characteristic.
 */
inline CombSurface subdivide(const CombSurface& s, const SubdivideMove& move) {
    CombSurface out = s;
    if (std::holds_alternative<EdgeSplit>(move)) {
        EdgeId e = std::get<EdgeSplit>(move).edge;
        if (e >= s.edge_count()) throw std::invalid_argument("subdivide: edge id out of range");
        const CombSurface::Edge& old = s.edges[e];

        CombSurface::Vertex mid;
        std::vector<Vec2> poly1, poly2;
        if (s.has_geometry()) {
            auto [p1, m, p2] = detail::split_polyline(s.edge_points(e));
            mid.xy = m;
            if (!old.poly.empty()) {  // keep polylines only where the input had one
                poly1 = p1;
                poly2 = p2;
            }
        }
        VertexId m = static_cast<VertexId>(out.vertices.size());
        out.vertices.push_back(mid);

        EdgeId e2 = static_cast<EdgeId>(out.edges.size());
        out.edges[e] = {old.src, m, poly1};
        out.edges.push_back({m, old.dst, poly2});

        for (CombSurface::Face& f : out.faces) {
            std::vector<DirectedEdge> cycle;
            for (const DirectedEdge& d : f.cycle) {
                if (d.edge != e) {
                    cycle.push_back(d);
                } else if (d.forward) {
                    cycle.push_back({e, true});
                    cycle.push_back({e2, true});
                } else {
                    cycle.push_back({e2, false});
                    cycle.push_back({e, false});
                }
            }
            f.cycle = std::move(cycle);
        }
        if (s.is_boundary_edge(e)) {
            out.boundary_edges.push_back(e2);
            std::sort(out.boundary_edges.begin(), out.boundary_edges.end());
        }
        return out;
    }

    const FaceSplit& fs = std::get<FaceSplit>(move);
    if (fs.face >= s.face_count()) throw std::invalid_argument("subdivide: face id out of range");
    if (fs.a == fs.b)
        throw std::invalid_argument("subdivide: face-split endpoints must be distinct");
    const std::vector<DirectedEdge>& cycle = s.faces[fs.face].cycle;
    auto find_source = [&](VertexId v) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < cycle.size(); ++i)
            if (s.source(cycle[i]) == v) return i;
        return std::nullopt;
    };
    auto ia = find_source(fs.a), ib = find_source(fs.b);
    if (!ia || !ib)
        throw std::invalid_argument("subdivide: face-split vertices are not on the face boundary");

    EdgeId g = static_cast<EdgeId>(out.edges.size());
    out.edges.push_back({fs.a, fs.b, {}});

    std::vector<DirectedEdge> c1, c2;
    for (std::size_t i = *ia; i != *ib; i = (i + 1) % cycle.size()) c1.push_back(cycle[i]);
    c1.push_back({g, false});
    for (std::size_t i = *ib; i != *ia; i = (i + 1) % cycle.size()) c2.push_back(cycle[i]);
    c2.push_back({g, true});

    out.faces[fs.face].cycle = c1;
    out.faces.push_back({c2});

    if (!detail::cycle_closes(out, c1) || !detail::cycle_is_simple(out, c1) ||
        !detail::cycle_closes(out, c2) || !detail::cycle_is_simple(out, c2))
        throw std::invalid_argument("subdivide: split would produce a non-simple face boundary");
    return out;
}

}  // namespace combicalc
