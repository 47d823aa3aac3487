#pragma once

#include <cmath>
#include <cstdlib>
#include <vector>

#include "combicalc/fields.hpp"
#include "combicalc/mesh.hpp"
#include "combicalc/parallel.hpp"
#include "combicalc/types.hpp"

namespace combicalc {

/**
 * Discrete gradient. Each edge is oriented toward its larger endpoint value
 * and carries the (nonnegative) difference; ties keep the stored direction
 * with value 0.
 */
inline CVF tilt(const CombSurface& s, const VSF& f) {
    detail::require_vsf(s, f, "tilt");
    CVF out;
    out.entries.resize(s.edge_count());
    for (EdgeId e = 0; e < s.edge_count(); ++e) {
        double a = f.values[s.edges[e].src];
        double b = f.values[s.edges[e].dst];
        out.entries[e] = a <= b ? CVF::Entry{true, b - a} : CVF::Entry{false, a - b};
    }
    return out;
}

/// Canonical-orientation variant of tilt: value f(dst) - f(src) on the
/// stored direction. Equals canonicalize(tilt(f)) entry for entry.
inline CVF tilt_bar(const CombSurface& s, const VSF& f) {
    detail::require_vsf(s, f, "tilt_bar");
    CVF out;
    out.entries.resize(s.edge_count());
    for (EdgeId e = 0; e < s.edge_count(); ++e)
        out.entries[e] = {true, f.values[s.edges[e].dst] - f.values[s.edges[e].src]};
    return out;
}

/**
 * Discrete divergence. At each vertex, the sum of rates on edges the field
 * points out of it minus the sum on edges pointing into it. Loop edges
 * contribute nothing.
 */
inline VSF ebb(const CombSurface& s, const CVF& f) {
    detail::require_cvf(s, f, "ebb");
    VSF out = zero_vsf(s);
    for (EdgeId e = 0; e < s.edge_count(); ++e) {
        const CombSurface::Edge& ed = s.edges[e];
        if (ed.src == ed.dst) continue;
        VertexId from = f.entries[e].forward ? ed.src : ed.dst;
        VertexId to = f.entries[e].forward ? ed.dst : ed.src;
        out.values[from] += f.entries[e].value;
        out.values[to] -= f.entries[e].value;
    }
    return out;
}

namespace detail {

/// Net stored-direction traversal counts of a face's induced boundary cycle.
inline std::map<EdgeId, long long> induced_face_counts(const CombSurface& s, FaceId f,
                                                       std::int8_t sign) {
    std::map<EdgeId, long long> counts;
    for (const DirectedEdge& d : s.faces[f].cycle)
        counts[d.edge] += (d.forward ? 1 : -1) * static_cast<long long>(sign);
    return counts;
}

/// Induced boundary of the whole surface as net traversal counts.
inline std::map<EdgeId, long long> induced_boundary_counts(const CombSurface& s,
                                                           const Orientation& o) {
    auto occ = edge_face_occurrences(s);
    std::map<EdgeId, long long> counts;
    for (EdgeId e : s.boundary_edges) {
        auto [f, d] = occ[e][0];
        counts[e] = static_cast<long long>(o.face_sign[f]) * d;
    }
    return counts;
}

}  // namespace detail

/**
 * Discrete scalar curl. Per face, the combinatorial integral of the field
 * around the face's induced boundary cycle.
 */
inline FSF whirl(const CombSurface& s, const Orientation& o, const CVF& f) {
    detail::require_cvf(s, f, "whirl");
    detail::require_oriented(s, o, "whirl");
    FSF out = zero_fsf(s);
    parallel_for(s.face_count(), [&](std::size_t fi) {
        out.values[fi] = detail::integrate_counts(
            f, detail::induced_face_counts(s, static_cast<FaceId>(fi), o.face_sign[fi]));
    });
    return out;
}

/// Sum of absolute rates; the natural scale for residual bounds.
inline double cvf_abs_sum(const CVF& f) {
    double sum = 0.0;
    for (const CVF::Entry& e : f.entries) sum += std::abs(e.value);
    return sum;
}

inline double vsf_abs_sum(const VSF& f) {
    double sum = 0.0;
    for (double v : f.values) sum += std::abs(v);
    return sum;
}

/**
 * Residual of the discrete Green identity: the integral of the field over
 * the induced surface boundary minus the total whirl over all faces.
 * Identically zero in exact arithmetic; numerically bounded by rounding.
 */
inline double check_whirl_theorem(const CombSurface& s, const Orientation& o, const CVF& f) {
    detail::require_cvf(s, f, "check_whirl_theorem");
    detail::require_oriented(s, o, "check_whirl_theorem");
    double lhs = detail::integrate_counts(f, detail::induced_boundary_counts(s, o));
    FSF w = whirl(s, o, f);
    double rhs = 0.0;
    for (double v : w.values) rhs += v;
    return lhs - rhs;
}

}  // namespace combicalc
