#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "combicalc/mesh.hpp"
#include "combicalc/types.hpp"

namespace combicalc {

/// Vertex scalar field: one real value per vertex of the host surface.
struct VSF {
    std::vector<double> values;
};

/// Face scalar field: one real value per face.
struct FSF {
    std::vector<double> values;
};

/**
 * Combinatorial vector field: every edge carries an orientation chosen by
 * the field (`forward` is the stored source -> target direction) and a rate.
 * Negating the rate and flipping the orientation gives the same field; see
 * cvf_same.
 */
struct CVF {
    struct Entry {
        bool forward = true;
        double value = 0.0;
    };
    std::vector<Entry> entries;
};

namespace detail {

inline void require_vsf(const CombSurface& s, const VSF& f, const char* op) {
    if (f.values.size() != s.vertex_count())
        throw std::invalid_argument(std::string(op) + ": VSF does not match surface");
}
inline void require_fsf(const CombSurface& s, const FSF& f, const char* op) {
    if (f.values.size() != s.face_count())
        throw std::invalid_argument(std::string(op) + ": FSF does not match surface");
}
inline void require_cvf(const CombSurface& s, const CVF& f, const char* op) {
    if (f.entries.size() != s.edge_count())
        throw std::invalid_argument(std::string(op) + ": CVF does not match surface");
}

}  // namespace detail

/// Zero fields on a host surface.
inline VSF zero_vsf(const CombSurface& s) { return {std::vector<double>(s.vertex_count(), 0.0)}; }
inline FSF zero_fsf(const CombSurface& s) { return {std::vector<double>(s.face_count(), 0.0)}; }
inline CVF zero_cvf(const CombSurface& s) {
    return {std::vector<CVF::Entry>(s.edge_count(), CVF::Entry{true, 0.0})};
}

/**
 * Whether two CVFs are the same field: equal orientations carry equal values
 * and opposite orientations carry negated values, on every edge.
 */
inline bool cvf_same(const CombSurface& s, const CVF& f, const CVF& g) {
    detail::require_cvf(s, f, "cvf_same");
    detail::require_cvf(s, g, "cvf_same");
    for (EdgeId e = 0; e < s.edge_count(); ++e) {
        const CVF::Entry &a = f.entries[e], &b = g.entries[e];
        if (a.forward == b.forward ? (a.value != b.value) : (a.value != -b.value)) return false;
    }
    return true;
}

/**
 * The unique same field whose orientation on every edge is the stored mesh
 * direction. Idempotent.
 */
inline CVF canonicalize(const CombSurface& s, const CVF& f) {
    detail::require_cvf(s, f, "canonicalize");
    CVF out;
    out.entries.resize(f.entries.size());
    for (EdgeId e = 0; e < f.entries.size(); ++e)
        out.entries[e] = {true, f.entries[e].forward ? f.entries[e].value : -f.entries[e].value};
    return out;
}

/// Sum of a VSF over a multiset of vertices, in ascending id order.
inline double integrate_vertices(const CombSurface& s, const VSF& f,
                                 std::vector<VertexId> multiset) {
    detail::require_vsf(s, f, "integrate_vertices");
    for (VertexId v : multiset)
        if (v >= s.vertex_count())
            throw std::invalid_argument("integrate_vertices: unknown vertex id");
    std::sort(multiset.begin(), multiset.end());
    double sum = 0.0;
    for (VertexId v : multiset) sum += f.values[v];
    return sum;
}

/// Sum of an FSF over a multiset of faces, in ascending id order.
inline double integrate_faces(const CombSurface& s, const FSF& f, std::vector<FaceId> multiset) {
    detail::require_fsf(s, f, "integrate_faces");
    for (FaceId x : multiset)
        if (x >= s.face_count()) throw std::invalid_argument("integrate_faces: unknown face id");
    std::sort(multiset.begin(), multiset.end());
    double sum = 0.0;
    for (FaceId x : multiset) sum += f.values[x];
    return sum;
}

namespace detail {

/// Net signed traversal count per edge of a step sequence: +1 for each step
/// along the stored direction, -1 against it. Keys ascend.
inline std::map<EdgeId, long long> net_edge_counts(const std::vector<DirectedEdge>& steps) {
    std::map<EdgeId, long long> counts;
    for (const DirectedEdge& d : steps) counts[d.edge] += d.forward ? 1 : -1;
    return counts;
}

/// Signed sum of CVF values for given net stored-direction traversal counts.
/// Summing per edge in ascending id makes the result independent of traversal
/// order and exactly antisymmetric under reversal.
inline double integrate_counts(const CVF& f, const std::map<EdgeId, long long>& counts) {
    double sum = 0.0;
    for (auto [e, n] : counts) {
        const CVF::Entry& ent = f.entries[e];
        double along = ent.forward ? ent.value : -ent.value;  // value along stored direction
        sum += static_cast<double>(n) * along;
    }
    return sum;
}

inline void require_path(const CombSurface& s, const EdgePath& p, const char* op) {
    for (const DirectedEdge& d : p.steps)
        if (d.edge >= s.edge_count())
            throw std::invalid_argument(std::string(op) + ": edge id out of range");
    for (std::size_t i = 0; i + 1 < p.steps.size(); ++i)
        if (s.sink(p.steps[i]) != s.source(p.steps[i + 1]))
            throw std::invalid_argument(std::string(op) + ": steps do not chain into a path");
}

}  // namespace detail

/**
 * Combinatorial integral of a CVF over an edge path: each step contributes
 * +F(e) when it runs along F's orientation and -F(e) against it. Reversing
 * the path negates the result exactly.
 */
inline double integrate_path(const CombSurface& s, const CVF& f, const EdgePath& p) {
    detail::require_cvf(s, f, "integrate_path");
    detail::require_path(s, p, "integrate_path");
    return detail::integrate_counts(f, detail::net_edge_counts(p.steps));
}

}  // namespace combicalc
