#pragma once

#include <cstdint>
#include <stdexcept>

#include "combicalc/calculus.hpp"
#include "combicalc/exact.hpp"
#include "combicalc/mesh.hpp"

namespace combicalc {

/**
 * The (co)chain complex of an oriented surface as integer matrices, using
 * the stored edge directions as the fixed edge orientations.
 *
 *   T  (|E| x |V|): the canonical tilt map, row e carrying -1 at the source
 *                   and +1 at the sink (all zeros for a loop edge);
 *   W  (|F| x |E|): the whirl map, entry (f,e) the net signed traversal
 *                   count of e in the induced boundary cycle of f;
 *   D1, D2: the boundary maps, transposes of T and W.
 *
 * W*T = 0 and D1*D2 = 0 hold exactly as integer identities.
 */
struct CochainComplex {
    std::size_t n_vertices = 0;
    std::size_t n_edges = 0;
    std::size_t n_faces = 0;
    IntMatrix T;
    IntMatrix W;
    IntMatrix D1;
    IntMatrix D2;
};

inline CochainComplex cochain_complex(const CombSurface& s, const Orientation& o) {
    detail::require_valid(s, "cochain_complex");
    detail::require_oriented(s, o, "cochain_complex");

    CochainComplex c;
    c.n_vertices = s.vertex_count();
    c.n_edges = s.edge_count();
    c.n_faces = s.face_count();

    c.T = IntMatrix(c.n_edges, c.n_vertices);
    for (EdgeId e = 0; e < c.n_edges; ++e) {
        const CombSurface::Edge& ed = s.edges[e];
        if (ed.src == ed.dst) continue;
        c.T.at(e, ed.src) = -1;
        c.T.at(e, ed.dst) = +1;
    }

    c.W = IntMatrix(c.n_faces, c.n_edges);
    for (FaceId f = 0; f < c.n_faces; ++f)
        for (auto [e, n] : detail::induced_face_counts(s, f, o.face_sign[f]))
            c.W.at(f, e) = n;

    c.D1 = c.T.transposed();
    c.D2 = c.W.transposed();
    return c;
}

/**
 * Cohomology dimensions, with the whirl/tilt maps read literally:
 * h0 = dim ker of the tilt map, h1 = dim ker whirl - dim im tilt,
 * h2 = dim im whirl. `h2_quotient` additionally reports the conventional
 * cokernel dimension |F| - rank W for comparison.
 */
struct CohomologyDims {
    std::size_t h0 = 0;
    std::size_t h1 = 0;
    std::size_t h2 = 0;
    std::size_t h2_quotient = 0;
};

inline CohomologyDims cohomology_dims(const CochainComplex& c) {
    std::size_t rank_t = exact_rank(c.T);
    std::size_t rank_w = exact_rank(c.W);
    CohomologyDims d;
    d.h0 = c.n_vertices - rank_t;
    d.h1 = (c.n_edges - rank_w) - rank_t;
    d.h2 = rank_w;
    d.h2_quotient = c.n_faces - rank_w;
    return d;
}

/**
 * Homology dimensions from the boundary maps read literally:
 * h_0 = dim im of the edge boundary map, h_1 = dim ker of it minus
 * dim im of the face boundary map, h_2 = dim ker of the face boundary map.
 * Ranks are computed from D1/D2 themselves, so equality of h_1 with the
 * cohomological h1 exercises rank invariance under transposition.
 */
struct HomologyDims {
    std::size_t h_0 = 0;
    std::size_t h_1 = 0;
    std::size_t h_2 = 0;
};

inline HomologyDims homology_dims(const CochainComplex& c) {
    std::size_t rank_d1 = exact_rank(c.D1);
    std::size_t rank_d2 = exact_rank(c.D2);
    HomologyDims d;
    d.h_0 = rank_d1;
    d.h_1 = (c.n_edges - rank_d1) - rank_d2;
    d.h_2 = c.n_faces - rank_d2;
    return d;
}

}  // namespace combicalc
