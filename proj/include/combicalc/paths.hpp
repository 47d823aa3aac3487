#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <queue>
#include <stdexcept>
#include <variant>
#include <vector>

#include "combicalc/calculus.hpp"
#include "combicalc/fields.hpp"
#include "combicalc/mesh.hpp"
#include "combicalc/types.hpp"

namespace combicalc {

inline bool is_path(const CombSurface& s, const EdgePath& p) {
    if (p.empty()) return false;
    for (const DirectedEdge& d : p.steps)
        if (d.edge >= s.edge_count()) return false;
    for (std::size_t i = 0; i + 1 < p.steps.size(); ++i)
        if (s.sink(p.steps[i]) != s.source(p.steps[i + 1])) return false;
    return true;
}

inline bool is_loop(const CombSurface& s, const EdgePath& p) {
    return is_path(s, p) && s.sink(p.steps.back()) == s.source(p.steps.front());
}

/**
 * An edge path is embedded when consecutive steps use distinct edges and no
 * vertex is the sink of more than one step.
 */
inline bool is_embedded(const CombSurface& s, const EdgePath& p) {
    if (!is_path(s, p)) throw std::invalid_argument("is_embedded: not a valid path");
    for (std::size_t i = 0; i + 1 < p.steps.size(); ++i)
        if (p.steps[i].edge == p.steps[i + 1].edge) return false;
    std::vector<VertexId> sinks;
    sinks.reserve(p.steps.size());
    for (const DirectedEdge& d : p.steps) sinks.push_back(s.sink(d));
    std::sort(sinks.begin(), sinks.end());
    return std::adjacent_find(sinks.begin(), sinks.end()) == sinks.end();
}

struct LoopDecomposition {
    std::vector<EdgePath> loops;          // embedded
    std::size_t backtrack_pairs_removed;  // adjacent out-and-back pairs dropped
};

/**
 * Decompose a loop into embedded loops by repeatedly deleting adjacent
 * out-and-back pairs and splitting off the shortest subloop between two
 * visits of the same vertex (smallest start on ties). The combined integral
 * of the outputs equals the integral of the input for every CVF.
 */
inline LoopDecomposition decompose_loop(const CombSurface& s, const EdgePath& p) {
    if (!is_loop(s, p)) throw std::invalid_argument("decompose_loop: not a loop");
    LoopDecomposition out{{}, 0};
    std::vector<DirectedEdge> work = p.steps;
    while (!work.empty()) {
        // adjacent reversal pair
        bool removed = false;
        for (std::size_t j = 0; j + 1 < work.size(); ++j) {
            if (work[j].edge == work[j + 1].edge && work[j].forward != work[j + 1].forward) {
                work.erase(work.begin() + j, work.begin() + j + 2);
                ++out.backtrack_pairs_removed;
                removed = true;
                break;
            }
        }
        if (removed) continue;

        // shortest repeated-sink gap
        std::vector<VertexId> sinks(work.size());
        for (std::size_t i = 0; i < work.size(); ++i) sinks[i] = s.sink(work[i]);
        std::size_t best_j = 0, best_k = 0, best_gap = work.size() + 1;
        for (std::size_t j = 0; j < work.size(); ++j)
            for (std::size_t k = j + 1; k < work.size(); ++k)
                if (sinks[j] == sinks[k] && k - j < best_gap) {
                    best_gap = k - j;
                    best_j = j;
                    best_k = k;
                }
        if (best_gap > work.size()) {
            // no repeated sink, no reversal pair: embedded
            out.loops.push_back(EdgePath{std::move(work)});
            break;
        }
        EdgePath sub;
        sub.steps.assign(work.begin() + best_j + 1, work.begin() + best_k + 1);
        out.loops.push_back(std::move(sub));
        work.erase(work.begin() + best_j + 1, work.begin() + best_k + 1);
    }
    return out;
}

/// A loop whose combinatorial integral is not zero.
struct FailureWitness {
    EdgePath cycle;
    double integral = 0.0;
};

using PotentialResult = std::variant<VSF, FailureWitness>;

/// Component index per vertex plus component count, numbered by smallest
/// contained vertex.
inline std::pair<std::vector<std::uint32_t>, std::uint32_t>
vertex_components(const CombSurface& s) {
    std::vector<std::vector<VertexId>> adj(s.vertex_count());
    for (const CombSurface::Edge& e : s.edges) {
        adj[e.src].push_back(e.dst);
        adj[e.dst].push_back(e.src);
    }
    std::vector<std::uint32_t> comp(s.vertex_count(), UINT32_MAX);
    std::uint32_t count = 0;
    for (VertexId start = 0; start < s.vertex_count(); ++start) {
        if (comp[start] != UINT32_MAX) continue;
        std::queue<VertexId> q;
        q.push(start);
        comp[start] = count;
        while (!q.empty()) {
            VertexId v = q.front();
            q.pop();
            for (VertexId w : adj[v])
                if (comp[w] == UINT32_MAX) {
                    comp[w] = count;
                    q.push(w);
                }
        }
        ++count;
    }
    return {comp, count};
}

/// Default zero-test tolerance for loop integrals of a CVF.
inline double conservativity_tolerance(const CVF& f) { return 1e-12 * cvf_abs_sum(f); }

/**
 * Reconstruct a potential for the field: a breadth-first spanning tree grows
 * from the home vertex of each component (neighbors in ascending edge id)
 * and f(x) is the integral along the tree path. Every non-tree edge is then
 * checked to close a zero-integral cycle; the first failing cycle is
 * returned as a witness. Loop integrals within `tol` of zero count as zero
 * (exact for integer-valued fields).
 */
inline PotentialResult potential(const CombSurface& s, const CVF& f,
                                 const std::vector<VertexId>& homes,
                                 std::optional<double> tol = std::nullopt) {
    detail::require_cvf(s, f, "potential");
    double eps = tol ? *tol : conservativity_tolerance(f);

    auto [comp, ncomp] = vertex_components(s);
    std::vector<VertexId> home_of(ncomp, UINT32_MAX);
    for (VertexId h : homes) {
        if (h >= s.vertex_count())
            throw std::invalid_argument("potential: home vertex out of range");
        if (home_of[comp[h]] != UINT32_MAX)
            throw std::invalid_argument("potential: two home vertices in one component");
        home_of[comp[h]] = h;
    }
    for (std::uint32_t c = 0; c < ncomp; ++c)
        if (home_of[c] == UINT32_MAX)
            throw std::invalid_argument("potential: component without a home vertex");

    // adjacency in ascending edge id; loop edges are never tree edges
    std::vector<std::vector<std::pair<EdgeId, VertexId>>> adj(s.vertex_count());
    for (EdgeId e = 0; e < s.edge_count(); ++e) {
        const CombSurface::Edge& ed = s.edges[e];
        if (ed.src == ed.dst) continue;
        adj[ed.src].push_back({e, ed.dst});
        adj[ed.dst].push_back({e, ed.src});
    }
    for (auto& v : adj) std::sort(v.begin(), v.end());

    // value of f along the stored direction of e
    auto along = [&](EdgeId e) {
        return f.entries[e].forward ? f.entries[e].value : -f.entries[e].value;
    };

    VSF pot = zero_vsf(s);
    std::vector<bool> tree_edge(s.edge_count(), false);
    std::vector<DirectedEdge> parent_step(s.vertex_count());  // step from parent into vertex
    std::vector<VertexId> parent(s.vertex_count(), UINT32_MAX);
    for (std::uint32_t c = 0; c < ncomp; ++c) {
        VertexId home = home_of[c];
        parent[home] = home;
        std::queue<VertexId> q;
        q.push(home);
        while (!q.empty()) {
            VertexId v = q.front();
            q.pop();
            for (auto [e, w] : adj[v]) {
                if (parent[w] != UINT32_MAX) continue;
                bool fwd = s.edges[e].src == v;
                pot.values[w] = pot.values[v] + (fwd ? along(e) : -along(e));
                parent[w] = v;
                parent_step[w] = {e, fwd};
                tree_edge[e] = true;
                q.push(w);
            }
        }
    }

    // tree path between two vertices of one component, via parent chains
    auto tree_path = [&](VertexId from, VertexId to) {
        std::vector<VertexId> cf{from}, ct{to};
        while (parent[cf.back()] != cf.back()) cf.push_back(parent[cf.back()]);
        while (parent[ct.back()] != ct.back()) ct.push_back(parent[ct.back()]);
        while (cf.size() > 1 && ct.size() > 1 && cf[cf.size() - 2] == ct[ct.size() - 2]) {
            cf.pop_back();
            ct.pop_back();
        }
        EdgePath path;
        for (std::size_t i = 0; i + 1 < cf.size(); ++i)
            path.steps.push_back(parent_step[cf[i]].reversed());  // climb from -> lca
        for (std::size_t i = ct.size() - 1; i > 0; --i)
            path.steps.push_back(parent_step[ct[i - 1]]);  // descend lca -> to
        return path;
    };

    for (EdgeId e = 0; e < s.edge_count(); ++e) {
        if (tree_edge[e]) continue;  // holds by construction
        const CombSurface::Edge& ed = s.edges[e];
        double diff = pot.values[ed.dst] - pot.values[ed.src];
        if (std::abs(diff - along(e)) <= eps) continue;
        EdgePath cycle;
        cycle.steps.push_back({e, true});
        if (ed.src != ed.dst) {
            EdgePath back = tree_path(ed.dst, ed.src);
            cycle.steps.insert(cycle.steps.end(), back.steps.begin(), back.steps.end());
        }
        return FailureWitness{cycle, integrate_path(s, f, cycle)};
    }
    return pot;
}

struct ConservativityResult {
    bool conservative = false;
    std::optional<FailureWitness> witness;
};

/// Smallest vertex of each component, the default home choice.
inline std::vector<VertexId> default_homes(const CombSurface& s) {
    auto [comp, ncomp] = vertex_components(s);
    std::vector<VertexId> homes(ncomp, UINT32_MAX);
    for (VertexId v = 0; v < s.vertex_count(); ++v)
        if (homes[comp[v]] == UINT32_MAX) homes[comp[v]] = v;
    return homes;
}

/**
 * Whether the field is a tilt field, decided by attempting a potential
 * reconstruction. On failure the witness is a loop with nonzero integral.
 */
inline ConservativityResult is_conservative(const CombSurface& s, const CVF& f,
                                            std::optional<double> tol = std::nullopt) {
    PotentialResult r = potential(s, f, default_homes(s), tol);
    if (std::holds_alternative<VSF>(r)) return {true, std::nullopt};
    return {false, std::get<FailureWitness>(r)};
}

}  // namespace combicalc
