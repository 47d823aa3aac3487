#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "combicalc/calculus.hpp"
#include "combicalc/catalog.hpp"
#include "combicalc/cohomology.hpp"
#include "combicalc/fields.hpp"
#include "combicalc/mesh.hpp"
#include "combicalc/paths.hpp"
#include "combicalc/pullback.hpp"
#include "combicalc/refine.hpp"

namespace combicalc {

/// Shortest round-trip decimal form; stable across runs of one binary.
inline std::string fmt_double(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, p);
}

using Rng = std::mt19937_64;

/**
 * One random subdivision move, skipping face-splits whose straight chord
 * would degenerate a face to zero area. Returns whether a move was applied.
 */
inline bool apply_random_move(Rng& rng, CombSurface& s) {
    std::uniform_int_distribution<int> coin(0, 1);
    if (coin(rng) == 0) {
        std::uniform_int_distribution<EdgeId> pe(0, static_cast<EdgeId>(s.edge_count() - 1));
        s = subdivide(s, EdgeSplit{pe(rng)});
        return true;
    }
    std::uniform_int_distribution<FaceId> pf(0, static_cast<FaceId>(s.face_count() - 1));
    FaceId f = pf(rng);
    std::size_t len = s.faces[f].cycle.size();
    if (len < 2) return false;
    std::uniform_int_distribution<std::size_t> pos(0, len - 1);
    std::size_t i1 = pos(rng), i2 = pos(rng);
    if (i1 == i2) return false;
    CombSurface split = subdivide(
        s, FaceSplit{f, s.source(s.faces[f].cycle[i1]), s.source(s.faces[f].cycle[i2])});
    if (split.has_geometry()) {
        double a1 = detail::polygon_signed_area(detail::face_polygon(split, f));
        double a2 = detail::polygon_signed_area(
            detail::face_polygon(split, static_cast<FaceId>(split.face_count() - 1)));
        if (a1 == 0.0 || a2 == 0.0) return false;
    }
    s = std::move(split);
    return true;
}

/**
 * Random valid orientable surface: a connected union of grid cells meshed at
 * level 0, roughed up by random subdivision moves, with geometry kept or
 * stripped. Spans loop-free grids through meshes with slanted interior
 * chords; face count stays small.
 */
inline CombSurface random_mesh(Rng& rng, unsigned max_base_cells = 12, unsigned max_moves = 6,
                               double keep_geometry = 0.5) {
    std::uniform_int_distribution<int> span(1, 5);
    int w = span(rng), h = span(rng);
    std::uniform_int_distribution<int> cell_count(1, static_cast<int>(max_base_cells));
    int target = std::min(cell_count(rng), w * h);

    std::set<std::pair<int, int>> cells;
    std::uniform_int_distribution<int> px(0, w - 1), py(0, h - 1);
    cells.insert({px(rng), py(rng)});
    while (static_cast<int>(cells.size()) < target) {
        std::vector<std::pair<int, int>> frontier;
        for (auto [i, j] : cells) {
            const std::pair<int, int> nbrs[4] = {{i + 1, j}, {i - 1, j}, {i, j + 1}, {i, j - 1}};
            for (auto n : nbrs)
                if (n.first >= 0 && n.first < w && n.second >= 0 && n.second < h &&
                    !cells.count(n))
                    frontier.push_back(n);
        }
        if (frontier.empty()) break;
        std::sort(frontier.begin(), frontier.end());
        frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());
        std::uniform_int_distribution<std::size_t> pick(0, frontier.size() - 1);
        cells.insert(frontier[pick(rng)]);
    }

    std::uniform_int_distribution<int> shift(-2, 2);
    VHRegion region{1.0, {static_cast<double>(shift(rng)), static_cast<double>(shift(rng))},
                    {cells.begin(), cells.end()}};
    CombSurface s = grid_mesh(region, 0);

    std::uniform_int_distribution<unsigned> moves(0, max_moves);
    unsigned m = moves(rng);
    for (unsigned i = 0; i < m; ++i) apply_random_move(rng, s);

    std::uniform_real_distribution<double> u(0.0, 1.0);
    if (u(rng) >= keep_geometry) {
        for (CombSurface::Vertex& v : s.vertices) v.xy.reset();
        for (CombSurface::Edge& e : s.edges) e.poly.clear();
    }
    return s;
}

inline CVF random_cvf(Rng& rng, const CombSurface& s, bool integer_valued) {
    std::uniform_int_distribution<int> val(-9, 9), coin(0, 1);
    std::uniform_real_distribution<double> real(-1.0, 1.0);
    CVF f = zero_cvf(s);
    for (CVF::Entry& e : f.entries) {
        e.forward = coin(rng) == 1;
        e.value = integer_valued ? static_cast<double>(val(rng)) : real(rng);
    }
    return f;
}

inline VSF random_vsf(Rng& rng, const CombSurface& s, bool integer_valued) {
    std::uniform_int_distribution<int> val(-9, 9);
    std::uniform_real_distribution<double> real(-1.0, 1.0);
    VSF f = zero_vsf(s);
    for (double& v : f.values) v = integer_valued ? static_cast<double>(val(rng)) : real(rng);
    return f;
}

/// Random loop: a random walk followed by a shortest tree path home.
inline EdgePath random_loop(Rng& rng, const CombSurface& s, unsigned walk_steps = 6) {
    std::vector<std::vector<DirectedEdge>> out(s.vertex_count());
    for (EdgeId e = 0; e < s.edge_count(); ++e) {
        out[s.edges[e].src].push_back({e, true});
        out[s.edges[e].dst].push_back({e, false});
    }
    std::uniform_int_distribution<VertexId> pv(0, static_cast<VertexId>(s.vertex_count() - 1));
    VertexId home = pv(rng);
    EdgePath loop;
    VertexId at = home;
    for (unsigned i = 0; i < walk_steps; ++i) {
        if (out[at].empty()) break;
        std::uniform_int_distribution<std::size_t> pick(0, out[at].size() - 1);
        DirectedEdge d = out[at][pick(rng)];
        loop.steps.push_back(d);
        at = s.sink(d);
    }
    if (at != home) {
        // breadth-first parents from home, neighbors ascending edge id
        std::vector<DirectedEdge> parent_step(s.vertex_count());
        std::vector<VertexId> parent(s.vertex_count(), UINT32_MAX);
        parent[home] = home;
        std::queue<VertexId> q;
        q.push(home);
        while (!q.empty()) {
            VertexId v = q.front();
            q.pop();
            for (const DirectedEdge& d : out[v]) {
                VertexId wv = s.sink(d);
                if (parent[wv] != UINT32_MAX) continue;
                parent[wv] = v;
                parent_step[wv] = d;
                q.push(wv);
            }
        }
        std::vector<DirectedEdge> back;
        VertexId v = at;
        while (v != home) {
            back.push_back(parent_step[v].reversed());
            v = parent[v];
        }
        // back currently walks home -> at in reverse; flip to at -> home
        for (const DirectedEdge& d : back) loop.steps.push_back(d.reversed());
    }
    if (loop.steps.empty() || !is_loop(s, loop)) return random_loop(rng, s, walk_steps + 1);
    return loop;
}

/**
 * Brute-force enumeration of every embedded loop, as directed step
 * sequences. Rotations are canonicalized (the smallest step comes first);
 * a loop and its reversal are both listed. Exponential and intended for
 * meshes with few edges only.
 */
inline std::vector<EdgePath> enumerate_embedded_loops(const CombSurface& s) {
    std::vector<std::vector<DirectedEdge>> out(s.vertex_count());
    for (EdgeId e = 0; e < s.edge_count(); ++e) {
        out[s.edges[e].src].push_back({e, true});
        out[s.edges[e].dst].push_back({e, false});
    }
    auto step_less = [](const DirectedEdge& a, const DirectedEdge& b) {
        return a.edge != b.edge ? a.edge < b.edge : a.forward < b.forward;
    };

    std::vector<EdgePath> loops;
    std::vector<DirectedEdge> steps;
    std::set<VertexId> sinks;

    auto extend = [&](auto&& self, VertexId at, VertexId home,
                      const DirectedEdge& first) -> void {
        for (const DirectedEdge& d : out[at]) {
            if (!steps.empty() && steps.back().edge == d.edge) continue;
            if (step_less(d, first)) continue;  // canonical rotation: first step smallest
            VertexId v = s.sink(d);
            if (sinks.count(v)) continue;
            steps.push_back(d);
            sinks.insert(v);
            if (v == home)
                loops.push_back(EdgePath{steps});
            else
                self(self, v, home, first);
            sinks.erase(v);
            steps.pop_back();
        }
    };

    for (VertexId v = 0; v < s.vertex_count(); ++v)
        for (const DirectedEdge& d : out[v]) {
            VertexId w = s.sink(d);
            steps.push_back(d);
            sinks.insert(w);
            if (w == v)
                loops.push_back(EdgePath{steps});
            else
                extend(extend, w, v, d);
            sinks.clear();
            steps.clear();
        }
    return loops;
}

namespace detail {

struct SuiteReport {
    std::ostream& out;
    int failures = 0;

    void line(const std::string& name, std::size_t cases, const std::string& metric, bool pass) {
        out << name << ": cases=" << cases << " " << metric << " " << (pass ? "PASS" : "FAIL")
            << "\n";
        if (!pass) ++failures;
    }
};

}  // namespace detail

/**
 * Deterministic randomized property suites over the whole library. Prints
 * one line per suite; returns the number of failed suites. Identical seeds
 * give byte-identical output.
 */
inline int run_suite(std::uint64_t seed, std::ostream& out) {
    detail::SuiteReport report{out};
    Quadrature quad;

    // discrete Green identity on random oriented meshes and fields
    {
        Rng rng(seed);
        std::size_t cases = 1000;
        double worst = 0.0;
        for (std::size_t i = 0; i < cases; ++i) {
            CombSurface s = i % 25 == 24 ? (i % 50 == 49 ? pillow_mesh() : annulus_mesh(false))
                                         : random_mesh(rng);
            Orientation o = std::get<Orientation>(orient(s));
            CVF f = random_cvf(rng, s, false);
            double scale = std::max(cvf_abs_sum(f), 1e-300);
            worst = std::max(worst, std::abs(check_whirl_theorem(s, o, f)) / scale);
        }
        report.line("whirl-theorem", cases, "max_scaled_residual=" + fmt_double(worst),
                    worst <= 1e-12);
    }

    // whirl of a tilt field vanishes per face
    {
        Rng rng(seed + 1);
        std::size_t cases = 1000;
        double worst = 0.0;
        for (std::size_t i = 0; i < cases; ++i) {
            CombSurface s = random_mesh(rng);
            Orientation o = std::get<Orientation>(orient(s));
            VSF f = random_vsf(rng, s, false);
            double scale = std::max(vsf_abs_sum(f), 1e-300);
            FSF w = whirl(s, o, tilt(s, f));
            for (double v : w.values) worst = std::max(worst, std::abs(v) / scale);
        }
        report.line("tiltawhirl", cases, "max_scaled_face_value=" + fmt_double(worst),
                    worst <= 1e-12);
    }

    // total ebb vanishes; interior and boundary contributions cancel
    {
        Rng rng(seed + 2);
        std::size_t cases = 500;
        double worst = 0.0;
        for (std::size_t i = 0; i < cases; ++i) {
            CombSurface s = random_mesh(rng);
            CVF f = random_cvf(rng, s, false);
            VSF e = ebb(s, f);
            std::vector<bool> on_boundary(s.vertex_count(), false);
            for (EdgeId b : s.boundary_edges)
                on_boundary[s.edges[b].src] = on_boundary[s.edges[b].dst] = true;
            double interior = 0.0, bound = 0.0;
            for (VertexId v = 0; v < s.vertex_count(); ++v)
                (on_boundary[v] ? bound : interior) += e.values[v];
            double scale = std::max(cvf_abs_sum(f), 1e-300);
            worst = std::max(worst, std::abs(interior + bound) / scale);
        }
        report.line("ebb-total", cases, "max_scaled_sum=" + fmt_double(worst), worst <= 1e-12);
    }

    // sameness is respected by canonicalize, integrals, whirl
    {
        Rng rng(seed + 3);
        std::size_t cases = 300;
        std::size_t bad = 0;
        std::uniform_int_distribution<int> coin(0, 1);
        for (std::size_t i = 0; i < cases; ++i) {
            CombSurface s = random_mesh(rng);
            Orientation o = std::get<Orientation>(orient(s));
            CVF f = random_cvf(rng, s, false);
            CVF g = f;
            for (CVF::Entry& e : g.entries)
                if (coin(rng) == 1) {
                    e.forward = !e.forward;
                    e.value = -e.value;
                }
            if (!cvf_same(s, f, f)) ++bad;
            if (!cvf_same(s, f, g)) ++bad;
            CVF cf = canonicalize(s, f), cg = canonicalize(s, g);
            if (!cvf_same(s, cf, f)) ++bad;
            if (cf.entries.size() != cg.entries.size()) ++bad;
            for (EdgeId e = 0; e < s.edge_count(); ++e)
                if (cf.entries[e].value != cg.entries[e].value ||
                    canonicalize(s, cf).entries[e].value != cf.entries[e].value)
                    ++bad;
            EdgePath loop = random_loop(rng, s);
            if (integrate_path(s, f, loop) != integrate_path(s, g, loop)) ++bad;
            if (integrate_path(s, f, loop) != -integrate_path(s, f, loop.reversed())) ++bad;
            FSF wf = whirl(s, o, f), wg = whirl(s, o, g);
            for (FaceId x = 0; x < s.face_count(); ++x)
                if (wf.values[x] != wg.values[x]) ++bad;
        }
        report.line("cvf-equivalence", cases, "violations=" + std::to_string(bad), bad == 0);
    }

    // loop decomposition preserves integrals and yields embedded loops
    {
        Rng rng(seed + 4);
        std::size_t cases = 300;
        std::size_t bad = 0;
        for (std::size_t i = 0; i < cases; ++i) {
            CombSurface s = random_mesh(rng);
            EdgePath loop = random_loop(rng, s);
            LoopDecomposition dec = decompose_loop(s, loop);
            for (const EdgePath& sub : dec.loops)
                if (!is_loop(s, sub) || !is_embedded(s, sub)) ++bad;
            CVF f = random_cvf(rng, s, true);
            double direct = integrate_path(s, f, loop);
            double split = 0.0;
            for (const EdgePath& sub : dec.loops) split += integrate_path(s, f, sub);
            if (direct != split) ++bad;  // exact for integer-valued fields
        }
        report.line("decompose-loop", cases, "violations=" + std::to_string(bad), bad == 0);
    }

    // conservativity equivalences on small meshes, exhaustive loop oracle
    {
        Rng rng(seed + 5);
        std::vector<CombSurface> small = {disc_mesh(false), theta_mesh(), annulus_mesh(false),
                                          two_triangles_mesh(), pillow_mesh(), mobius_mesh(),
                                          grid_mesh({1.0, {0, 0}, {{0, 0}}}, 0)};
        std::size_t cases = 0, bad = 0;
        for (const CombSurface& s : small) {
            if (s.edge_count() > 8) continue;
            std::vector<EdgePath> loops = enumerate_embedded_loops(s);
            for (int rep = 0; rep < 40; ++rep) {
                CVF f;
                if (rep % 3 == 0)
                    f = tilt(s, random_vsf(rng, s, true));
                else
                    f = random_cvf(rng, s, true);
                ++cases;
                bool oracle = true;
                for (const EdgePath& l : loops)
                    if (integrate_path(s, f, l) != 0.0) oracle = false;
                ConservativityResult c = is_conservative(s, f);
                PotentialResult p = potential(s, f, default_homes(s));
                bool pot_ok = std::holds_alternative<VSF>(p);
                if (c.conservative != oracle || pot_ok != oracle) ++bad;
                if (oracle && !cvf_same(s, tilt(s, std::get<VSF>(p)), f)) ++bad;
                if (!oracle) {
                    if (!c.witness) ++bad;
                    else if (integrate_path(s, f, c.witness->cycle) == 0.0) ++bad;
                }
            }
        }
        report.line("episode-one", cases, "violations=" + std::to_string(bad), bad == 0);
    }

    // orientations induce opposite directions; boundary loops partition
    {
        Rng rng(seed + 6);
        std::size_t cases = 300;
        std::size_t bad = 0;
        for (std::size_t i = 0; i < cases; ++i) {
            CombSurface s = random_mesh(rng);
            Orientation o = std::get<Orientation>(orient(s));
            if (!detail::orientation_consistent(s, o)) ++bad;
            std::vector<EdgeId> covered;
            for (const EdgePath& loop : boundary(s, o)) {
                if (!is_loop(s, loop)) ++bad;
                for (const DirectedEdge& d : loop.steps) covered.push_back(d.edge);
            }
            std::sort(covered.begin(), covered.end());
            if (covered != s.boundary_edges) ++bad;
        }
        report.line("orientation-boundary", cases, "violations=" + std::to_string(bad), bad == 0);
    }

    // euler characteristic and h1 are blind to subdivision
    {
        Rng rng(seed + 7);
        std::size_t cases = 40;
        std::size_t bad = 0;
        for (std::size_t i = 0; i < cases; ++i) {
            CombSurface s = i % 2 == 0 ? annulus_mesh(false) : random_mesh(rng, 6, 0);
            long long chi = euler_characteristic(s);
            auto dims0 = cohomology_dims(cochain_complex(s, std::get<Orientation>(orient(s))));
            for (int m = 0; m < 6; ++m) {
                apply_random_move(rng, s);
                if (!validate(s).ok()) ++bad;
                if (euler_characteristic(s) != chi) ++bad;
            }
            auto dims1 = cohomology_dims(cochain_complex(s, std::get<Orientation>(orient(s))));
            if (dims0.h1 != dims1.h1 || dims0.h0 != dims1.h0) ++bad;
        }
        report.line("subdivision-invariance", cases, "violations=" + std::to_string(bad),
                    bad == 0);
    }

    // cochain complexes: exact identities, duality, component count
    {
        Rng rng(seed + 8);
        std::size_t cases = 40;
        std::size_t bad = 0;
        for (std::size_t i = 0; i < cases; ++i) {
            CombSurface s = i == 0 ? disc_mesh(false)
                           : i == 1 ? annulus_mesh(false)
                           : i == 2 ? pillow_mesh()
                                    : random_mesh(rng, 8, 4);
            Orientation o = std::get<Orientation>(orient(s));
            CochainComplex c = cochain_complex(s, o);
            if (!is_zero(multiply(c.W, c.T))) ++bad;
            if (!is_zero(multiply(c.D1, c.D2))) ++bad;
            CohomologyDims dims = cohomology_dims(c);
            HomologyDims hom = homology_dims(c);
            if (dims.h1 != hom.h_1) ++bad;
            if (dims.h0 != vertex_components(s).second) ++bad;
            long long chi = euler_characteristic(s);
            if (static_cast<long long>(dims.h0) - static_cast<long long>(dims.h1) +
                    static_cast<long long>(dims.h2_quotient) != chi)
                ++bad;
        }
        report.line("cochain-complex", cases, "violations=" + std::to_string(bad), bad == 0);
    }

    // planar surfaces: h1 is one less than the boundary component count
    {
        std::size_t bad = 0;
        for (int k = 0; k <= 3; ++k) {
            CombSurface s = grid_mesh(holes_region(k), 0);
            Orientation o = std::get<Orientation>(orient(s));
            auto dims = cohomology_dims(cochain_complex(s, o));
            if (dims.h1 != static_cast<std::size_t>(k)) ++bad;
            if (boundary(s, o).size() != static_cast<std::size_t>(k) + 1) ++bad;
        }
        report.line("planar-h1", 4, "violations=" + std::to_string(bad), bad == 0);
    }

    // matrix congruence identity on random pairs
    {
        Rng rng(seed + 9);
        std::size_t cases = 1000;
        double worst = 0.0;
        std::uniform_real_distribution<double> entry(-10.0, 10.0);
        for (std::size_t i = 0; i < cases; ++i) {
            Mat2 a{entry(rng), entry(rng), entry(rng), entry(rng)};
            Mat2 b{entry(rng), entry(rng), entry(rng), entry(rng)};
            double na = std::max({std::abs(a.a), std::abs(a.b), std::abs(a.c), std::abs(a.d)});
            double nb = std::max({std::abs(b.a), std::abs(b.b), std::abs(b.c), std::abs(b.d)});
            double bound = 1e-12 * std::max(na * nb * nb, 1e-300);
            worst = std::max(worst, std::abs(congruence_residual(a, b)) / bound);
        }
        report.line("matrix-congruence", cases, "max_residual_over_bound=" + fmt_double(worst),
                    worst <= 1.0);
    }

    // discretized Green identity stays exact while the Riemann gap shrinks
    {
        std::size_t bad = 0;
        std::size_t cases = 0;
        for (const char* name : {"rot", "x2", "trig"}) {
            SmoothField field = builtin_field(name);
            double prev = 0.0;
            for (unsigned n = 0; n <= 3; ++n) {
                GreenRow row = green_residual(lshape_region(), field, n, quad);
                ++cases;
                if (std::abs(row.comb_residual) > 1e-12 * std::max(row.scale, 1e-300)) ++bad;
                if (n > 0 && row.riemann_residual > std::max(prev, 1e-12)) ++bad;
                prev = row.riemann_residual;
            }
        }
        report.line("green-vh", cases, "violations=" + std::to_string(bad), bad == 0);
    }

    // vortex on an annular region: flat whirl, nonzero hole circulation
    {
        SmoothField vortex = builtin_field("vortex");
        CombSurface s = grid_mesh(square_with_hole_region(), 3);
        Orientation o = std::get<Orientation>(orient(s));
        CVF fg = discretize(vortex.eval(), s, quad);
        FSF w = whirl(s, o, fg);
        double max_whirl = 0.0;
        for (double v : w.values) max_whirl = std::max(max_whirl, std::abs(v));
        std::vector<EdgePath> loops = boundary(s, o);
        double hole = 0.0;
        for (const EdgePath& loop : loops) {
            double v = integrate_path(s, fg, loop);
            if (std::abs(v) > std::abs(hole) &&
                std::abs(std::abs(v) - 2.0 * 3.141592653589793) < 1.0)
                hole = v;
        }
        bool conservative = is_conservative(s, fg).conservative;
        bool pass = max_whirl <= 1e-8 &&
                    std::abs(std::abs(hole) - 2.0 * 3.141592653589793) <= 1e-6 && !conservative;
        report.line("vortex-hole", 1,
                    "max_whirl=" + fmt_double(max_whirl) + " hole_loop=" + fmt_double(hole), pass);
    }

    // change of variables across the diffeomorphism catalog
    {
        std::size_t bad = 0, cases = 0;
        for (const char* dname : {"identity", "affine", "affine-flip"}) {
            Diffeo dif = builtin_diffeo(dname);
            for (const char* fname : {"rot", "x2", "grad-r2"}) {
                CovReport r =
                    verify_cov(dif, dif.domain, builtin_field(fname), quad, 8);
                ++cases;
                if (r.line_residual > 1e-10 || r.scurl_residual > 1e-10) ++bad;
            }
        }
        Diffeo osc = builtin_diffeo("oscillating");
        for (const char* fname : {"rot", "x2", "grad-r2"}) {
            CovReport r = verify_cov(osc, osc.domain, builtin_field(fname),
                                     Quadrature{8, 64}, 12);
            ++cases;
            if (r.line_residual > 1e-6 || r.scurl_residual > 1e-4) ++bad;
        }
        report.line("change-of-variables", cases, "violations=" + std::to_string(bad), bad == 0);
    }

    return report.failures;
}

}  // namespace combicalc
