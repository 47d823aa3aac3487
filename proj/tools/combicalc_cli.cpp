// Command-line driver: every verification in the library as a subcommand
// with machine-readable output. Reports go to standard output, diagnostics
// to standard error; exit code 0 means all checks passed, 1 a failed check,
// 2 a configuration or parse error.

#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "combicalc/combicalc.hpp"

namespace {

using namespace combicalc;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

json loops_to_json(const std::vector<EdgePath>& loops) {
    json out = json::array();
    for (const EdgePath& loop : loops) {
        json steps = json::array();
        for (const DirectedEdge& d : loop.steps) steps.push_back({d.edge, d.forward ? 1 : -1});
        out.push_back(steps);
    }
    return out;
}

EdgePath loop_from_json(const std::string& text) {
    json j = detail::parse_json(text, "loop");
    EdgePath p;
    for (const json& step : j) {
        if (!step.is_array() || step.size() != 2)
            throw std::runtime_error("loop: expected [[edgeId, dir], ...]");
        int dir = step[1].get<int>();
        if (dir != 1 && dir != -1) throw std::runtime_error("loop: dir must be 1 or -1");
        p.steps.push_back({step[0].get<EdgeId>(), dir == 1});
    }
    return p;
}

std::pair<unsigned, unsigned> parse_levels(const std::string& text) {
    auto dots = text.find("..");
    if (dots == std::string::npos) {
        unsigned v = static_cast<unsigned>(std::stoul(text));
        return {v, v};
    }
    unsigned a = static_cast<unsigned>(std::stoul(text.substr(0, dots)));
    unsigned b = static_cast<unsigned>(std::stoul(text.substr(dots + 2)));
    if (b < a) throw std::runtime_error("levels: expected A..B with A <= B");
    return {a, b};
}

Rect region_rectangle(const VHRegion& r) {
    if (r.cells.empty()) throw std::runtime_error("region: empty");
    int ilo = r.cells[0].first, ihi = ilo, jlo = r.cells[0].second, jhi = jlo;
    for (auto [i, j] : r.cells) {
        ilo = std::min(ilo, i);
        ihi = std::max(ihi, i);
        jlo = std::min(jlo, j);
        jhi = std::max(jhi, j);
    }
    std::size_t expect =
        static_cast<std::size_t>(ihi - ilo + 1) * static_cast<std::size_t>(jhi - jlo + 1);
    std::set<std::pair<int, int>> unique(r.cells.begin(), r.cells.end());
    if (unique.size() != expect || unique.size() != r.cells.size())
        throw std::runtime_error("region: cells must tile a full rectangle for this check");
    return {{r.origin.x + r.h0 * ilo, r.origin.y + r.h0 * jlo},
            {r.origin.x + r.h0 * (ihi + 1), r.origin.y + r.h0 * (jhi + 1)}};
}

struct Options {
    std::string mesh_path, field_path, region_path;
    std::string builtin_field, builtin_diffeo;
    std::string levels = "0..0";
    std::string loop_json;
    std::string format = "csv";  // table subcommands; reports are always JSON
    unsigned quad_order = 8, quad_panels = 4, samples = 16;
    std::uint64_t seed = 0;
    std::vector<VertexId> homes;
    std::vector<double> point;
    double h0 = 1.0;
    double line_tol = 1e-6, scurl_tol = 1e-4;

    CombSurface mesh() const { return load_mesh(read_file(mesh_path)); }
    VHRegion region() const { return load_region(read_file(region_path)); }
    FieldFile field() const { return load_field(read_file(field_path)); }
    SmoothField smooth() const { return builtin_field_checked(); }
    SmoothField builtin_field_checked() const {
        if (builtin_field.empty())
            throw std::runtime_error("this check needs --builtin-field");
        return combicalc::builtin_field(builtin_field);
    }
    Quadrature quad() const { return {quad_order, quad_panels}; }
};

Orientation orient_or_fail(const CombSurface& s) {
    OrientResult r = orient(s);
    if (std::holds_alternative<NonOrientableWitness>(r))
        throw std::runtime_error("surface is not orientable");
    return std::get<Orientation>(r);
}

int cmd_validate(const Options& opt) {
    ValidationReport r = validate(opt.mesh());
    json out{{"valid", r.ok()}};
    out["violations"] = json::array();
    for (const Violation& v : r.violations)
        out["violations"].push_back(
            {{"axiom", axiom_name(v.axiom)}, {"id", v.id}, {"detail", v.detail}});
    std::cout << out.dump(2) << "\n";
    return r.ok() ? kExitPass : kExitFail;
}

int cmd_orient(const Options& opt) {
    OrientResult r = orient(opt.mesh());
    if (std::holds_alternative<Orientation>(r)) {
        const Orientation& o = std::get<Orientation>(r);
        json signs = json::array();
        for (std::int8_t s : o.face_sign) signs.push_back(static_cast<int>(s));
        std::cout << json{{"orientable", true}, {"face_signs", signs}}.dump(2) << "\n";
        return kExitPass;
    }
    const NonOrientableWitness& w = std::get<NonOrientableWitness>(r);
    std::cout << json{{"orientable", false}, {"witness_faces", w.face_cycle}}.dump(2) << "\n";
    return kExitFail;
}

int cmd_euler(const Options& opt) {
    std::cout << json{{"chi", euler_characteristic(opt.mesh())}}.dump(2) << "\n";
    return kExitPass;
}

int cmd_boundary(const Options& opt) {
    CombSurface s = opt.mesh();
    std::cout << json{{"loops", loops_to_json(boundary(s, orient_or_fail(s)))}}.dump(2) << "\n";
    return kExitPass;
}

int cmd_cohomology(const Options& opt) {
    CombSurface s = opt.mesh();
    CochainComplex c = cochain_complex(s, orient_or_fail(s));
    CohomologyDims d = cohomology_dims(c);
    HomologyDims h = homology_dims(c);
    json out{{"h0", d.h0},
             {"h1", d.h1},
             {"h2", d.h2},
             {"h2_quotient", d.h2_quotient},
             {"homology", {h.h_0, h.h_1, h.h_2}},
             {"chi", euler_characteristic(s)}};
    std::cout << out.dump(2) << "\n";
    return kExitPass;
}

int cmd_homology(const Options& opt) {
    CombSurface s = opt.mesh();
    HomologyDims h = homology_dims(cochain_complex(s, orient_or_fail(s)));
    std::cout << json{{"homology", {h.h_0, h.h_1, h.h_2}}}.dump(2) << "\n";
    return kExitPass;
}

int cmd_whirl_check(const Options& opt) {
    CombSurface s = opt.mesh();
    CVF f = as_cvf(opt.field(), s);
    double residual = check_whirl_theorem(s, orient_or_fail(s), f);
    double bound = 1e-12 * cvf_abs_sum(f);
    bool pass = std::abs(residual) <= bound;
    std::cout << json{{"residual", residual}, {"bound", bound}, {"pass", pass}}.dump(2) << "\n";
    return pass ? kExitPass : kExitFail;
}

int cmd_tiltawhirl_check(const Options& opt) {
    CombSurface s = opt.mesh();
    VSF f = as_vsf(opt.field(), s);
    FSF w = whirl(s, orient_or_fail(s), tilt(s, f));
    double worst = 0.0;
    for (double v : w.values) worst = std::max(worst, std::abs(v));
    double bound = 1e-12 * vsf_abs_sum(f);
    bool pass = worst <= bound;
    std::cout << json{{"max_face_value", worst}, {"bound", bound}, {"pass", pass}}.dump(2)
              << "\n";
    return pass ? kExitPass : kExitFail;
}

json witness_to_json(const FailureWitness& w) {
    json steps = json::array();
    for (const DirectedEdge& d : w.cycle.steps) steps.push_back({d.edge, d.forward ? 1 : -1});
    return {{"cycle", steps}, {"integral", w.integral}};
}

int cmd_conservative(const Options& opt) {
    CombSurface s = opt.mesh();
    ConservativityResult r = is_conservative(s, as_cvf(opt.field(), s));
    json out{{"conservative", r.conservative}};
    if (r.witness) out["witness"] = witness_to_json(*r.witness);
    std::cout << out.dump(2) << "\n";
    return kExitPass;
}

int cmd_potential(const Options& opt) {
    CombSurface s = opt.mesh();
    std::vector<VertexId> homes = opt.homes.empty() ? default_homes(s) : opt.homes;
    PotentialResult r = potential(s, as_cvf(opt.field(), s), homes);
    if (std::holds_alternative<VSF>(r)) {
        std::cout << json{{"ok", true},
                          {"potential", json::parse(save_vsf(std::get<VSF>(r)))}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << json{{"ok", false}, {"witness", witness_to_json(std::get<FailureWitness>(r))}}
                         .dump(2)
                  << "\n";
    }
    return kExitPass;
}

int cmd_decompose_loop(const Options& opt) {
    CombSurface s = opt.mesh();
    LoopDecomposition d = decompose_loop(s, loop_from_json(opt.loop_json));
    std::cout << json{{"loops", loops_to_json(d.loops)},
                      {"backtrack_pairs", d.backtrack_pairs_removed}}
                     .dump(2)
              << "\n";
    return kExitPass;
}

int cmd_discretize(const Options& opt) {
    CombSurface s = opt.mesh();
    CVF f = discretize(opt.smooth().eval(), s, opt.quad());
    std::cout << save_cvf(f) << "\n";
    return kExitPass;
}

int cmd_converge_curl(const Options& opt) {
    if (opt.point.size() != 2)
        throw std::runtime_error("converge-curl needs --point X Y");
    auto [lo, hi] = parse_levels(opt.levels);
    std::vector<unsigned> levels;
    for (unsigned n = lo; n <= hi; ++n) levels.push_back(n);
    SmoothField field = opt.smooth();
    std::vector<ConvergenceRow> rows =
        whirl_curl_convergence(field, {opt.point[0], opt.point[1]}, opt.h0, levels, opt.quad());

    bool pass = true;
    const ConvergenceRow& last = rows.back();
    double floor = 1e-12 * std::max(1.0, std::abs(last.target));
    if (std::abs(last.error) > std::max(2.0 * last.h, floor)) pass = false;

    if (opt.format == "csv") {
        std::cout << "level,h,lhs,rhs,residual\n";
        for (const ConvergenceRow& r : rows)
            std::cout << r.level << "," << fmt_double(r.h) << "," << fmt_double(r.value) << ","
                      << fmt_double(r.target) << "," << fmt_double(std::abs(r.error)) << "\n";
    } else {
        json out = json::array();
        for (const ConvergenceRow& r : rows)
            out.push_back({{"level", r.level},
                           {"h", r.h},
                           {"whirl_over_area", r.value},
                           {"scurl", r.target},
                           {"error", r.error}});
        std::cout << json{{"rows", out}, {"pass", pass}}.dump(2) << "\n";
    }
    if (!pass) std::cerr << "converge-curl: final error exceeds 2*h\n";
    return pass ? kExitPass : kExitFail;
}

int cmd_mvt_check(const Options& opt) {
    VHRegion region = opt.region();
    MvtCheck r = mvt_interval_check(opt.smooth(), region_rectangle(region), opt.samples,
                                    opt.quad());
    std::cout << json{{"circulation_over_area", r.circulation_over_area},
                      {"lo", r.lo},
                      {"hi", r.hi},
                      {"contained", r.contained}}
                     .dump(2)
              << "\n";
    return r.contained ? kExitPass : kExitFail;
}

int cmd_green(const Options& opt) {
    auto [lo, hi] = parse_levels(opt.levels);
    VHRegion region = opt.region();
    SmoothField field = opt.smooth();
    bool pass = true;
    std::vector<GreenRow> rows;
    for (unsigned n = lo; n <= hi; ++n) {
        GreenRow row = green_residual(region, field, n, opt.quad());
        if (std::abs(row.comb_residual) > 1e-12 * std::max(row.scale, 1e-300)) {
            pass = false;
            std::cerr << "green: discrete identity residual out of bounds at level " << n << "\n";
        }
        rows.push_back(row);
    }
    if (opt.format == "csv") {
        std::cout << "level,h,lhs,rhs,residual\n";
        for (const GreenRow& r : rows)
            std::cout << r.level << "," << fmt_double(r.h) << "," << fmt_double(r.lhs) << ","
                      << fmt_double(r.rhs) << "," << fmt_double(r.riemann_residual) << "\n";
    } else {
        json out = json::array();
        for (const GreenRow& r : rows)
            out.push_back({{"level", r.level},
                           {"h", r.h},
                           {"lhs", r.lhs},
                           {"rhs", r.rhs},
                           {"riemann_residual", r.riemann_residual},
                           {"comb_residual", r.comb_residual},
                           {"scale", r.scale}});
        std::cout << json{{"rows", out}, {"pass", pass}}.dump(2) << "\n";
    }
    return pass ? kExitPass : kExitFail;
}

int cmd_cov_check(const Options& opt) {
    if (opt.builtin_diffeo.empty())
        throw std::runtime_error("cov-check needs --builtin-diffeo");
    Diffeo dif = builtin_diffeo(opt.builtin_diffeo);
    CovReport r = verify_cov(dif, dif.domain, opt.smooth(), opt.quad(), opt.samples);
    bool pass = r.line_residual <= opt.line_tol && r.scurl_residual <= opt.scurl_tol;
    std::cout << json{{"epsilon", r.epsilon},
                      {"line_residual", r.line_residual},
                      {"scurl_residual", r.scurl_residual},
                      {"boundary_integral_image", r.boundary_integral_image},
                      {"boundary_integral_pullback", r.boundary_integral_pullback},
                      {"pass", pass}}
                     .dump(2)
              << "\n";
    return pass ? kExitPass : kExitFail;
}

int cmd_suite(const Options& opt) {
    int failures = run_suite(opt.seed, std::cout);
    return failures == 0 ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"combinatorial vector calculus: combinatorial surfaces, the coarse\n"
                 "tilt/ebb/whirl operators, simplicial (co)homology, and a refinement\n"
                 "harness checking the discrete theory against smooth planar fields"};
    app.require_subcommand(1);

    if (const char* env = std::getenv("COMBICALC_THREADS")) {
        unsigned n = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
        combicalc::set_max_threads(n == 0 ? 1 : n);
    }

    Options opt;
    std::function<int(const Options&)> action;

    auto add = [&](const std::string& name, const std::string& desc,
                   int (*fn)(const Options&)) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->callback([&action, fn] { action = fn; });
        return sub;
    };

    auto mesh_opt = [&](CLI::App* sub) {
        sub->add_option("--mesh", opt.mesh_path, "mesh file (JSON)")->required();
    };
    auto field_opt = [&](CLI::App* sub) {
        sub->add_option("--field", opt.field_path, "field file (JSON)")->required();
    };
    auto smooth_opt = [&](CLI::App* sub, bool required = true) {
        auto* o = sub->add_option("--builtin-field", opt.builtin_field,
                                  "analytic field from the built-in catalog");
        if (required) o->required();
    };
    auto quad_opts = [&](CLI::App* sub) {
        sub->add_option("--quad-order", opt.quad_order, "Gauss-Legendre order per panel");
        sub->add_option("--quad-panels", opt.quad_panels, "panels per segment");
    };
    auto format_opt = [&](CLI::App* sub) {
        sub->add_option("--format", opt.format, "output format: json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
    };

    mesh_opt(add("validate", "check the surface axioms", cmd_validate));
    mesh_opt(add("orient", "orient the surface or exhibit a conflict", cmd_orient));
    mesh_opt(add("euler", "Euler characteristic", cmd_euler));
    mesh_opt(add("boundary", "induced boundary loops", cmd_boundary));
    mesh_opt(add("cohomology", "cohomology dimensions and exact rank data", cmd_cohomology));
    mesh_opt(add("homology", "homology dimensions", cmd_homology));

    {
        CLI::App* sub = add("whirl-check", "discrete Green identity residual", cmd_whirl_check);
        mesh_opt(sub);
        field_opt(sub);
    }
    {
        CLI::App* sub = add("tiltawhirl-check", "whirl of a tilt field vanishes",
                            cmd_tiltawhirl_check);
        mesh_opt(sub);
        field_opt(sub);
    }
    {
        CLI::App* sub = add("conservative", "is the field a tilt field?", cmd_conservative);
        mesh_opt(sub);
        field_opt(sub);
    }
    {
        CLI::App* sub = add("potential", "reconstruct a potential or a witness", cmd_potential);
        mesh_opt(sub);
        field_opt(sub);
        sub->add_option("--home", opt.homes, "home vertex per component");
    }
    {
        CLI::App* sub = add("decompose-loop", "split a loop into embedded loops",
                            cmd_decompose_loop);
        mesh_opt(sub);
        sub->add_option("--loop", opt.loop_json, "loop as JSON [[edgeId,dir],...]")->required();
    }
    {
        CLI::App* sub = add("discretize", "induced combinatorial field on a mesh",
                            cmd_discretize);
        mesh_opt(sub);
        smooth_opt(sub);
        quad_opts(sub);
    }
    {
        CLI::App* sub = add("converge-curl", "circulation/area converges to the scalar curl",
                            cmd_converge_curl);
        smooth_opt(sub);
        sub->add_option("--point", opt.point, "evaluation point X Y")->expected(2)->required();
        sub->add_option("--h0", opt.h0, "base square side");
        sub->add_option("--levels", opt.levels, "refinement levels A..B");
        quad_opts(sub);
        format_opt(sub);
        opt.format = "csv";
    }
    {
        CLI::App* sub = add("mvt-check", "circulation/area lies in the sampled scurl range",
                            cmd_mvt_check);
        sub->add_option("--region", opt.region_path, "region file (JSON, full rectangle)")
            ->required();
        smooth_opt(sub);
        sub->add_option("--samples", opt.samples, "sample grid size");
        quad_opts(sub);
    }
    {
        CLI::App* sub = add("green", "Green identity across refinement levels", cmd_green);
        sub->add_option("--region", opt.region_path, "region file (JSON)")->required();
        smooth_opt(sub);
        sub->add_option("--levels", opt.levels, "refinement levels A..B");
        quad_opts(sub);
        format_opt(sub);
    }
    {
        CLI::App* sub = add("cov-check", "change-of-variables identities", cmd_cov_check);
        sub->add_option("--builtin-diffeo", opt.builtin_diffeo,
                        "diffeomorphism from the built-in catalog")
            ->required();
        smooth_opt(sub);
        sub->add_option("--samples", opt.samples, "scurl sample grid size");
        sub->add_option("--line-tol", opt.line_tol, "line residual tolerance");
        sub->add_option("--scurl-tol", opt.scurl_tol, "scurl residual tolerance");
        quad_opts(sub);
    }
    {
        CLI::App* sub = add("suite", "all randomized property suites", cmd_suite);
        sub->add_option("--seed", opt.seed, "random seed");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ? kExitPass
                                                                                 : kExitConfig;
    }

    // green/converge-curl default to CSV tables unless asked otherwise
    try {
        return action(opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}
