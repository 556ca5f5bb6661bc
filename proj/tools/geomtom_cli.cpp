// geomtom: reproducible experiments over star bodies, symmetry groups, and the
// sectional-isotropy machinery, with machine-readable JSON reports.
//
// Exit codes: 0 all checks pass, 1 at least one check fails, 2 usage/config error.

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <nlohmann/json.hpp>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "geomtom/body_spec.hpp"
#include "geomtom/rng.hpp"
#include "geomtom/integral_geometry.hpp"
#include "geomtom/isotropy.hpp"
#include "geomtom/symmetry.hpp"

using json = nlohmann::json;
using namespace geomtom;

namespace {

constexpr const char* kSchemaVersion = "1.0";
constexpr double kPi = std::numbers::pi;

struct CommonOpts {
    int dim = 3;
    int resolution = 32;
    int poles = 64;
    int samples = 20000;
    std::uint64_t seed = 1;
    std::string body;
    std::string group;
    std::string out;
    std::vector<std::string> tolerance_args;
};

void add_common_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--dim", o.dim, "ambient dimension");
    cmd->add_option("--resolution", o.resolution, "quadrature resolution");
    cmd->add_option("--poles", o.poles, "number of sampled poles");
    cmd->add_option("--samples", o.samples, "Monte Carlo samples");
    cmd->add_option("--seed", o.seed, "master seed");
    cmd->add_option("--body", o.body, "body: builtin name or JSON file");
    cmd->add_option("--group", o.group, "group: builtin name or JSON file");
    cmd->add_option("--out", o.out, "report output path (default: stdout)");
    cmd->add_option("--tolerance", o.tolerance_args, "override a tolerance, name=value")
        ->type_name("NAME=VALUE");
}

/// Tolerances used by a command; every threshold echoes into the report.
class Tolerances {
  public:
    Tolerances(const std::vector<std::string>& args) {
        for (const std::string& a : args) {
            auto eq = a.find('=');
            if (eq == std::string::npos || eq == 0)
                throw CLI::ValidationError("--tolerance expects name=value, got \"" + a + "\"");
            overrides_[a.substr(0, eq)] = std::stod(a.substr(eq + 1));
        }
    }

    double get(const std::string& name, double fallback) {
        auto it = overrides_.find(name);
        double v = (it != overrides_.end()) ? it->second : fallback;
        used_[name] = v;
        return v;
    }

    json echo() const { return json(used_); }

  private:
    std::map<std::string, double> overrides_;
    std::map<std::string, double> used_;
};

json load_spec(const std::string& arg, const std::string& default_kind_field) {
    if (arg.find('{') != std::string::npos) return json::parse(arg);  // inline JSON
    std::ifstream in(arg);
    if (in.good()) return json::parse(in);
    return json{{default_kind_field, arg}};  // builtin name
}

ParsedBody resolve_body(const CommonOpts& o) {
    json spec = o.body.empty() ? json{{"kind", "ball"}} : load_spec(o.body, "kind");
    if (spec.is_object() && spec.contains("kind") && !spec.contains("dim")) spec["dim"] = o.dim;
    return parse_body(spec);
}

FiniteSymmetryGroup resolve_group(const CommonOpts& o) {
    json spec = o.group.empty() ? json{{"name", "cube"}, {"dim", o.dim}} : load_spec(o.group, "name");
    if (spec.is_object() && spec.contains("name") && !spec.contains("dim")) spec["dim"] = o.dim;
    return parse_group(spec);
}

json config_echo(const std::string& command, const CommonOpts& o, const Tolerances& tol) {
    return json{{"command", command},
                {"dimension", o.dim},
                {"resolution", o.resolution},
                {"poles", o.poles},
                {"samples", o.samples},
                {"seed", o.seed},
                {"body", o.body.empty() ? "ball" : o.body},
                {"group", o.group.empty() ? "cube" : o.group},
                {"tolerances", tol.echo()}};
}

json constants_json(const ConstantTable& c) {
    return json{{"dimension", c.dimension}, {"c_urysohn", c.c_urysohn},
                {"c_density", c.c_density}, {"c_legendre", c.c_legendre},
                {"c_busemann", c.c_busemann}, {"c_bar", c.c_bar},
                {"k_cosine", c.k_cosine},    {"resolution", c.resolution},
                {"mc_samples", c.mc_samples}, {"seed", c.seed}};
}

struct ReportBuilder {
    json checks = json::array();
    bool all_pass = true;

    void add(const std::string& name, bool pass, json values, json tolerance = nullptr) {
        json c{{"name", name}, {"pass", pass}, {"values", std::move(values)}};
        if (!tolerance.is_null()) c["tolerance"] = std::move(tolerance);
        checks.push_back(std::move(c));
        all_pass = all_pass && pass;
    }

    void info(const std::string& name, json values) {
        checks.push_back(json{{"name", name}, {"values", std::move(values)}});
    }
};

int emit(const std::string& command, const CommonOpts& o, const Tolerances& tol, ReportBuilder& rb,
         std::optional<json> constants, double wall_seconds) {
    json report{{"schema_version", kSchemaVersion},
                {"command", command},
                {"config", config_echo(command, o, tol)},
                {"checks", rb.checks},
                {"pass", rb.all_pass},
                {"wall_time_seconds", wall_seconds}};
    if (constants) report["constants"] = *constants;

    std::string text = report.dump(2) + "\n";
    if (o.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(o.out);
        if (!out.good()) throw std::runtime_error("cannot write report to " + o.out);
        out << text;
        for (const auto& c : rb.checks)
            if (c.contains("pass"))
                std::cout << (c["pass"].get<bool>() ? "PASS " : "FAIL ")
                          << c["name"].get<std::string>() << "\n";
        std::cout << (rb.all_pass ? "PASS" : "FAIL") << " " << command << " -> " << o.out << "\n";
    }
    return rb.all_pass ? 0 : 1;
}

StarBody require_star(const ParsedBody& body) {
    if (body.star) return *body.star;
    throw std::invalid_argument("body kind \"" + body.kind +
                                "\" has no radial representation for this command");
}

// ---- subcommands -----------------------------------------------------------

int run_calibrate(const CommonOpts& o, Tolerances tol) {
    auto t0 = std::chrono::steady_clock::now();
    ConstantTable c = calibrate_constants(o.dim, o.resolution, o.samples, o.seed);
    ConstantTable c2 = calibrate_constants(o.dim, o.resolution, o.samples, o.seed);

    ReportBuilder rb;
    // closed forms: k = 2 |S^{n-2}| / (n-1), Urysohn constant of the unit ball
    double k_exact = 2.0 * sphere_area(o.dim - 1) / (o.dim - 1);
    double k_tol = tol.get("k_cosine", 1e-8);
    rb.add("k_cosine_closed_form", std::abs(c.k_cosine - k_exact) < k_tol,
           {{"k_cosine", c.k_cosine}, {"closed_form", k_exact}}, {{"k_cosine", k_tol}});

    double area = sphere_area(o.dim);
    double u_exact = std::pow(area, 1.0 / (o.dim - 1)) / area;
    double u_tol = tol.get("c_urysohn", 1e-12);
    rb.add("c_urysohn_closed_form", std::abs(c.c_urysohn - u_exact) < u_tol,
           {{"c_urysohn", c.c_urysohn}, {"closed_form", u_exact}}, {{"c_urysohn", u_tol}});

    bool reproducible = c.c_bar == c2.c_bar && c.c_density == c2.c_density &&
                        c.c_legendre == c2.c_legendre && c.c_busemann == c2.c_busemann &&
                        c.k_cosine == c2.k_cosine;
    rb.add("table_reproducible", reproducible, {{"bitwise_equal", reproducible}});

    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return emit("calibrate", o, tol, rb, constants_json(c), wall);
}

int run_isotropy(const CommonOpts& o, Tolerances tol) {
    auto t0 = std::chrono::steady_clock::now();
    StarBody k = require_star(resolve_body(o));
    int n = k.dimension();
    Quadrature quad = build_sphere_quadrature(n, o.resolution, derive_seed(o.seed, 0));

    IsotropyParams params;
    params.seed = o.seed;
    params.epsilon_samples = o.samples;
    double aniso_tol = tol.get("anisotropy", 1e-6);
    double centroid_tol = tol.get("centroid", 1e-6);
    params.centroid_tolerance = centroid_tol;

    ReportBuilder rb;
    IsotropyReport body_rep = body_isotropy_check(k, quad, params);
    rb.add("body_isotropy", body_rep.anisotropy < aniso_tol,
           {{"anisotropy", body_rep.anisotropy}, {"epsilon", body_rep.epsilon_estimate}},
           {{"anisotropy", aniso_tol}});
    rb.add("body_centered", !body_rep.centroid_flagged, {{"centroid_norm", body_rep.centroid_norm}},
           {{"centroid", centroid_tol}});

    auto rho = k.radial.eval;
    SphericalFunction f{n, [rho, n](const Vec& x) { return std::pow(rho(x), n + 2); },
                        k.radial.parity};
    auto poles = sample_directions(n, o.poles, derive_seed(o.seed, 1));
    EquatorScan scan = equator_isotropy_scan(f, poles, o.resolution, params);
    json per_pole = json::array();
    for (std::size_t i = 0; i < scan.reports.size(); ++i)
        per_pole.push_back({{"pole", std::vector<double>(scan.poles[i].data(),
                                                         scan.poles[i].data() + n)},
                            {"anisotropy", scan.reports[i].anisotropy},
                            {"epsilon", scan.reports[i].epsilon_estimate}});
    rb.add("equator_isotropy", scan.max_anisotropy < aniso_tol,
           {{"max_anisotropy", scan.max_anisotropy}, {"max_epsilon", scan.max_epsilon},
            {"per_pole", per_pole}},
           {{"anisotropy", aniso_tol}});

    StabilityConfig sc;
    sc.resolution = o.resolution;
    sc.equator_resolution = o.resolution;
    sc.samples = o.samples;
    sc.seed = o.seed;
    double dev_tol = tol.get("sup_dev", 1e-6);
    StabilityReport stab = stability_deviation(f, poles, sc);
    rb.add("cosine_transform_constant", stab.sup_dev < dev_tol,
           {{"sup_dev", stab.sup_dev}, {"eps_max", stab.eps_max}, {"delta", stab.delta},
            {"k_cosine", stab.k_cosine}, {"contradiction_flag", stab.contradiction_flag}},
           {{"sup_dev", dev_tol}});

    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return emit("isotropy", o, tol, rb, std::nullopt, wall);
}

int run_theorem_chain(const CommonOpts& o, Tolerances tol) {
    auto t0 = std::chrono::steady_clock::now();
    StarBody k = require_star(resolve_body(o));

    ChainConfig config;
    config.resolution = o.resolution;
    config.pole_resolution = std::max(4, o.resolution / 4);
    config.samples = o.samples;
    config.seed = o.seed;
    config.tolerance = tol.get("slack", 1e-3);

    TheoremChainReport rep = theorem_chain(k, config);
    ReportBuilder rb;
    rb.add("ball_equality_case", rep.ball_consistent,
           {{"lhs_mass", rep.lhs_mass}, {"holder_rhs", rep.holder_rhs},
            {"surface_rhs", rep.surface_rhs}, {"width_rhs", rep.width_rhs},
            {"holder_slack", rep.holder_slack}, {"urysohn_slack", rep.urysohn_slack},
            {"closing_slack", rep.closing_slack}, {"urysohn_gap", rep.urysohn_gap}},
           {{"slack", config.tolerance}});

    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return emit("theorem-chain", o, tol, rb, std::nullopt, wall);
}

int run_symmetry(const CommonOpts& o, Tolerances tol) {
    auto t0 = std::chrono::steady_clock::now();
    FiniteSymmetryGroup g = resolve_group(o);
    int n = g.dimension;

    ReportBuilder rb;
    InvariantQuadraticSpace space = invariant_quadratic_space(g);
    bool complete = is_complete(g);
    rb.info("group", {{"order", g.order()}, {"dimension", n},
                      {"invariant_space_dimension", space.dimension}, {"complete", complete}});

    if (n == 2) {
        bool planar = planar_completeness(g);
        rb.add("planar_criterion_agrees", planar == complete,
               {{"planar", planar}, {"linear_algebra", complete}});
    }

    // isotropy consequence on an invariant test function
    Quadrature quad = build_sphere_quadrature(n, o.resolution, derive_seed(o.seed, 0));
    StarBody k = require_star(resolve_body(o));
    if (k.dimension() != n) throw std::invalid_argument("body and group dimensions disagree");
    auto rho = k.radial.eval;
    SphericalFunction f0{n, [rho, n](const Vec& x) { return std::pow(rho(x), n + 2); },
                         k.radial.parity};
    std::vector<Mat> elems = g.elements;
    auto base = f0.eval;
    SphericalFunction f{n, [base, elems](const Vec& x) {
        double acc = 0.0;
        for (const Mat& t : elems) acc += base(t * x);
        return acc / elems.size();
    }, Parity::None};

    IsotropyParams params;
    params.seed = o.seed;
    params.epsilon_samples = o.samples;
    double inv_tol = tol.get("invariance", 1e-8);
    double aniso_tol = tol.get("anisotropy", 1e-6);
    CompleteSymmetryReport rep = complete_symmetry_check(f, g, quad, params);
    bool invariant = rep.max_invariance_residual < inv_tol;
    bool isotropic = rep.isotropy.anisotropy < aniso_tol;
    rb.add("complete_invariance_implies_isotropy", !(rep.complete && invariant) || isotropic,
           {{"complete", rep.complete}, {"max_invariance_residual", rep.max_invariance_residual},
            {"moment_form_residual", rep.moment_form_residual},
            {"anisotropy", rep.isotropy.anisotropy}, {"centroid_norm", rep.centroid_norm}},
           {{"invariance", inv_tol}, {"anisotropy", aniso_tol}});

    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return emit("symmetry", o, tol, rb, std::nullopt, wall);
}

int run_counterexample(const CommonOpts& o, Tolerances tol) {
    auto t0 = std::chrono::steady_clock::now();
    CommonOpts opts = o;
    if (opts.body.empty())
        opts.body = R"({"kind":"ellipsoid_plus_ball","axes":[1,2,3],"radius":1.0})";
    ParsedBody body = resolve_body(opts);
    if (!body.support)
        throw std::invalid_argument("counterexample needs a convex body with a support function");
    ConvexBodySupport k = *body.support;
    if (k.dimension() != 3) throw std::invalid_argument("counterexample requires dimension 3");

    Quadrature quad = build_sphere_quadrature(3, o.resolution, derive_seed(o.seed, 0));
    ReportBuilder rb;

    double fit_tol = tol.get("ellipsoid_fit", 1e-3);
    EllipsoidFit fit = fit_ellipsoid(k.support, quad);
    rb.add("not_an_ellipsoid", fit.residual > fit_tol, {{"fit_residual", fit.residual}},
           {{"ellipsoid_fit", fit_tol}});

    double rev_tol = tol.get("revolution", 1e-3);
    auto [rev_residual, rev_axis] = min_revolution_residual(k.support);
    rb.add("not_a_body_of_revolution", rev_residual > rev_tol,
           {{"revolution_residual", rev_residual},
            {"best_axis", std::vector<double>(rev_axis.data(), rev_axis.data() + 3)}},
           {{"revolution", rev_tol}});

    // projections in their principal bases are unconditional
    double unc_tol = tol.get("unconditionality", 1e-8);
    Quadrature circle = build_sphere_quadrature(2, o.resolution);
    auto principal_basis = [&](const SphericalFunction& h) {
        Mat q = Mat::Zero(2, 2);
        for (int i = 0; i < circle.size(); ++i) {
            Vec v = circle.nodes.row(i).transpose();
            double hv = h(v);
            q += circle.weights[i] * hv * hv * (v * v.transpose());
        }
        Eigen::SelfAdjointEigenSolver<Mat> es(q);
        return Mat(es.eigenvectors());
    };
    auto poles = sample_directions(3, o.poles, derive_seed(o.seed, 1));
    double worst_proj = 0.0, worst_sec = 0.0;
    StarBody polar = polar_radial(k);
    for (const Vec& u : poles) {
        EquatorFrame frame = equator_frame(u);
        SphericalFunction proj = projection_support(k, frame);
        worst_proj = std::max(worst_proj,
                              unconditionality_residual(proj, principal_basis(proj), circle));
        // polar-body sections mirror the projections under polarity
        SphericalFunction sec = restrict_to_equator(polar.radial, frame);
        worst_sec = std::max(worst_sec,
                             unconditionality_residual(sec, principal_basis(sec), circle));
    }
    rb.add("projections_unconditional", worst_proj < unc_tol,
           json{{"max_residual", worst_proj}, {"poles", static_cast<int>(poles.size())}},
           json{{"unconditionality", unc_tol}});
    rb.add("polar_sections_unconditional", worst_sec < unc_tol,
           json{{"max_residual", worst_sec}}, json{{"unconditionality", unc_tol}});

    // constant-width companion value: oscillation of h + h(-.)
    auto h = k.support.eval;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int i = 0; i < quad.size(); ++i) {
        Vec x = quad.nodes.row(i).transpose();
        double w = h(x) + h(-x);
        lo = std::min(lo, w);
        hi = std::max(hi, w);
    }
    rb.info("width_function", {{"min", lo}, {"max", hi}, {"oscillation", hi - lo}});

    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return emit("counterexample", opts, tol, rb, std::nullopt, wall);
}

int run_busemann(const CommonOpts& o, Tolerances tol) {
    auto t0 = std::chrono::steady_clock::now();
    StarBody k = require_star(resolve_body(o));
    int n = k.dimension();
    ConstantTable constants = calibrate_constants(n, o.resolution, o.samples, derive_seed(o.seed, 0));
    Quadrature poles = build_sphere_quadrature(n, std::max(4, o.resolution / 4),
                                               derive_seed(o.seed, 1));

    ReportBuilder rb;
    double rel_tol = tol.get("busemann", 1e-3);

    std::vector<SphericalFunction> ones(n - 1,
                                        SphericalFunction{n, [](const Vec&) { return 1.0; },
                                                          Parity::Even});
    BusemannResult cal = busemann_check(ones, poles, o.resolution, o.samples, derive_seed(o.seed, 2),
                                        constants);
    rb.add("calibration_identity", cal.rel_err < rel_tol,
           {{"lhs", cal.lhs}, {"rhs", cal.rhs}, {"rel_err", cal.rel_err}}, {{"busemann", rel_tol}});

    auto rho = k.radial.eval;
    std::vector<SphericalFunction> fs(
        n - 1, SphericalFunction{n, [rho, n](const Vec& x) { return std::pow(rho(x), n + 2); },
                                 k.radial.parity});
    BusemannResult res = busemann_check(fs, poles, o.resolution, o.samples, derive_seed(o.seed, 3),
                                        constants);
    rb.add("body_identity", res.rel_err < rel_tol,
           {{"lhs", res.lhs}, {"rhs", res.rhs}, {"rel_err", res.rel_err}}, {{"busemann", rel_tol}});

    // rigidity branches on constructed pairs
    RigidityConfig rc;
    rc.resolution = o.resolution;
    SphericalFunction f{n, [rho, n](const Vec& x) { return std::pow(rho(x), n + 2) + x[0]; },
                        Parity::None};
    auto fe = f.eval;
    SphericalFunction g{n, [fe](const Vec& x) { return fe(-x); }, Parity::None};
    auto rig_poles = sample_directions(n, std::min(o.poles, 32), derive_seed(o.seed, 4));
    RigidityReport requal = two_function_rigidity(f, f, rig_poles, rc);
    RigidityReport ranti = two_function_rigidity(f, g, rig_poles, rc);
    rb.add("rigidity_branches",
           requal.verdict == RigidityVerdict::Equal && ranti.verdict == RigidityVerdict::Antipodal,
           {{"equal_residual", requal.residual_equal},
            {"antipodal_residual", ranti.residual_antipodal}});

    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return emit("busemann", o, tol, rb, constants_json(constants), wall);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"geomtom: numerical geometric tomography experiments"};
    app.require_subcommand(1);

    CommonOpts opts;
    auto* c_cal = app.add_subcommand("calibrate", "compute and verify the constant table");
    auto* c_iso = app.add_subcommand("isotropy", "equator isotropy scan of a body");
    auto* c_chain = app.add_subcommand("theorem-chain", "inequality chain of the main theorem");
    auto* c_sym = app.add_subcommand("symmetry", "group completeness and isotropy consequence");
    auto* c_ctr = app.add_subcommand("counterexample", "unconditional-sections counterexample");
    auto* c_bus = app.add_subcommand("busemann", "Busemann identity and rigidity");
    for (auto* c : {c_cal, c_iso, c_chain, c_sym, c_ctr, c_bus}) add_common_flags(c, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        Tolerances tol(opts.tolerance_args);
        if (c_cal->parsed()) return run_calibrate(opts, std::move(tol));
        if (c_iso->parsed()) return run_isotropy(opts, std::move(tol));
        if (c_chain->parsed()) return run_theorem_chain(opts, std::move(tol));
        if (c_sym->parsed()) return run_symmetry(opts, std::move(tol));
        if (c_ctr->parsed()) return run_counterexample(opts, std::move(tol));
        if (c_bus->parsed()) return run_busemann(opts, std::move(tol));
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
