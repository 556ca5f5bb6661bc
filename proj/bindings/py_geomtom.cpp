// Python bindings: bodies and groups come in as JSON spec strings (the same
// schema the CLI accepts); reports go out as plain dicts.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>
#include <stdexcept>

#include "geomtom/body_spec.hpp"
#include "geomtom/integral_geometry.hpp"
#include "geomtom/isotropy.hpp"
#include "geomtom/rng.hpp"
#include "geomtom/symmetry.hpp"

namespace py = pybind11;
using json = nlohmann::json;
using namespace geomtom;

namespace {

ParsedBody body_from(const std::string& spec) { return parse_body(json::parse(spec)); }

StarBody star_from(const std::string& spec) {
    ParsedBody body = body_from(spec);
    if (!body.star)
        throw std::invalid_argument("body kind \"" + body.kind + "\" has no radial function");
    return *body.star;
}

ConvexBodySupport support_from(const std::string& spec) {
    ParsedBody body = body_from(spec);
    if (!body.support)
        throw std::invalid_argument("body kind \"" + body.kind + "\" has no support function");
    return *body.support;
}

FiniteSymmetryGroup group_from(const std::string& spec) {
    return parse_group(json::parse(spec));
}

py::dict constants_dict(const ConstantTable& c) {
    py::dict d;
    d["dimension"] = c.dimension;
    d["c_urysohn"] = c.c_urysohn;
    d["c_density"] = c.c_density;
    d["c_legendre"] = c.c_legendre;
    d["c_busemann"] = c.c_busemann;
    d["c_bar"] = c.c_bar;
    d["k_cosine"] = c.k_cosine;
    return d;
}

}  // namespace

PYBIND11_MODULE(_geomtom, m) {
    m.doc() = "numerical geometric tomography: isotropy, sections, and symmetry";

    m.def("sphere_area", &sphere_area, py::arg("n"));

    m.def(
        "calibrate",
        [](int n, int resolution, int samples, std::uint64_t seed) {
            return constants_dict(calibrate_constants(n, resolution, samples, seed));
        },
        py::arg("n") = 3, py::arg("resolution") = 32, py::arg("samples") = 20000,
        py::arg("seed") = 1);

    m.def(
        "body_isotropy",
        [](const std::string& spec, int resolution, int samples, std::uint64_t seed) {
            StarBody k = star_from(spec);
            Quadrature quad = build_sphere_quadrature(k.dimension(), resolution,
                                                      derive_seed(seed, 0));
            IsotropyParams params;
            params.epsilon_samples = samples;
            params.seed = seed;
            IsotropyReport rep = body_isotropy_check(k, quad, params);
            py::dict d;
            d["anisotropy"] = rep.anisotropy;
            d["centroid_norm"] = rep.centroid_norm;
            d["epsilon"] = rep.epsilon_estimate;
            d["epsilon_std_error"] = rep.epsilon_std_error;
            d["mass"] = rep.mass;
            return d;
        },
        py::arg("body"), py::arg("resolution") = 32, py::arg("samples") = 20000,
        py::arg("seed") = 1);

    m.def(
        "theorem_chain",
        [](const std::string& spec, int resolution, int pole_resolution, int samples,
           std::uint64_t seed, double tolerance) {
            ChainConfig config;
            config.resolution = resolution;
            config.pole_resolution = pole_resolution;
            config.samples = samples;
            config.seed = seed;
            config.tolerance = tolerance;
            TheoremChainReport rep = theorem_chain(star_from(spec), config);
            py::dict d;
            d["lhs_mass"] = rep.lhs_mass;
            d["holder_rhs"] = rep.holder_rhs;
            d["surface_rhs"] = rep.surface_rhs;
            d["width_rhs"] = rep.width_rhs;
            d["holder_slack"] = rep.holder_slack;
            d["urysohn_slack"] = rep.urysohn_slack;
            d["closing_slack"] = rep.closing_slack;
            d["ball_consistent"] = rep.ball_consistent;
            return d;
        },
        py::arg("body"), py::arg("resolution") = 24, py::arg("pole_resolution") = 8,
        py::arg("samples") = 20000, py::arg("seed") = 1, py::arg("tolerance") = 1e-3);

    m.def(
        "b_functional",
        [](const std::string& spec, int samples, std::uint64_t seed) {
            McEstimate e = b_functional(star_from(spec), samples, seed);
            return py::make_tuple(e.value, e.std_error);
        },
        py::arg("body"), py::arg("samples") = 200000, py::arg("seed") = 1);

    m.def(
        "b_functional_moment",
        [](const std::string& spec, int resolution) {
            StarBody k = star_from(spec);
            Quadrature quad = build_sphere_quadrature(k.dimension(), resolution);
            return b_functional_moment(k, quad);
        },
        py::arg("body"), py::arg("resolution") = 32);

    m.def(
        "mean_width_functional",
        [](const std::string& spec, int resolution) {
            return mean_width_functional(support_from(spec), resolution);
        },
        py::arg("body"), py::arg("resolution") = 64);

    m.def(
        "centroid_body_support",
        [](const std::string& spec, const Vec& u, int resolution) {
            return centroid_body_support(star_from(spec), u, resolution);
        },
        py::arg("body"), py::arg("u"), py::arg("resolution") = 32);

    m.def(
        "group_info",
        [](const std::string& spec) {
            FiniteSymmetryGroup g = group_from(spec);
            py::dict d;
            d["order"] = g.order();
            d["dimension"] = g.dimension;
            d["complete"] = is_complete(g);
            d["invariant_space_dimension"] = invariant_quadratic_space(g).dimension;
            if (g.dimension == 2) d["planar_complete"] = planar_completeness(g);
            return d;
        },
        py::arg("group"));

    m.def(
        "equator_isotropy_scan",
        [](const std::string& spec, int poles, int resolution, int samples, std::uint64_t seed) {
            StarBody k = star_from(spec);
            int n = k.dimension();
            auto rho = k.radial.eval;
            SphericalFunction f{n, [rho, n](const Vec& x) { return std::pow(rho(x), n + 2); },
                                k.radial.parity};
            IsotropyParams params;
            params.epsilon_samples = samples;
            params.seed = seed;
            EquatorScan scan = equator_isotropy_scan(f, sample_directions(n, poles,
                                                                          derive_seed(seed, 1)),
                                                     resolution, params);
            py::dict d;
            d["max_anisotropy"] = scan.max_anisotropy;
            d["max_epsilon"] = scan.max_epsilon;
            return d;
        },
        py::arg("body"), py::arg("poles") = 32, py::arg("resolution") = 32,
        py::arg("samples") = 20000, py::arg("seed") = 1);
}
