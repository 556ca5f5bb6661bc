#pragma once

#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>

#include "geomtom/body.hpp"
#include "geomtom/symmetry.hpp"

namespace geomtom {

/// A body parsed from a definition file; not every kind has both
/// representations (e.g. ellipsoid_plus_ball is support-only).
struct ParsedBody {
    std::string kind;
    std::optional<StarBody> star;
    std::optional<ConvexBodySupport> support;
    std::optional<Ellipsoid> ellipsoid;
};

/// Body definition schema:
///   {"kind":"ball","dim":3,"radius":1.0}
///   {"kind":"ellipsoid","axes":[1,2,3]}
///   {"kind":"cube","dim":3,"halfwidth":1.0}
///   {"kind":"ellipsoid_plus_ball","axes":[1,2,3],"radius":1.0}
///   {"kind":"radial_harmonic_perturbation","dim":3,"base":1.0,
///    "amplitude":0.1,"degree":2,"axis":[0,0,1]}
ParsedBody parse_body(const nlohmann::json& spec);

/// Group definition schema: {"name":"cube","dim":3}, {"name":"dihedral-5"},
/// {"name":"simplex","dim":3}, {"name":"icosahedral"}, or
/// {"generators":[[[...],[...]],...], "max_order": 20000}.
FiniteSymmetryGroup parse_group(const nlohmann::json& spec);

}  // namespace geomtom
