#pragma once

#include <functional>
#include <optional>
#include <string>

#include "geomtom/sphere.hpp"

namespace geomtom {

enum class Parity { Even, Odd, None, Unknown };

/// Evaluable real function on a unit sphere; evaluation must be pure.
struct SphericalFunction {
    int dimension = 0;  // ambient dimension of the sphere's coordinates
    std::function<double(const Vec&)> eval;
    Parity parity = Parity::Unknown;

    double operator()(const Vec& x) const { return eval(x); }
};

/// Star body given by a strictly positive radial function.
struct StarBody {
    SphericalFunction radial;
    int dimension() const { return radial.dimension; }
};

/// Convex body given by its support function restricted to the sphere.
struct ConvexBodySupport {
    SphericalFunction support;
    int dimension() const { return support.dimension; }
};

/// Ellipsoid with support function h(u) = sqrt(u' M u), M symmetric positive definite.
struct Ellipsoid {
    Mat form;

    explicit Ellipsoid(Mat m);
    static Ellipsoid from_axes(const Vec& semi_axes);  // M = diag(a_i^2)

    int dimension() const { return static_cast<int>(form.rows()); }
    double support(const Vec& u) const { return std::sqrt(u.dot(form * u)); }
    ConvexBodySupport support_body() const;
    StarBody star_body() const;  // radial rho(u) = 1/sqrt(u' M^{-1} u)
};

// ---- built-in bodies -------------------------------------------------------

StarBody ball_star(int n, double radius);
ConvexBodySupport ball_support(int n, double radius);
StarBody cube_star(int n, double halfwidth);
ConvexBodySupport cube_support(int n, double halfwidth);
/// Support body of E + ball(radius) for an ellipsoid E.
ConvexBodySupport ellipsoid_plus_ball(const Ellipsoid& e, double radius);
/// rho(x) = base * (1 + amplitude * P_degree(<x, axis>)), Legendre polynomial P.
StarBody radial_harmonic_perturbation(int n, double base, double amplitude, int degree, const Vec& axis);

// ---- section / projection / polarity calculus ------------------------------

/// g(v) = f(basis * v) on S^{n-2}, in frame coordinates; parity preserved.
SphericalFunction restrict_to_equator(const SphericalFunction& f, const EquatorFrame& frame);

/// Support function of the projection L|u^perp, in frame coordinates.
SphericalFunction projection_support(const ConvexBodySupport& L, const EquatorFrame& frame);

/// Polar body: radial of L^polar is 1/h_L. Throws degenerate-body domain_error
/// on evaluation where h_L <= 0.
StarBody polar_radial(const ConvexBodySupport& L);

ConvexBodySupport minkowski_sum(const ConvexBodySupport& a, const ConvexBodySupport& b);

struct EllipsoidFit {
    Mat form;         // symmetric least-squares fit of h^2 by x' M x
    double residual;  // relative L2 error of the fit over the quadrature
};
EllipsoidFit fit_ellipsoid(const SphericalFunction& h, const Quadrature& quad);

/// Max over quadrature nodes and coordinate sign flips of |f(sigma x) - f(x)|,
/// coordinates taken in the columns of `basis` (m x m orthonormal).
double unconditionality_residual(const SphericalFunction& f, const Mat& basis, const Quadrature& quad);

/// Max deviation (max - min) of f over circular orbits about `axis`.
double body_of_revolution_residual(const SphericalFunction& f, const Vec& axis, int resolution = 64);

/// Min over a fixed axis grid of the revolution residual; returns the best axis too.
std::pair<double, Vec> min_revolution_residual(const SphericalFunction& f, int axis_resolution = 16,
                                               int resolution = 64);

/// Legendre polynomial P_l(t).
double legendre_p(int l, double t);

}  // namespace geomtom
