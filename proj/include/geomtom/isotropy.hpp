#pragma once

#include <cstdint>
#include <vector>

#include "geomtom/body.hpp"
#include "geomtom/sphere.hpp"

namespace geomtom {

/// Second-moment matrix of a density on the sphere (frame coordinates for
/// equator quadratures).
struct MomentMatrix {
    Mat matrix;
    double trace = 0.0;
};

struct IsotropyReport {
    double centroid_norm = 0.0;
    double anisotropy = 0.0;        // ||M - (tr M / m) I||_op / (tr M / m)
    double epsilon_estimate = 0.0;  // from epsilon_isotropy
    double epsilon_std_error = 0.0;
    double mass = 0.0;              // integral of f
    double shift = 0.0;             // constant added to make f positive before the eps computation
    bool centroid_flagged = false;
    std::uint64_t seed = 0;
};

struct EpsilonResult {
    double epsilon = 0.0;       // smallest eps >= 0 in the (1+eps) isotropy inequality
    double det_integral = 0.0;  // m-fold determinant-squared integral estimate
    double std_error = 0.0;     // Monte Carlo standard error of det_integral
    double c_bar = 0.0;         // calibration constant (eps = 0 for f == 1)
    bool centroid_flagged = false;
};

Vec centroid(const SphericalFunction& f, const Quadrature& quad);
MomentMatrix moment_matrix(const SphericalFunction& f, const Quadrature& quad);

/// Relative operator-norm deviation of M from the scaled identity.
double anisotropy_of(const Mat& m);

struct IsotropyParams {
    int epsilon_samples = 20000;
    std::uint64_t seed = 0;
    double centroid_tolerance = 1e-6;
};

IsotropyReport isotropy_report(const SphericalFunction& f, const Quadrature& quad,
                               const IsotropyParams& params = {});

/// Smallest eps >= 0 with  int f <= (1+eps) c_bar (det-moment integral)^{1/m}.
/// The m-fold determinant integral is a seeded Monte Carlo over node tuples;
/// c_bar is fixed so that f == 1 gives eps = 0 on the same quadrature.
EpsilonResult epsilon_isotropy(const SphericalFunction& f, const Quadrature& quad, int samples,
                               std::uint64_t seed);

/// Isotropy of a star body via the rho^{n+2} criterion.
IsotropyReport body_isotropy_check(const StarBody& k, const Quadrature& quad,
                                   const IsotropyParams& params = {});

struct EquatorScan {
    std::vector<Vec> poles;
    std::vector<IsotropyReport> reports;
    double max_anisotropy = 0.0;
    double max_epsilon = 0.0;
};

EquatorScan equator_isotropy_scan(const SphericalFunction& f, const std::vector<Vec>& poles,
                                  int resolution, const IsotropyParams& params = {});

/// F_p(x) = (f(x)^p + f(-x)^p) / 2; requires f >= 0; result is even.
SphericalFunction power_symmetrize(const SphericalFunction& f, double p);

/// m-fold determinant-moment integral
///   int...int g(det(x_1..x_m)) f_1(x_1)...f_m(x_m) dx_1...dx_m
/// over the quadrature's sphere (frame coordinates for equator rules), with
/// g = det^2 or |det|. Estimated by seeded Monte Carlo over node tuples.
struct DetMomentResult {
    double value = 0.0;
    double std_error = 0.0;
};
DetMomentResult det_moment_integral(const std::vector<SphericalFunction>& fs, const Quadrature& quad,
                                    int samples, std::uint64_t seed, bool squared = true);

/// Exact determinant-squared moment integral of f == 1 on the quadrature:
/// m! * det(sum_i w_i x_i x_i') by the permutation expansion.
double det_moment_integral_const1(const Quadrature& quad);

}  // namespace geomtom
