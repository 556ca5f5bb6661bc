#pragma once

#include <vector>

#include "geomtom/isotropy.hpp"
#include "geomtom/sphere.hpp"

namespace geomtom {

/// Finite subgroup of O(n), closed under composition and inverse,
/// deduplicated at tolerance 1e-8 and containing the identity.
struct FiniteSymmetryGroup {
    int dimension = 0;
    std::vector<Mat> elements;
    std::vector<Mat> generators;

    int order() const { return static_cast<int>(elements.size()); }
};

/// Breadth-first closure of the generators under multiplication.
/// Throws if the closure exceeds max_order (infinite or huge group).
FiniteSymmetryGroup group_closure(const std::vector<Mat>& generators, int max_order = 20000);

struct InvariantQuadraticSpace {
    int dimension = 0;           // dim { A symmetric : T' A T = A for all T in G }
    std::vector<Mat> basis;      // orthonormal (Frobenius) basis of the space
};

/// Fixed-point space of the conjugation action on symmetric matrices;
/// singular-value threshold 1e-8 for the rank decision.
InvariantQuadraticSpace invariant_quadratic_space(const FiniteSymmetryGroup& g);

/// True iff only multiples of the identity are G-invariant quadratic forms,
/// i.e. every ellipsoid whose symmetry group contains G is a ball.
bool is_complete(const FiniteSymmetryGroup& g);

/// Planar criterion: G <= O(2) is complete iff it contains a rotation
/// different from +-Id.
bool planar_completeness(const FiniteSymmetryGroup& g);

/// max over quadrature nodes of |f(Tx) - f(x)|.
double invariance_residual(const SphericalFunction& f, const Mat& t, const Quadrature& quad);

struct CompleteSymmetryReport {
    double centroid_norm = 0.0;
    double max_invariance_residual = 0.0;  // over the group's generators
    bool complete = false;
    double moment_form_residual = 0.0;     // max_T ||T' M T - M|| for the moment matrix M
    IsotropyReport isotropy;               // cross-validation of the isotropy consequence
};

CompleteSymmetryReport complete_symmetry_check(const SphericalFunction& f, const FiniteSymmetryGroup& g,
                                               const Quadrature& quad, const IsotropyParams& params = {});

struct RotationEquatorReport {
    std::vector<Vec> poles;
    std::vector<double> residuals;  // in-plane rotation invariance residual per pole
    double max_residual = 0.0;
    double oscillation = 0.0;       // global max f - min f over the sphere grid
};

/// For each pole u, measures the invariance residual of f on the equator of u
/// under the in-plane rotation by angle_map(u); n = 3 only. Angles 0 and pi
/// are rejected.
RotationEquatorReport rotation_equator_check(const SphericalFunction& f,
                                             const std::function<double(const Vec&)>& angle_map,
                                             const std::vector<Vec>& poles, int resolution = 64);

// ---- built-in groups -------------------------------------------------------

/// Signed permutations (symmetry group of the n-cube), order 2^n n!.
FiniteSymmetryGroup cube_group(int n);
/// Symmetry group of the regular n-simplex centered at the origin, order (n+1)!.
FiniteSymmetryGroup simplex_group(int n);
/// Full icosahedral group in R^3, order 120.
FiniteSymmetryGroup icosahedral_group();
/// Dihedral group of order 2k in R^2.
FiniteSymmetryGroup dihedral_group(int k);
/// Cyclic rotation group of order k in R^2.
FiniteSymmetryGroup cyclic_group(int k);

}  // namespace geomtom
