#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace geomtom {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Unit vector on S^{n-1}; renormalized on construction.
struct Direction {
    Vec coords;

    explicit Direction(Vec v);
    int dim() const { return static_cast<int>(coords.size()); }
};

/// Surface measure of S^{n-1} (4*pi for n=3, 2*pi for n=2, 2*pi^2 for n=4).
double sphere_area(int n);

/// Orthonormal basis of the hyperplane u^perp, deterministic in u.
struct EquatorFrame {
    Vec pole;    // unit vector u
    Mat basis;   // n x (n-1), orthonormal columns spanning u^perp

    int ambient_dim() const { return static_cast<int>(pole.size()); }
    /// Map frame coordinates v in R^{n-1} to the ambient vector in u^perp.
    Vec lift(const Vec& v) const { return basis * v; }
    /// Frame coordinates of an ambient vector lying in u^perp.
    Vec project(const Vec& x) const { return basis.transpose() * x; }
};

/// Node/weight rule for integration over S^{n-1} or over an equator.
/// For equator rules the nodes are ambient points of S^{n-1} \cap u^perp
/// and `frame` carries the coordinate chart of the equator.
struct Quadrature {
    int dimension = 0;           // ambient dimension n
    Mat nodes;                   // N x n, unit rows
    Vec weights;                 // positive, sums to total_mass
    double total_mass = 0.0;
    std::optional<EquatorFrame> frame;  // set for equator rules

    int size() const { return static_cast<int>(nodes.rows()); }
    /// Dimension of the sphere's ambient coordinate chart: n for a full
    /// sphere rule, n-1 for an equator rule expressed in frame coordinates.
    int intrinsic_dim() const { return frame ? dimension - 1 : dimension; }
    /// Node i in chart coordinates (frame coordinates for equator rules).
    Vec chart_node(int i) const {
        Vec x = nodes.row(i).transpose();
        return frame ? frame->project(x) : x;
    }

    template <class F>
    double integrate(F&& f) const {
        double acc = 0.0;
        for (int i = 0; i < size(); ++i) acc += weights[i] * f(Vec(nodes.row(i).transpose()));
        return acc;
    }
};

/// Quadrature on S^{n-1}. n = 2 uses a uniform circle rule, n = 3 a
/// Gauss-Legendre (polar) x uniform (azimuth) product grid exact for
/// polynomials of degree <= 2*resolution, n >= 4 a seeded Monte Carlo rule.
Quadrature build_sphere_quadrature(int n, int resolution, std::uint64_t seed = 0);

/// Deterministic orthonormal basis of u^perp (Gram-Schmidt seeded from the
/// standard basis, skipping the axis of largest |u_i|, ties to lowest index).
EquatorFrame equator_frame(const Vec& u);

/// Quadrature over S^{n-1} \cap u^perp, total mass = area of S^{n-2};
/// an (n-1)-dimensional sphere rule mapped through the frame basis.
Quadrature equator_quadrature(const EquatorFrame& frame, int resolution, std::uint64_t seed = 0);

/// Reproducible pseudo-uniform directions (normalized Gaussian vectors).
std::vector<Vec> sample_directions(int n, int count, std::uint64_t seed);

/// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int m, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace geomtom
