#include "geomtom/symmetry.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace geomtom {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMatchTol = 1e-8;

bool same_matrix(const Mat& a, const Mat& b) {
    return (a - b).cwiseAbs().maxCoeff() < kMatchTol;
}

void require_orthogonal(const Mat& t) {
    int n = static_cast<int>(t.rows());
    if (t.cols() != n) throw std::invalid_argument("group element must be square");
    if ((t.transpose() * t - Mat::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("group element must be orthogonal");
}

Mat rotation2(double angle) {
    Mat r(2, 2);
    r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
    return r;
}

/// Rodrigues rotation about a unit axis in R^3.
Mat rotation3(const Vec& axis, double angle) {
    Vec a = Direction(axis).coords;
    Mat k(3, 3);
    k << 0, -a[2], a[1], a[2], 0, -a[0], -a[1], a[0], 0;
    return Mat::Identity(3, 3) + std::sin(angle) * k + (1.0 - std::cos(angle)) * k * k;
}

}  // namespace

FiniteSymmetryGroup group_closure(const std::vector<Mat>& generators, int max_order) {
    if (generators.empty()) throw std::invalid_argument("group_closure: no generators");
    int n = static_cast<int>(generators.front().rows());
    for (const Mat& g : generators) {
        require_orthogonal(g);
        if (g.rows() != n) throw std::invalid_argument("group_closure: mixed dimensions");
    }

    FiniteSymmetryGroup group;
    group.dimension = n;
    group.generators = generators;
    group.elements.push_back(Mat::Identity(n, n));

    auto contains = [&](const Mat& m) {
        return std::any_of(group.elements.begin(), group.elements.end(),
                           [&](const Mat& e) { return same_matrix(e, m); });
    };

    std::vector<Mat> frontier = group.elements;
    while (!frontier.empty()) {
        std::vector<Mat> next;
        for (const Mat& e : frontier) {
            for (const Mat& g : generators) {
                Mat m = g * e;
                if (!contains(m)) {
                    if (static_cast<int>(group.elements.size()) >= max_order)
                        throw std::runtime_error("group_closure: order exceeds max_order");
                    group.elements.push_back(m);
                    next.push_back(m);
                }
            }
        }
        frontier = std::move(next);
    }
    return group;
}

InvariantQuadraticSpace invariant_quadratic_space(const FiniteSymmetryGroup& g) {
    int n = g.dimension;
    int d = n * (n + 1) / 2;

    // Orthonormal (Frobenius) basis of symmetric matrices.
    std::vector<Mat> sym_basis;
    sym_basis.reserve(d);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Mat e = Mat::Zero(n, n);
            if (i == j) {
                e(i, i) = 1.0;
            } else {
                e(i, j) = e(j, i) = 1.0 / std::sqrt(2.0);
            }
            sym_basis.push_back(e);
        }

    const std::vector<Mat>& gens = g.generators.empty() ? g.elements : g.generators;
    Mat system(static_cast<int>(gens.size()) * d, d);
    int row = 0;
    for (const Mat& t : gens) {
        for (int c = 0; c < d; ++c) {
            Mat img = t.transpose() * sym_basis[c] * t - sym_basis[c];
            for (int r = 0; r < d; ++r)
                system(row + r, c) = (img.array() * sym_basis[r].array()).sum();
        }
        row += d;
    }

    Eigen::JacobiSVD<Mat> svd(system, Eigen::ComputeFullV);
    double smax = svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
    double tol = 1e-8 * std::max(1.0, smax);
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()[i] > tol) ++rank;

    InvariantQuadraticSpace space;
    space.dimension = d - rank;
    for (int c = rank; c < d; ++c) {
        Mat a = Mat::Zero(n, n);
        for (int r = 0; r < d; ++r) a += svd.matrixV()(r, c) * sym_basis[r];
        space.basis.push_back(a);
    }
    return space;
}

bool is_complete(const FiniteSymmetryGroup& g) {
    return invariant_quadratic_space(g).dimension == 1;
}

bool planar_completeness(const FiniteSymmetryGroup& g) {
    if (g.dimension != 2) throw std::invalid_argument("planar_completeness: requires n = 2");
    Mat id = Mat::Identity(2, 2);
    for (const Mat& t : g.elements) {
        if (t.determinant() < 0.0) continue;  // reflections
        if (!same_matrix(t, id) && !same_matrix(t, Mat(-id))) return true;
    }
    return false;
}

double invariance_residual(const SphericalFunction& f, const Mat& t, const Quadrature& quad) {
    if (f.dimension != t.rows()) throw std::invalid_argument("invariance_residual: dimension mismatch");
    double worst = 0.0;
    for (int i = 0; i < quad.size(); ++i) {
        Vec x = quad.nodes.row(i).transpose();
        worst = std::max(worst, std::abs(f(t * x) - f(x)));
    }
    return worst;
}

CompleteSymmetryReport complete_symmetry_check(const SphericalFunction& f, const FiniteSymmetryGroup& g,
                                               const Quadrature& quad, const IsotropyParams& params) {
    CompleteSymmetryReport rep;
    rep.centroid_norm = centroid(f, quad).norm();
    const std::vector<Mat>& gens = g.generators.empty() ? g.elements : g.generators;
    for (const Mat& t : gens)
        rep.max_invariance_residual = std::max(rep.max_invariance_residual, invariance_residual(f, t, quad));
    rep.complete = is_complete(g);

    // The quadratic form u' M u of the moment matrix is the h_E^2 of the proof;
    // it must be G-invariant, hence a multiple of identity when G is complete.
    Mat m = moment_matrix(f, quad).matrix;
    for (const Mat& t : gens)
        rep.moment_form_residual =
            std::max(rep.moment_form_residual, (t.transpose() * m * t - m).cwiseAbs().maxCoeff());

    rep.isotropy = isotropy_report(f, quad, params);
    return rep;
}

RotationEquatorReport rotation_equator_check(const SphericalFunction& f,
                                             const std::function<double(const Vec&)>& angle_map,
                                             const std::vector<Vec>& poles, int resolution) {
    if (f.dimension != 3) throw std::invalid_argument("rotation_equator_check: requires n = 3");
    RotationEquatorReport rep;
    for (const Vec& u : poles) {
        EquatorFrame frame = equator_frame(u);
        double angle = angle_map(frame.pole);
        double mod = std::fmod(std::abs(angle), 2.0 * kPi);
        if (mod < 1e-12 || std::abs(mod - kPi) < 1e-12 || std::abs(mod - 2.0 * kPi) < 1e-12)
            throw std::invalid_argument("rotation_equator_check: angle must differ from 0 and pi");
        Mat rot = rotation2(angle);
        double worst = 0.0;
        for (int j = 0; j < resolution; ++j) {
            double th = 2.0 * kPi * j / resolution;
            Vec v(2);
            v << std::cos(th), std::sin(th);
            worst = std::max(worst, std::abs(f(frame.lift(rot * v)) - f(frame.lift(v))));
        }
        rep.poles.push_back(frame.pole);
        rep.residuals.push_back(worst);
        rep.max_residual = std::max(rep.max_residual, worst);
    }
    Quadrature quad = build_sphere_quadrature(3, 32);
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int i = 0; i < quad.size(); ++i) {
        double v = f(quad.nodes.row(i).transpose());
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    rep.oscillation = hi - lo;
    return rep;
}

FiniteSymmetryGroup cube_group(int n) {
    if (n < 2) throw std::invalid_argument("cube_group: n must be >= 2");
    std::vector<Mat> gens;
    Mat flip = Mat::Identity(n, n);
    flip(0, 0) = -1.0;
    gens.push_back(flip);
    Mat swap01 = Mat::Identity(n, n);
    swap01(0, 0) = swap01(1, 1) = 0.0;
    swap01(0, 1) = swap01(1, 0) = 1.0;
    gens.push_back(swap01);
    if (n > 2) {
        Mat cycle = Mat::Zero(n, n);
        for (int i = 0; i < n; ++i) cycle((i + 1) % n, i) = 1.0;
        gens.push_back(cycle);
    }
    int order = 1;
    for (int i = 1; i <= n; ++i) order *= 2 * i;
    return group_closure(gens, order + 1);
}

FiniteSymmetryGroup simplex_group(int n) {
    if (n < 2) throw std::invalid_argument("simplex_group: n must be >= 2");
    // Unit vertices v_0..v_n of the regular simplex; sum v_i v_i' = (n+1)/n I,
    // so the orthogonal map sending v_i to v_{pi(i)} is (n/(n+1)) V_pi V'.
    Mat v(n, n + 1);
    {
        // Recursive construction: v_i = e_i adjusted to equal pairwise angles.
        double c = -1.0 / n;
        Mat gram = Mat::Constant(n + 1, n + 1, c);
        gram.diagonal().setOnes();
        Eigen::SelfAdjointEigenSolver<Mat> es(gram);
        Mat half = es.eigenvectors() *
                   es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
        // gram has rank n; take the n significant columns.
        v = half.rightCols(n).transpose();
    }
    auto perm_matrix = [&](const std::vector<int>& pi) {
        Mat vp(n, n + 1);
        for (int i = 0; i <= n; ++i) vp.col(i) = v.col(pi[i]);
        return Mat((static_cast<double>(n) / (n + 1)) * vp * v.transpose());
    };
    std::vector<int> transp(n + 1), cycle(n + 1);
    for (int i = 0; i <= n; ++i) transp[i] = cycle[i] = i;
    std::swap(transp[0], transp[1]);
    std::rotate(cycle.begin(), cycle.begin() + 1, cycle.end());
    int order = 1;
    for (int i = 2; i <= n + 1; ++i) order *= i;
    return group_closure({perm_matrix(transp), perm_matrix(cycle)}, order + 1);
}

FiniteSymmetryGroup icosahedral_group() {
    double phi = 0.5 * (1.0 + std::sqrt(5.0));
    Vec axis(3);
    axis << 0.0, 1.0, phi;
    Mat five = rotation3(axis, 2.0 * kPi / 5.0);
    Mat cycle = Mat::Zero(3, 3);
    cycle(1, 0) = cycle(2, 1) = cycle(0, 2) = 1.0;
    Mat minus = -Mat::Identity(3, 3);
    return group_closure({five, cycle, minus}, 121);
}

FiniteSymmetryGroup dihedral_group(int k) {
    if (k < 1) throw std::invalid_argument("dihedral_group: k must be >= 1");
    Mat refl(2, 2);
    refl << 1, 0, 0, -1;
    return group_closure({rotation2(2.0 * kPi / k), refl}, 2 * k + 1);
}

FiniteSymmetryGroup cyclic_group(int k) {
    if (k < 1) throw std::invalid_argument("cyclic_group: k must be >= 1");
    return group_closure({rotation2(2.0 * kPi / k)}, k + 1);
}

}  // namespace geomtom
