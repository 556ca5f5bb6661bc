#include "geomtom/body.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace geomtom {

namespace {
constexpr double kPi = std::numbers::pi;

Parity combine_parity(Parity a, Parity b) {
    if (a == b) return a;
    if (a == Parity::Unknown || b == Parity::Unknown) return Parity::Unknown;
    return Parity::None;
}
}  // namespace

double legendre_p(int l, double t) {
    if (l < 0) throw std::invalid_argument("legendre_p: negative degree");
    double p0 = 1.0, p1 = t;
    if (l == 0) return p0;
    for (int k = 2; k <= l; ++k) {
        double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

Ellipsoid::Ellipsoid(Mat m) : form(std::move(m)) {
    if (form.rows() != form.cols()) throw std::invalid_argument("Ellipsoid: form must be square");
    if ((form - form.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("Ellipsoid: form must be symmetric");
    Eigen::SelfAdjointEigenSolver<Mat> es(form);
    if (es.eigenvalues().minCoeff() <= 0.0)
        throw std::invalid_argument("Ellipsoid: form must be positive definite");
}

Ellipsoid Ellipsoid::from_axes(const Vec& semi_axes) {
    Mat m = Mat::Zero(semi_axes.size(), semi_axes.size());
    for (int i = 0; i < semi_axes.size(); ++i) {
        if (!(semi_axes[i] > 0.0)) throw std::invalid_argument("Ellipsoid: axes must be positive");
        m(i, i) = semi_axes[i] * semi_axes[i];
    }
    return Ellipsoid(std::move(m));
}

ConvexBodySupport Ellipsoid::support_body() const {
    Mat m = form;
    return {SphericalFunction{dimension(), [m](const Vec& u) { return std::sqrt(u.dot(m * u)); },
                              Parity::Even}};
}

StarBody Ellipsoid::star_body() const {
    Mat minv = form.inverse();
    return {SphericalFunction{dimension(),
                              [minv](const Vec& u) { return 1.0 / std::sqrt(u.dot(minv * u)); },
                              Parity::Even}};
}

StarBody ball_star(int n, double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("ball: radius must be positive");
    return {SphericalFunction{n, [radius](const Vec&) { return radius; }, Parity::Even}};
}

ConvexBodySupport ball_support(int n, double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("ball: radius must be positive");
    return {SphericalFunction{n, [radius](const Vec&) { return radius; }, Parity::Even}};
}

StarBody cube_star(int n, double halfwidth) {
    return {SphericalFunction{
        n, [halfwidth](const Vec& u) { return halfwidth / u.cwiseAbs().maxCoeff(); }, Parity::Even}};
}

ConvexBodySupport cube_support(int n, double halfwidth) {
    return {SphericalFunction{
        n, [halfwidth](const Vec& u) { return halfwidth * u.cwiseAbs().sum(); }, Parity::Even}};
}

ConvexBodySupport ellipsoid_plus_ball(const Ellipsoid& e, double radius) {
    return minkowski_sum(e.support_body(), ball_support(e.dimension(), radius));
}

StarBody radial_harmonic_perturbation(int n, double base, double amplitude, int degree, const Vec& axis) {
    Vec a = Direction(axis).coords;
    if (a.size() != n) throw std::invalid_argument("radial_harmonic_perturbation: axis dimension mismatch");
    Parity parity = (degree % 2 == 0) ? Parity::Even : Parity::None;
    auto eval = [base, amplitude, degree, a](const Vec& x) {
        return base * (1.0 + amplitude * legendre_p(degree, a.dot(x)));
    };
    // Keep the radial function strictly positive.
    if (std::abs(amplitude) >= 1.0)
        throw std::invalid_argument("radial_harmonic_perturbation: |amplitude| must be < 1");
    return {SphericalFunction{n, eval, parity}};
}

SphericalFunction restrict_to_equator(const SphericalFunction& f, const EquatorFrame& frame) {
    if (f.dimension != frame.ambient_dim())
        throw std::invalid_argument("restrict_to_equator: dimension mismatch");
    Mat basis = frame.basis;
    auto eval = f.eval;
    return {frame.ambient_dim() - 1, [basis, eval](const Vec& v) { return eval(basis * v); }, f.parity};
}

SphericalFunction projection_support(const ConvexBodySupport& L, const EquatorFrame& frame) {
    return restrict_to_equator(L.support, frame);
}

StarBody polar_radial(const ConvexBodySupport& L) {
    auto h = L.support.eval;
    auto eval = [h](const Vec& x) {
        double v = h(x);
        if (!(v > 0.0)) throw std::domain_error("polar_radial: degenerate body (nonpositive support)");
        return 1.0 / v;
    };
    return {SphericalFunction{L.dimension(), eval, L.support.parity}};
}

ConvexBodySupport minkowski_sum(const ConvexBodySupport& a, const ConvexBodySupport& b) {
    if (a.dimension() != b.dimension()) throw std::invalid_argument("minkowski_sum: dimension mismatch");
    auto ha = a.support.eval, hb = b.support.eval;
    return {SphericalFunction{a.dimension(), [ha, hb](const Vec& x) { return ha(x) + hb(x); },
                              combine_parity(a.support.parity, b.support.parity)}};
}

EllipsoidFit fit_ellipsoid(const SphericalFunction& h, const Quadrature& quad) {
    int m = quad.intrinsic_dim();
    int d = m * (m + 1) / 2;
    // Weighted least squares of h(x)^2 on the monomials x_i x_j.
    Mat ata = Mat::Zero(d, d);
    Vec atb = Vec::Zero(d);
    double bb = 0.0;
    for (int i = 0; i < quad.size(); ++i) {
        Vec x = quad.chart_node(i);
        double w = quad.weights[i];
        double y = h(x);
        double y2 = y * y;
        Vec phi(d);
        int k = 0;
        for (int a = 0; a < m; ++a)
            for (int b = a; b < m; ++b) phi[k++] = (a == b) ? x[a] * x[a] : 2.0 * x[a] * x[b];
        ata += w * phi * phi.transpose();
        atb += w * y2 * phi;
        bb += w * y2 * y2;
    }
    Vec c = ata.ldlt().solve(atb);
    Mat form = Mat::Zero(m, m);
    int k = 0;
    for (int a = 0; a < m; ++a)
        for (int b = a; b < m; ++b) {
            form(a, b) = c[k];
            form(b, a) = c[k];
            ++k;
        }
    double sq_err = std::max(0.0, bb - 2.0 * c.dot(atb) + c.dot(ata * c));
    double residual = (bb > 0.0) ? std::sqrt(sq_err / bb) : 0.0;
    return {form, residual};
}

double unconditionality_residual(const SphericalFunction& f, const Mat& basis, const Quadrature& quad) {
    int m = static_cast<int>(basis.cols());
    if (basis.rows() != m) throw std::invalid_argument("unconditionality_residual: basis must be square");
    double worst = 0.0;
    int flips = 1 << m;
    for (int i = 0; i < quad.size(); ++i) {
        Vec x = quad.chart_node(i);
        Vec c = basis.transpose() * x;
        double f0 = f(x);
        for (int s = 1; s < flips; ++s) {
            Vec cs = c;
            for (int j = 0; j < m; ++j)
                if (s & (1 << j)) cs[j] = -cs[j];
            worst = std::max(worst, std::abs(f(basis * cs) - f0));
        }
    }
    return worst;
}

double body_of_revolution_residual(const SphericalFunction& f, const Vec& axis, int resolution) {
    if (f.dimension != 3) throw std::invalid_argument("body_of_revolution_residual: requires n = 3");
    EquatorFrame frame = equator_frame(axis);
    Vec a = frame.pole;
    double worst = 0.0;
    for (int i = 0; i <= resolution; ++i) {
        double theta = kPi * i / resolution;
        double ct = std::cos(theta), st = std::sin(theta);
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (int j = 0; j < 2 * resolution; ++j) {
            double phi = 2.0 * kPi * j / (2 * resolution);
            Vec x = ct * a + st * (std::cos(phi) * frame.basis.col(0) + std::sin(phi) * frame.basis.col(1));
            double v = f(x);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        worst = std::max(worst, hi - lo);
    }
    return worst;
}

std::pair<double, Vec> min_revolution_residual(const SphericalFunction& f, int axis_resolution,
                                               int resolution) {
    Quadrature grid = build_sphere_quadrature(3, axis_resolution);
    double best = std::numeric_limits<double>::infinity();
    Vec best_axis = Vec::Zero(3);
    for (int i = 0; i < grid.size(); ++i) {
        Vec a = grid.nodes.row(i).transpose();
        double r = body_of_revolution_residual(f, a, resolution);
        if (r < best) {
            best = r;
            best_axis = a;
        }
    }
    return {best, best_axis};
}

}  // namespace geomtom
