#include "geomtom/sphere.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "geomtom/rng.hpp"

namespace geomtom {

namespace {
constexpr double kPi = std::numbers::pi;
}

Direction::Direction(Vec v) : coords(std::move(v)) {
    double norm = coords.norm();
    if (!(norm > 1e-14)) throw std::invalid_argument("Direction: zero vector");
    coords /= norm;
}

double sphere_area(int n) {
    if (n < 1) throw std::invalid_argument("sphere_area: n < 1");
    return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
}

void gauss_legendre(int m, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(m, 0.0);
    weights.assign(m, 0.0);
    for (int i = 0; i < m; ++i) {
        // Chebyshev initial guess + Newton on P_m.
        double x = std::cos(kPi * (i + 0.75) / (m + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= m; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = m * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
}

Quadrature build_sphere_quadrature(int n, int resolution, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("build_sphere_quadrature: dimension must be >= 2");
    if (resolution < 1) throw std::invalid_argument("build_sphere_quadrature: resolution must be >= 1");

    Quadrature q;
    q.dimension = n;

    if (n == 2) {
        // Uniform circle rule, exact for trigonometric degree < N.
        int N = std::max(4, 4 * resolution);
        q.nodes.resize(N, 2);
        q.weights = Vec::Constant(N, 2.0 * kPi / N);
        for (int i = 0; i < N; ++i) {
            double th = 2.0 * kPi * i / N;
            q.nodes(i, 0) = std::cos(th);
            q.nodes(i, 1) = std::sin(th);
        }
    } else if (n == 3) {
        // Gauss-Legendre in cos(theta) x uniform in phi; exact for
        // polynomials of degree <= 2*resolution restricted to S^2.
        int mt = resolution + 1;
        int mp = 2 * resolution + 2;
        std::vector<double> t, wt;
        gauss_legendre(mt, t, wt);
        int N = mt * mp;
        q.nodes.resize(N, 3);
        q.weights.resize(N);
        int idx = 0;
        for (int i = 0; i < mt; ++i) {
            double s = std::sqrt(std::max(0.0, 1.0 - t[i] * t[i]));
            for (int j = 0; j < mp; ++j) {
                double phi = 2.0 * kPi * j / mp;
                q.nodes(idx, 0) = s * std::cos(phi);
                q.nodes(idx, 1) = s * std::sin(phi);
                q.nodes(idx, 2) = t[i];
                q.weights[idx] = wt[i] * (2.0 * kPi / mp);
                ++idx;
            }
        }
    } else {
        // Seeded Monte Carlo rule with uniform weights.
        int N = std::max(1024, 1024 * resolution);
        auto dirs = sample_directions(n, N, seed);
        q.nodes.resize(N, n);
        for (int i = 0; i < N; ++i) q.nodes.row(i) = dirs[i].transpose();
        q.weights = Vec::Constant(N, sphere_area(n) / N);
    }

    q.total_mass = q.weights.sum();
    return q;
}

EquatorFrame equator_frame(const Vec& u) {
    int n = static_cast<int>(u.size());
    if (n < 2) throw std::invalid_argument("equator_frame: dimension must be >= 2");
    Vec pole = Direction(u).coords;

    // Skip the standard axis of largest |pole_i| (ties to lowest index).
    int skip = 0;
    for (int i = 1; i < n; ++i)
        if (std::abs(pole[i]) > std::abs(pole[skip])) skip = i;

    EquatorFrame f;
    f.pole = pole;
    f.basis.resize(n, n - 1);
    int col = 0;
    for (int i = 0; i < n; ++i) {
        if (i == skip) continue;
        Vec v = Vec::Zero(n);
        v[i] = 1.0;
        v -= v.dot(pole) * pole;
        for (int j = 0; j < col; ++j) v -= v.dot(f.basis.col(j)) * f.basis.col(j);
        // Second Gram-Schmidt pass for orthogonality at the 1e-14 level.
        v -= v.dot(pole) * pole;
        for (int j = 0; j < col; ++j) v -= v.dot(f.basis.col(j)) * f.basis.col(j);
        double norm = v.norm();
        if (!(norm > 1e-12)) throw std::runtime_error("equator_frame: degenerate basis");
        f.basis.col(col++) = v / norm;
    }
    return f;
}

Quadrature equator_quadrature(const EquatorFrame& frame, int resolution, std::uint64_t seed) {
    Quadrature base = build_sphere_quadrature(frame.ambient_dim() - 1, resolution, seed);
    Quadrature q;
    q.dimension = frame.ambient_dim();
    q.frame = frame;
    q.nodes.resize(base.size(), q.dimension);
    for (int i = 0; i < base.size(); ++i)
        q.nodes.row(i) = (frame.basis * base.nodes.row(i).transpose()).transpose();
    q.weights = base.weights;
    q.total_mass = base.total_mass;
    return q;
}

std::vector<Vec> sample_directions(int n, int count, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample_directions: n < 1");
    if (count < 1) throw std::invalid_argument("sample_directions: count < 1");
    auto rng = make_rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Vec> out;
    out.reserve(count);
    while (static_cast<int>(out.size()) < count) {
        Vec v(n);
        for (int i = 0; i < n; ++i) v[i] = gauss(rng);
        double norm = v.norm();
        if (norm < 1e-12) continue;
        out.push_back(v / norm);
    }
    return out;
}

}  // namespace geomtom
