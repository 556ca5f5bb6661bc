#include "geomtom/isotropy.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

#include "geomtom/rng.hpp"

namespace geomtom {

namespace {

/// Evaluate f at node i, in ambient or frame coordinates depending on f's dimension.
double eval_at(const SphericalFunction& f, const Quadrature& quad, int i) {
    if (f.dimension == quad.dimension) return f(quad.nodes.row(i).transpose());
    if (quad.frame && f.dimension == quad.dimension - 1) return f(quad.chart_node(i));
    throw std::invalid_argument("spherical function / quadrature dimension mismatch");
}

}  // namespace

Vec centroid(const SphericalFunction& f, const Quadrature& quad) {
    int m = quad.intrinsic_dim();
    Vec c = Vec::Zero(m);
    for (int i = 0; i < quad.size(); ++i) c += quad.weights[i] * eval_at(f, quad, i) * quad.chart_node(i);
    return c;
}

MomentMatrix moment_matrix(const SphericalFunction& f, const Quadrature& quad) {
    int m = quad.intrinsic_dim();
    Mat mm = Mat::Zero(m, m);
    for (int i = 0; i < quad.size(); ++i) {
        Vec x = quad.chart_node(i);
        mm += quad.weights[i] * eval_at(f, quad, i) * (x * x.transpose());
    }
    mm = 0.5 * (mm + mm.transpose());
    return {mm, mm.trace()};
}

double anisotropy_of(const Mat& m) {
    double mean = m.trace() / m.rows();
    if (!(std::abs(mean) > 0.0)) return 0.0;
    Mat dev = m - mean * Mat::Identity(m.rows(), m.cols());
    Eigen::SelfAdjointEigenSolver<Mat> es(dev);
    return es.eigenvalues().cwiseAbs().maxCoeff() / std::abs(mean);
}

double det_moment_integral_const1(const Quadrature& quad) {
    int m = quad.intrinsic_dim();
    Mat sigma = Mat::Zero(m, m);
    for (int i = 0; i < quad.size(); ++i) {
        Vec x = quad.chart_node(i);
        sigma += quad.weights[i] * (x * x.transpose());
    }
    return std::tgamma(m + 1.0) * sigma.determinant();
}

DetMomentResult det_moment_integral(const std::vector<SphericalFunction>& fs, const Quadrature& quad,
                                    int samples, std::uint64_t seed, bool squared) {
    int m = quad.intrinsic_dim();
    if (static_cast<int>(fs.size()) != m)
        throw std::invalid_argument("det_moment_integral: needs one function per column");
    if (samples < 1) throw std::invalid_argument("det_moment_integral: samples must be >= 1");

    int nn = quad.size();
    // Precompute chart nodes and per-function values once per node.
    Mat chart(nn, m);
    Mat fvals(nn, m);
    for (int i = 0; i < nn; ++i) {
        chart.row(i) = quad.chart_node(i).transpose();
        for (int j = 0; j < m; ++j) fvals(i, j) = eval_at(fs[j], quad, i);
    }

    auto rng = make_rng(seed);
    std::discrete_distribution<int> pick(quad.weights.data(), quad.weights.data() + nn);
    double wpow = std::pow(quad.total_mass, m);

    double sum = 0.0, sum_sq = 0.0;
    Mat cols(m, m);
    for (int s = 0; s < samples; ++s) {
        double prod = 1.0;
        for (int j = 0; j < m; ++j) {
            int i = pick(rng);
            cols.col(j) = chart.row(i).transpose();
            prod *= fvals(i, j);
        }
        double d = cols.determinant();
        double v = (squared ? d * d : std::abs(d)) * prod;
        sum += v;
        sum_sq += v * v;
    }
    double mean = sum / samples;
    double var = std::max(0.0, sum_sq / samples - mean * mean);
    double se = std::sqrt(var / samples);
    return {wpow * mean, wpow * se};
}

EpsilonResult epsilon_isotropy(const SphericalFunction& f, const Quadrature& quad, int samples,
                               std::uint64_t seed) {
    int m = quad.intrinsic_dim();

    double mass = 0.0, scale = 0.0;
    for (int i = 0; i < quad.size(); ++i) {
        double v = eval_at(f, quad, i);
        if (v < -1e-9 * std::max(1.0, scale))
            throw std::domain_error("epsilon_isotropy: f must be nonnegative");
        scale = std::max(scale, std::abs(v));
        mass += quad.weights[i] * v;
    }

    EpsilonResult out;
    out.centroid_flagged = centroid(f, quad).norm() > 1e-6 * std::max(mass, 1e-30);

    std::vector<SphericalFunction> fs(m, f);
    DetMomentResult d = det_moment_integral(fs, quad, samples, seed, /*squared=*/true);
    out.det_integral = d.value;
    out.std_error = d.std_error;

    double d1 = det_moment_integral_const1(quad);
    out.c_bar = quad.total_mass / std::pow(d1, 1.0 / m);

    if (d.value <= 0.0) {
        out.epsilon = 0.0;
        return out;
    }
    out.epsilon = std::max(0.0, mass / (out.c_bar * std::pow(d.value, 1.0 / m)) - 1.0);
    return out;
}

IsotropyReport isotropy_report(const SphericalFunction& f, const Quadrature& quad,
                               const IsotropyParams& params) {
    IsotropyReport rep;
    rep.seed = params.seed;

    double mass = 0.0, minval = std::numeric_limits<double>::infinity();
    for (int i = 0; i < quad.size(); ++i) {
        double v = (f.dimension == quad.dimension) ? f(quad.nodes.row(i).transpose())
                                                   : f(quad.chart_node(i));
        mass += quad.weights[i] * v;
        minval = std::min(minval, v);
    }
    rep.mass = mass;
    rep.centroid_norm = centroid(f, quad).norm();
    rep.anisotropy = anisotropy_of(moment_matrix(f, quad).matrix);
    rep.centroid_flagged = rep.centroid_norm > params.centroid_tolerance * std::max(std::abs(mass), 1e-30);

    // Shift device for signed functions: eps is computed for f + shift.
    SphericalFunction g = f;
    if (minval < 0.0) {
        rep.shift = -1.5 * minval;
        double shift = rep.shift;
        auto base = f.eval;
        g.eval = [base, shift](const Vec& x) { return base(x) + shift; };
    }
    EpsilonResult eps = epsilon_isotropy(g, quad, params.epsilon_samples, params.seed);
    rep.epsilon_estimate = eps.epsilon;
    rep.epsilon_std_error = eps.std_error;
    return rep;
}

IsotropyReport body_isotropy_check(const StarBody& k, const Quadrature& quad,
                                   const IsotropyParams& params) {
    int n = k.dimension();
    auto rho = k.radial.eval;

    // Body centroid via rho^{n+1} moments, normalized by volume.
    double volume = quad.integrate([&](const Vec& x) { return std::pow(rho(x), n) / n; });
    Vec c = Vec::Zero(n);
    for (int i = 0; i < quad.size(); ++i) {
        Vec x = quad.nodes.row(i).transpose();
        c += quad.weights[i] * std::pow(rho(x), n + 1) / (n + 1) * x;
    }
    double centroid_offset = c.norm() / volume;

    SphericalFunction f{n, [rho, n](const Vec& x) { return std::pow(rho(x), n + 2); },
                        k.radial.parity};
    IsotropyReport rep = isotropy_report(f, quad, params);
    rep.centroid_norm = centroid_offset;
    rep.centroid_flagged = centroid_offset > params.centroid_tolerance;
    return rep;
}

EquatorScan equator_isotropy_scan(const SphericalFunction& f, const std::vector<Vec>& poles,
                                  int resolution, const IsotropyParams& params) {
    EquatorScan scan;
    for (std::size_t p = 0; p < poles.size(); ++p) {
        EquatorFrame frame = equator_frame(poles[p]);
        Quadrature eq = equator_quadrature(frame, resolution, derive_seed(params.seed, p));
        IsotropyParams sub = params;
        sub.seed = derive_seed(params.seed, 1000 + p);
        IsotropyReport rep = isotropy_report(f, eq, sub);
        scan.max_anisotropy = std::max(scan.max_anisotropy, rep.anisotropy);
        scan.max_epsilon = std::max(scan.max_epsilon, rep.epsilon_estimate);
        scan.poles.push_back(frame.pole);
        scan.reports.push_back(std::move(rep));
    }
    return scan;
}

SphericalFunction power_symmetrize(const SphericalFunction& f, double p) {
    if (!(p > 0.0)) throw std::invalid_argument("power_symmetrize: p must be positive");
    auto base = f.eval;
    auto eval = [base, p](const Vec& x) {
        double a = base(x), b = base(-x);
        if (a < 0.0 || b < 0.0) throw std::domain_error("power_symmetrize: f must be nonnegative");
        return 0.5 * (std::pow(a, p) + std::pow(b, p));
    };
    return {f.dimension, eval, Parity::Even};
}

}  // namespace geomtom
