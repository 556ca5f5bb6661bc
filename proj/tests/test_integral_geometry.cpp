#include <doctest.h>

#include <cmath>
#include <numbers>

#include "geomtom/integral_geometry.hpp"
#include "oracles.hpp"

using namespace geomtom;
constexpr double kPi = std::numbers::pi;

namespace {
SphericalFunction constant(int dim, double c) {
    return {dim, [c](const Vec&) { return c; }, Parity::Even};
}
}  // namespace

TEST_CASE("calibration closed forms and determinism") {
    ConstantTable c = calibrate_constants(3, 32, 20000, 7);
    CHECK(std::abs(c.k_cosine - 2.0 * kPi) < 1e-10);
    CHECK(c.c_urysohn == doctest::Approx(std::sqrt(4.0 * kPi) / (4.0 * kPi)).epsilon(1e-12));

    ConstantTable c2 = calibrate_constants(3, 32, 20000, 7);
    CHECK(c2.c_bar == c.c_bar);  // bitwise reproducible
    CHECK(c2.c_density == c.c_density);
    CHECK(c2.c_legendre == c.c_legendre);
    CHECK(c2.c_busemann == c.c_busemann);

    CHECK_THROWS_AS(calibrate_constants(1, 8, 100, 0), std::invalid_argument);
}

TEST_CASE("B functional: closed form, scaling, moment identity") {
    // B(unit ball) = 3! (4 pi / 15)^3 from the second-moment identity
    double b_exact = 6.0 * std::pow(4.0 * kPi / 15.0, 3);

    McEstimate b1 = b_functional(ball_star(3, 1.0), 200000, 3);
    CHECK(std::abs(b1.value - b_exact) < 3.0 * b1.std_error);
    CHECK(b1.std_error > 0.0);

    // exact scaling law with shared draws: B(r K) = r^{n(n+2)} B(K)
    McEstimate b2 = b_functional(ball_star(3, 2.0), 200000, 3);
    CHECK(b2.value == doctest::Approx(32768.0 * b1.value).epsilon(1e-12));

    Quadrature quad = build_sphere_quadrature(3, 32);
    CHECK(std::abs(b_functional_moment(ball_star(3, 1.0), quad) - b_exact) < 1e-12);

    // deterministic route agrees with Monte Carlo on a non-ball
    Vec axes(3);
    axes << 1.0, 1.5, 0.8;
    StarBody e = Ellipsoid::from_axes(axes).star_body();
    McEstimate be = b_functional(e, 200000, 5);
    CHECK(std::abs(be.value - b_functional_moment(e, quad)) < 3.0 * be.std_error);

    SphericalFunction bad{3, [](const Vec& x) { return x[2]; }, Parity::Odd};
    CHECK_THROWS_AS(b_functional(StarBody{bad}, 100, 1), std::domain_error);
}

TEST_CASE("B is invariant under volume-preserving linear maps") {
    double b_exact = 6.0 * std::pow(4.0 * kPi / 15.0, 3);
    Vec axes(3);
    axes << 0.5, 1.0, 2.0;  // determinant-1 diagonal map of the ball
    McEstimate be = b_functional(Ellipsoid::from_axes(axes).star_body(), 300000, 9);
    CHECK(std::abs(be.value - b_exact) < 3.0 * be.std_error);
}

TEST_CASE("B of planar sections is exact") {
    EquatorFrame frame = equator_frame(Vec::Unit(3, 2));
    McEstimate disk = b_functional_section(ball_star(3, 1.0), frame, 10, 1);
    CHECK(disk.value == doctest::Approx(kPi * kPi / 8.0).epsilon(1e-12));
    CHECK(disk.std_error == 0.0);

    // section of the spheroid (a, a, c) along e3 is the disk of radius a
    Vec axes(3);
    axes << 1.5, 1.5, 3.0;
    McEstimate sec = b_functional_section(Ellipsoid::from_axes(axes).star_body(), frame, 10, 1);
    CHECK(sec.value == doctest::Approx(kPi * kPi / 8.0 * std::pow(1.5, 8)).epsilon(1e-12));

    // R^4 sections are 3-dimensional and fall back to Monte Carlo
    EquatorFrame f4 = equator_frame(Vec::Unit(4, 0));
    McEstimate s4 = b_functional_section(ball_star(4, 1.0), f4, 100000, 11);
    CHECK(s4.std_error > 0.0);
    CHECK(std::abs(s4.value - 6.0 * std::pow(4.0 * kPi / 15.0, 3)) < 3.0 * s4.std_error);

    CHECK_THROWS_AS(b_functional_section(ball_star(4, 1.0), frame, 10, 1), std::invalid_argument);
}

TEST_CASE("centroid body support") {
    // ball: h_{Gamma B}(u) = (1/4) int |<x,u>| = pi/2 in every direction
    Vec u(3);
    u << 1.0, 1.0, 1.0;
    CHECK(centroid_body_support(ball_star(3, 1.0), u, 24) == doctest::Approx(kPi / 2.0).epsilon(1e-12));

    // ellipsoid against the dense-grid oracle
    Vec axes(3);
    axes << 1.0, 2.0, 3.0;
    StarBody e = Ellipsoid::from_axes(axes).star_body();
    auto rho = e.radial.eval;
    Vec dir = u.normalized();
    double oracle = oracles::grid_integrate_s2([&](const Vec& x) {
        return std::abs(x.dot(dir)) * std::pow(rho(x), 4) / 4.0;
    });
    // tolerance limited by the oracle's handling of the |<x,u>| kink
    CHECK(centroid_body_support(e, u, 48) == doctest::Approx(oracle).epsilon(1e-4));
}

TEST_CASE("Gamma surface area of the ball matches the closed form") {
    // Gamma(B) is the ball of radius pi/2: area pi^3
    ConstantTable c = calibrate_constants(3, 32, 20000, 7);
    Quadrature poles = build_sphere_quadrature(3, 8, 5);
    McEstimate s = gamma_surface_area(ball_star(3, 1.0), poles, 20000, 11, c);
    CHECK(s.value == doctest::Approx(std::pow(kPi, 3)).epsilon(1e-9));
}

TEST_CASE("mean width functional") {
    Quadrature quad = build_sphere_quadrature(3, 32);
    CHECK(mean_width_functional(ball_support(3, 1.0), quad) == doctest::Approx(4.0 * kPi).epsilon(1e-12));
    CHECK(mean_width_functional(ball_support(3, 2.5), quad) == doctest::Approx(10.0 * kPi).epsilon(1e-12));

    // cube [-1,1]^3: W = int sum |u_i| = 3 k_cosine = 6 pi; the kinked support
    // needs the extrapolated rule for tight accuracy
    CHECK(std::abs(mean_width_functional(cube_support(3, 1.0), 256) - 6.0 * kPi) < 1e-6);

    // ellipsoid against the dense-grid oracle
    Vec axes(3);
    axes << 1.0, 2.0, 3.0;
    ConvexBodySupport e = Ellipsoid::from_axes(axes).support_body();
    double oracle = oracles::grid_integrate_s2(e.support.eval);
    CHECK(mean_width_functional(e, quad) == doctest::Approx(oracle).epsilon(1e-4));
}

TEST_CASE("ellipsoid surface area and curvature") {
    Quadrature quad = build_sphere_quadrature(3, 48);

    Ellipsoid sphere2(Mat(4.0 * Mat::Identity(3, 3)));
    CHECK(ellipsoid_surface_area(sphere2, quad) == doctest::Approx(16.0 * kPi).epsilon(1e-9));

    // prolate spheroid a = b = 1, c = 2: closed-form area
    Vec axes(3);
    axes << 1.0, 1.0, 2.0;
    Ellipsoid prolate = Ellipsoid::from_axes(axes);
    double ecc = std::sqrt(1.0 - 1.0 / 4.0);
    double area = 2.0 * kPi * (1.0 + (2.0 / ecc) * std::asin(ecc));
    CHECK(ellipsoid_surface_area(prolate, quad) == doctest::Approx(area).epsilon(1e-9));

    // numeric inverse-Gauss-map curvature matches the closed form
    for (const Vec& u : sample_directions(3, 10, 23)) {
        double exact = ellipsoid_curvature(prolate, u);
        CHECK(ellipsoid_curvature_numeric(prolate, u) == doctest::Approx(exact).epsilon(1e-5));
    }
}

TEST_CASE("urysohn gap vanishes exactly on balls and grows with eccentricity") {
    ConstantTable c = calibrate_constants(3, 32, 20000, 7);
    Quadrature quad = build_sphere_quadrature(3, 48);

    CHECK(std::abs(urysohn_gap(Ellipsoid(Mat(Mat::Identity(3, 3))), quad, c)) < 1e-9);
    CHECK(std::abs(urysohn_gap(Ellipsoid(Mat(9.0 * Mat::Identity(3, 3))), quad, c)) < 1e-9);

    Vec a1(3), a2(3);
    a1 << 1.0, 1.0, 1.2;
    a2 << 1.0, 1.0, 1.5;
    double g1 = urysohn_gap(Ellipsoid::from_axes(a1), quad, c);
    double g2 = urysohn_gap(Ellipsoid::from_axes(a2), quad, c);
    CHECK(g1 > 0.0);
    CHECK(g2 > g1);
}

TEST_CASE("theorem chain: equality on balls, strict slack off balls") {
    ChainConfig config;
    for (double r : {0.5, 1.0, 2.0}) {
        TheoremChainReport rep = theorem_chain(ball_star(3, r), config);
        CHECK(std::abs(rep.holder_slack) < 1e-12);
        CHECK(std::abs(rep.urysohn_slack) < 1e-12);
        CHECK(std::abs(rep.closing_slack) < 1e-12);
        CHECK(rep.ball_consistent);
    }

    Vec axes(3);
    axes << 1.0, 1.0, 1.5;
    TheoremChainReport rep = theorem_chain(Ellipsoid::from_axes(axes).star_body(), config);
    CHECK(rep.urysohn_slack > 1e-3);
    CHECK(!rep.ball_consistent);
    // the chain closes into an identity (Fubini), so the width bound returns to
    // the mass and the Urysohn excess is paid back at the Hoelder stage
    CHECK(std::abs(rep.closing_slack) < 1e-9);
    CHECK(rep.holder_slack < -1e-3);

    SphericalFunction shifted{3, [](const Vec& x) { return 1.0 + 0.3 * x[2]; }, Parity::None};
    CHECK_THROWS_AS(theorem_chain(StarBody{shifted}, config), std::invalid_argument);
    CHECK_THROWS_AS(theorem_chain(ball_star(2, 1.0), config), std::invalid_argument);
}

TEST_CASE("cosine transform") {
    Vec u(3);
    u << 0.3, -0.4, 0.87;
    CHECK(cosine_transform(constant(3, 1.0), u, 24) == doctest::Approx(2.0 * kPi).epsilon(1e-12));
    CHECK(cosine_transform(constant(3, 3.0), u, 24) == doctest::Approx(6.0 * kPi).epsilon(1e-12));

    // smooth density against the grid oracle
    SphericalFunction f{3, [](const Vec& x) { return 1.0 + x[0] * x[0] + 0.5 * x[1] * x[2]; },
                        Parity::Even};
    Vec dir = u.normalized();
    double oracle = oracles::grid_integrate_s2(
        [&](const Vec& x) { return (1.0 + x[0] * x[0] + 0.5 * x[1] * x[2]) * std::abs(x.dot(dir)); });
    CHECK(cosine_transform(f, u, 32) == doctest::Approx(oracle).epsilon(1e-4));

    // circle case: int |cos| = 4
    Vec v(2);
    v << 0.6, 0.8;
    CHECK(cosine_transform(constant(2, 1.0), v, 16) == doctest::Approx(4.0).epsilon(1e-12));
    double oracle2 = oracles::grid_integrate_s1(
        [&](const Vec& x) { return (2.0 + x[0]) * std::abs(x.dot(v)); });
    SphericalFunction g{2, [](const Vec& x) { return 2.0 + x[0]; }, Parity::None};
    CHECK(cosine_transform(g, v, 16) == doctest::Approx(oracle2).epsilon(1e-6));

    CHECK_THROWS_AS(cosine_transform(constant(3, 1.0), v, 16), std::invalid_argument);
}

TEST_CASE("stability deviation: constants, monotone sweep") {
    StabilityConfig config;
    auto poles = sample_directions(3, 48, 2);

    StabilityReport base = stability_deviation(constant(3, 1.0), poles, config);
    CHECK(base.sup_dev < 1e-9);
    CHECK(base.k_cosine == doctest::Approx(2.0 * kPi).epsilon(1e-12));
    CHECK(!base.contradiction_flag);
    CHECK(base.delta == 0.0);

    double prev_dev = base.sup_dev, prev_eps = 0.0;
    for (double a : {0.05, 0.1, 0.2, 0.4}) {
        SphericalFunction f{3, [a](const Vec& x) { return 1.0 + a * (x[0] * x[0] - 1.0 / 3.0); },
                            Parity::Even};
        StabilityReport rep = stability_deviation(f, poles, config);
        CHECK(rep.sup_dev > prev_dev);
        CHECK(rep.eps_max > prev_eps);
        CHECK(!rep.contradiction_flag);
        prev_dev = rep.sup_dev;
        prev_eps = rep.eps_max;
    }

    SphericalFunction odd{3, [](const Vec& x) { return 1.0 + 0.2 * x[2]; }, Parity::None};
    CHECK_THROWS_AS(stability_deviation(odd, poles, config), std::invalid_argument);
    SphericalFunction neg{3, [](const Vec& x) { return x[2] * x[2] - 0.5; }, Parity::Even};
    CHECK_THROWS_AS(stability_deviation(neg, poles, config), std::domain_error);
}

TEST_CASE("busemann identity") {
    ConstantTable c = calibrate_constants(3, 32, 20000, 7);
    Quadrature poles = build_sphere_quadrature(3, 12, 9);

    BusemannResult ones = busemann_check({constant(3, 1.0), constant(3, 1.0)}, poles, 32, 10000, 13, c);
    CHECK(ones.rel_err < 1e-10);

    SphericalFunction f1{3, [](const Vec& x) { return 1.0 + x[0] * x[0]; }, Parity::Even};
    SphericalFunction f2{3, [](const Vec& x) { return 1.0 + 0.5 * x[1] * x[1]; }, Parity::Even};
    BusemannResult r = busemann_check({f1, f2}, poles, 32, 10000, 13, c);
    CHECK(r.rel_err < 1e-4);

    CHECK_THROWS_AS(busemann_check({f1}, poles, 32, 100, 1, c), std::invalid_argument);
}

TEST_CASE("two function rigidity branches") {
    RigidityConfig config;
    auto poles = sample_directions(3, 24, 31);
    SphericalFunction f{3, [](const Vec& x) { return 1.0 + 0.3 * x[2] + 0.2 * x[0] * x[0]; },
                        Parity::None};

    RigidityReport eq = two_function_rigidity(f, f, poles, config);
    CHECK(eq.verdict == RigidityVerdict::Equal);
    CHECK(eq.residual_equal < 1e-12);

    auto fe = f.eval;
    SphericalFunction g{3, [fe](const Vec& x) { return fe(-x); }, Parity::None};
    RigidityReport anti = two_function_rigidity(f, g, poles, config);
    CHECK(anti.verdict == RigidityVerdict::Antipodal);
    CHECK(anti.residual_antipodal < 1e-12);
    CHECK(anti.residual_equal > 1e-3);

    // scaled copy agrees on no equator in either sense
    SphericalFunction h{3, [fe](const Vec& x) { return 1.1 * fe(x); }, Parity::None};
    RigidityReport bad = two_function_rigidity(f, h, poles, config);
    CHECK(bad.verdict == RigidityVerdict::HypothesisViolated);
    CHECK(bad.worst_equator_residual > 1e-3);

    // rotated copy likewise violates the per-equator hypothesis
    Mat rot(3, 3);
    rot << 0, -1, 0, 1, 0, 0, 0, 0, 1;
    SphericalFunction fr{3, [fe, rot](const Vec& x) { return fe(rot.transpose() * x); }, Parity::None};
    RigidityReport rotated = two_function_rigidity(f, fr, poles, config);
    CHECK(rotated.verdict == RigidityVerdict::HypothesisViolated);
}

TEST_CASE("weil identity: the ratio is a universal constant") {
    Vec u1(3), u2(3);
    u1 << 0.3, -0.5, 0.81;
    u2 << 1.0, 1.0, 1.0;
    Vec a1(3), a2(3);
    a1 << 1.0, 1.0, 1.3;
    a2 << 0.8, 1.0, 1.25;

    WeilResult w1 = weil_check(Ellipsoid::from_axes(a1), u1);
    WeilResult w2 = weil_check(Ellipsoid(Mat(Mat::Identity(3, 3))), Vec::Unit(3, 2));
    WeilResult w3 = weil_check(Ellipsoid::from_axes(a2), u2);

    CHECK(w1.lhs > 0.0);
    CHECK(w1.fit_residual < 1e-6);
    CHECK(w2.fit_residual < 1e-6);
    CHECK(w1.ratio == doctest::Approx(w2.ratio).epsilon(1e-6));
    CHECK(w3.ratio == doctest::Approx(w2.ratio).epsilon(1e-6));
}

TEST_CASE("legendre check on isotropic bodies") {
    ConstantTable c = calibrate_constants(3, 32, 20000, 7);
    Quadrature quad = build_sphere_quadrature(3, 32);

    LegendreCheck ball = legendre_isotropic_check(ball_star(3, 2.0), quad, 200000, 21, c);
    CHECK(ball.precondition_ok);
    CHECK(std::abs(ball.lhs - ball.rhs) < 3.0 * ball.rhs_std_error);

    Quadrature fine = build_sphere_quadrature(3, 96);
    LegendreCheck cube = legendre_isotropic_check(cube_star(3, 1.0), fine, 200000, 21, c, 1e-3);
    CHECK(cube.precondition_ok);
    CHECK(std::abs(cube.lhs - cube.rhs) < 3.0 * cube.rhs_std_error);

    Vec axes(3);
    axes << 1.0, 2.0, 3.0;
    LegendreCheck e = legendre_isotropic_check(Ellipsoid::from_axes(axes).star_body(), quad, 5000, 21, c);
    CHECK(!e.precondition_ok);
    CHECK(e.anisotropy > 0.1);
}

TEST_CASE("epsilon of near-ball bodies grows with the perturbation") {
    ConstantTable c = calibrate_constants(3, 32, 20000, 7);
    Quadrature quad = build_sphere_quadrature(3, 32);

    BodyEpsilon ball = epsilon_isotropic_body(ball_star(3, 1.0), quad, 100000, 31, c);
    CHECK(ball.epsilon_body < 3.0 * ball.std_error + 1e-12);
    CHECK(ball.epsilon_function < 1e-9);

    BodyEpsilon small = epsilon_isotropic_body(
        radial_harmonic_perturbation(3, 1.0, 0.1, 4, Vec::Unit(3, 2)), quad, 100000, 31, c);
    BodyEpsilon large = epsilon_isotropic_body(
        radial_harmonic_perturbation(3, 1.0, 0.3, 4, Vec::Unit(3, 2)), quad, 100000, 31, c);
    CHECK(large.epsilon_body > small.epsilon_body);
    CHECK(large.epsilon_function > small.epsilon_function);
    CHECK(large.epsilon_function > 1e-4);

    SphericalFunction shifted{3, [](const Vec& x) { return 1.0 + 0.3 * x[2]; }, Parity::None};
    CHECK_THROWS_AS(epsilon_isotropic_body(StarBody{shifted}, quad, 100, 1, c), std::domain_error);
}
