import math

import pytest

import geomtom

BALL = {"kind": "ball", "dim": 3}


def test_sphere_area():
    assert geomtom.sphere_area(3) == pytest.approx(4 * math.pi)


def test_calibrate_closed_forms():
    c = geomtom.calibrate(n=3, resolution=32, samples=2000, seed=7)
    assert c["k_cosine"] == pytest.approx(2 * math.pi, abs=1e-10)
    assert c["c_urysohn"] == pytest.approx(math.sqrt(4 * math.pi) / (4 * math.pi), abs=1e-12)


def test_body_isotropy():
    ball = geomtom.body_isotropy(BALL, resolution=24, samples=2000)
    assert ball["anisotropy"] < 1e-9
    assert ball["centroid_norm"] < 1e-12

    spheroid = geomtom.body_isotropy({"kind": "ellipsoid", "axes": [1, 1, 2]}, resolution=24,
                                     samples=2000)
    assert spheroid["anisotropy"] > 0.01


def test_theorem_chain():
    ball = geomtom.theorem_chain(BALL, resolution=24, samples=2000)
    assert ball["ball_consistent"]
    assert abs(ball["urysohn_slack"]) < 1e-9

    spheroid = geomtom.theorem_chain({"kind": "ellipsoid", "axes": [1, 1, 1.5]}, resolution=24,
                                     samples=2000)
    assert not spheroid["ball_consistent"]
    assert spheroid["urysohn_slack"] > 1e-3


def test_b_functional():
    exact = 6.0 * (4 * math.pi / 15) ** 3
    value, std_error = geomtom.b_functional(BALL, samples=100000, seed=3)
    assert abs(value - exact) < 3 * std_error
    assert geomtom.b_functional_moment(BALL, resolution=32) == pytest.approx(exact, abs=1e-12)


def test_mean_width_and_centroid_support():
    assert geomtom.mean_width_functional(BALL, resolution=32) == pytest.approx(4 * math.pi)
    cube = {"kind": "cube", "dim": 3, "halfwidth": 1.0}
    assert geomtom.mean_width_functional(cube, resolution=128) == pytest.approx(6 * math.pi,
                                                                                abs=1e-5)
    h = geomtom.centroid_body_support(BALL, [0.0, 0.0, 1.0], resolution=24)
    assert h == pytest.approx(math.pi / 2, abs=1e-12)


def test_group_info():
    cube = geomtom.group_info({"name": "cube", "dim": 3})
    assert cube["order"] == 48
    assert cube["complete"]

    pm = geomtom.group_info({"generators": [[[-1, 0, 0], [0, -1, 0], [0, 0, -1]]]})
    assert not pm["complete"]
    assert pm["invariant_space_dimension"] == 6

    d5 = geomtom.group_info({"name": "dihedral-5"})
    assert d5["complete"] and d5["planar_complete"]


def test_equator_scan():
    scan = geomtom.equator_isotropy_scan(BALL, poles=6, resolution=24, samples=2000)
    assert scan["max_anisotropy"] < 1e-9


def test_bad_spec_raises():
    with pytest.raises(ValueError):
        geomtom.body_isotropy({"kind": "nope"})
    with pytest.raises(ValueError):
        geomtom.mean_width_functional({"kind": "radial_harmonic_perturbation", "dim": 3,
                                       "base": 1.0, "amplitude": 0.1, "degree": 2,
                                       "axis": [0, 0, 1]})
