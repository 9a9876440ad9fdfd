import math

import pytest

import emtensor


def test_catalog_listing():
    names = emtensor.examples()
    assert "const-1form" in names
    assert "instanton" in names
    info = emtensor.example_info("radial-p-harmonic")
    assert info["k"] == 1 and info["p"] == 3.0
    assert "p-harmonic" in info["tags"]
    with pytest.raises(ValueError):
        emtensor.example_info("no-such-field")


def test_spaces():
    h = emtensor.ModelSpace.hyperbolic(3, 1.0)
    assert h.is_hyperbolic and h.dim == 3
    assert h.distance([0, 0, 1], [0, 0, math.e]) == pytest.approx(1.0, rel=1e-12)
    e = emtensor.ModelSpace.euclidean(3)
    assert e.ball_volume(1.0) == pytest.approx(4 * math.pi / 3, rel=1e-14)
    b = emtensor.geometry_bounds(h, 1.0, 1, 2.0)
    assert b["lambda_lower"] == pytest.approx(-1.0 / 3.0, rel=1e-9)
    assert emtensor.geometry_bounds(e, 1.0, 1, 2.0)["Lambda"] == 0.0


def test_tags_hold():
    t = emtensor.check_tags("hyperbolic-harmonic", 20)
    assert t["closed"] <= 1e-8 and t["coclosed"] <= 1e-8


def test_profile_of_constant_form():
    radii = [0.5, 1.0, 1.5]
    p = emtensor.theta_profile("const-1form", radii, radial_nodes=8, angular_nodes=6, identity=True)
    for R, theta in zip(radii, p["theta"]):
        assert theta == pytest.approx(2 * math.pi / 3 * R * R, rel=1e-10)
    assert p["violations"] == []
    assert max(p["residual"]) < 1e-8


def test_run_suite():
    report = emtensor.run(suite="trace", space="euclidean:5", k=1, p=3.0, points=20)
    assert report["pass"] is True
    assert report["suite"] == "trace"
    with pytest.raises(ValueError, match="n > kp"):
        emtensor.run(suite="trace", space="euclidean:4", k=2, p=3.0)
    with pytest.raises(ValueError):
        emtensor.run(suite="trace", bogus=1)
