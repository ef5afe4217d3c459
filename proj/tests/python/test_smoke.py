import math

import pytest

import slcert


def test_defining_function_values():
    assert slcert.r_eps(0, 0, 0.25) == -0.75
    assert abs(slcert.r_eps(0.9, 0, 0.19)) < 1e-15
    with pytest.raises(ValueError):
        slcert.r_eps(0, 1, 0.25)
    with pytest.raises(ValueError):
        slcert.r_eps(0, 0, 1.5)


def test_margins():
    assert slcert.margin10(0.9, 0) == pytest.approx(0.3078, abs=1e-14)
    assert slcert.margin12(0.5, 0.25) == pytest.approx(0.0546875, abs=1e-14)
    assert slcert.margin12(math.sqrt(0.5), 0.25) == pytest.approx(0.0036796564403574268, rel=1e-12)
    assert slcert.margin11(0.5, 0.25) * 0.25 == pytest.approx(slcert.margin12(0.5, 0.25), rel=1e-12)
    s = slcert.boundary_s_from_p(0.5, 0.25)
    xs, xp = slcert.canonical_tangent(s, 0.5)
    assert slcert.margin8(s, 0.5, 0.25, xs, xp) == pytest.approx(0.21875, rel=1e-10)
    assert slcert.quadratic_criterion_margin(2.0, 1.0, math.sqrt(2.0)) == pytest.approx(1.0)


def test_membership_and_phi():
    assert slcert.membership(0, 0, 0.25) == "inside"
    w, p = slcert.phi(0.5, 0.5j)
    assert w == pytest.approx(0.5 - 0.25j)
    assert p == 0.5j


def test_certify_report():
    out = slcert.certify(eps=0.25, grid=32, method="both", seed=3)
    assert out.passed
    assert out.report["min_margin"] > 0
    assert out.report["identity_checks"]["pass"]
    assert out.csv.startswith("re_p,im_p,eps,method,margin,pass")
    assert slcert.certify(eps=1.5).exit_code == slcert.EXIT_INVALID


def test_other_commands():
    assert slcert.slice(eps=0.25, lines=3, res=64).passed
    assert slcert.exhaust(samples=2000).passed
    assert slcert.exhaust(eps_list=[0.1, 0.2]).exit_code == slcert.EXIT_INVALID
    w = slcert.witness(eps=0.01)
    assert w.passed and w.report["witness"]["verified"]
