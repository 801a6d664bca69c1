"""Smoke tests for the Python bindings: thin checks that the main operations
round-trip through the module with sane values."""

import cmath
import math

import pytest

import weylab


def test_exponent_basics():
    assert weylab.s_of_d(3) == 6
    assert weylab.sigma_d(2, 1.0) == pytest.approx(2.0)
    assert weylab.alpha_0(2, 2.0) == pytest.approx(1.0, abs=1e-10)
    assert weylab.theta(5) == (1, 6)
    assert weylab.mu(7) == (1, 10)
    assert weylab.nu(2, 1) == (1, 3)
    assert weylab.big_D(8) == 112
    assert weylab.rho(3) == 6


def test_exponent_domain_errors():
    with pytest.raises(Exception):
        weylab.sigma_d(2, 3.0)
    with pytest.raises(Exception):
        weylab.theta(1)


def test_counts():
    assert weylab.count_J(2, 2, 100)["count"] == 2 * 100 * 100 - 100
    assert weylab.count_J_inhom(1, 1, [3], 10)["count"] == 7
    assert weylab.count_J_box(1, 1, 1.0, 5)["count"] == 13
    rep = weylab.verify_partition(2, 2, 0.2, 8)
    assert rep["equal"]
    assert weylab.hj_count(2, 2, 2, 10, 0.1) == 20


def test_weyl_sums():
    assert weylab.weyl_sum([0.0, 0.0], 7) == pytest.approx(7 + 0j)
    g = weylab.gauss_sum(0.0, 2.0 / 13.0, 13)
    assert abs(g) == pytest.approx(math.sqrt(13), rel=1e-9)
    t = weylab.rational_complete_sum(11, [3, 1])
    assert abs(t) == pytest.approx(math.sqrt(11), rel=1e-9)
    w = weylab.weyl_sum_weighted([0.5], [1 + 0j, 1 + 0j], 2)
    assert abs(w) < 1e-12
    assert weylab.is_prime(101)
    assert not weylab.is_prime(561)


def test_bound_curves():
    c = weylab.bound_curve("cor3.6", "2", 2)
    assert len(c["segments"]) == 4
    assert c["segments"][0]["slope_exact"] == "-2"
    conj = weylab.bound_curve("conj2.5", "2", 2)
    assert conj["conditional"]
    figs = weylab.figure_polylines("3.1")
    assert len(figs) == 3
    assert "cor3.6" in weylab.known_sources()
    with pytest.raises(Exception):
        weylab.bound_curve("nosuch", "2", 2)


def test_integrate_and_kappa():
    est = weylab.integrate_box(2, 2, 6, 1.0, mode="exact-torus")
    assert est["value"] == pytest.approx(66.0, rel=1e-6)
    fit = weylab.empirical_kappa(2, 2, 0.0, [64, 128, 256, 512])
    assert fit["slope"] == pytest.approx(2.0, abs=0.15)


def test_structure_and_scans():
    det = weylab.detect_rational_structure([2.0 / 7.0, 3.0 / 7.0], 10000, 10000**0.8)
    assert det["found"]
    assert det["witness"]["q"] == 7
    scan = weylab.prime_field_scan(2, 31, 1.0)
    assert scan["hits"] == 31 * 31 - 31
    mono = weylab.monomial_curve_density(211, 2, [1, 1], 211, [0, 0])
    assert mono["count"] == 210
    arc = weylab.majorarc_witness(2, 1000, 0.05, samples=50)
    assert arc["min_re_ratio"] >= math.cos(math.pi / 4)
    rho_scan = weylab.schrodinger_scan(0.0, 0.0, 1.0, 32, 8)
    assert rho_scan["min_rho"] == pytest.approx(32.0, rel=1e-9)


def test_witness():
    rep = weylab.lower_bound_witness(2, 2, 1024, 0.1, [0.3, 0.5])
    assert rep["lower_bound"] > 0
    assert rep["prime"] >= 128
