"""Tests for the uniqueness polynomial family and half-turn machinery."""

import numpy as np
import pytest

from hypellipse.area import area
from hypellipse.conics import ellipse_from_eigs, rotate_ellipse
from hypellipse.errors import InvalidParameterError
from hypellipse.minkowski import MinkVector, half_turn_about, klein_lift
from hypellipse.uniqueness import (BernsteinQuartic, H, HalfTurnInstance,
                                   bernstein_coeffs, build_instance_ellipses,
                                   d1_star_value, d1_value, frame_rotation,
                                   h, h_boundary_curve, half_turn_lemma_check,
                                   hj_boundary_curve, j_integrand, lemma9_scan,
                                   quartic_P, quartic_sign_changes,
                                   sample_equal_area_instance,
                                   sample_h_admissible_pair, sample_instance)


# ---------------------------------------------------------------- polynomials

def test_H_hand_computed_values():
    assert H(1.0, 1.0) == 0.0
    assert H(2.0, 2.0) == -20.0
    assert H(2.0, 3.0) == -3.0


def test_H_on_diagonal_factorization():
    # H(nu, nu) = -4 (nu - 1)(2 nu + 1)
    for nu in (1.0, 1.7, 3.0, 12.5):
        assert H(nu, nu) == pytest.approx(-4.0 * (nu - 1.0) * (2.0 * nu + 1.0),
                                          rel=1e-13)


def test_h_family_values_at_unit_corner():
    assert h(1, 1.0, 1.0) == 0.0
    assert h(2, 1.0, 1.0) == 0.0
    # hand-computed spot values
    assert h(1, 2.0, 3.0) == -3.0
    assert h(3, 2.0, 3.0) == pytest.approx(9.0 - 30.0 - 4.0 + 12.0 + 2.0)
    with pytest.raises(InvalidParameterError):
        h(7, 2.0, 3.0)


def test_boundary_curves_are_zero_levels():
    nu1 = np.linspace(1.0, 30.0, 57)
    assert np.max(np.abs(H(nu1, h_boundary_curve(nu1)))) < 1e-9 * np.max(nu1) ** 2
    for j in range(1, 7):
        nu2 = hj_boundary_curve(j, nu1)
        assert np.max(np.abs(h(j, nu1, nu2))) < 1e-8 * np.max(nu1) ** 2


def test_lemma9_scan_small_grid():
    scan = lemma9_scan(values=1.0 + np.arange(40) / 4.0)
    assert scan["violations_a"] == 0
    assert scan["violations_b"] == 0
    assert scan["grid_points"] > 0
    assert set(scan["curves"]) == {"H", "h1", "h2", "h3", "h4", "h5", "h6"}


# ------------------------------------------------------- Bernstein machinery

def test_bernstein_evaluation_matches_power_basis():
    # p in Bernstein basis vs the same quartic expanded by binomials
    p = (1.0, -2.0, 0.5, 3.0, -1.0)
    bern = BernsteinQuartic(p)
    ts = np.linspace(0.0, 1.0, 23)
    binom = [1.0, 4.0, 6.0, 4.0, 1.0]
    direct = sum(p[i] * binom[i] * ts ** i * (1.0 - ts) ** (4 - i)
                 for i in range(5))
    assert np.max(np.abs(bern(ts) - direct)) < 1e-13


def test_bernstein_coeffs_match_direct_quartic():
    rng = np.random.default_rng(41)
    ts = np.linspace(0.0, 1.0, 17)
    for _ in range(25):
        inst = sample_instance(rng, h_admissible=False)
        bern = bernstein_coeffs(inst)
        direct = quartic_P(inst, ts)
        scale = max(1.0, np.max(np.abs(bern.p)))
        assert np.max(np.abs(bern(ts) - direct)) < 1e-9 * scale


def test_centered_half_turn_gives_zero_quartic():
    # a half-turn about the common center maps the partner to itself, so the
    # two derivative routes coincide for every pose angle
    inst = HalfTurnInstance(2.0, 7.0, 3.0, 5.0, MinkVector(1.0, 0.0, 0.0))
    bern = bernstein_coeffs(inst)
    assert np.max(np.abs(bern.p)) < 1e-12
    assert abs(quartic_P(inst, 0.3)) < 1e-12


def test_quartic_relates_d1_and_d1_star():
    inst = sample_instance(np.random.default_rng(42))
    for t in (0.1, 0.5, 0.9):
        zeta = 2.0 * np.arctan(t)
        expected = (d1_value(inst, zeta) - d1_star_value(inst, zeta)) * (1 + t * t) ** 2
        assert quartic_P(inst, t) == pytest.approx(expected, rel=1e-12)


def test_interlacing_validation():
    r = klein_lift(0.1, 0.0)
    with pytest.raises(InvalidParameterError):
        HalfTurnInstance(2.0, 5.0, 1.5, 4.0, r)  # nu11 < nu01
    with pytest.raises(InvalidParameterError):
        HalfTurnInstance(2.0, 5.0, 3.0, 6.0, r)  # nu12 > nu02
    weak = HalfTurnInstance(2.0, 5.0, 2.0, 5.0, r)
    assert not weak.strict
    assert HalfTurnInstance(2.0, 5.0, 3.0, 4.0, r).strict


def test_sign_changes_on_published_instance():
    r2, r3 = 0.9 * np.cos(0.3), 0.9 * np.sin(0.3)
    r = MinkVector(float(np.sqrt(1.0 + r2 ** 2 + r3 ** 2)), r2, r3)
    inst = HalfTurnInstance(1.1, 90.0, 1.1, 90.0, r)
    zeros = quartic_sign_changes(inst)
    assert len(zeros) == 2
    assert zeros[0] == pytest.approx(0.1272, abs=5e-4)
    assert zeros[1] == pytest.approx(0.1389, abs=5e-4)
    # the quartic is positive strictly between its zeros
    bern = bernstein_coeffs(inst)
    assert bern(np.array([0.5 * (zeros[0] + zeros[1])]))[0] > 0.0
    assert bern.p[1] > 0.0


# ------------------------------------------------------ appendix integrands

def test_j_integrand_endpoint_identities():
    # exact algebraic identities: at t = 0 the integrands reduce to h2, H, h5
    # and at t = 1 to h3, h4, h6 scaled by (nu01 - 1)/(nu02 - 1)
    rng = np.random.default_rng(43)
    for _ in range(200):
        nu01 = 1.0 + rng.uniform(1e-3, 50.0)
        nu02 = nu01 * (1.0 + rng.uniform(1e-3, 10.0))
        scale = max(1.0, nu02 ** 2)
        ratio = (nu01 - 1.0) / (nu02 - 1.0)
        for k, at0, at1 in ((3, h(2, nu01, nu02), h(3, nu01, nu02)),
                            (4, H(nu01, nu02), h(4, nu01, nu02)),
                            (5, h(5, nu01, nu02), h(6, nu01, nu02))):
            assert abs(j_integrand(k, 0.0, nu01, nu02) - at0) < 1e-10 * scale
            assert abs(j_integrand(k, 1.0, nu01, nu02) - ratio * at1) < 1e-10 * scale
    with pytest.raises(InvalidParameterError):
        j_integrand(6, 0.0, 2.0, 3.0)


def test_j_integrand_linear_in_t_squared():
    vals = j_integrand(4, np.array([0.0, 0.5, 1.0]), 2.0, 6.0)
    assert vals[1] == pytest.approx(vals[0] + 0.25 * (vals[2] - vals[0]), rel=1e-12)


# ------------------------------------------------------------------ sampling

def test_sample_h_admissible_pair():
    rng = np.random.default_rng(44)
    for _ in range(100):
        nu01, nu02 = sample_h_admissible_pair(rng)
        assert 1.0 < nu01 < nu02
        assert H(nu01, nu02) <= 1e-9


def test_sample_equal_area_instance_has_equal_areas():
    rng = np.random.default_rng(45)
    for _ in range(20):
        inst = sample_equal_area_instance(rng)
        a0 = area(inst.nu01, inst.nu02)
        a1 = area(inst.nu11, inst.nu12)
        assert a1 == pytest.approx(a0, rel=1e-10)
        assert inst.strict
        assert H(inst.nu01, inst.nu02) <= 0.0
        assert H(inst.nu11, inst.nu12) <= 0.0


# ------------------------------------------- matrix-level half-turn check

def test_half_turn_check_on_sampled_instance():
    rng = np.random.default_rng(46)
    inst = sample_equal_area_instance(rng)
    c0, c1 = build_instance_ellipses(inst)
    verdict = half_turn_lemma_check(c0, c1)
    assert verdict.ok, verdict.reasons
    assert verdict.d_pair < verdict.d_star
    assert verdict.area_in_between < verdict.area_common


def test_half_turn_check_rejects_unequal_areas():
    c0 = ellipse_from_eigs(2.0, 6.0)
    c1 = rotate_ellipse(ellipse_from_eigs(3.0, 4.0),
                        half_turn_about(klein_lift(0.05, 0.0)))
    verdict = half_turn_lemma_check(c0, c1)
    assert not verdict.ok
    assert any("areas differ" in r for r in verdict.reasons)


def test_half_turn_check_rejects_concentric():
    c0 = ellipse_from_eigs(2.0, 6.0)
    verdict = half_turn_lemma_check(c0, c0)
    assert not verdict.ok
    assert any("concentric" in r for r in verdict.reasons)


def test_frame_rotation_is_proper():
    rng = np.random.default_rng(47)
    inst = sample_equal_area_instance(rng)
    _, c1 = build_instance_ellipses(inst)
    rot = frame_rotation(c1)
    assert rot.is_orthogonal(1e-8)
    assert np.linalg.det(rot.m) == pytest.approx(1.0, abs=1e-9)
