"""Tests for the area function and its derivatives.

The independent oracles are scipy.integrate.quad for the defining integral
and scipy.special for the complete elliptic integrals; the package itself
uses neither (it builds its own Gauss-Legendre panels and AGM iterations).
"""

import numpy as np
import pytest
import scipy.integrate
import scipy.special

from hypellipse.area import (area, area_circle, area_gradient,
                             area_gradient_triple, area_hessian, elliptic_E,
                             elliptic_K, quad_0_halfpi)
from hypellipse.errors import OutOfDomainError


def scipy_area(nu1, nu2):
    def f(phi):
        g = nu1 * np.sin(phi) ** 2 + nu2 * np.cos(phi) ** 2
        return np.sqrt(g / (g - 1.0))
    val, _ = scipy.integrate.quad(f, 0.0, np.pi / 2.0, epsabs=1e-13, epsrel=1e-13)
    return 4.0 * val - 2.0 * np.pi


def test_circle_closed_form():
    for rho in (0.1, 0.5, 1.0, 2.0, 4.0):
        nu = 1.0 / np.tanh(rho) ** 2
        assert area(nu, nu) == pytest.approx(area_circle(rho), abs=1e-9)
        # the generic quadrature path agrees with the circle branch; away from
        # small radii the area is very sensitive to nu, so scale the eigenvalue
        # perturbation by the gradient
        if rho <= 1.0:
            assert area(nu, nu * (1.0 + 1e-9)) == pytest.approx(
                area_circle(rho), rel=1e-8)


def test_area_against_scipy_quad():
    rng = np.random.default_rng(21)
    for _ in range(30):
        nu1, nu2 = np.sort(np.exp(rng.uniform(np.log(1.02), np.log(200.0), size=2)))
        if nu2 - nu1 < 1e-9:
            continue
        assert area(nu1, nu2) == pytest.approx(scipy_area(nu1, nu2), rel=1e-10)


@pytest.mark.filterwarnings("ignore::scipy.integrate.IntegrationWarning")
def test_area_extreme_aspect_ratio():
    # eigenvalue barely above 1 (a very long ellipse): the graded panels must
    # still resolve the integrand peak
    for big_axis in (5.0, 8.0, 12.0):
        nu1 = 1.0 / np.tanh(big_axis) ** 2
        nu2 = 1.0 / np.tanh(0.2) ** 2

        def f(phi):
            g = nu1 * np.sin(phi) ** 2 + nu2 * np.cos(phi) ** 2
            return np.sqrt(g / (g - 1.0))

        ref, _ = scipy.integrate.quad(f, 0.0, np.pi / 2.0,
                                      points=[np.pi / 2.0 * (1.0 - 1e-7)],
                                      limit=400, epsabs=1e-13, epsrel=1e-13)
        ref = 4.0 * ref - 2.0 * np.pi
        assert area(nu1, nu2) == pytest.approx(ref, rel=1e-8)


def test_area_scale_invariance_of_triple():
    assert area(3.0, 7.0) == pytest.approx(area(6.0, 14.0, nu0=2.0), rel=1e-12)


def test_area_monotone_decreasing():
    assert area(2.0, 5.0) > area(2.1, 5.0) > area(2.1, 5.2)


def test_area_domain_errors():
    with pytest.raises(OutOfDomainError):
        area(1.0, 5.0)
    with pytest.raises(OutOfDomainError):
        area(5.0, 2.0)
    with pytest.raises(OutOfDomainError):
        area(2.0, 5.0, nu0=-1.0)


def test_elliptic_integrals_against_scipy():
    # scipy's ellipk/ellipe take the parameter m = z^2
    for z in (0.0, 0.1, 0.5, 0.9, 0.999):
        assert elliptic_K(z) == pytest.approx(scipy.special.ellipk(z * z), rel=1e-12)
        assert elliptic_E(z) == pytest.approx(scipy.special.ellipe(z * z), rel=1e-12)
    assert elliptic_E(1.0) == 1.0
    with pytest.raises(OutOfDomainError):
        elliptic_K(1.0)


def test_gradient_against_finite_differences():
    rng = np.random.default_rng(22)
    for _ in range(15):
        nu1, nu2 = np.sort(1.0 + rng.uniform(0.2, 30.0, size=2))
        if nu2 - nu1 < 1e-6:
            continue
        g = area_gradient(nu1, nu2)
        h = 1e-6
        fd1 = (area(nu1 + h, nu2) - area(nu1 - h, nu2)) / (2.0 * h)
        fd2 = (area(nu1, nu2 + h) - area(nu1, nu2 - h)) / (2.0 * h)
        assert g[0] == pytest.approx(fd1, rel=2e-6)
        assert g[1] == pytest.approx(fd2, rel=2e-6)
        assert g[0] < 0.0 and g[1] < 0.0


def test_gradient_against_scipy_quad():
    nu1, nu2 = 2.5, 9.0

    def d1(phi):
        s2 = np.sin(phi) ** 2
        g = nu1 * s2 + nu2 * (1.0 - s2)
        return -s2 / (2.0 * np.sqrt(g) * (g - 1.0) ** 1.5)

    ref, _ = scipy.integrate.quad(d1, 0.0, np.pi / 2.0, epsabs=1e-13, epsrel=1e-13)
    assert area_gradient(nu1, nu2)[0] == pytest.approx(4.0 * ref, rel=1e-11)


def test_hessian_positive_definite_and_symmetric():
    rng = np.random.default_rng(23)
    for _ in range(15):
        nu1, nu2 = np.sort(np.exp(rng.uniform(np.log(1.05), np.log(100.0), size=2)))
        if nu2 - nu1 < 1e-6:
            continue
        h = area_hessian(nu1, nu2)
        assert h[0, 1] == h[1, 0]
        assert h[0, 0] > 0.0
        assert np.linalg.det(h) > 0.0


def test_hessian_against_finite_differences_of_gradient():
    nu1, nu2 = 3.0, 8.0
    h = area_hessian(nu1, nu2)
    step = 1e-5
    fd = np.column_stack([
        (area_gradient(nu1 + step, nu2) - area_gradient(nu1 - step, nu2)) / (2 * step),
        (area_gradient(nu1, nu2 + step) - area_gradient(nu1, nu2 - step)) / (2 * step),
    ])
    assert np.max(np.abs(h - fd)) < 1e-5 * max(1.0, np.max(np.abs(h)))


def test_gradient_triple_euler_relation():
    # scale invariance implies nu . grad = 0 for the unnormalized area
    nu0, nu1, nu2 = 1.5, 4.0, 11.0
    g = area_gradient_triple(nu0, nu1, nu2)
    assert abs(np.array([nu0, nu1, nu2]) @ g) < 1e-10 * np.max(np.abs(g))
    # and the normalized gradient is the spacelike part at nu0 = 1
    gg = area_gradient_triple(1.0, 4.0, 11.0)
    assert gg[1:] == pytest.approx(list(area_gradient(4.0, 11.0)), rel=1e-10)


def test_quad_helper_on_known_integral():
    assert quad_0_halfpi(np.sin) == pytest.approx(1.0, abs=1e-13)
    assert quad_0_halfpi(lambda x: np.cos(x) ** 2) == pytest.approx(np.pi / 4.0, abs=1e-13)
