"""Area of hyperbolic ellipses and the convexity data of the area function.

The area of the normalized ellipse with eigenvalues (1, nu1, nu2) is

    area(nu1, nu2) = integral over phi in [-pi, pi] of
                     sqrt(g / (g - 1)) dphi  -  2*pi,
    g = nu1 sin^2 phi + nu2 cos^2 phi,

with the obvious generalization to an unnormalized triple (nu0, nu1, nu2).
All integrands here are even and pi-periodic, so integration runs over
[0, pi/2] and is multiplied by 4.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import OutOfDomainError

# Near-circle gap below which the closed circle formula is used.
_CIRCLE_GAP = 1e-12


@lru_cache(maxsize=16)
def _gl_rule(order: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


def quad_0_halfpi(f, tol: float = 1e-13, order: int = 32, max_panels: int = 256) -> float:
    """Panel-doubling Gauss-Legendre quadrature of a smooth vectorized f on [0, pi/2]."""
    x, w = _gl_rule(order)
    b = np.pi / 2.0
    prev = None
    panels = 1
    while panels <= max_panels:
        edges = np.linspace(0.0, b, panels + 1)
        mid = (edges[:-1] + edges[1:]) / 2.0
        half = (edges[1] - edges[0]) / 2.0
        nodes = (mid[:, None] + half * x[None, :]).ravel()
        vals = f(nodes)
        total = half * float(np.sum(vals.reshape(panels, order) @ w))
        if prev is not None and abs(total - prev) <= tol * max(1.0, abs(total)):
            return total
        prev = total
        panels *= 2
    return prev


def _gl_over_edges(f, edges: np.ndarray, order: int = 32) -> float:
    x, w = _gl_rule(order)
    mid = (edges[:-1] + edges[1:]) / 2.0
    half = (edges[1:] - edges[:-1]) / 2.0
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    vals = f(nodes).reshape(len(mid), order)
    return float(np.sum((vals @ w) * half))


def _peaked_quad(f, width: float) -> float:
    """Quadrature on [0, pi/2] for integrands sharply peaked at pi/2.

    Panels are graded geometrically toward pi/2 at the given peak width, so
    eigenvalue ratios of many orders of magnitude stay resolved.
    """
    b = np.pi / 2.0
    offsets = [0.0, width]
    while offsets[-1] < b:
        offsets.append(2.0 * offsets[-1])
    offsets = np.array(offsets[:-1])
    edges = np.concatenate([[0.0], np.sort(b - offsets)])
    return _gl_over_edges(f, edges)


def _area_quad(f, nu1: float, nu2: float) -> float:
    """Dispatch between uniform panel doubling and peak-graded panels."""
    ratio = (nu1 - 1.0) / max(nu2 - nu1, 1e-300)
    if ratio < 1e-3:
        return _peaked_quad(f, np.sqrt(ratio))
    return quad_0_halfpi(f)


def elliptic_K(z: float) -> float:
    """Complete elliptic integral of the first kind, modulus z in [0, 1).

    Evaluated by the arithmetic-geometric mean iteration.
    """
    if not (0.0 <= z < 1.0):
        raise OutOfDomainError(f"K requires 0 <= z < 1, got {z}")
    a, b = 1.0, np.sqrt(1.0 - z * z)
    while abs(a - b) > 1e-15 * a:
        a, b = (a + b) / 2.0, np.sqrt(a * b)
    return float(np.pi / (2.0 * a))


def elliptic_E(z: float) -> float:
    """Complete elliptic integral of the second kind, modulus z in [0, 1]."""
    if not (0.0 <= z <= 1.0):
        raise OutOfDomainError(f"E requires 0 <= z <= 1, got {z}")
    if z == 1.0:
        return 1.0
    a, b = 1.0, np.sqrt(1.0 - z * z)
    c = z
    csum = c * c / 2.0
    pw = 1.0
    while abs(a - b) > 1e-15 * a:
        a, b, c = (a + b) / 2.0, np.sqrt(a * b), (a - b) / 2.0
        pw *= 2.0
        csum += pw * c * c / 2.0
    return float(np.pi / (2.0 * a) * (1.0 - csum))


def _check_triple(nu0: float, nu1: float, nu2: float) -> None:
    if not (0.0 < nu0 <= nu1 <= nu2):
        raise OutOfDomainError(f"require 0 < nu0 <= nu1 <= nu2, got {(nu0, nu1, nu2)}")
    if nu1 / nu0 <= 1.0:
        raise OutOfDomainError(f"nu1/nu0 must exceed 1, got {(nu0, nu1, nu2)}")


def area(nu1: float, nu2: float, nu0: float = 1.0) -> float:
    """Area of the ellipse with Minkowski eigenvalue triple (nu0, nu1, nu2).

    Strictly positive and strictly decreasing in nu1 and nu2; invariant
    under a common positive rescaling of the triple.
    """
    _check_triple(nu0, nu1, nu2)
    n1, n2 = nu1 / nu0, nu2 / nu0
    if n2 - n1 < _CIRCLE_GAP * n2:
        # circle: the integrand is the constant cosh(rho) = sqrt(nu/(nu-1))
        return float(2.0 * np.pi * (np.sqrt(n1 / (n1 - 1.0)) - 1.0))

    def f(phi):
        g = n1 * np.sin(phi) ** 2 + n2 * np.cos(phi) ** 2
        return np.sqrt(g / (g - 1.0))

    return 4.0 * _area_quad(f, n1, n2) - 2.0 * np.pi


def area_circle(rho: float) -> float:
    """Closed-form area 2*pi*(cosh(rho) - 1) of a circle of radius rho."""
    return float(2.0 * np.pi * (np.cosh(rho) - 1.0))


def area_gradient(nu1: float, nu2: float) -> np.ndarray:
    """Partial derivatives of area(nu1, nu2); both entries are negative."""
    _check_triple(1.0, nu1, nu2)

    def make(weight):
        def f(phi):
            s2 = np.sin(phi) ** 2
            g = nu1 * s2 + nu2 * (1.0 - s2)
            return -weight(s2) / (2.0 * np.sqrt(g) * (g - 1.0) ** 1.5)
        return f

    d1 = 4.0 * quad_0_halfpi(make(lambda s2: s2))
    d2 = 4.0 * quad_0_halfpi(make(lambda s2: 1.0 - s2))
    return np.array([d1, d2])


def _hessian_kernel(nu1: float, nu2: float, phi: np.ndarray) -> np.ndarray:
    s2 = np.sin(phi) ** 2
    g = nu1 * s2 + nu2 * (1.0 - s2)
    return (4.0 * g - 1.0) / (g ** 1.5 * (g - 1.0) ** 2.5)


def area_hessian(nu1: float, nu2: float) -> np.ndarray:
    """Hessian of area(nu1, nu2): symmetric and positive definite for nu1, nu2 > 1."""
    _check_triple(1.0, nu1, nu2)

    def make(weight):
        def f(phi):
            s2 = np.sin(phi) ** 2
            return _hessian_kernel(nu1, nu2, phi) * weight(s2) / 4.0
        return f

    h11 = 4.0 * quad_0_halfpi(make(lambda s2: s2 * s2))
    h22 = 4.0 * quad_0_halfpi(make(lambda s2: (1.0 - s2) ** 2))
    h12 = 4.0 * quad_0_halfpi(make(lambda s2: s2 * (1.0 - s2)))
    return np.array([[h11, h12], [h12, h22]])


def area_gradient_triple(nu0: float, nu1: float, nu2: float) -> np.ndarray:
    """Gradient of the unnormalized area with respect to (nu0, nu1, nu2)."""
    _check_triple(nu0, nu1, nu2)

    def make(weight):
        def f(phi):
            s2 = np.sin(phi) ** 2
            g = nu1 * s2 + nu2 * (1.0 - s2)
            return weight(g, s2) / (2.0 * np.sqrt(g) * (g - nu0) ** 1.5)
        return f

    d0 = 4.0 * quad_0_halfpi(make(lambda g, s2: g))
    d1 = 4.0 * quad_0_halfpi(make(lambda g, s2: -nu0 * s2))
    d2 = 4.0 * quad_0_halfpi(make(lambda g, s2: -nu0 * (1.0 - s2)))
    return np.array([d0, d1, d2])
