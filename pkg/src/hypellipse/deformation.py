"""In-between ellipses and the derivative of their area at the left endpoint.

For a pair of normalized ellipses M0 = diag(-1, nu01, nu02) and
M1 = (Q^-1)^T diag(-1, nu11, nu12) Q^-1 the derivative of
area((1-l) M0 + l M1) at l = 0 has a closed form in the entries of Q and
the complete elliptic integrals at the modulus

    f = sqrt((nu02 - nu01) / ((nu02 - 1) nu01)).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .area import elliptic_E, elliptic_K, quad_0_halfpi
from .conics import EllipseMatrix, normalize
from .errors import InvalidParameterError, OutOfDomainError
from .minkowski import MinkRotation


@dataclass(frozen=True)
class ABGamma:
    """Elliptic-integral coefficients of the closed-form area derivative.

    Satisfies A < B < Gamma < 0 whenever 1 < nu01 < nu02.
    """

    A: float
    B: float
    Gamma: float
    f: float
    E_bar: float
    K_bar: float


@dataclass(frozen=True)
class EllipsePair:
    """A diagonal ellipse, a rotated partner, and the rotation carrying its pose."""

    m0: EllipseMatrix
    m1: EllipseMatrix
    q: MinkRotation
    nu0_pair: tuple[float, float]
    nu1_pair: tuple[float, float]

    @classmethod
    def from_eigs(cls, nu0_pair, nu1_pair, q: MinkRotation,
                  strict: bool = False) -> "EllipsePair":
        nu01, nu02 = nu0_pair
        nu11, nu12 = nu1_pair
        if strict and not (1.0 < nu01 < nu11 <= nu12 < nu02):
            raise InvalidParameterError(
                f"eigenvalue interlacing 1 < {nu01} < {nu11} <= {nu12} < {nu02} violated")
        if not (1.0 < nu01 <= nu02 and 1.0 < nu11 <= nu12):
            raise InvalidParameterError("eigenvalues must satisfy 1 < nu_i1 <= nu_i2")
        m0 = normalize(np.diag([-1.0, nu01, nu02]))
        qinv = q.inverse().m
        m1 = normalize(qinv.T @ np.diag([-1.0, nu11, nu12]) @ qinv)
        return cls(m0, m1, q, (float(nu01), float(nu02)), (float(nu11), float(nu12)))


def in_between(m0: EllipseMatrix, m1: EllipseMatrix, lam: float) -> EllipseMatrix:
    """Normalized convex combination (1 - lam) M0 + lam M1 of two ellipses."""
    if not (0.0 <= lam <= 1.0):
        raise InvalidParameterError(f"lambda must be in [0, 1], got {lam}")
    if not (m0.normalized and m1.normalized):
        raise InvalidParameterError("operands must be normalized ellipse matrices")
    return normalize((1.0 - lam) * m0.m + lam * m1.m)


def ab_gamma(nu01: float, nu02: float) -> ABGamma:
    """Coefficients A, B, Gamma for an eigenvalue pair 1 < nu01 < nu02."""
    if not (1.0 < nu01 < nu02):
        raise OutOfDomainError(f"require 1 < nu01 < nu02, got ({nu01}, {nu02})")
    f = np.sqrt((nu02 - nu01) / ((nu02 - 1.0) * nu01))
    e_bar = elliptic_E(f)
    k_bar = elliptic_K(f)
    a = -nu01 * (nu02 - nu01) * e_bar
    b = nu02 * (nu01 - 1.0) * k_bar - nu01 * (nu02 - 1.0) * e_bar
    g = nu01 * (nu01 - 1.0) * (e_bar - k_bar)
    return ABGamma(float(a), float(b), float(g), float(f), e_bar, k_bar)


def _pose_combinations(q: np.ndarray, nu11: float, nu12: float) -> np.ndarray:
    """The three combinations q_j2^2 nu11 + q_j3^2 nu12 - q_j1^2 (rows of Q)."""
    return q[:, 1] ** 2 * nu11 + q[:, 2] ** 2 * nu12 - q[:, 0] ** 2


def d_area_at_zero(pair: EllipsePair) -> float:
    """Closed-form derivative of area of the in-between family at lambda = 0."""
    nu01, nu02 = pair.nu0_pair
    nu11, nu12 = pair.nu1_pair
    abg = ab_gamma(nu01, nu02)
    c = _pose_combinations(pair.q.m, nu11, nu12)
    num = abg.A * c[0] + abg.B * c[1] + abg.Gamma * c[2]
    den = np.sqrt((nu02 - 1.0) * nu01) * (nu02 - nu01) * (nu01 - 1.0)
    return float(2.0 * num / den)


def d_area_quadrature(pair: EllipsePair) -> float:
    """Same derivative by direct quadrature of the integral form.

    Serves as the two-route consistency check for the closed form.
    """
    nu01, nu02 = pair.nu0_pair
    nu11, nu12 = pair.nu1_pair
    c = _pose_combinations(pair.q.m, nu11, nu12)

    def f(phi):
        s2 = np.sin(phi) ** 2
        c2 = 1.0 - s2
        g = nu01 * s2 + nu02 * c2
        d = (c[0] * nu01 + c[1]) * s2 + (c[0] * nu02 + c[2]) * c2
        n = (g - 1.0) ** 1.5 * np.sqrt(g)
        return d / n

    return -0.5 * 4.0 * quad_0_halfpi(f)


def d_area_star(nu0_pair, nu1_pair, zeta: float) -> float:
    """Derivative at lambda = 0 for the concentric comparison family.

    The partner ellipse is the diagonal form rotated about the common center
    through the angle zeta.
    """
    nu01, nu02 = nu0_pair
    nu11, nu12 = nu1_pair
    abg = ab_gamma(nu01, nu02)
    cz, sz = np.cos(zeta) ** 2, np.sin(zeta) ** 2
    d_star = (-abg.A
              + (abg.B * cz + abg.Gamma * sz) * nu11
              + (abg.B * sz + abg.Gamma * cz) * nu12)
    n_star = np.sqrt((nu02 - 1.0) * nu01) * (nu02 - nu01) * (nu01 - 1.0)
    return float(2.0 * d_star / n_star)
