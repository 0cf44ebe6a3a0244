"""Hyperbolic ellipses as symmetric 3x3 matrices with Minkowski eigenstructure.

An ellipse of the hyperbolic plane is the zero set of an indefinite
symmetric matrix M.  Its Minkowski eigenvalues solve M x = nu * diag(-1,1,1) x;
after normalization they read (1, nu1, nu2) with 1 < nu1 <= nu2 and interior
points give a negative quadratic form.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError, NotAnEllipseError
from .minkowski import MINK_METRIC, MinkRotation, MinkVector

# Residual bound for eigenpairs, and the relative gap below which the two
# spacelike eigenvalues are treated as equal (axis directions meaningless).
EIG_RESIDUAL_TOL = 1e-9
CIRCLE_REL_TOL = 1e-9


class Location(enum.Enum):
    INSIDE = "inside"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


def mink_eigs(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Minkowski eigenvalues (ascending) and eigenvectors of a symmetric matrix.

    Returns (eigs, vecs) with vecs[:, k] solving m v = eigs[k] * diag(-1,1,1) v.
    The eigenvector of the smallest eigenvalue is timelike, the others are
    spacelike, scaled to unit Minkowski norm (timelike one to norm -1).
    """
    m = np.asarray(m, dtype=float)
    if m.shape != (3, 3) or np.max(np.abs(m - m.T)) > 1e-12 * max(1.0, np.max(np.abs(m))):
        raise InvalidParameterError("m must be a symmetric 3x3 matrix")
    scale = max(1.0, np.max(np.abs(m)))
    ev, vecs_raw = np.linalg.eig(MINK_METRIC @ m)
    if np.max(np.abs(ev.imag)) > 1e-9 * scale:
        raise NotAnEllipseError("Minkowski eigenvalue pencil has complex roots")
    order = np.argsort(ev.real)
    eigs = ev.real[order]
    vecs = vecs_raw.real[:, order]

    for i in range(3):
        v = vecs[:, i]
        n2 = -v[0] ** 2 + v[1] ** 2 + v[2] ** 2
        if abs(n2) < 1e-12:
            raise NotAnEllipseError("Minkowski-null eigenvector: not an ellipse")
        v = v / np.sqrt(abs(n2))
        if i == 0 and v[0] < 0:
            v = -v
        vecs[:, i] = v
        resid = np.max(np.abs(m @ v - eigs[i] * (MINK_METRIC @ v)))
        if resid > EIG_RESIDUAL_TOL * scale * 10:
            raise NotAnEllipseError(f"eigenpair residual {resid} too large")
    n2_0 = -vecs[0, 0] ** 2 + vecs[1, 0] ** 2 + vecs[2, 0] ** 2
    if n2_0 > 0:
        raise NotAnEllipseError("smallest-eigenvalue eigenvector is not timelike")
    return eigs, vecs


def _orthonormal_spacelike_complement(c: np.ndarray) -> np.ndarray:
    """Two Minkowski-orthonormal spacelike vectors orthogonal to timelike c."""
    c = c / np.sqrt(abs(-c[0] ** 2 + c[1] ** 2 + c[2] ** 2))
    trial = np.array([0.0, 1.0, 0.0])
    if abs(trial @ MINK_METRIC @ c) > 0.9 * abs(c[0]):
        trial = np.array([0.0, 0.0, 1.0])
    # Gram-Schmidt in the Minkowski metric (c has norm -1)
    e1 = trial + (trial @ MINK_METRIC @ c) * c
    e1 = e1 / np.sqrt(e1 @ MINK_METRIC @ e1)
    # Minkowski cross product: <I(a x b), a> = <I(a x b), b> = 0
    e2 = MINK_METRIC @ np.cross(c, e1)
    e2 = e2 / np.sqrt(e2 @ MINK_METRIC @ e2)
    return np.column_stack([e1, e2])


@dataclass(frozen=True)
class EllipseMatrix:
    """A normalized hyperbolic ellipse: eigenvalues (1, nu1, nu2), 1 < nu1 <= nu2."""

    m: np.ndarray
    eigs: tuple[float, float, float]
    vecs: np.ndarray
    normalized: bool = True

    @property
    def nu1(self) -> float:
        return self.eigs[1]

    @property
    def nu2(self) -> float:
        return self.eigs[2]

    @property
    def is_circle(self) -> bool:
        return self.eigs[2] - self.eigs[1] < CIRCLE_REL_TOL * self.eigs[2]

    def quadratic_form(self, x: MinkVector) -> float:
        v = x.vec
        return float(v @ self.m @ v)


@dataclass(frozen=True)
class CenterAxes:
    """Center and axis directions of an ellipse; axes are None for circles."""

    center: MinkVector
    axis_dirs: tuple[MinkVector, MinkVector] | None
    is_circle: bool


def normalize(m: np.ndarray) -> EllipseMatrix:
    """Scale a symmetric matrix to the ellipse normal form.

    The returned matrix has Minkowski eigenvalues (1, nu1, nu2) with
    1 < nu1 <= nu2; interior points x satisfy x^T M x < 0.
    """
    m = np.asarray(m, dtype=float)
    if m.shape == (3, 3):
        asym = np.max(np.abs(m - m.T))
        if asym <= 1e-9 * max(1.0, np.max(np.abs(m))):
            # conjugation products carry harmless floating-point asymmetry
            m = (m + m.T) / 2.0
    # the Minkowski trace is the sum of pencil eigenvalues; an ellipse matrix
    # has all three positive, so a negative trace means a flipped sign
    if np.trace(MINK_METRIC @ m) < 0.0:
        m = -m
    eigs, vecs = mink_eigs(m)
    if eigs[0] <= 0:
        raise NotAnEllipseError(
            f"Minkowski eigenvalues {tuple(eigs)} have mixed signs; not an ellipse")
    scaled = m / eigs[0]
    nu = eigs / eigs[0]
    if nu[1] <= 1.0 + 1e-12:
        raise NotAnEllipseError(
            f"normalized eigenvalues {tuple(nu)} violate 1 < nu1")
    return EllipseMatrix(scaled, (1.0, float(nu[1]), float(nu[2])), vecs)


def ellipse_from_eigs(nu1: float, nu2: float) -> EllipseMatrix:
    """The normal-form ellipse diag(-1, nu1, nu2)."""
    if not (1.0 < nu1 <= nu2):
        raise NotAnEllipseError(f"require 1 < nu1 <= nu2, got ({nu1}, {nu2})")
    return normalize(np.diag([-1.0, nu1, nu2]))


def frame_matrix(e: EllipseMatrix) -> np.ndarray:
    """Minkowski-orthonormal frame [center | axis1 | axis2] as columns."""
    b = e.vecs.copy()
    if e.is_circle:
        b[:, 1:] = _orthonormal_spacelike_complement(b[:, 0])
    return b


def rotate_ellipse(e: EllipseMatrix, q: MinkRotation) -> EllipseMatrix:
    """Image of the ellipse under a hyperbolic rotation."""
    qinv = q.inverse().m
    return normalize(qinv.T @ e.m @ qinv)


def contains(e: EllipseMatrix, x: MinkVector, tol: float = 1e-9) -> Location:
    """Tri-state location of a hyperboloid point relative to the ellipse."""
    if not x.is_point(1e-7):
        raise InvalidParameterError("x must lie on the hyperboloid")
    v = e.quadratic_form(x)
    if v < -tol:
        return Location.INSIDE
    if v > tol:
        return Location.OUTSIDE
    return Location.BOUNDARY


def center_and_axes(e: EllipseMatrix) -> CenterAxes:
    """Center (timelike eigenvector as a point) and spacelike axis directions."""
    c = MinkVector.from_array(e.vecs[:, 0]).normalized_point()
    if e.is_circle:
        return CenterAxes(c, None, True)
    a1 = MinkVector.from_array(e.vecs[:, 1])
    a2 = MinkVector.from_array(e.vecs[:, 2])
    return CenterAxes(c, (a1, a2), False)


def boundary_point(e: EllipseMatrix, phi: float) -> MinkVector:
    """Boundary point at angular parameter phi, measured in the ellipse frame.

    sin(phi) runs along the nu1 axis direction and cos(phi) along the nu2 one.
    """
    _, nu1, nu2 = e.eigs
    g = nu1 * np.sin(phi) ** 2 + nu2 * np.cos(phi) ** 2
    ch = np.sqrt(g / (g - 1.0))
    sh = np.sqrt(ch * ch - 1.0)
    local = np.array([ch, sh * np.sin(phi), sh * np.cos(phi)])
    return MinkVector.from_array(frame_matrix(e) @ local)


def semiaxes_to_eigs(a: float, b: float) -> tuple[float, float]:
    """Eigenvalues (coth^2 a, coth^2 b) of the ellipse with semi-axes a >= b."""
    if not (a >= b > 0.0):
        raise InvalidParameterError(f"require a >= b > 0, got ({a}, {b})")
    return (1.0 / np.tanh(a) ** 2, 1.0 / np.tanh(b) ** 2)


def eigs_to_semiaxes(nu1: float, nu2: float) -> tuple[float, float]:
    """Semi-axis lengths (major, minor) from normalized eigenvalues."""
    if not (1.0 < nu1 <= nu2):
        raise InvalidParameterError(f"require 1 < nu1 <= nu2, got ({nu1}, {nu2})")
    return (float(np.arctanh(1.0 / np.sqrt(nu1))),
            float(np.arctanh(1.0 / np.sqrt(nu2))))
