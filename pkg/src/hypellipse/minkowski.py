"""Minkowski linear algebra and the hyperboloid model of the hyperbolic plane.

Points live on the upper sheet of the sphere of squared radius -1 in
Minkowski 3-space with signature (-, +, +).  Hyperbolic rotations are
parametrized by a 4-vector q subject to q0^2 + q1^2 - q2^2 - q3^2 = 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidParameterError, OutOfDomainError

# On-hyperboloid / orthogonality checks; all tested quantities are O(1)-O(100).
TOL = 1e-9

#: The matrix of the Minkowski inner product, diag(-1, 1, 1).
MINK_METRIC = np.diag([-1.0, 1.0, 1.0])


@dataclass(frozen=True)
class MinkVector:
    """A point or direction of Minkowski 3-space."""

    x0: float
    x1: float
    x2: float

    @classmethod
    def from_array(cls, a) -> "MinkVector":
        a = np.asarray(a, dtype=float)
        return cls(float(a[0]), float(a[1]), float(a[2]))

    @property
    def vec(self) -> np.ndarray:
        return np.array([self.x0, self.x1, self.x2])

    def norm2(self) -> float:
        """Minkowski square norm <x, x>."""
        return mink_ip(self, self)

    def is_point(self, tol: float = TOL) -> bool:
        """True if x lies on the upper sheet of the hyperboloid."""
        return abs(self.norm2() + 1.0) <= tol and self.x0 > 0.0

    def is_spacelike(self) -> bool:
        return self.norm2() > 0.0

    def normalized_point(self) -> "MinkVector":
        """Scale a timelike vector onto the upper hyperboloid sheet."""
        n2 = self.norm2()
        if n2 >= 0.0:
            raise InvalidParameterError("vector is not timelike")
        v = self.vec / np.sqrt(-n2)
        if v[0] < 0.0:
            v = -v
        return MinkVector.from_array(v)


@dataclass(frozen=True)
class MinkRotation:
    """A hyperbolic rotation, stored with the 4-parameter vector it came from."""

    m: np.ndarray
    q: np.ndarray = field(default=None)

    def apply(self, x: MinkVector) -> MinkVector:
        return MinkVector.from_array(self.m @ x.vec)

    def compose(self, other: "MinkRotation") -> "MinkRotation":
        """The rotation acting as self after other."""
        return MinkRotation(self.m @ other.m, None)

    def inverse(self) -> "MinkRotation":
        # Minkowski orthogonality: Q^-1 = I Q^T I.
        return MinkRotation(MINK_METRIC @ self.m.T @ MINK_METRIC, None)

    def is_orthogonal(self, tol: float = TOL) -> bool:
        return np.max(np.abs(self.m.T @ MINK_METRIC @ self.m - MINK_METRIC)) <= tol


def mink_ip(x: MinkVector, y: MinkVector) -> float:
    """Indefinite inner product -x0*y0 + x1*y1 + x2*y2."""
    return -x.x0 * y.x0 + x.x1 * y.x1 + x.x2 * y.x2


def hyp_distance(x: MinkVector, y: MinkVector, tol: float = TOL) -> float:
    """Hyperbolic distance arccosh(-<x, y>) between two hyperboloid points."""
    if not x.is_point(tol) or not y.is_point(tol):
        raise InvalidParameterError("arguments must lie on the hyperboloid")
    c = -mink_ip(x, y)
    if c < 1.0 - tol:
        raise InvalidParameterError(f"-<x,y> = {c} < 1; inputs not on the hyperboloid")
    return float(np.arccosh(max(c, 1.0)))


def rotation_matrix_from_quat(q) -> np.ndarray:
    q0, q1, q2, q3 = q
    return np.array([
        [q0 * q0 + q1 * q1 + q2 * q2 + q3 * q3,
         2.0 * (q0 * q3 + q1 * q2),
         2.0 * (q1 * q3 - q0 * q2)],
        [2.0 * (q0 * q3 - q1 * q2),
         q0 * q0 - q1 * q1 - q2 * q2 + q3 * q3,
         2.0 * (q0 * q1 - q2 * q3)],
        [2.0 * (-q0 * q2 - q1 * q3),
         2.0 * (-q0 * q1 - q2 * q3),
         q0 * q0 - q1 * q1 + q2 * q2 - q3 * q3],
    ])


def rotation_from_quat(q, tol: float = TOL) -> MinkRotation:
    """Hyperbolic rotation from a 4-vector with q0^2 + q1^2 - q2^2 - q3^2 = 1."""
    q = np.asarray(q, dtype=float)
    if q.shape != (4,):
        raise InvalidParameterError("q must be a 4-vector")
    c = q[0] ** 2 + q[1] ** 2 - q[2] ** 2 - q[3] ** 2
    if abs(c - 1.0) > tol:
        raise InvalidParameterError(
            f"q0^2 + q1^2 - q2^2 - q3^2 = {c}, must equal 1")
    return MinkRotation(rotation_matrix_from_quat(q), q.copy())


def rotation_about_center(zeta: float) -> MinkRotation:
    """Rotation about (1, 0, 0) through the angle zeta."""
    return rotation_from_quat([np.cos(zeta / 2.0), -np.sin(zeta / 2.0), 0.0, 0.0])


def half_turn_about(r: MinkVector, tol: float = TOL) -> MinkRotation:
    """Point reflection about a hyperboloid point r.

    The resulting rotation is idempotent and fixes r.
    """
    if not r.is_point(tol):
        raise InvalidParameterError("half-turn axis must be a hyperboloid point")
    return rotation_from_quat([0.0, -r.x0, r.x1, r.x2], tol)


def hyp_midpoint(c0: MinkVector, c1: MinkVector, tol: float = TOL) -> MinkVector:
    """Geodesic midpoint: the normalized Minkowski sum of the endpoints."""
    if not c0.is_point(tol) or not c1.is_point(tol):
        raise InvalidParameterError("arguments must lie on the hyperboloid")
    s = MinkVector.from_array(c0.vec + c1.vec)
    return s.normalized_point()


def klein_project(x: MinkVector, tol: float = TOL) -> tuple[float, float]:
    """Central projection of a hyperboloid point to the unit (Cayley-Klein) disk."""
    if not x.is_point(tol):
        raise InvalidParameterError("argument must lie on the hyperboloid")
    return (x.x1 / x.x0, x.x2 / x.x0)


def klein_lift(u: float, v: float) -> MinkVector:
    """Inverse of klein_project for (u, v) strictly inside the unit disk."""
    r2 = u * u + v * v
    if r2 >= 1.0:
        raise OutOfDomainError(f"({u}, {v}) is not inside the unit disk")
    x0 = 1.0 / np.sqrt(1.0 - r2)
    return MinkVector(float(x0), float(u * x0), float(v * x0))
