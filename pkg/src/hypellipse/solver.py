"""Minimal enclosing ellipses and the uniqueness certificate pipeline.

The general solver runs a derivative-free outer search over the center in
Cayley-Klein coordinates around an inner convex solve: for a fixed center the
containment constraints are linear in the spacelike 2x2 block of the ellipse
matrix and the area is a strictly convex function of that block, so the inner
optimum is unique.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .area import area as area_of, area_circle, area_gradient
from .conics import (EllipseMatrix, _orthonormal_spacelike_complement,
                     center_and_axes, eigs_to_semiaxes, normalize,
                     semiaxes_to_eigs)
from .errors import (DegenerateInputError, InfeasibleError,
                     InvalidConfigurationError, InvalidParameterError)
from .minkowski import (MINK_METRIC, MinkVector, hyp_distance, hyp_midpoint,
                        klein_lift, klein_project, mink_ip)
from .uniqueness import H

# a containment constraint counts as active at this quadratic-form magnitude
BOUNDARY_ACTIVITY_TOL = 1e-8


@dataclass(frozen=True)
class PointSet:
    """A full-dimensional finite set of hyperboloid points."""

    points: tuple[MinkVector, ...]
    klein: np.ndarray

    @classmethod
    def from_points(cls, points) -> "PointSet":
        points = tuple(points)
        if len(points) < 3:
            raise DegenerateInputError("need at least 3 points")
        klein = np.array([klein_project(p) for p in points])
        spread = klein - klein.mean(axis=0)
        # full-dimensionality: some triple spans a nondegenerate triangle
        _, sv, _ = np.linalg.svd(spread, full_matrices=False)
        if sv[-1] < 1e-12 * max(1.0, sv[0]):
            raise DegenerateInputError("points are collinear")
        return cls(points, klein)

    @classmethod
    def from_klein(cls, coords) -> "PointSet":
        return cls.from_points([klein_lift(u, v) for u, v in coords])


def convex_hull(ps: PointSet) -> list[MinkVector]:
    """Hull vertices in counterclockwise order.

    Hyperbolic lines are chords of the Klein disk, so the hyperbolic hull is
    the Euclidean hull of the projected points.
    """
    pts = sorted(map(tuple, ps.klein))

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    def half(seq):
        out = []
        for p in seq:
            while len(out) > 1 and cross(out[-2], out[-1], p) <= 0.0:
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(pts[::-1])
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        raise DegenerateInputError("hull is degenerate (collinear points)")
    return [klein_lift(u, v) for u, v in hull]


def _edge_normals(hull: list[MinkVector]) -> np.ndarray:
    """Inward unit spacelike normals of the hull edges, one row per edge."""
    centroid = np.mean([klein_project(p) for p in hull], axis=0)
    interior = klein_lift(*centroid).vec
    normals = []
    for a, b in zip(hull, hull[1:] + hull[:1]):
        n = MINK_METRIC @ np.cross(a.vec, b.vec)
        n = n / np.sqrt(n @ MINK_METRIC @ n)
        if interior @ MINK_METRIC @ n < 0:
            n = -n
        normals.append(n)
    return np.array(normals)


def signed_edge_distance(x: MinkVector, normals: np.ndarray) -> float:
    """Min over edges of the signed hyperbolic distance to the edge line."""
    return float(np.min(np.arcsinh(normals @ (MINK_METRIC @ x.vec))))


def inscribed_circle(hull: list[MinkVector]) -> tuple[MinkVector, float]:
    """A locally maximal inscribed circle of the hull: (center, radius)."""
    normals = _edge_normals(hull)
    start = np.mean([klein_project(p) for p in hull], axis=0)

    def neg_rho(uv):
        if uv[0] ** 2 + uv[1] ** 2 >= 1.0 - 1e-12:
            return 1e3
        return -signed_edge_distance(klein_lift(*uv), normals)

    res = minimize(neg_rho, start, method="Nelder-Mead",
                   options={"xatol": 1e-12, "fatol": 1e-14, "maxfev": 4000})
    center = klein_lift(*res.x)
    rho = -res.fun
    if rho <= 0:
        raise DegenerateInputError("no inscribed circle: degenerate hull")
    return center, float(rho)


def _frame_for_center(center: MinkVector) -> np.ndarray:
    c = center.vec
    return np.column_stack([c, _orthonormal_spacelike_complement(c)])


def _local_klein_coords(points, frame: np.ndarray) -> np.ndarray:
    """Disk coordinates of the points in the frame centered at the frame origin."""
    binv = MINK_METRIC @ frame.T @ MINK_METRIC
    out = []
    for p in points:
        y = binv @ p.vec
        out.append((y[1] / y[0], y[2] / y[0]))
    return np.array(out)


def _ellipse_from_block(frame: np.ndarray, s: np.ndarray) -> EllipseMatrix:
    big = np.zeros((3, 3))
    big[0, 0] = -1.0
    big[1:, 1:] = s
    t = MINK_METRIC @ frame @ MINK_METRIC
    return normalize(t @ big @ t.T)


def _guarded_area_and_grad(s11, s12, s22):
    s = np.array([[s11, s12], [s12, s22]])
    w, v = np.linalg.eigh(s)
    floor = 1.0 + 1e-9
    penalty = 0.0
    grad_pen = np.zeros(3)
    wc = w.copy()
    for k in range(2):
        if wc[k] < floor:
            d = floor - wc[k]
            penalty += 1e4 * d
            gk = np.outer(v[:, k], v[:, k])
            grad_pen -= 1e4 * np.array([gk[0, 0], 2.0 * gk[0, 1], gk[1, 1]])
            wc[k] = floor
    if wc[1] < wc[0]:
        wc = wc[::-1]
    a = area_of(wc[0], wc[1]) + penalty
    da = area_gradient(wc[0], wc[1])
    grad = np.zeros(3)
    order = np.argsort(w)
    for idx, k in enumerate(order):
        gk = np.outer(v[:, k], v[:, k])
        grad += da[idx] * np.array([gk[0, 0], 2.0 * gk[0, 1], gk[1, 1]])
    return a, grad + grad_pen


def min_ellipse_fixed_center(points, center: MinkVector,
                             return_area_only: bool = False):
    """Area-minimal enclosing ellipse among those centered at the given point.

    The containment constraints are linear in the spacelike block and the
    area is strictly convex in it, so the optimum is unique.
    """
    frame = _frame_for_center(center)
    z = _local_klein_coords(points, frame)
    norms2 = np.sum(z * z, axis=1)
    if np.any(norms2 >= 1.0):
        raise InfeasibleError("a point lies on or beyond the absolute circle")
    # feasible start: the centered circle through the farthest point
    s0 = 1.0 / np.max(norms2)
    x0 = np.array([s0, 0.0, s0])

    zz = np.stack([z[:, 0] ** 2, 2.0 * z[:, 0] * z[:, 1], z[:, 1] ** 2], axis=1)
    constraints = [{
        "type": "ineq",
        "fun": lambda p: 1.0 - zz @ p,
        "jac": lambda p: -zz,
    }]
    res = minimize(lambda p: _guarded_area_and_grad(*p), x0, jac=True,
                   method="SLSQP", constraints=constraints,
                   options={"maxiter": 400, "ftol": 1e-14})
    s = np.array([[res.x[0], res.x[1]], [res.x[1], res.x[2]]])
    w = np.linalg.eigvalsh(s)
    if w[0] <= 1.0:
        raise InfeasibleError("fixed-center subproblem left the ellipse domain")
    if return_area_only:
        return area_of(w[0], w[1])
    return _ellipse_from_block(frame, s)


def min_ellipse_fixed_axes(points, center: MinkVector, axis_frame) -> EllipseMatrix:
    """Area-minimal enclosing ellipse with prescribed center and axis directions.

    axis_frame is a pair of spacelike MinkVectors, Minkowski-orthonormal and
    orthogonal to the center.
    """
    e1, e2 = axis_frame
    frame = np.column_stack([center.vec, e1.vec, e2.vec])
    gram = frame.T @ MINK_METRIC @ frame
    if np.max(np.abs(gram - MINK_METRIC)) > 1e-8:
        raise InvalidParameterError("axis frame is not Minkowski-orthonormal")
    z = _local_klein_coords(points, frame)
    w1 = z[:, 0] ** 2
    w2 = z[:, 1] ** 2
    if np.any(w1 + w2 >= 1.0):
        raise InfeasibleError("a point cannot be enclosed with the given axes")
    wmax = np.max(w1 + w2)
    nu0 = min(1.0 / wmax, 1e6) if wmax > 0 else 1e6
    x0 = np.array([nu0, nu0])

    wm = np.stack([w1, w2], axis=1)
    constraints = [{
        "type": "ineq",
        "fun": lambda p: 1.0 - wm @ p,
        "jac": lambda p: -wm,
    }]

    def objective(p):
        a, g = _guarded_area_and_grad(p[0], 0.0, p[1])
        return a, np.array([g[0], g[2]])

    res = minimize(objective, x0, jac=True, method="SLSQP",
                   constraints=constraints,
                   options={"maxiter": 400, "ftol": 1e-14})
    nu = res.x
    if min(nu) <= 1.0:
        raise InfeasibleError("fixed-axes subproblem left the ellipse domain")
    return _ellipse_from_block(frame, np.diag(nu))


@dataclass(frozen=True)
class SolveDiagnostics:
    converged: bool
    multistart_areas: tuple[float, ...]
    boundary_contacts: int
    area: float


def boundary_contacts(e: EllipseMatrix, points,
                      tol: float = BOUNDARY_ACTIVITY_TOL) -> int:
    return sum(1 for p in points if abs(e.quadratic_form(p)) <= tol)


def min_ellipse(ps: PointSet, seed: int = 0, starts: int = 8,
                ) -> tuple[EllipseMatrix, SolveDiagnostics]:
    """Minimal-area enclosing ellipse over center, axes and eigenvalues.

    Outer derivative-free search over the center in Klein coordinates with
    multistart, inner unique convex fixed-center solve.
    """
    hull = convex_hull(ps)
    hull_klein = np.array([klein_project(p) for p in hull])
    centroid = hull_klein.mean(axis=0)
    spread = max(np.max(np.linalg.norm(hull_klein - centroid, axis=1)), 1e-3)
    rng = np.random.default_rng(seed)

    def objective(uv):
        if uv[0] ** 2 + uv[1] ** 2 >= 1.0 - 1e-12:
            return 1e6
        try:
            return min_ellipse_fixed_center(hull, klein_lift(*uv),
                                            return_area_only=True)
        except InfeasibleError:
            return 1e6

    best = None
    areas = []
    for k in range(starts):
        start = centroid if k == 0 else centroid + rng.normal(scale=0.3 * spread, size=2)
        if start[0] ** 2 + start[1] ** 2 >= 0.98:
            start = centroid
        res = minimize(objective, start, method="Nelder-Mead",
                       options={"xatol": 1e-6, "fatol": 1e-10, "maxfev": 80})
        areas.append(float(res.fun))
        if best is None or res.fun < best.fun:
            best = res
    # polish the winner
    res = minimize(objective, best.x, method="Nelder-Mead",
                   options={"xatol": 1e-11, "fatol": 1e-14, "maxfev": 600})
    converged = bool(res.fun < 1e6)
    ellipse = min_ellipse_fixed_center(hull, klein_lift(*res.x))
    contacts = boundary_contacts(ellipse, hull, tol=1e-6)
    diag = SolveDiagnostics(converged, tuple(areas), contacts, float(res.fun))
    return ellipse, diag


def circle_matrix(center: MinkVector, rho: float) -> EllipseMatrix:
    """The circle of hyperbolic radius rho about the given center."""
    if rho <= 0:
        raise InvalidParameterError(f"radius must be positive, got {rho}")
    nu = 1.0 / np.tanh(rho) ** 2
    frame = _frame_for_center(center)
    return _ellipse_from_block(frame, np.diag([nu, nu]))


def two_circle_shrink(c0: EllipseMatrix, c1: EllipseMatrix) -> EllipseMatrix:
    """Smaller circle over the common-chord diameter of two congruent circles.

    Contains the common interior of the inputs and has strictly smaller area.
    """
    if not (c0.is_circle and c1.is_circle):
        raise InvalidConfigurationError("inputs must be circles")
    if abs(c0.nu1 - c1.nu1) > 1e-8 * c0.nu1:
        raise InvalidConfigurationError("circles are not congruent")
    ctr0 = center_and_axes(c0).center
    ctr1 = center_and_axes(c1).center
    rho = eigs_to_semiaxes(c0.nu1, c0.nu2)[0]
    k = mink_ip(ctr0, ctr1)
    if k >= -1.0 + 1e-12:
        raise InvalidConfigurationError("circle centers coincide")
    alpha = np.cosh(rho) / (1.0 - k)
    gamma2 = -1.0 + 2.0 * alpha ** 2 * (1.0 - k)
    if gamma2 <= 0.0:
        raise InvalidConfigurationError("circles do not intersect in two points")
    w = MINK_METRIC @ np.cross(ctr0.vec, ctr1.vec)
    w = w / np.sqrt(w @ MINK_METRIC @ w)
    base = alpha * (ctr0.vec + ctr1.vec)
    s0 = MinkVector.from_array(base + np.sqrt(gamma2) * w)
    s1 = MinkVector.from_array(base - np.sqrt(gamma2) * w)
    mid = hyp_midpoint(s0, s1)
    radius = hyp_distance(s0, s1) / 2.0
    return circle_matrix(mid, radius)


def solve_R_from_area(rho: float, target_area: float) -> float:
    """Major semi-axis R >= rho of an ellipse with minor semi-axis rho and given area."""
    circle = area_circle(rho)
    if target_area < circle - 1e-12:
        raise InfeasibleError(
            f"area {target_area} below the circle area {circle} of radius {rho}")
    if target_area <= circle:
        return rho

    def area_at(r):
        nu1, nu2 = semiaxes_to_eigs(r, rho)
        if nu1 <= 1.0:
            # coth^2 r rounds down to 1 for very large r; the area is
            # astronomically larger than any realistic target.
            return np.inf
        return area_of(nu1, nu2)

    hi = max(2.0 * rho, 1.0)
    while area_at(hi) < target_area:
        hi *= 2.0
        if hi > 1e4:
            raise InfeasibleError("target area out of reachable range")
    lo = rho
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if area_at(mid) < target_area:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-14 * max(1.0, hi):
            break
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class UniquenessCertificate:
    """Result of the inscribed-circle / circumscribed-ellipse uniqueness test."""

    rho: float
    S: float
    R: float
    nu1: float
    nu2: float
    H_value: float
    verdict: str  # "unique" or "inconclusive"

    @property
    def unique(self) -> bool:
        return self.verdict == "unique"


def certificate_from_bounds(rho: float, S: float) -> UniquenessCertificate:
    """Certificate from an inscribed-circle radius and a circumscribed area."""
    R = solve_R_from_area(rho, S)
    nu1 = 1.0 / np.tanh(R) ** 2
    nu2 = 1.0 / np.tanh(rho) ** 2
    hv = H(nu1, nu2)
    verdict = "unique" if hv <= 0.0 else "inconclusive"
    return UniquenessCertificate(float(rho), float(S), float(R),
                                 float(nu1), float(nu2), float(hv), verdict)


def certify(ps: PointSet, seed: int = 0) -> tuple[UniquenessCertificate, EllipseMatrix]:
    """Run the four-step uniqueness test on a point set.

    Steps: inscribed-circle radius rho, circumscribed minimal-ellipse area S,
    the matching major semi-axis R, and the sign of H(coth^2 R, coth^2 rho).
    """
    hull = convex_hull(ps)
    _, rho = inscribed_circle(hull)
    ellipse, diag = min_ellipse(ps, seed=seed)
    cert = certificate_from_bounds(rho, diag.area)
    return cert, ellipse
