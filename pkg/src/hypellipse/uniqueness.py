"""The uniqueness inequality family and its half-turn certification machinery.

The central polynomial is

    H(nu1, nu2) = -13 nu1^2 + 5 nu1 nu2 - 3 nu1 + 7 nu2 + 4;

H <= 0 on the eigenvalue pair of an enclosing ellipse certifies uniqueness of
the minimal enclosing ellipse.  The half-turn comparison of two equal-area
ellipses reduces to the sign of a quartic in t = tan(zeta / 2), certified
through its Bernstein coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .area import area as area_of
from .conics import (EllipseMatrix, center_and_axes, frame_matrix, mink_eigs,
                     normalize, rotate_ellipse)
from .deformation import (ABGamma, EllipsePair, ab_gamma, d_area_at_zero,
                          in_between)
from .errors import InvalidParameterError
from .minkowski import (MinkRotation, MinkVector, half_turn_about,
                        hyp_distance, hyp_midpoint, rotation_about_center)


def H(nu1, nu2):
    """Uniqueness polynomial; H <= 0 is the certificate condition."""
    return -13.0 * nu1 ** 2 + 5.0 * nu1 * nu2 - 3.0 * nu1 + 7.0 * nu2 + 4.0


def h(j: int, nu1, nu2):
    """Auxiliary polynomials h1..h6 implied by H <= 0 on the admissible region."""
    if j == 1:
        return nu2 - 5.0 * nu1 + 4.0
    if j == 2:
        return -5.0 * nu1 ** 2 + nu1 * nu2 + nu1 + nu2 + 2.0
    if j == 3:
        return nu2 ** 2 - 5.0 * nu1 * nu2 - 2.0 * nu1 + 4.0 * nu2 + 2.0
    if j == 4:
        return 5.0 * nu2 ** 2 - 13.0 * nu1 * nu2 - 2.0 * nu1 + 6.0 * nu2 + 4.0
    if j == 5:
        return -5.0 * nu1 ** 2 + nu1 * nu2 - nu1 + 3.0 * nu2 + 2.0
    if j == 6:
        return nu2 ** 2 - 5.0 * nu1 * nu2 + 2.0 * nu2 + 2.0
    raise InvalidParameterError(f"index j must be in 1..6, got {j}")


def h_boundary_curve(nu1):
    """The nu2 value solving H(nu1, nu2) = 0; H <= 0 below this curve."""
    nu1 = np.asarray(nu1, dtype=float)
    return (13.0 * nu1 ** 2 + 3.0 * nu1 - 4.0) / (5.0 * nu1 + 7.0)


def hj_boundary_curve(j: int, nu1):
    """The binding zero-level branch of h_j over the admissible region."""
    nu1 = np.asarray(nu1, dtype=float)
    if j == 1:
        return 5.0 * nu1 - 4.0
    if j == 2:
        return (5.0 * nu1 ** 2 - nu1 - 2.0) / (nu1 + 1.0)
    if j == 3:
        b, c = 4.0 - 5.0 * nu1, 2.0 - 2.0 * nu1
    elif j == 4:
        b, c = (6.0 - 13.0 * nu1) / 5.0, (4.0 - 2.0 * nu1) / 5.0
    elif j == 5:
        return (5.0 * nu1 ** 2 + nu1 - 2.0) / (nu1 + 3.0)
    elif j == 6:
        b, c = 2.0 - 5.0 * nu1, 2.0
    else:
        raise InvalidParameterError(f"index j must be in 1..6, got {j}")
    return (-b + np.sqrt(b * b - 4.0 * c)) / 2.0


def lemma9_scan(values=None) -> dict:
    """Grid scan of the monotone-implication structure of H and h1..h6.

    Checks, on the grid restricted to U = {1 < nu1 < nu2}:
      (a) every point with H <= 0 satisfies h1..h6 <= 0;
      (b) the set where all seven polynomials are <= 0 survives increasing
          nu1 and decreasing nu2 inside U.
    The report also carries the zero-level curves for plotting.
    """
    if values is None:
        values = 1.0 + np.arange(201) / 10.0
    values = np.asarray(values, dtype=float)
    n1 = values[:, None]
    n2 = values[None, :]
    in_u = n2 > n1
    h_ok = H(n1, n2) <= 0.0
    hj_ok = np.ones_like(in_u)
    for j in range(1, 7):
        hj_ok = hj_ok & (h(j, n1, n2) <= 0.0)
    violations_a = int(np.count_nonzero(in_u & h_ok & ~hj_ok))

    good = in_u & h_ok & hj_ok
    violations_b = 0
    # moving to larger nu1 (next row) while staying in U must preserve goodness
    violations_b += int(np.count_nonzero(good[:-1, :] & in_u[1:, :] & ~good[1:, :]))
    # moving to smaller nu2 (previous column) while staying in U must preserve it
    violations_b += int(np.count_nonzero(good[:, 1:] & in_u[:, :-1] & ~good[:, :-1]))

    curve_nu1 = np.linspace(1.0, float(values[-1]), 401)
    curves = {"H": np.column_stack([curve_nu1, h_boundary_curve(curve_nu1)])}
    for j in range(1, 7):
        curves[f"h{j}"] = np.column_stack([curve_nu1, hj_boundary_curve(j, curve_nu1)])

    return {
        "grid_points": int(np.count_nonzero(in_u)),
        "violations_a": violations_a,
        "violations_b": violations_b,
        "violations": violations_a + violations_b,
        "curves": curves,
    }


@dataclass(frozen=True)
class HalfTurnInstance:
    """Parameters of a half-turn comparison of two ellipses.

    The pair (nu01, nu02) belongs to the diagonal reference ellipse, the pair
    (nu11, nu12) to its partner, r is the half-turn center on the hyperboloid
    and zeta the pose angle of the concentric comparison ellipse.
    """

    nu01: float
    nu02: float
    nu11: float
    nu12: float
    r: MinkVector
    zeta: float = 0.0

    def __post_init__(self):
        # weak ordering so that boundary cases (equal outer pairs) are
        # evaluable; strict interlacing is available via the strict property
        if not (1.0 < self.nu01 <= self.nu11 <= self.nu12 <= self.nu02):
            raise InvalidParameterError(
                "eigenvalues must satisfy 1 < nu01 <= nu11 <= nu12 <= nu02, got "
                f"({self.nu01}, {self.nu11}, {self.nu12}, {self.nu02})")
        if not self.r.is_point(1e-7):
            raise InvalidParameterError(
                "half-turn center must satisfy r1^2 - r2^2 - r3^2 = 1")

    @property
    def strict(self) -> bool:
        return self.nu01 < self.nu11 and self.nu12 < self.nu02

    def abg(self) -> ABGamma:
        return ab_gamma(self.nu01, self.nu02)


@dataclass(frozen=True)
class BernsteinQuartic:
    """Degree-4 Bernstein coefficients of the half-turn comparison quartic."""

    p: tuple[float, float, float, float, float]

    def __call__(self, t):
        """Evaluate by the de Casteljau recurrence; stable on [0, 1]."""
        t = np.asarray(t, dtype=float)
        b = [np.broadcast_to(np.asarray(pi, dtype=float), t.shape).copy()
             for pi in self.p]
        for level in range(4, 0, -1):
            for i in range(level):
                b[i] = (1.0 - t) * b[i] + t * b[i + 1]
        return b[0] if b[0].shape else float(b[0])


def d1_value(inst: HalfTurnInstance, zeta: float) -> float:
    """The moved-ellipse derivative numerator D1 at pose angle zeta."""
    abg = inst.abg()
    a, b, g = abg.A, abg.B, abg.Gamma
    r1s = inst.r.x0 ** 2
    r2, r3 = inst.r.x1, inst.r.x2
    n11, n12 = inst.nu11, inst.nu12
    r2s, r3s = r2 * r2, r3 * r3
    sz, cz = np.sin(zeta), np.cos(zeta)
    return float(
        4.0 * r2 * r3 * ((2 * a + b + g) * r1s + (b - g) * r2s - (b - g) * r3s)
        * (n11 - n12) * sz * cz
        + (4.0 * (a + b) * r1s * r2s - 4.0 * (a + g) * r1s * r3s
           - 8.0 * (b - g) * r2s * r3s + b - g) * (n11 - n12) * cz * cz
        + 4.0 * (a + b) * r1s * r2s * (n12 - 1.0)
        + 4.0 * (a + g) * r1s * r3s * (n11 - 1.0)
        + 4.0 * (b - g) * r2s * r3s * (n11 - n12)
        + g * n11 + b * n12 - a)


def d1_star_value(inst: HalfTurnInstance, zeta: float) -> float:
    """The concentric-comparison numerator D1* at pose angle zeta."""
    abg = inst.abg()
    a, b, g = abg.A, abg.B, abg.Gamma
    cz, sz = np.cos(zeta) ** 2, np.sin(zeta) ** 2
    return float(-a + (b * cz + g * sz) * inst.nu11 + (b * sz + g * cz) * inst.nu12)


def quartic_P(inst: HalfTurnInstance, t):
    """(D1 - D1*) after t = tan(zeta/2), cleared of the denominator (1 + t^2)^2.

    Negative on [0, 1] whenever the half-turn comparison hypotheses hold.
    """
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    zeta = 2.0 * np.arctan(t_arr)
    vals = np.array([(d1_value(inst, z) - d1_star_value(inst, z)) for z in zeta])
    out = vals * (1.0 + t_arr ** 2) ** 2
    return float(out[0]) if np.isscalar(t) or np.asarray(t).shape == () else out


def bernstein_coeffs(inst: HalfTurnInstance) -> BernsteinQuartic:
    """Bernstein coefficients of quartic_P, with r1^2 eliminated on the unit sheet."""
    abg = inst.abg()
    a, b, g = abg.A, abg.B, abg.Gamma
    r2, r3 = inst.r.x1, inst.r.x2
    r2s, r3s = r2 * r2, r3 * r3
    r1s = 1.0 + r2s + r3s
    n11, n12 = inst.nu11, inst.nu12

    low = ((n11 - 1.0) * (a + b) * r1s * r2s
           + (n12 - 1.0) * (a + g) * r1s * r3s
           + (n12 - n11) * (b - g) * r2s * r3s)
    high = ((n12 - 1.0) * (a + b) * r1s * r2s
            + (n11 - 1.0) * (a + g) * r1s * r3s
            - (n12 - n11) * (b - g) * r2s * r3s)
    cross = (r2 * r3 * (n12 - n11)
             * (-(2 * a + b + g) * r1s - (b - g) * r2s + (b - g) * r3s))

    p0 = 4.0 * low
    p1 = 4.0 * low + 2.0 * cross
    p2 = (8.0 * (n11 + n12 - 2.0) * ((a + b) * r1s * r2s + (a + g) * r1s * r3s)
          + 12.0 * cross) / 3.0
    p3 = 8.0 * high + 4.0 * cross
    p4 = 16.0 * high
    return BernsteinQuartic((float(p0), float(p1), float(p2), float(p3), float(p4)))


def quartic_sign_changes(inst: HalfTurnInstance, samples: int = 4001) -> list[float]:
    """Zeros of quartic_P on (0, 1), located by sampling and bisection."""
    ts = np.linspace(0.0, 1.0, samples)
    bern = bernstein_coeffs(inst)
    vals = bern(ts)
    zeros = []
    for i in range(len(ts) - 1):
        if vals[i] == 0.0:
            continue
        if vals[i] * vals[i + 1] < 0.0:
            lo, hi = ts[i], ts[i + 1]
            flo = vals[i]
            for _ in range(80):
                mid = 0.5 * (lo + hi)
                fmid = bern(np.array([mid]))[0]
                if flo * fmid <= 0.0:
                    hi = mid
                else:
                    lo, flo = mid, fmid
            zeros.append(0.5 * (lo + hi))
    return zeros


def j_integrand(k: int, t, nu01: float, nu02: float):
    """Appendix integrands J2..J5; each is linear in t^2.

    The (nu02 - nu01)/(nu02 - 1) prefactor applies to the t^2 term only, so
    that the endpoint values reduce to h2/h3 (J3), H/h4 (J4) and h5/h6 (J5).
    """
    t2 = np.asarray(t, dtype=float) ** 2
    d = nu02 - nu01
    if k == 2:
        return (nu02 * (nu01 - 1.0)
                - nu01 * (5.0 * nu02 - 2.0) * (1.0 - t2 * d / (nu01 * (nu02 - 1.0))))
    if k == 3:
        return (-(d / (nu02 - 1.0)) * (2.0 * nu02 - 7.0 * nu01 + 5.0) * t2
                + nu02 * (nu01 + 1.0) + nu01 * (1.0 - 5.0 * nu01) + 2.0)
    if k == 4:
        return (-(d / (nu02 - 1.0)) * 3.0 * (4.0 * nu02 - 5.0 * nu01 + 1.0) * t2
                + nu02 * (5.0 * nu01 + 7.0) + nu01 * (-13.0 * nu01 - 3.0) + 4.0)
    if k == 5:
        return (-(d / (nu02 - 1.0)) * (4.0 * nu02 - 5.0 * nu01 + 1.0) * t2
                + nu02 * (nu01 + 3.0) - nu01 * (5.0 * nu01 + 1.0) + 2.0)
    raise InvalidParameterError(f"integrand index must be in 2..5, got {k}")


# --------------------------------------------------------------------------
# instance generation and the matrix-level half-turn check


def sample_h_admissible_pair(rng: np.random.Generator,
                             nu1_max: float = 50.0) -> tuple[float, float]:
    """A random pair 1 < nu01 < nu02 with H(nu01, nu02) <= 0."""
    nu01 = 1.0 + rng.uniform(1e-3, nu1_max - 1.0)
    top = float(h_boundary_curve(nu01))
    nu02 = nu01 + rng.uniform(1e-6, 1.0) * (top - nu01)
    return float(nu01), float(nu02)


def sample_instance(rng: np.random.Generator, nu1_max: float = 50.0,
                    h_admissible: bool = True) -> HalfTurnInstance:
    """A random half-turn instance respecting the eigenvalue interlacing."""
    if h_admissible:
        nu01, nu02 = sample_h_admissible_pair(rng, nu1_max)
    else:
        nu01 = 1.0 + rng.uniform(1e-3, nu1_max - 1.0)
        nu02 = nu01 * (1.0 + rng.uniform(1e-3, 20.0))
    u = np.sort(rng.uniform(1e-6, 1.0 - 1e-6, size=2))
    nu11 = nu01 + u[0] * (nu02 - nu01)
    nu12 = nu01 + u[1] * (nu02 - nu01)
    while True:
        r2, r3 = rng.uniform(-3.0, 3.0, size=2)
        if r2 * r2 + r3 * r3 > 1e-8:
            break
    r = MinkVector(float(np.sqrt(1.0 + r2 * r2 + r3 * r3)), float(r2), float(r3))
    zeta = rng.uniform(0.0, np.pi / 2.0)
    return HalfTurnInstance(nu01, nu02, float(nu11), float(nu12), r, float(zeta))


def solve_equal_area_nu12(nu11: float, target_area: float, nu12_hi: float) -> float:
    """The nu12 in [nu11, nu12_hi] with area(nu11, nu12) = target_area."""
    lo, hi = nu11, nu12_hi
    if area_of(nu11, lo) < target_area or area_of(nu11, hi) > target_area:
        raise InvalidParameterError("target area not bracketed")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if area_of(nu11, mid) > target_area:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-13 * hi:
            break
    return 0.5 * (lo + hi)


def sample_equal_area_instance(rng: np.random.Generator,
                               nu1_max: float = 20.0) -> HalfTurnInstance:
    """A random instance whose two eigenvalue pairs have equal areas."""
    while True:
        nu01, nu02 = sample_h_admissible_pair(rng, nu1_max)
        if nu02 - nu01 > 1e-3:
            break
    s0 = area_of(nu01, nu02)
    # eigenvalue of the circle of equal area: area(nu_c, nu_c) = s0
    lo, hi = nu01, nu02
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if area_of(mid, mid) > s0:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-13 * hi:
            break
    nu_c = 0.5 * (lo + hi)
    nu11 = nu01 + rng.uniform(0.02, 0.98) * (nu_c - nu01)
    nu12 = solve_equal_area_nu12(nu11, s0, nu02)
    # keep the half-turn displacement below the sum of the minor semi-axes
    # so that the moved ellipse overlaps the reference one
    minor_sum = np.arctanh(1.0 / np.sqrt(nu02)) + np.arctanh(1.0 / np.sqrt(nu12))
    d = rng.uniform(1e-3, 0.45) * minor_sum / 2.0
    theta = rng.uniform(0.0, 2.0 * np.pi)
    r = MinkVector(float(np.cosh(d)), float(np.sinh(d) * np.cos(theta)),
                   float(np.sinh(d) * np.sin(theta)))
    zeta = rng.uniform(0.0, np.pi / 2.0)
    return HalfTurnInstance(nu01, nu02, float(nu11), float(nu12), r, float(zeta))


def build_instance_ellipses(inst: HalfTurnInstance) -> tuple[EllipseMatrix, EllipseMatrix]:
    """Concrete matrices (C0, C1) realizing a half-turn instance.

    C0 is the diagonal reference; C1 is the zeta-rotated partner moved away
    from the common center by the half-turn about inst.r.
    """
    m0 = normalize(np.diag([-1.0, inst.nu01, inst.nu02]))
    q = half_turn_about(inst.r).compose(rotation_about_center(inst.zeta))
    pair = EllipsePair.from_eigs((inst.nu01, inst.nu02),
                                 (inst.nu11, inst.nu12), q)
    return m0, pair.m1


def frame_rotation(e: EllipseMatrix) -> MinkRotation:
    """The ellipse frame as a proper hyperbolic rotation."""
    b = frame_matrix(e).copy()
    if b[0, 0] < 0:
        b[:, 0] = -b[:, 0]
    if np.linalg.det(b) < 0:
        b[:, 2] = -b[:, 2]
    return MinkRotation(b, None)


@dataclass(frozen=True)
class HalfTurnVerdict:
    """Outcome of the matrix-level half-turn comparison."""

    ok: bool
    reasons: tuple[str, ...]
    d_pair: float | None = None
    d_star: float | None = None
    area_common: float | None = None
    area_in_between: float | None = None
    holds: bool | None = None


def half_turn_lemma_check(c0: EllipseMatrix, c1: EllipseMatrix,
                          area_tol: float = 1e-8,
                          lam: float = 1e-3) -> HalfTurnVerdict:
    """Compare area derivatives of the moved and concentric in-between families.

    Preconditions (equal areas, distinct centers, strict eigenvalue
    interlacing, H <= 0) are reported, not asserted.
    """
    reasons = []
    a0 = area_of(c0.nu1, c0.nu2)
    a1 = area_of(c1.nu1, c1.nu2)
    if abs(a0 - a1) > area_tol * max(1.0, a0):
        reasons.append(f"areas differ: {a0} vs {a1}")
    ctr0 = center_and_axes(c0).center
    ctr1 = center_and_axes(c1).center
    if hyp_distance(ctr0, ctr1) < 1e-9:
        reasons.append("concentric inputs: fixed-center uniqueness applies instead")
    if c0.is_circle and c1.is_circle:
        reasons.append("two congruent circles: use the two-circle shrink construction")
    # order so that c0 carries the wider eigenvalue pair
    if c0.nu1 > c1.nu1:
        c0, c1 = c1, c0
        ctr0, ctr1 = ctr1, ctr0
    nu01, nu02 = c0.nu1, c0.nu2
    nu11, nu12 = c1.nu1, c1.nu2
    if not (1.0 < nu01 < nu11 <= nu12 < nu02):
        reasons.append(
            f"eigenvalue interlacing 1 < {nu01} < {nu11} <= {nu12} < {nu02} violated")
    else:
        for pair_ in ((nu01, nu02), (nu11, nu12)):
            if H(*pair_) > 0.0:
                reasons.append(f"H{pair_} = {H(*pair_)} > 0")
    if reasons:
        return HalfTurnVerdict(False, tuple(reasons))

    r = hyp_midpoint(ctr0, ctr1)
    c1_star = rotate_ellipse(c1, half_turn_about(r))
    # move c0 into diagonal position; conjugation preserves areas and poses
    rot = frame_rotation(c0).inverse()
    c0_d = rotate_ellipse(c0, rot)
    c1_d = rotate_ellipse(c1, rot)
    c1_star_d = rotate_ellipse(c1_star, rot)

    pair = EllipsePair.from_eigs((nu01, nu02), (nu11, nu12), frame_rotation(c1_d))
    pair_star = EllipsePair.from_eigs((nu01, nu02), (nu11, nu12),
                                      frame_rotation(c1_star_d))
    d_pair = d_area_at_zero(pair)
    d_star = d_area_at_zero(pair_star)

    mid = in_between(c0_d, c1_d, lam)
    area_mid = area_of(mid.nu1, mid.nu2)
    return HalfTurnVerdict(True, (), d_pair, d_star, a0, area_mid,
                           holds=bool(d_pair < d_star))
