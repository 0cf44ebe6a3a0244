"""Numeric verification suites for the convexity and uniqueness machinery.

Each suite returns a JSON-serializable report with per-check violation
counts and worst margins; a suite passes iff the total violation count is
zero.  All randomness is driven by an explicit seed.
"""

from __future__ import annotations

import numpy as np

from .area import area as area_of, area_gradient, area_hessian
from . import uniqueness as _uniq
from .deformation import ab_gamma, d_area_at_zero, d_area_quadrature
from .minkowski import MinkVector

SUITE_NAMES = ("convexity", "abgamma", "bernstein", "lemma9", "halfturn",
               "example1")


def _check(name: str, margins, bad_when) -> dict:
    """Summarize a margin array; a margin is violating when bad_when(m) is true."""
    margins = np.asarray(margins, dtype=float)
    bad = bad_when(margins)
    return {
        "name": name,
        "count": int(margins.size),
        "violations": int(np.count_nonzero(bad)),
        "worst_margin": float(np.max(margins)) if margins.size else None,
    }


def _report(suite: str, samples: int, seed: int, checks: list[dict],
            extra: dict | None = None) -> dict:
    rep = {
        "suite": suite,
        "samples": samples,
        "seed": seed,
        "checks": checks,
        "violations": int(sum(c["violations"] for c in checks)),
    }
    if extra:
        rep.update(extra)
    return rep


def suite_convexity(samples: int = 500, seed: int = 0) -> dict:
    """Positive definiteness of the area Hessian and negativity of the gradient."""
    rng = np.random.default_rng(seed)
    minor1, schwarz, grad_max, mono = [], [], [], []
    for _ in range(samples):
        lo, hi = np.sort(np.exp(rng.uniform(np.log(1.01), np.log(1e3), size=2)))
        hess = area_hessian(lo, hi)
        minor1.append(-hess[0, 0])
        schwarz.append(-np.linalg.det(hess))
        grad_max.append(np.max(area_gradient(lo, hi)))
        mono.append(area_of(lo * 1.01, hi * 1.01) - area_of(lo, hi))
    checks = [
        _check("hessian_leading_minor_positive", minor1, lambda m: m >= 0),
        _check("hessian_determinant_positive", schwarz, lambda m: m >= 0),
        _check("gradient_negative", grad_max, lambda m: m >= 0),
        _check("area_decreasing", mono, lambda m: m >= 0),
    ]
    return _report("convexity", samples, seed, checks)


def suite_abgamma(samples: int = 500, seed: int = 0) -> dict:
    """Ordering A < B < Gamma < 0 of the closed-form derivative coefficients."""
    rng = np.random.default_rng(seed)
    a_b, b_g, g_0 = [], [], []
    for _ in range(samples):
        lo, hi = np.sort(np.exp(rng.uniform(np.log(1.0 + 1e-3), np.log(1e3),
                                            size=2)))
        if hi - lo < 1e-9:
            hi = lo * (1.0 + 1e-6)
        abg = ab_gamma(lo, hi)
        scale = max(1.0, abs(abg.A))
        a_b.append((abg.A - abg.B) / scale)
        b_g.append((abg.B - abg.Gamma) / scale)
        g_0.append(abg.Gamma / scale)
    checks = [
        _check("A_below_B", a_b, lambda m: m >= 0),
        _check("B_below_Gamma", b_g, lambda m: m >= 0),
        _check("Gamma_negative", g_0, lambda m: m >= 0),
    ]
    return _report("abgamma", samples, seed, checks)


def suite_bernstein(samples: int = 500, seed: int = 0) -> dict:
    """Bernstein-coefficient signs and the two-route quartic identity."""
    rng = np.random.default_rng(seed)
    p04, p123, identity, values = [], [], [], []
    ts = np.linspace(0.0, 1.0, 21)
    for _ in range(samples):
        inst = _uniq.sample_instance(rng)
        bern = _uniq.bernstein_coeffs(inst)
        p = bern.p
        scale = max(1.0, np.max(np.abs(p)))
        p04.append(max(p[0], p[4]) / scale)
        p123.append(max(p[1], p[2], p[3]) / scale)
        direct = _uniq.quartic_P(inst, ts)
        via_bern = bern(ts)
        identity.append(np.max(np.abs(direct - via_bern)) / scale)
        values.append(np.max(via_bern) / scale)
    checks = [
        _check("p0_p4_negative", p04, lambda m: m >= 0),
        _check("p1_p2_p3_nonpositive", p123, lambda m: m > 1e-12),
        _check("bernstein_matches_direct", identity, lambda m: m > 1e-9),
        _check("quartic_nonpositive_on_unit_interval", values,
               lambda m: m > 1e-12),
    ]
    return _report("bernstein", samples, seed, checks)


def suite_lemma9(samples: int = 500, seed: int = 0) -> dict:
    """Grid scan: H <= 0 implies h1..h6 <= 0, plus the monotone-closure property."""
    scan = _uniq.lemma9_scan()
    checks = [
        {"name": "H_implies_h1_to_h6", "count": scan["grid_points"],
         "violations": scan["violations_a"], "worst_margin": None},
        {"name": "monotone_closure", "count": scan["grid_points"],
         "violations": scan["violations_b"], "worst_margin": None},
    ]
    curves = {k: v.tolist() for k, v in scan["curves"].items()}
    return _report("lemma9", scan["grid_points"], seed, checks,
                   extra={"curves": curves})


def suite_halfturn(samples: int = 500, seed: int = 0) -> dict:
    """Matrix-level half-turn comparison on random equal-area instances."""
    rng = np.random.default_rng(seed)
    d_gap, area_gap, rejected = [], [], 0
    for _ in range(samples):
        inst = _uniq.sample_equal_area_instance(rng)
        c0, c1 = _uniq.build_instance_ellipses(inst)
        verdict = _uniq.half_turn_lemma_check(c0, c1)
        if not verdict.ok:
            rejected += 1
            continue
        d_gap.append(verdict.d_pair - verdict.d_star)
        area_gap.append(verdict.area_in_between - verdict.area_common)
    checks = [
        _check("moved_derivative_below_concentric", d_gap, lambda m: m >= 0),
        _check("in_between_area_below_common", area_gap, lambda m: m >= 0),
        {"name": "preconditions_rejected", "count": samples,
         "violations": rejected, "worst_margin": None},
    ]
    return _report("halfturn", samples, seed, checks)


def suite_example1(samples: int = 0, seed: int = 0) -> dict:
    """The published instance whose comparison quartic attains positive values.

    With eigenvalue pairs (1.1, 90) on both ellipses and half-turn center
    built from (r2, r3) = 0.9 (cos 0.3, sin 0.3), the quartic changes sign
    twice on (0, 1), near t = 0.1272 and t = 0.1389.
    """
    r2 = 0.9 * np.cos(0.3)
    r3 = 0.9 * np.sin(0.3)
    r = MinkVector(float(np.sqrt(1.0 + r2 * r2 + r3 * r3)), float(r2), float(r3))
    inst = _uniq.HalfTurnInstance(1.1, 90.0, 1.1, 90.0, r)
    bern = _uniq.bernstein_coeffs(inst)
    zeros = _uniq.quartic_sign_changes(inst)
    expected = (0.1272, 0.1389)
    ok = (len(zeros) == 2
          and all(abs(z - e) <= 5e-4 for z, e in zip(zeros, expected)))
    extra = {
        "coefficients": list(bern.p),
        "zeros": zeros,
        "expected_zeros": list(expected),
    }
    if len(zeros) == 2:
        ts = np.linspace(zeros[0], zeros[1], 2001)
        extra["max_between_zeros"] = float(np.max(bern(ts)))
    checks = [
        {"name": "two_sign_changes_at_expected_locations", "count": 1,
         "violations": 0 if ok else 1, "worst_margin": None},
        _check("p1_positive", [-bern.p[1]], lambda m: m >= 0),
    ]
    return _report("example1", 1, seed, checks, extra=extra)


_SUITES = {
    "convexity": suite_convexity,
    "abgamma": suite_abgamma,
    "bernstein": suite_bernstein,
    "lemma9": suite_lemma9,
    "halfturn": suite_halfturn,
    "example1": suite_example1,
}


def run_suite(name: str, samples: int = 500, seed: int = 0) -> dict:
    if name not in _SUITES:
        raise KeyError(name)
    return _SUITES[name](samples=samples, seed=seed)


def consistency_check(pair, rel_tol: float = 1e-8) -> float:
    """Relative gap between the quadrature and closed-form derivative routes."""
    closed = d_area_at_zero(pair)
    quad = d_area_quadrature(pair)
    return abs(closed - quad) / max(1.0, abs(closed))
