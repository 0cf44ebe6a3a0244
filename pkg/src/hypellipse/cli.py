"""Command-line front end: area, certify, solve and verify commands.

All output is a single JSON document on standard output with floats
serialized at 17 significant digits.  Exit codes: 0 success / affirmative,
1 well-formed negative verdict, 2 input error, 3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

import numpy as np

from . import __version__
from .area import area as area_of
from .conics import (center_and_axes, eigs_to_semiaxes, semiaxes_to_eigs)
from .errors import HypEllipseError
from .minkowski import klein_lift, klein_project
from .solver import (PointSet, UniquenessCertificate, certify, convex_hull,
                     min_ellipse, min_ellipse_fixed_center)
from .suites import SUITE_NAMES, run_suite
from .svg import render_svg

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_NO_CONVERGENCE = 3


def _format_json(obj, indent: int = 0) -> str:
    """JSON text with floats at 17 significant digits."""
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = (f'{inner}{json.dumps(str(k))}: {_format_json(v, indent + 1)}'
                 for k, v in obj.items())
        return "{\n" + ",\n".join(items) + f"\n{pad}}}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = (f"{inner}{_format_json(v, indent + 1)}" for v in obj)
        return "[\n" + ",\n".join(items) + f"\n{pad}]"
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format(float(obj), ".17g")
    return json.dumps(obj)


def _emit(payload: dict, digest: str | None = None) -> None:
    doc = {"tool": "hypellipse", "version": __version__}
    if digest is not None:
        doc["input_digest"] = digest
    doc.update(payload)
    sys.stdout.write(_format_json(doc) + "\n")


def _fail(message: str, code: int = EXIT_INPUT) -> int:
    sys.stderr.write(f"error: {message}\n")
    return code


def _load_point_file(path: str) -> tuple[PointSet, str]:
    with open(path, "rb") as fh:
        raw = fh.read()
    digest = hashlib.sha256(raw).hexdigest()
    data = json.loads(raw)
    pts = data["points"]
    for u, v in pts:
        if u * u + v * v >= 1.0:
            raise HypEllipseError(f"point ({u}, {v}) is outside the unit disk")
    return PointSet.from_klein(pts), digest


def _ellipse_record(e) -> dict:
    ca = center_and_axes(e)
    a, b = eigs_to_semiaxes(e.nu1, e.nu2)
    return {
        "matrix": [list(map(float, row)) for row in e.m],
        "eigenvalues": [1.0, e.nu1, e.nu2],
        "semi_axes": [a, b],
        "area": area_of(e.nu1, e.nu2),
        "center_klein": list(map(float, klein_project(ca.center))),
        "is_circle": e.is_circle,
    }


def _certificate_record(cert: UniquenessCertificate) -> dict:
    return {
        "rho": cert.rho, "S": cert.S, "R": cert.R,
        "nu1": cert.nu1, "nu2": cert.nu2,
        "H_value": cert.H_value, "verdict": cert.verdict,
    }


def cmd_area(args) -> int:
    has_nu = args.nu1 is not None or args.nu2 is not None
    has_axes = args.axes is not None
    if has_nu == has_axes or (has_nu and (args.nu1 is None or args.nu2 is None)):
        return _fail("give either --nu1 and --nu2, or --axes a b")
    try:
        if has_axes:
            a, b = sorted(args.axes, reverse=True)
            nu1, nu2 = semiaxes_to_eigs(a, b)
        else:
            nu1, nu2 = sorted((args.nu1, args.nu2))
            if nu1 <= 1.0:
                return _fail(f"eigenvalues must exceed 1, got {nu1}")
        value = area_of(nu1, nu2)
        a, b = eigs_to_semiaxes(nu1, nu2)
    except HypEllipseError as exc:
        return _fail(str(exc))
    digest = hashlib.sha256(
        f"area:{nu1!r}:{nu2!r}".encode()).hexdigest()
    _emit({"area": value, "eigenvalues": [1.0, nu1, nu2],
           "semi_axes": [a, b]}, digest)
    return EXIT_OK


def cmd_certify(args) -> int:
    try:
        ps, digest = _load_point_file(args.file)
        cert, ellipse = certify(ps, seed=args.seed)
    except (HypEllipseError, OSError, ValueError, KeyError) as exc:
        return _fail(str(exc))
    _emit({"certificate": _certificate_record(cert),
           "ellipse": _ellipse_record(ellipse)}, digest)
    return EXIT_OK if cert.unique else EXIT_NEGATIVE


def cmd_solve(args) -> int:
    try:
        ps, digest = _load_point_file(args.file)
    except (HypEllipseError, OSError, ValueError, KeyError) as exc:
        return _fail(str(exc))
    converged = True
    try:
        if args.center is not None:
            u, v = args.center
            if u * u + v * v >= 1.0:
                return _fail("center must lie inside the unit disk")
            ellipse = min_ellipse_fixed_center(list(ps.points), klein_lift(u, v))
            payload = {"mode": "fixed_center",
                       "ellipse": _ellipse_record(ellipse)}
        else:
            ellipse, diag = min_ellipse(ps, seed=args.seed)
            converged = diag.converged
            payload = {
                "mode": "general",
                "ellipse": _ellipse_record(ellipse),
                "diagnostics": {
                    "converged": diag.converged,
                    "multistart_areas": list(diag.multistart_areas),
                    "boundary_contacts": diag.boundary_contacts,
                },
            }
    except HypEllipseError as exc:
        return _fail(str(exc))
    if args.svg:
        hull = convex_hull(ps)
        hull_klein = np.array([klein_project(p) for p in hull])
        render_svg(args.svg, ps.klein, hull=hull_klein, ellipse=ellipse)
        payload["svg"] = args.svg
    _emit(payload, digest)
    return EXIT_OK if converged else EXIT_NO_CONVERGENCE


def _render_report_figure(report: dict, path: str) -> None:
    """Plot the suite's headline data with matplotlib."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 5))
    if "curves" in report:
        for name, pts in report["curves"].items():
            arr = np.asarray(pts)
            keep = (arr[:, 1] > arr[:, 0]) & (arr[:, 1] < 25.0)
            ax.plot(arr[keep, 0], arr[keep, 1], label=name)
        ax.set_xlabel("nu1")
        ax.set_ylabel("nu2")
        ax.set_xlim(1.0, 10.0)
        ax.legend(fontsize=8)
    elif "coefficients" in report:
        from .uniqueness import BernsteinQuartic
        ts = np.linspace(0.0, 1.0, 801)
        ax.plot(ts, BernsteinQuartic(tuple(report["coefficients"]))(ts))
        ax.axhline(0.0, color="black", linewidth=0.6)
        for z in report.get("zeros", []):
            ax.axvline(z, color="red", linewidth=0.6, linestyle="--")
        ax.set_xlabel("t")
        ax.set_ylabel("P(t)")
    else:
        names = [c["name"] for c in report["checks"]]
        viols = [c["violations"] for c in report["checks"]]
        ax.barh(names, viols)
        ax.set_xlabel("violations")
    ax.set_title(f"suite {report['suite']}: {report['violations']} violations")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def cmd_verify(args) -> int:
    if args.samples < 1:
        return _fail("--samples must be at least 1")
    report = run_suite(args.suite, samples=args.samples, seed=args.seed)
    if args.figure:
        _render_report_figure(report, args.figure)
        report["figure"] = args.figure
    digest = hashlib.sha256(
        f"verify:{args.suite}:{args.samples}:{args.seed}".encode()).hexdigest()
    _emit({"report": report}, digest)
    return EXIT_OK if report["violations"] == 0 else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypellipse",
        description="Areas, minimal enclosing ellipses and uniqueness "
                    "certificates in the hyperbolic plane.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("area", help="area of an ellipse from eigenvalues or semi-axes")
    p.add_argument("--nu1", type=float)
    p.add_argument("--nu2", type=float)
    p.add_argument("--axes", type=float, nargs=2, metavar=("A", "B"))
    p.set_defaults(func=cmd_area)

    p = sub.add_parser("certify", help="uniqueness certificate for a point set")
    p.add_argument("file", help="JSON point file with Klein disk coordinates")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("solve", help="minimal enclosing ellipse of a point set")
    p.add_argument("file", help="JSON point file with Klein disk coordinates")
    p.add_argument("--center", type=float, nargs=2, metavar=("U", "V"))
    p.add_argument("--svg", help="write a figure of the Klein disk to this path")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="run a numeric verification suite")
    p.add_argument("--suite", required=True, choices=SUITE_NAMES)
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--figure", help="render the report figure to this path")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
