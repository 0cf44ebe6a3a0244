"""SVG rendering of point sets and ellipses in the Cayley-Klein disk."""

from __future__ import annotations

import xml.etree.ElementTree as ET

import numpy as np

from .conics import EllipseMatrix, boundary_point, center_and_axes
from .minkowski import klein_project

BOUNDARY_SAMPLES = 256


def ellipse_klein_polyline(e: EllipseMatrix,
                           samples: int = BOUNDARY_SAMPLES) -> np.ndarray:
    """Closed polyline of the ellipse boundary in disk coordinates."""
    phis = np.linspace(0.0, 2.0 * np.pi, samples, endpoint=False)
    return np.array([klein_project(boundary_point(e, p)) for p in phis])


def _fmt_points(coords: np.ndarray) -> str:
    return " ".join(f"{u:.9f},{v:.9f}" for u, v in coords)


def render_svg(path: str, klein_points: np.ndarray,
               hull: np.ndarray | None = None,
               ellipse: EllipseMatrix | None = None,
               size: int = 480) -> None:
    """Write a figure with the absolute circle, points, hull, ellipse and axes."""
    root = ET.Element("svg", {
        "xmlns": "http://www.w3.org/2000/svg",
        "width": str(size), "height": str(size),
        "viewBox": "-1.1 -1.1 2.2 2.2",
    })
    # flip the y axis so the disk appears in the usual orientation
    g = ET.SubElement(root, "g", {"transform": "scale(1,-1)"})
    ET.SubElement(g, "circle", {"cx": "0", "cy": "0", "r": "1",
                                "fill": "none", "stroke": "black",
                                "stroke-width": "0.01"})
    if hull is not None and len(hull):
        ET.SubElement(g, "polygon", {
            "points": _fmt_points(np.asarray(hull)),
            "fill": "none", "stroke": "#888888", "stroke-width": "0.006",
        })
    if ellipse is not None:
        ET.SubElement(g, "polygon", {
            "points": _fmt_points(ellipse_klein_polyline(ellipse)),
            "fill": "none", "stroke": "#cc3333", "stroke-width": "0.008",
        })
        ca = center_and_axes(ellipse)
        cu, cv = klein_project(ca.center)
        ET.SubElement(g, "circle", {"cx": f"{cu:.6f}", "cy": f"{cv:.6f}",
                                    "r": "0.015", "fill": "#cc3333"})
        if ca.axis_dirs is not None:
            # axis segments: chords through opposite boundary points
            for phi in (np.pi / 2.0, 0.0):
                ends = [klein_project(boundary_point(ellipse, phi)),
                        klein_project(boundary_point(ellipse, phi + np.pi))]
                ET.SubElement(g, "line", {
                    "x1": f"{ends[0][0]:.6f}", "y1": f"{ends[0][1]:.6f}",
                    "x2": f"{ends[1][0]:.6f}", "y2": f"{ends[1][1]:.6f}",
                    "stroke": "#3333cc", "stroke-width": "0.005",
                })
    for u, v in np.asarray(klein_points):
        ET.SubElement(g, "circle", {"cx": f"{u:.6f}", "cy": f"{v:.6f}",
                                    "r": "0.012", "fill": "black"})
    ET.ElementTree(root).write(path, xml_declaration=True, encoding="unicode")
