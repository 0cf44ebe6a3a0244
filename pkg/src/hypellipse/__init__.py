"""Minimal-area ellipses in the hyperbolic plane (hyperboloid model)."""

__version__ = "0.1.0"

from .area import area, area_gradient, area_hessian, elliptic_E, elliptic_K
from .conics import (CenterAxes, EllipseMatrix, Location, center_and_axes,
                     contains, eigs_to_semiaxes, ellipse_from_eigs, mink_eigs,
                     normalize, semiaxes_to_eigs)
from .deformation import (ABGamma, EllipsePair, ab_gamma, d_area_at_zero,
                          d_area_star, in_between)
from .errors import (DegenerateInputError, HypEllipseError, InfeasibleError,
                     InvalidConfigurationError, InvalidParameterError,
                     NotAnEllipseError, OutOfDomainError)
from .minkowski import (MinkRotation, MinkVector, half_turn_about,
                        hyp_distance, hyp_midpoint, klein_lift, klein_project,
                        mink_ip, rotation_from_quat)
from .solver import (PointSet, UniquenessCertificate, certify, convex_hull,
                     inscribed_circle, min_ellipse, min_ellipse_fixed_axes,
                     min_ellipse_fixed_center, solve_R_from_area,
                     two_circle_shrink)
from .uniqueness import (BernsteinQuartic, H, HalfTurnInstance,
                         bernstein_coeffs, h, half_turn_lemma_check,
                         lemma9_scan, quartic_P)

__all__ = [
    "ABGamma", "BernsteinQuartic", "CenterAxes", "DegenerateInputError",
    "EllipseMatrix", "EllipsePair", "H", "HalfTurnInstance", "HypEllipseError",
    "InfeasibleError", "InvalidConfigurationError", "InvalidParameterError",
    "Location", "MinkRotation", "MinkVector", "NotAnEllipseError",
    "OutOfDomainError", "PointSet", "UniquenessCertificate", "ab_gamma",
    "area", "area_gradient", "area_hessian", "bernstein_coeffs",
    "center_and_axes", "certify", "contains", "convex_hull", "d_area_at_zero",
    "d_area_star", "eigs_to_semiaxes", "ellipse_from_eigs", "elliptic_E",
    "elliptic_K", "h", "half_turn_about", "half_turn_lemma_check",
    "hyp_distance", "hyp_midpoint", "in_between", "inscribed_circle",
    "klein_lift", "klein_project", "lemma9_scan", "min_ellipse",
    "min_ellipse_fixed_axes", "min_ellipse_fixed_center", "mink_eigs",
    "mink_ip", "normalize", "quartic_P", "rotation_from_quat",
    "semiaxes_to_eigs", "solve_R_from_area", "two_circle_shrink",
]
