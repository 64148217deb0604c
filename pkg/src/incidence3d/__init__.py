"""Exact tools for line and point incidences in projective 3-space."""
from .exactalg import Field, FieldError, HomogPoly, BinaryForm, make_field
from .projgeom import ProjLine, ProjPoint, Surface, line_through, point
from .incidence import Configuration, IncidenceReport, analyze
from .surfacelab import fit_through_lines, fit_through_points, flecnodal, lines_on_surface
from .genus import delta_local, pa_arrangement, pa_ci
from .harness import BOUND_IDS, constants_audit, verify_bound
from .configzoo import GENERATORS

__all__ = [
    "Field", "FieldError", "HomogPoly", "BinaryForm", "make_field",
    "ProjLine", "ProjPoint", "Surface", "line_through", "point",
    "Configuration", "IncidenceReport", "analyze",
    "fit_through_lines", "fit_through_points", "flecnodal", "lines_on_surface",
    "delta_local", "pa_arrangement", "pa_ci",
    "BOUND_IDS", "constants_audit", "verify_bound",
    "GENERATORS",
]
