"""Canonical points, lines and surfaces in projective 3-space."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Iterable, Sequence

from .exactalg import (
    BinaryForm,
    Field,
    FieldError,
    HomogPoly,
    nullspace,
    poly_restrict_to_line,
    rank,
    rref,
)

__all__ = [
    "ProjPoint",
    "ProjLine",
    "Surface",
    "LineRelation",
    "point",
    "line_through",
    "line_from_rows",
    "plane",
    "lines_relation",
    "on_surface",
    "line_surface_points",
    "enumerate_points",
    "enumerate_lines",
    "enumerate_lines_of_space",
    "point_on_line",
    "points_on_line",
]


@dataclass(frozen=True)
class ProjPoint:
    field: Field
    coords: tuple

    def __post_init__(self):
        F = self.field
        c = tuple(self.coords)
        if len(c) != 4:
            raise ValueError("points of P^3 need 4 coordinates")
        lead = next((x for x in c if x != F.zero), None)
        if lead is None:
            raise ValueError("the zero vector is not a projective point")
        if lead != F.one:
            inv = F.inv(lead)
            c = tuple(F.mul(x, inv) for x in c)
        object.__setattr__(self, "coords", c)

    def sort_key(self):
        return self.coords

    def __lt__(self, other):
        return self.coords < other.coords

    def __str__(self):
        return "[" + ":".join(self.field.fmt(x) for x in self.coords) + "]"

    __repr__ = __str__


def point(field: Field, coords: Sequence) -> ProjPoint:
    """Build a point from field elements or plain integers/rationals."""
    vals = tuple(x if _is_elem(field, x) else field.from_rational(x) for x in coords)
    return ProjPoint(field, vals)


def _is_elem(F, x):
    if F.kind == "Q":
        return False  # always coerce to Fraction
    return isinstance(x, int)


@dataclass(frozen=True)
class ProjLine:
    """Line stored as its 2x4 reduced echelon spanning matrix."""

    field: Field
    rows: tuple
    pivots: tuple = dc_field(compare=False, default=())

    @property
    def span(self):
        return self.rows

    @property
    def points(self):
        return ProjPoint(self.field, self.rows[0]), ProjPoint(self.field, self.rows[1])

    @property
    def plucker(self):
        F = self.field
        A, B = self.rows
        out = {}
        for i, j in itertools.combinations(range(4), 2):
            out[f"p{i}{j}"] = F.sub(F.mul(A[i], B[j]), F.mul(A[j], B[i]))
        return out

    def plucker_vector(self):
        p = self.plucker
        return tuple(p[k] for k in ("p01", "p02", "p03", "p12", "p13", "p23"))

    def sort_key(self):
        return self.rows

    def __lt__(self, other):
        return self.rows < other.rows

    def __str__(self):
        a, b = self.points
        return f"{a} {b}"

    __repr__ = __str__


def line_from_rows(field: Field, A: Sequence, B: Sequence) -> ProjLine:
    rows, piv = rref([list(A), list(B)], field)
    if len(piv) != 2:
        raise ValueError("spanning vectors are dependent")
    return ProjLine(field, (tuple(rows[0]), tuple(rows[1])), tuple(piv))


def line_through(P: ProjPoint, Q: ProjPoint) -> ProjLine:
    if P.field != Q.field:
        raise FieldError("field mismatch")
    if P == Q:
        raise ValueError("a line needs two distinct points")
    return line_from_rows(P.field, P.coords, Q.coords)


def point_on_line(p: ProjPoint, L: ProjLine) -> bool:
    F = L.field
    A, B = L.rows
    i, j = L.pivots
    a, b = p.coords[i], p.coords[j]
    return all(F.sub(x, F.add(F.mul(a, y), F.mul(b, z))) == F.zero for x, y, z in zip(p.coords, A, B))


def points_on_line(L: ProjLine) -> list[ProjPoint]:
    """All q+1 points of a line over a finite field, sorted."""
    F = L.field
    A, B = L.rows
    out = [ProjPoint(F, B)]
    for t in F.elements():
        out.append(ProjPoint(F, tuple(F.add(a, F.mul(t, b)) for a, b in zip(A, B))))
    return sorted(out)


@dataclass(frozen=True)
class Surface:
    field: Field
    poly: HomogPoly

    def __post_init__(self):
        f = self.poly
        if f.nvars != 4:
            raise ValueError("surfaces live in 4 homogeneous variables")
        if f.is_zero():
            raise ValueError("the zero polynomial does not define a surface")
        if f.degree < 1:
            raise ValueError("surface degree must be at least 1")
        if f.field != self.field:
            raise FieldError("field mismatch")
        object.__setattr__(self, "poly", f.normalized())

    @property
    def degree(self) -> int:
        return self.poly.degree

    def __str__(self):
        from .textio import format_poly

        return format_poly(self.poly)


def plane(field: Field, coeffs: Sequence) -> Surface:
    vals = [x if _is_elem(field, x) else field.from_rational(x) for x in coeffs]
    return Surface(field, HomogPoly.linear(field, vals))


@dataclass(frozen=True)
class LineRelation:
    kind: str  # "equal" | "meet" | "skew"
    at: ProjPoint | None = None
    plane: Surface | None = None


def lines_relation(L1: ProjLine, L2: ProjLine) -> LineRelation:
    if L1.field != L2.field:
        raise FieldError("field mismatch")
    if L1 == L2:
        return LineRelation("equal")
    F = L1.field
    stacked = [list(r) for r in L1.rows + L2.rows]
    rk = rank(stacked, F)
    if rk == 4:
        return LineRelation("skew")
    # a*A + b*B = -(c*C + d*D) gives the common point
    A, B = L1.rows
    cols = [[A[i], B[i], L2.rows[0][i], L2.rows[1][i]] for i in range(4)]
    (v,) = nullspace(cols, F)
    pt = ProjPoint(F, tuple(F.add(F.mul(v[0], a), F.mul(v[1], b)) for a, b in zip(A, B)))
    (h,) = nullspace(stacked, F)
    return LineRelation("meet", pt, Surface(F, HomogPoly.linear(F, h)))


def on_surface(x, S: Surface) -> bool:
    if x.field != S.field:
        raise FieldError("field mismatch")
    if isinstance(x, ProjPoint):
        return S.poly.evaluate(x.coords) == S.field.zero
    f = S.poly
    # cheap necessary check before the symbolic one
    if f.evaluate(x.rows[0]) != S.field.zero or f.evaluate(x.rows[1]) != S.field.zero:
        return False
    return poly_restrict_to_line(f, x).is_zero()


def line_surface_points(L: ProjLine, S: Surface):
    """Field-rational points of L on S with intersection multiplicities."""
    form = poly_restrict_to_line(S.poly, L)
    if form.is_zero():
        raise ValueError("line lies on the surface")
    F = L.field
    A, B = L.rows
    out = []
    for (s0, t0), mult in form.roots():
        pt = ProjPoint(F, tuple(F.add(F.mul(s0, a), F.mul(t0, b)) for a, b in zip(A, B)))
        out.append((pt, mult))
    return sorted(out, key=lambda pm: pm[0].coords)


@lru_cache(maxsize=16)
def _all_points(field: Field):
    if not field.is_finite:
        raise FieldError("enumeration needs a finite field")
    E = list(field.elements())
    out = []
    for lead in range(4):
        for rest in itertools.product(E, repeat=3 - lead):
            out.append(ProjPoint(field, (0,) * lead + (1,) + rest))
    return tuple(sorted(out))


def enumerate_points(field: Field, start: int = 0, stop: int | None = None) -> list[ProjPoint]:
    return list(_all_points(field)[start:stop])


@lru_cache(maxsize=16)
def _all_lines(field: Field):
    if not field.is_finite:
        raise FieldError("enumeration needs a finite field")
    E = list(field.elements())
    out = []
    for i, j in itertools.combinations(range(4), 2):
        # free slots: row 0 entries right of i except j; row 1 entries right of j
        free0 = [k for k in range(i + 1, 4) if k != j]
        free1 = [k for k in range(j + 1, 4)]
        for vals in itertools.product(E, repeat=len(free0) + len(free1)):
            r0 = [0] * 4
            r1 = [0] * 4
            r0[i] = 1
            r1[j] = 1
            it = iter(vals)
            for k in free0:
                r0[k] = next(it)
            for k in free1:
                r1[k] = next(it)
            out.append(ProjLine(field, (tuple(r0), tuple(r1)), (i, j)))
    out.sort()
    return tuple(out)


def enumerate_lines(field: Field, start: int = 0, stop: int | None = None) -> list[ProjLine]:
    """All lines of P^3 over a finite field in a fixed order; slice by index for partitioned scans."""
    return list(_all_lines(field)[start:stop])


enumerate_lines_of_space = enumerate_lines
