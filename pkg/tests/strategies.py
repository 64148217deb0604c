"""Shared hypothesis strategies and small helpers for the test suite."""
from fractions import Fraction

from hypothesis import strategies as st

from incidence3d.exactalg import HomogPoly, make_field, monomials
from incidence3d.projgeom import ProjPoint, line_through

FIELD_SPECS = ["Q", "F2", "F7", "F2^2", "F3^2", "F2^3", "F5^2"]
FIELDS = {s: make_field(s) for s in FIELD_SPECS}


def elements(F, span=6):
    if F.is_finite:
        return st.integers(0, F.q - 1)
    return st.fractions(min_value=-span, max_value=span, max_denominator=5)


def nonzero(F):
    return elements(F).filter(lambda x: x != F.zero)


@st.composite
def polys(draw, F, nvars=4, degree=None, max_degree=3):
    d = draw(st.integers(0, max_degree)) if degree is None else degree
    terms = {}
    for ex in monomials(nvars, d):
        if draw(st.booleans()):
            terms[ex] = draw(elements(F))
    return HomogPoly(F, nvars, d, terms)


@st.composite
def points(draw, F):
    coords = draw(st.lists(elements(F), min_size=4, max_size=4).filter(lambda c: any(x != F.zero for x in c)))
    return ProjPoint(F, tuple(coords))


@st.composite
def lines(draw, F):
    P = draw(points(F))
    Q = draw(points(F).filter(lambda x: x != P))
    return line_through(P, Q)


def matrices(F, max_rows=6, max_cols=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(elements(F, 3), min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def frac_matrix(rows):
    return [[Fraction(x) for x in r] for r in rows]
