"""Configurations of lines and points, and their incidence statistics."""
from __future__ import annotations

import itertools
from collections import Counter, defaultdict
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable

from .exactalg import Field, FieldError, HomogPoly, monomials, nullspace, poly_restrict_to_line
from .projgeom import (
    ProjLine,
    ProjPoint,
    Surface,
    lines_relation,
    on_surface,
    point_on_line,
)

__all__ = [
    "Configuration",
    "IncidenceReport",
    "multiplicity",
    "intersection_points",
    "meeting_pairs",
    "analyze",
    "incidences",
    "plucker_pairing",
    "quadric_through_lines",
]

QUADRIC_FIT_BUDGET = 400


@dataclass(frozen=True)
class Configuration:
    field: Field
    lines: tuple = ()
    points: tuple = ()

    def __init__(self, field: Field, lines: Iterable[ProjLine] = (), points: Iterable[ProjPoint] = ()):
        lines = sorted(set(lines))
        points = sorted(set(points))
        for x in itertools.chain(lines, points):
            if x.field != field:
                raise FieldError("configuration mixes fields")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "lines", tuple(lines))
        object.__setattr__(self, "points", tuple(points))

    @property
    def m(self) -> int:
        return len(self.lines)

    @property
    def n(self) -> int:
        return len(self.points)


def plucker_pairing(L1: ProjLine, L2: ProjLine):
    """Bilinear Plücker form; zero iff the lines are coplanar."""
    F = L1.field
    a, b = L1.plucker_vector(), L2.plucker_vector()
    terms = (
        F.mul(a[0], b[5]),
        F.neg(F.mul(a[1], b[4])),
        F.mul(a[2], b[3]),
        F.mul(a[3], b[2]),
        F.neg(F.mul(a[4], b[1])),
        F.mul(a[5], b[0]),
    )
    acc = F.zero
    for t in terms:
        acc = F.add(acc, t)
    return acc


def multiplicity(lines: Iterable[ProjLine], p: ProjPoint) -> int:
    return sum(1 for L in lines if point_on_line(p, L))


def meeting_pairs(lines):
    """(i, j, point, plane) for every pair of distinct meeting lines."""
    lines = list(lines)
    out = []
    if not lines:
        return out
    F = lines[0].field
    for i, j in itertools.combinations(range(len(lines)), 2):
        if plucker_pairing(lines[i], lines[j]) != F.zero:
            continue
        rel = lines_relation(lines[i], lines[j])
        if rel.kind == "meet":
            out.append((i, j, rel.at, rel.plane))
    return out


def _meet_index(lines, pairs=None):
    if pairs is None:
        pairs = meeting_pairs(lines)
    through = defaultdict(set)
    for i, j, p, _ in pairs:
        through[p].update((i, j))
    return through


def intersection_points(lines) -> list[tuple[ProjPoint, int]]:
    through = _meet_index(list(lines))
    return sorted(((p, len(s)) for p, s in through.items()), key=lambda t: t[0].coords)


def incidences(config: Configuration) -> int:
    return sum(1 for L in config.lines for p in config.points if point_on_line(p, L))


def quadric_through_lines(lines, field: Field):
    """Nullspace basis of the degree-2 forms vanishing on all given lines."""
    rows = _line_conditions(lines, field, 2)
    return nullspace(rows, field, len(monomials(4, 2))) if rows else None


def _line_conditions(lines, field, d):
    """Rows of the linear map (coefficients of a degree-d form) -> (coefficients of its restrictions)."""
    basis = monomials(4, d)
    rows = []
    for L in lines:
        cols = [poly_restrict_to_line(HomogPoly.monomial(field, ex), L).coeffs for ex in basis]
        for k in range(d + 1):
            rows.append([c[k] for c in cols])
    return rows


@dataclass
class IncidenceReport:
    field: str
    m: int
    n: int
    I_LP: int
    I_circ: int
    I_L: int
    pair_count: int
    intersection_count: int
    r_hist_intersections: dict
    r_hist_points: dict
    covered_points: int
    plane_richness: int
    plane_witness: Surface | None
    quadric_richness_lower: int
    quadric_witness: Surface | None
    quadric_scan_complete: bool
    max_r: int
    c_plane_sq: Fraction
    notes: list = dc_field(default_factory=list)

    @property
    def c_plane(self) -> str:
        from .intervals import sqrt_decimal

        return sqrt_decimal(self.c_plane_sq, 12)

    def to_dict(self) -> dict:
        return {
            "field": self.field,
            "m": self.m,
            "n": self.n,
            "I_LP": self.I_LP,
            "I_circ": self.I_circ,
            "I_L": self.I_L,
            "pair_count": self.pair_count,
            "intersection_count": self.intersection_count,
            "covered_points": self.covered_points,
            "max_r": self.max_r,
            "plane_richness": self.plane_richness,
            "plane_witness": str(self.plane_witness) if self.plane_witness else None,
            "quadric_richness_lower": self.quadric_richness_lower,
            "quadric_witness": str(self.quadric_witness) if self.quadric_witness else None,
            "quadric_scan_complete": self.quadric_scan_complete,
            "c_plane_sq": self.c_plane_sq,
            "c_plane": self.c_plane,
            "r_hist_intersections": self.r_hist_intersections,
            "r_hist_points": self.r_hist_points,
            "notes": self.notes,
        }


def _hist(values):
    return {k: v for k, v in sorted(Counter(values).items())}


def _plane_groups(lines, pairs):
    groups = defaultdict(set)
    for i, j, _, pl in pairs:
        groups[pl].update((i, j))
    return groups


def _count_on(lines, S: Surface):
    return sum(1 for L in lines if on_surface(L, S))


def analyze(config: Configuration, quadric_budget: int = QUADRIC_FIT_BUDGET) -> IncidenceReport:
    F = config.field
    lines, points = list(config.lines), list(config.points)
    m, n = len(lines), len(points)

    r_P = [sum(1 for L in lines if point_on_line(p, L)) for p in points]
    I_LP = sum(r_P)
    covered = sum(1 for r in r_P if r >= 1)
    I_circ = sum(r - 1 for r in r_P if r >= 1)

    pairs = meeting_pairs(lines)
    through = _meet_index(lines, pairs)
    r_int = [len(s) for s in through.values()]
    I_L = sum(r - 1 for r in r_int)
    notes = []

    # plane richness: every plane holding two lines is the span of a meeting pair
    groups = _plane_groups(lines, pairs)
    if groups:
        best = max(groups.items(), key=lambda kv: (len(kv[1]), _neg_key(kv[0])))
        plane_rich, plane_wit = len(best[1]), best[0]
    elif m:
        (h, *_) = nullspace([list(r) for r in lines[0].rows], F)
        plane_rich, plane_wit = 1, Surface(F, HomogPoly.linear(F, h))
    else:
        plane_rich, plane_wit = 0, None

    q_low, q_wit, complete = _quadric_lower(F, lines, groups, through, quadric_budget)
    c_sq = Fraction(plane_rich * plane_rich, m) if m else Fraction(0)
    notes.append("c is the measured plane richness divided by sqrt(m)")
    if not complete:
        notes.append(f"quadric scan truncated after {quadric_budget} fits; richness is a lower bound")

    return IncidenceReport(
        field=F.spec,
        m=m,
        n=n,
        I_LP=I_LP,
        I_circ=I_circ,
        I_L=I_L,
        pair_count=len(pairs),
        intersection_count=len(through),
        r_hist_intersections=_hist(r_int),
        r_hist_points=_hist(r_P),
        covered_points=covered,
        plane_richness=plane_rich,
        plane_witness=plane_wit,
        quadric_richness_lower=q_low,
        quadric_witness=q_wit,
        quadric_scan_complete=complete,
        max_r=max(r_int, default=1 if m else 0),
        c_plane_sq=c_sq,
        notes=notes,
    )


def _neg_key(S: Surface):
    # prefer the lexicographically smallest plane among ties
    vec = S.poly.coefficient_vector()
    return tuple(_Rev(x) for x in vec)


class _Rev:
    __slots__ = ("v",)

    def __init__(self, v):
        self.v = v

    def __lt__(self, other):
        return self.v > other.v

    def __gt__(self, other):
        return self.v < other.v

    def __eq__(self, other):
        return self.v == other.v


def _quadric_lower(F, lines, groups, through, budget):
    """Certified lower bound for the number of lines on one quadric, with a witness."""
    m = len(lines)
    best, wit = min(m, 3), None
    if m == 0:
        return 0, None, True
    if m <= 3:
        basis = quadric_through_lines(lines, F)
        return m, Surface(F, HomogPoly.from_vector(F, 4, 2, basis[0])), True

    def consider(S):
        nonlocal best, wit
        k = _count_on(lines, S)
        if k > best or (k == best and wit is None):
            best, wit = k, S

    # plane pairs from the richest planes
    ranked = sorted(groups.items(), key=lambda kv: -len(kv[1]))[:6]
    if ranked:
        top = ranked[0][0]
        others = [pl for pl, _ in ranked[1:]]
        rest = [L for L in lines if not on_surface(L, top)]
        if rest:
            (h, *_) = nullspace([list(r) for r in rest[0].rows], F)
            others.append(Surface(F, HomogPoly.linear(F, h)))
        for pl in others:
            consider(Surface(F, top.poly * pl.poly))
        if not others:
            consider(Surface(F, top.poly * top.poly))

    # cones over the richest concurrency point
    if through:
        p, idx = max(through.items(), key=lambda kv: (len(kv[1]), tuple(_Rev(x) for x in kv[0].coords)))
        sub = [lines[i] for i in sorted(idx)][:5]
        basis = quadric_through_lines(sub, F)
        if basis:
            consider(Surface(F, HomogPoly.from_vector(F, 4, 2, basis[0])))

    if wit is None:
        basis = quadric_through_lines(lines[:3], F)
        consider(Surface(F, HomogPoly.from_vector(F, 4, 2, basis[0])))

    # smooth quadrics through pairwise skew triples
    meets = set()
    for pl_idx in through.values():
        for i, j in itertools.combinations(sorted(pl_idx), 2):
            meets.add((i, j))
    found: list[frozenset] = []
    fits = 0
    complete = True
    for i, j, k in itertools.combinations(range(m), 3):
        if (i, j) in meets or (i, k) in meets or (j, k) in meets:
            continue
        if any(i in s and j in s and k in s for s in found):
            continue
        if fits >= budget:
            complete = False
            break
        fits += 1
        basis = quadric_through_lines([lines[i], lines[j], lines[k]], F)
        S = Surface(F, HomogPoly.from_vector(F, 4, 2, basis[0]))
        members = frozenset(t for t, L in enumerate(lines) if on_surface(L, S))
        found.append(members)
        if len(members) > best:
            best, wit = len(members), S
    return best, wit, complete
