"""Surface fitting, lines on surfaces, flecnodal polynomial and triple tangents."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import comb, gcd, isqrt

from .exactalg import (
    FieldError,
    HomogPoly,
    _bf_mul,
    kernel_vector,
    monomials,
    nullspace,
    poly_det,
    rank,
    restrict_to_span,
    sylvester,
)
from .projgeom import (
    ProjLine,
    ProjPoint,
    Surface,
    enumerate_lines,
    enumerate_points,
    lines_relation,
    on_surface,
    point_on_line,
)

__all__ = [
    "SurfaceFitResult",
    "FitError",
    "LineSet",
    "fit_through_points",
    "fit_through_lines",
    "fit_avoiding",
    "point_conditions",
    "line_conditions",
    "lines_on_surface",
    "flecnodal",
    "FlecnodalResult",
    "triple_tangent_directions",
    "ruledness_report",
    "surface_points",
]


class FitError(ValueError):
    pass


@dataclass
class SurfaceFitResult:
    surface: Surface
    degree: int
    solution_dim: int
    certified: bool
    minimal: bool
    bound_ok: bool  # d^3 <= 6n for points, (d+2)^2 <= 6m for lines
    dimension_count_ok: bool = True  # binom(d+2, 3) <= n, or d(d+1)(d+2) <= 6m: the counting argument
    kind: str = "points"


# ---------------------------------------------------------------------------
# linear conditions


def point_conditions(points, field, d):
    basis = monomials(4, d)
    rows = []
    for p in points:
        c = p.coords
        row = []
        for ex in basis:
            v = field.one
            for x, e in zip(c, ex):
                if e:
                    v = field.mul(v, field.pow(x, e))
            row.append(v)
        rows.append(row)
    return rows


def _primitive(v):
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // g for x in ints]


def _monomial_restrictions(L: ProjLine, d):
    """Binary forms of every degree-d monomial restricted to L, in monomial order."""
    F = L.field
    P, Q = L.rows
    if F.kind == "Q":
        # scaling either spanning vector only rescales condition rows; small integers keep them short,
        # and plain int arithmetic is much faster than Fraction
        P, Q = _primitive(P), _primitive(Q)
        mul, one = _int_mul, 1
    else:
        mul, one = (lambda a, b: _bf_mul(F, a, b)), F.one
    pw = []
    for j in range(4):
        seq = [[one]]
        for _ in range(d):
            seq.append(mul(seq[-1], [P[j], Q[j]]))
        pw.append(seq)
    cache = {(): [one]}

    def prefix(ex):
        # product of the restricted coordinate powers over the first len(ex) variables
        if ex not in cache:
            cache[ex] = mul(prefix(ex[:-1]), pw[len(ex) - 1][ex[-1]])
        return cache[ex]

    if F.kind == "Q":
        return [tuple(map(Fraction, prefix(ex))) for ex in monomials(4, d)]
    return [tuple(prefix(ex)) for ex in monomials(4, d)]


def _int_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def line_conditions(lines, field, d):
    rows = []
    for L in lines:
        cols = _monomial_restrictions(L, d)
        for k in range(d + 1):
            row = [c[k] for c in cols]
            if any(x != field.zero for x in row):
                rows.append(row)
    return rows


def _fit(items, field, conditions, kind):
    items = list(items)
    if not items:
        raise FitError("nothing to fit")
    d = 1
    while True:
        ncols = comb(d + 3, 3)
        rows = conditions(items, field, d)
        r = rank(rows, field) if rows else 0
        if r < ncols:
            v = kernel_vector(rows, field, ncols)
            f = HomogPoly.from_vector(field, 4, d, v)
            return d, ncols - r, Surface(field, f)
        d += 1


def _minimal(items, field, conditions, d):
    if d == 1:
        return True  # nonzero constants vanish nowhere
    ncols = comb(d + 2, 3)
    rows = conditions(items, field, d - 1)
    return kernel_vector(rows, field, ncols) is None


def fit_through_points(points, field) -> SurfaceFitResult:
    """Lowest-degree surface through all points."""
    points = list(points)
    d, dim, S = _fit(points, field, point_conditions, "points")
    n = len(points)
    cert = all(on_surface(p, S) for p in points)
    return SurfaceFitResult(
        S, d, dim, cert, _minimal(points, field, point_conditions, d),
        bound_ok=d**3 <= 6 * n,
        dimension_count_ok=comb(d + 2, 3) <= n,
        kind="points",
    )


def fit_through_lines(lines, field) -> SurfaceFitResult:
    """Lowest-degree surface containing all lines (containment imposed symbolically)."""
    lines = list(lines)
    d, dim, S = _fit(lines, field, line_conditions, "lines")
    m = len(lines)
    cert = all(on_surface(L, S) for L in lines)
    return SurfaceFitResult(
        S, d, dim, cert, _minimal(lines, field, line_conditions, d),
        bound_ok=(d + 2) ** 2 <= 6 * m,
        # degree d-1 failed, so binom(d+2,3) <= m*d
        dimension_count_ok=(d + 1) * (d + 2) <= 6 * m,
        kind="lines",
    )


def fit_avoiding(items, U: Surface, e: int) -> Surface:
    """Degree-e surface through all items whose equation is not a multiple of U's."""
    items = list(items)
    if not items:
        raise FitError("nothing to fit")
    F = U.field
    if e < U.degree:
        raise FitError(f"budget {e} is below deg U = {U.degree}")
    cond = line_conditions if isinstance(items[0], ProjLine) else point_conditions
    ncols = comb(e + 3, 3)
    rows = cond(items, F, e)
    K = nullspace(rows, F, ncols) if rows else [
        [F.one if i == j else F.zero for j in range(ncols)] for i in range(ncols)
    ]
    if not K:
        raise FitError(f"no degree-{e} surface contains the items")
    g = U.poly
    # the multiples of g form a subspace: K lies inside it iff every basis vector does
    for v in K:
        f = HomogPoly.from_vector(F, 4, e, v)
        if not g.divides(f):
            return Surface(F, f)
    raise FitError(f"every degree-{e} surface through the items is a multiple of U")


# ---------------------------------------------------------------------------
# lines on surfaces


@dataclass
class LineSet:
    lines: tuple
    provenance: str  # "bruteforce" | "closed-form"
    surface: Surface | None = None
    scanned: int = 0  # candidate lines examined

    def __len__(self):
        return len(self.lines)

    def __iter__(self):
        return iter(self.lines)


def lines_on_surface(S: Surface, start: int = 0, stop: int | None = None) -> LineSet:
    if not S.field.is_finite:
        raise FieldError("brute-force line search needs a finite field")
    cands = enumerate_lines(S.field, start, stop)
    found = tuple(L for L in cands if on_surface(L, S))
    return LineSet(found, "bruteforce", S, len(cands))


def surface_points(S: Surface):
    return [p for p in enumerate_points(S.field) if on_surface(p, S)]


# ---------------------------------------------------------------------------
# flecnodal polynomial


@dataclass
class FlecnodalResult:
    poly: HomogPoly
    chart: str
    degree_bound: int

    @property
    def is_zero(self):
        return self.poly.is_zero()


def _bf_poly_mul(a, b, zero):
    """Product of binary forms whose coefficients are HomogPoly (None = 0)."""
    out = [None] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x is None or x.is_zero():
            continue
        for j, y in enumerate(b):
            if y is None or y.is_zero():
                continue
            t = x * y
            out[i + j] = t if out[i + j] is None else out[i + j] + t
    return out


def _taylor_form(f: HomogPoly, k: int, a0, a1, a2):
    """a2^k * f_k(m0, m1, m2) with m2 = -(a0 m0 + a1 m1)/a2, as a binary form in (m0, m1)."""
    F = f.field
    const = lambda c: HomogPoly.monomial(F, (0, 0, 0, 0), c)
    lin = [-a0, -a1]
    acc = [None] * (k + 1)
    a2pow = {0: const(F.one)}
    for e in range(1, k + 1):
        a2pow[e] = a2pow[e - 1] * a2
    for i in range(k + 1):
        for j in range(k + 1 - i):
            l = k - i - j
            H = f.hasse((i, j, l, 0))
            if H.is_zero():
                continue
            # H * a2^(k-l) * m0^i m1^j * (-(a0 m0 + a1 m1))^l
            mono = [None] * (i + j + 1)
            mono[j] = H * a2pow[k - l]
            term = mono
            for _ in range(l):
                term = _bf_poly_mul(term, lin, None)
            for idx, c in enumerate(term):
                if c is not None and not c.is_zero():
                    acc[idx] = c if acc[idx] is None else acc[idx] + c
    return acc


_CHARTS = [
    ("identity", None),
    ("x0 -> x0 + x2", 0),
    ("x1 -> x1 + x2", 1),
    ("x3 -> x3 + x2", 3),
]


def _shift(f: HomogPoly, j: int, sign: int):
    """Substitute x_j -> x_j + sign * x2."""
    F = f.field
    forms = []
    for i in range(4):
        v = [F.zero] * 4
        v[i] = F.one
        if i == j:
            v[2] = F.from_int(sign)
        forms.append(HomogPoly.linear(F, v))
    return f.substitute(forms)


def flecnodal(S: Surface) -> FlecnodalResult:
    """Salmon-style elimination: resultant of the quadratic and cubic Taylor parts along f_1 = 0."""
    F = S.field
    if F.characteristic in (2, 3):
        raise FieldError("flecnodal construction needs characteristic 0 or > 3")
    f0 = S.poly
    d = f0.degree
    bound = 11 * d - 18
    if all(f0.partial(i).is_zero() for i in range(4)):
        raise FieldError("all partial derivatives vanish; unsupported input")
    if d <= 2:
        return FlecnodalResult(HomogPoly.zero(F, 4, max(bound, 0)), "identity", bound)
    for name, j in _CHARTS:
        f = f0 if j is None else _shift(f0, j, 1)
        a2 = f.hasse((0, 0, 1, 0))
        if not a2.is_zero():
            break
    else:
        raise FieldError("no chart with a nonzero pivot partial")
    a0 = f.hasse((1, 0, 0, 0))
    a1 = f.hasse((0, 1, 0, 0))
    B = _taylor_form(f, 2, a0, a1, a2)
    C = _taylor_form(f, 3, a0, a1, a2)
    M = sylvester(B, C, None)
    R = poly_det(M)
    if R is None:
        flec = HomogPoly.zero(F, 4, bound)
    else:
        q = R
        for _ in range(6):
            q, r = q.divmod(a2)
            if not r.is_zero():
                raise ArithmeticError("pivot power does not divide the resultant")
        flec = q
        if j is not None:
            flec = _shift(flec, j, -1)
        flec = flec.normalized()
    return FlecnodalResult(flec, name, bound)


# ---------------------------------------------------------------------------
# triple tangents


def _direction_candidates(p: ProjPoint):
    """Points of the coordinate plane x_k = 0 where k is p's leading coordinate."""
    F = p.field
    k = next(i for i, x in enumerate(p.coords) if x != F.zero)
    return [y for y in enumerate_points(F) if y.coords[k] == F.zero]


def triple_tangent_directions(S: Surface, p: ProjPoint, candidates=None):
    """Directions y (one per line through p) with f_1 = f_2 = f_3 = 0 along p + t y."""
    F = S.field
    if not on_surface(p, S):
        raise ValueError("point is not on the surface")
    if candidates is None:
        if not F.is_finite:
            raise FieldError("pass candidate directions over an infinite field")
        candidates = _direction_candidates(p)
    out = []
    for y in candidates:
        if y == p:
            continue
        form = restrict_to_span(S.poly, p.coords, y.coords)
        if all(c == F.zero for c in form.coeffs[1:4]):
            out.append(y)
    return out


# ---------------------------------------------------------------------------
# ruledness


def ruledness_report(S: Surface, lines=None, with_flecnodal: bool = True) -> dict:
    F = S.field
    d = S.degree
    if lines is None:
        lines = lines_on_surface(S)
    lines = list(lines)
    nl = len(lines)
    pts = surface_points(S)
    per_point = [sum(1 for L in lines if point_on_line(p, L)) for p in pts]
    hist = dict(sorted(Counter(per_point).items()))

    meets = [[False] * nl for _ in range(nl)]
    for i in range(nl):
        for j in range(i + 1, nl):
            if lines_relation(lines[i], lines[j]).kind == "meet":
                meets[i][j] = meets[j][i] = True
    smooth_quadric = d == 2 and nl > 0 and set(per_point) == {2}
    special = []
    if not smooth_quadric and nl > 1:
        for i in range(nl):
            missed = sum(1 for j in range(nl) if j != i and not meets[i][j])
            if missed <= d * d:
                special.append(lines[i])

    vertex = None
    if nl >= 2:
        cands = {lines_relation(lines[0], L).at for L in lines[1:]}
        cands.discard(None)
        for v in sorted(cands):
            if all(point_on_line(v, L) for L in lines):
                vertex = v
                break

    verdict = None
    flec_note = "not applicable"
    if with_flecnodal and F.characteristic not in (2, 3):
        fr = flecnodal(S)
        divides = S.poly.divides(fr.poly)
        verdict = "ruled indicator" if divides else "non-ruled"
        flec_note = f"f {'divides' if divides else 'does not divide'} Flec (chart {fr.chart})"

    return {
        "degree": d,
        "line_count": nl,
        "d4": d**4,
        "dichotomy": "lines <= d^4" if nl <= d**4 else "lines > d^4",
        "surface_points": len(pts),
        "lines_through_point_hist": hist,
        "smooth_quadric": smooth_quadric,
        "special_line_candidates": len(special),
        "cone_vertex": str(vertex) if vertex is not None else None,
        "flecnodal": flec_note,
        "verdict": verdict,
        "label": "smooth quadric: two rulings" if smooth_quadric else None,
    }
