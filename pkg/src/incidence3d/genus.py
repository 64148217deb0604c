"""Hilbert polynomials, arithmetic genus of line arrangements, local delta invariants."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import comb, isqrt

from sympy import factorint

from .exactalg import Field, FieldError, HomogPoly, monomials, rank
from .incidence import intersection_points
from .intervals import decide_le, to_iv
from .projgeom import ProjLine, ProjPoint, Surface, on_surface, point_on_line
from .surfacelab import line_conditions

__all__ = [
    "GenusResult",
    "DeltaResult",
    "hilbert_ci",
    "pa_ci",
    "prop_bounds",
    "PropBounds",
    "delta_local",
    "delta_lower_bound",
    "pa_arrangement",
    "hilbert_function",
    "check_subcurve_bound",
    "compare_radical_sum",
    "local_global",
]


# ---------------------------------------------------------------------------
# complete intersections


def hilbert_ci(degrees, n: int = 3) -> tuple[Fraction, Fraction]:
    """Hilbert polynomial (slope, constant) of a complete intersection curve in P^n."""
    degrees = list(degrees)
    if n < 2 or len(degrees) != n - 1:
        raise ValueError("need n-1 degrees in P^n with n >= 2")
    if any(a < 1 for a in degrees):
        raise ValueError("degrees must be positive")
    P = 1
    for a in degrees:
        P *= a
    return Fraction(P), -Fraction(sum(degrees) - n - 1, 2) * P


def pa_ci(a: int, b: int) -> int:
    if a < 1 or b < 1:
        raise ValueError("degrees must be positive")
    return 1 + a * b * (a + b - 4) // 2


@dataclass(frozen=True)
class PropBounds:
    components: int  # ab
    sum_r_minus_1: Fraction  # ab(a+b-2)/2
    x: int  # ab(a+b-2); item 3 bound is x / sqrt(2)
    item3_upper: Fraction  # rational number >= x / sqrt(2)
    smooth_sum: int  # ab(a+b-2)

    @property
    def item3_squared(self) -> Fraction:
        return Fraction(self.x * self.x, 2)

    def as_tuple(self):
        return (self.components, self.sum_r_minus_1, f"{self.x}/sqrt(2)", self.smooth_sum)


def prop_bounds(a: int, b: int, digits: int = 6) -> PropBounds:
    if a < 1 or b < 1:
        raise ValueError("degrees must be positive")
    x = a * b * (a + b - 2)
    scale = 10**digits
    # ceil(sqrt(x^2 / 2) * scale) / scale
    t = x * x * scale * scale
    s = isqrt(t // 2)
    while 2 * s * s < t:
        s += 1
    return PropBounds(a * b, Fraction(x, 2), x, Fraction(s, scale), x)


# ---------------------------------------------------------------------------
# local delta invariants


@dataclass
class DeltaResult:
    r: int
    n: int
    delta: int
    degree_used: int
    lower_bound: int
    ranks: list = dc_field(default_factory=list)
    note: str | None = None

    def to_dict(self):
        return {
            "r": self.r,
            "n": self.n,
            "delta": self.delta,
            "degree_used": self.degree_used,
            "lower_bound": self.lower_bound,
            "ranks": self.ranks,
            "note": self.note,
        }


def delta_lower_bound(r: int, n: int) -> int:
    if r < 1 or n < 2:
        raise ValueError("need r >= 1 and n >= 2")
    total, j = 0, 0
    while True:
        h = comb(j + n - 1, n - 1)
        if h >= r:
            return total
        total += r - h
        j += 1


def _directions(O: ProjPoint, lines):
    """Images of the lines in the 3-dimensional quotient of the ambient space by O."""
    F = O.field
    k = next(i for i, x in enumerate(O.coords) if x != F.zero)
    out = []
    for L in lines:
        if not point_on_line(O, L):
            raise ValueError("lines are not concurrent at the given point")
        A, B = L.rows
        Y = A if ProjPoint(F, A) != O else B
        w = [F.sub(y, F.mul(Y[k], o)) for y, o in zip(Y, O.coords)]
        out.append([w[i] for i in range(4) if i != k])
    return out


def _common_point(lines):
    from .projgeom import lines_relation

    if len(lines) < 2:
        raise ValueError("need at least two lines to locate the common point")
    rel = lines_relation(lines[0], lines[1])
    if rel.kind != "meet":
        raise ValueError("lines are not concurrent")
    return rel.at


def _eval_monomials(F, vec, j):
    row = []
    for ex in monomials(len(vec), j):
        v = F.one
        for x, e in zip(vec, ex):
            if e:
                v = F.mul(v, F.pow(x, e))
        row.append(v)
    return row


def delta_local(lines, center: ProjPoint | None = None) -> DeltaResult:
    """delta of r distinct concurrent lines: sum over degrees j < r of (r - rank of degree-j restriction)."""
    lines = list(dict.fromkeys(lines))
    r = len(lines)
    if r == 0:
        raise ValueError("no lines")
    if r == 1:
        return DeltaResult(1, 2, 0, 0, 0, [1])
    F = lines[0].field
    O = center if center is not None else _common_point(lines)
    dirs = _directions(O, lines)
    n = rank(dirs, F)  # 2 when the lines are coplanar
    n = max(n, 2)
    ranks = [rank([_eval_monomials(F, v, j) for v in dirs], F) for j in range(r)]
    delta = sum(r - h for h in ranks)
    note = None
    if F.is_finite and F.q <= r:
        e = 1
        while F.p**e <= r:
            e += 1
        note = f"field has at most r elements; a lift to F{F.p}^{e} is the documented safe choice"
    return DeltaResult(r, n, delta, r - 1, delta_lower_bound(r, n), ranks, note)


# ---------------------------------------------------------------------------
# genus of line arrangements


@dataclass
class GenusResult:
    p_a: int
    stable_degree: int
    samples: dict  # d -> H(d)
    m: int
    r_max: int

    def to_dict(self):
        return {
            "p_a": self.p_a,
            "stable_degree": self.stable_degree,
            "m": self.m,
            "r_max": self.r_max,
            "hilbert_samples": {str(k): v for k, v in sorted(self.samples.items())},
        }


def hilbert_function(lines, d: int) -> int:
    """Rank of the restriction map from degree-d forms to the lines."""
    lines = list(lines)
    F = lines[0].field
    if d == 0:
        return 1
    rows = line_conditions(lines, F, d)
    return rank(rows, F) if rows else 0


def pa_arrangement(lines) -> GenusResult:
    """Arithmetic genus m*d + 1 - H(d) once the Hilbert function has stabilized.

    Accepted only when two consecutive degrees agree, d > (r_max - 1)^2, and
    d >= m (a union of m lines has regularity at most m).
    """
    lines = list(dict.fromkeys(lines))
    m = len(lines)
    if m == 0:
        raise ValueError("no lines")
    pts = intersection_points(lines)
    r_max = max((r for _, r in pts), default=1)
    need = max((r_max - 1) ** 2 + 1, m, 1)
    samples = {}
    prev = None
    d = max(1, need - 1)
    while True:
        H = hilbert_function(lines, d)
        samples[d] = H
        pa = m * d + 1 - H
        if prev is not None and pa == prev and d >= need:
            return GenusResult(pa, d - 1, samples, m, r_max)
        prev = pa
        d += 1


def local_global(lines):
    """(p_a, 1 - m + sum of local deltas) for a line arrangement."""
    lines = list(dict.fromkeys(lines))
    g = pa_arrangement(lines)
    total = 0
    for p, r in intersection_points(lines):
        through = [L for L in lines if point_on_line(p, L)]
        total += delta_local(through, p).delta
    return g.p_a, 1 - len(lines) + total


# ---------------------------------------------------------------------------
# sums of radicals


def _squarefree_split(k: int):
    """k = s * t^2 with s squarefree; returns (s, t)."""
    s, t = 1, 1
    for p, e in factorint(k).items():
        t *= p ** (e // 2)
        if e % 2:
            s *= p
    return s, t


def compare_radical_sum(terms: dict, rhs_terms: dict) -> str:
    """Sign test of sum_s A_s sqrt(s) <= sum_s B_s sqrt(s) (rational A, B; squarefree s).

    Equality is exact (square roots of distinct squarefree integers are
    linearly independent over Q); otherwise interval arithmetic decides.
    Returns "lt", "eq" or "gt".
    """
    diff = defaultdict(Fraction)
    for s, a in terms.items():
        diff[s] += Fraction(a)
    for s, b in rhs_terms.items():
        diff[s] -= Fraction(b)
    diff = {s: c for s, c in diff.items() if c != 0}
    if not diff:
        return "eq"
    if set(diff) == {1}:
        return "lt" if diff[1] < 0 else "gt"
    from mpmath import iv

    dec = decide_le(0, lambda: -sum((to_iv(c) * iv.sqrt(iv.mpf(s)) for s, c in diff.items()), iv.mpf(0)), strict=True)
    if dec.verdict == "holds":
        return "lt"
    if dec.verdict == "fails":
        return "gt"
    raise ArithmeticError("radical sum undecided at the precision cap")


def _smooth_at(S: Surface, p: ProjPoint) -> bool:
    return any(not S.poly.partial(i).is_zero() and S.poly.partial(i).evaluate(p.coords) != S.field.zero for i in range(4))


def check_subcurve_bound(lines, a: int, b: int, S: Surface | None = None, T: Surface | None = None) -> dict:
    """Check an arrangement lying on S and T against the complete-intersection genus bounds."""
    lines = list(dict.fromkeys(lines))
    for L in lines:
        for X in (S, T):
            if X is not None and not on_surface(L, X):
                raise ValueError("a line is not on both surfaces")
    pb = prop_bounds(a, b)
    g = pa_arrangement(lines)
    pts = intersection_points(lines)
    ks = [r - 1 for _, r in pts]
    s1 = sum(ks)

    # sum of k^(3/2) as a combination of squarefree radicals, compared with x / sqrt(2) = (x/2) sqrt(2)
    lhs = defaultdict(Fraction)
    for k in ks:
        s, t = _squarefree_split(k)
        lhs[s] += k * t
    item3 = compare_radical_sum(dict(lhs), {2: Fraction(pb.x, 2)})

    if S is not None and T is not None:
        sm = [(p, r) for p, r in pts if _smooth_at(S, p) or _smooth_at(T, p)]
        s4 = sum(r * (r - 1) for _, r in sm)
        item4 = {"sum": s4, "bound": pb.smooth_sum, "holds": s4 <= pb.smooth_sum, "points": len(sm), "skipped": len(pts) - len(sm)}
    else:
        item4 = {"sum": None, "bound": pb.smooth_sum, "holds": None, "note": "not applicable without S and T"}

    checks = {
        "genus": g.p_a <= pa_ci(a, b),
        "components": len(lines) <= pb.components,
        "sum_r_minus_1": s1 <= pb.sum_r_minus_1,
        "sum_r_minus_1_pow_3_2": item3 in ("lt", "eq"),
        "smooth_sum": item4["holds"] is not False,
    }
    return {
        "a": a,
        "b": b,
        "m": len(lines),
        "p_a": g.p_a,
        "pa_ci": pa_ci(a, b),
        "sum_r_minus_1": s1,
        "sum_r_minus_1_bound": pb.sum_r_minus_1,
        "sum_r_minus_1_equality": s1 == pb.sum_r_minus_1,
        "pow_3_2_comparison": item3,
        "pow_3_2_bound": f"{pb.x}/sqrt(2)",
        "smooth": item4,
        "checks": checks,
        "verdict": "pass" if all(checks.values()) else "fail",
    }
