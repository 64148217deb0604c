"""Deterministic generators for the extremal and test configurations."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from math import comb

from sympy import factorint

from .exactalg import Field, FieldError, HomogPoly, make_field, nullspace, rank
from .incidence import Configuration, analyze, intersection_points, quadric_through_lines
from .projgeom import (
    ProjLine,
    ProjPoint,
    Surface,
    enumerate_lines,
    enumerate_points,
    line_from_rows,
    line_through,
    lines_relation,
    on_surface,
    point,
    point_on_line,
    points_on_line,
)
from .rng import LCG
from .surfacelab import lines_on_surface, surface_points

__all__ = [
    "GeneratedConfig",
    "CertificationError",
    "gen_grid",
    "gen_tilted_grid",
    "gen_hermitian",
    "gen_fermat_lines",
    "gen_planar_full",
    "gen_skew_cover",
    "gen_plane_pencils",
    "gen_random",
    "regular_spread",
    "GENERATORS",
]

MAX_RETRIES = 32


class CertificationError(RuntimeError):
    pass


@dataclass
class GeneratedConfig:
    config: Configuration
    name: str
    params: dict
    expected: dict = dc_field(default_factory=dict)
    notes: list = dc_field(default_factory=list)
    metadata: dict = dc_field(default_factory=dict)

    def sidecar(self) -> dict:
        return {
            "generator": self.name,
            "params": self.params,
            "expected": self.expected,
            "notes": self.notes,
            "metadata": {k: str(v) for k, v in self.metadata.items()},
        }


def _check(gc: GeneratedConfig, report=None):
    """Compare closed-form expectations with analyze(); raise on any mismatch."""
    if report is None:
        report = analyze(gc.config, quadric_budget=0)
    got = report.to_dict()
    for k, v in gc.expected.items():
        if k in got and got[k] != v:
            raise CertificationError(f"{gc.name}{gc.params}: {k} = {got[k]}, expected {v}")
    return report


def _prime_power(q: int):
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    f = factorint(q)
    if len(f) != 1:
        raise ValueError(f"{q} is not a prime power")
    ((p, k),) = f.items()
    return p, k


def _field_for(q: int, modulus=None) -> Field:
    p, k = _prime_power(q)
    return Field(p, k, modulus)


# ---------------------------------------------------------------------------
# grids


def _grid_lines_points(r: int):
    pts = [(i, j, k) for i in range(r) for j in range(r) for k in range(r)]
    lines = []
    for axis in range(3):
        for a in range(r):
            for b in range(r):
                base = [0, 0, 0]
                others = [t for t in range(3) if t != axis]
                base[others[0]], base[others[1]] = a, b
                tip = list(base)
                tip[axis] = 1
                lines.append((tuple(base), tuple(tip)))
    return pts, lines


def gen_grid(r: int) -> GeneratedConfig:
    if r < 2:
        raise ValueError("grid needs r >= 2")
    Q = make_field("Q")
    pts, segs = _grid_lines_points(r)
    P = [point(Q, (*c, 1)) for c in pts]
    L = [line_through(point(Q, (*a, 1)), point(Q, (*b, 1))) for a, b in segs]
    gc = GeneratedConfig(
        Configuration(Q, L, P), "grid", {"r": r},
        expected={"m": 3 * r * r, "n": r**3, "I_LP": 3 * r**3, "plane_richness": 2 * r},
    )
    _check(gc)
    return gc


def _tilt(c):
    x, y, z = c
    return (x * y * z, x * y, y * z, z * x, x, y, z, 1)


def gen_tilted_grid(r: int, seed: int = 0, span: int = 9) -> GeneratedConfig:
    """Grid pushed through (x,y,z) -> (xyz, xy, yz, zx, x, y, z) into P^7, then projected to P^3."""
    if r < 2:
        raise ValueError("grid needs r >= 2")
    Q = make_field("Q")
    pts, segs = _grid_lines_points(r)
    m, n, I = 3 * r * r, r**3, 3 * r**3
    failures = []
    for attempt in range(MAX_RETRIES):
        rng = LCG(seed + attempt)
        M = [[rng.randint(-span, span) for _ in range(8)] for _ in range(4)]

        def proj(v):
            return tuple(sum(a * b for a, b in zip(row, v)) for row in M)

        try:
            P = [point(Q, proj(_tilt(c))) for c in pts]
            L = [line_through(point(Q, proj(_tilt(a))), point(Q, proj(_tilt(b)))) for a, b in segs]
        except ValueError as exc:  # projection centre hit a point or collapsed a line
            failures.append(f"seed {seed + attempt}: {exc}")
            continue
        cfg = Configuration(Q, L, P)
        if cfg.m != m or cfg.n != n:
            failures.append(f"seed {seed + attempt}: collisions")
            continue
        rep = analyze(cfg, quadric_budget=0)
        if rep.I_LP != I or rep.plane_richness > 2:
            failures.append(f"seed {seed + attempt}: I={rep.I_LP} planes<={rep.plane_richness}")
            continue
        gc = GeneratedConfig(
            cfg, "tilted_grid", {"r": r, "seed": seed},
            expected={"m": m, "n": n, "I_LP": I},
            notes=failures + [f"certified with projection seed {seed + attempt}: incidences preserved, at most 2 lines per plane"],
            metadata={"projection": M, "used_seed": seed + attempt, "plane_richness": rep.plane_richness},
        )
        _check(gc, rep)
        return gc
    raise CertificationError(f"tilted grid r={r}: no certified projection in {MAX_RETRIES} tries")


# ---------------------------------------------------------------------------
# Hermitian surface


def hermitian_surface(F: Field, q: int) -> Surface:
    terms = {tuple((q + 1) * (i == j) for j in range(4)): F.one for i in range(4)}
    return Surface(F, HomogPoly(F, 4, q + 1, terms))


def gen_hermitian(q: int, modulus=None) -> GeneratedConfig:
    p, k = _prime_power(q)
    F = Field(p, 2 * k, modulus)
    S = hermitian_surface(F, q)
    lines = lines_on_surface(S).lines
    pts = surface_points(S)
    cfg = Configuration(F, lines, pts)
    m = (q + 1) * (q**3 + 1)
    n = (q * q + 1) * (q**3 + 1)
    gc = GeneratedConfig(
        cfg, "hermitian", {"q": q},
        expected={"m": m, "n": n, "I_LP": (q + 1) * n, "r_hist_points": {q + 1: n}},
        metadata={"surface": S, "field": F.spec},
    )
    _check(gc)
    return gc


# ---------------------------------------------------------------------------
# Fermat surfaces


def _roots_of_minus_one(F: Field, d: int):
    target = F.neg(F.one)
    return [z for z in F.elements() if F.pow(z, d) == target]


def fermat_surface(F: Field, d: int) -> Surface:
    terms = {tuple(d * (i == j) for j in range(4)): F.one for i in range(4)}
    return Surface(F, HomogPoly(F, 4, d, terms))


def gen_fermat_lines(d: int, field: Field | str, brute_force_limit: int = 17) -> GeneratedConfig:
    F = make_field(field) if isinstance(field, str) else field
    if d < 3:
        raise ValueError("Fermat lines need d >= 3")
    if not F.is_finite or (F.q - 1) % (2 * d):
        raise FieldError(f"{F.spec} lacks the 2d-th roots of unity needed for d={d}")
    roots = _roots_of_minus_one(F, d)
    S = fermat_surface(F, d)
    lines = []
    for (a, b), (c, e) in (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))):
        for z, w in itertools.product(roots, repeat=2):
            # x_a = z x_b, x_c = w x_e
            u = [F.zero] * 4
            v = [F.zero] * 4
            u[a], u[b] = z, F.one
            v[c], v[e] = w, F.one
            lines.append(line_from_rows(F, u, v))
    cfg = Configuration(F, lines, [])
    notes = []
    if not all(on_surface(L, S) for L in cfg.lines):
        raise CertificationError("closed-form Fermat line not on the surface")
    if F.q <= brute_force_limit:
        bf = lines_on_surface(S).lines
        if set(bf) != set(cfg.lines):
            raise CertificationError(f"closed form gives {cfg.m} lines, brute force {len(bf)}")
        notes.append("closed form equals brute force")
    gc = GeneratedConfig(cfg, "fermat", {"d": d, "field": F.spec}, expected={"m": 3 * d * d, "n": 0},
                         notes=notes, metadata={"surface": S})
    _check(gc)
    return gc


# ---------------------------------------------------------------------------
# full plane


def gen_planar_full(q: int) -> GeneratedConfig:
    F = _field_for(q)
    pts = [p for p in enumerate_points(F) if p.coords[3] == F.zero]
    lines = [L for L in enumerate_lines(F) if L.rows[0][3] == F.zero and L.rows[1][3] == F.zero]
    N = q * q + q + 1
    gc = GeneratedConfig(Configuration(F, lines, pts), "planar_full", {"q": q},
                         expected={"m": N, "n": N, "I_LP": (q + 1) * N, "I_circ": q * N, "plane_richness": N})
    _check(gc)
    return gc


# ---------------------------------------------------------------------------
# skew-line coverings


def _subfield_embedding(E: Field, F: Field):
    """Map elements of F (of order q) into the subfield {a : a^q = a} of E."""
    q = F.q
    if F.kind == "prime":
        return {a: a for a in range(q)}
    # find beta in E with beta^q = beta that is a root of F's modulus
    mod = F.modulus
    for beta in E.elements():
        if E.pow(beta, q) != beta:
            continue
        acc = E.zero
        for i, c in enumerate(mod):
            acc = E.add(acc, E.mul(E.from_int(c), E.pow(beta, i)))
        if acc == E.zero:
            emb = {}
            for code in F.elements():
                vec = F._vec(code)
                val = E.zero
                for i, c in enumerate(vec):
                    val = E.add(val, E.mul(E.from_int(c), E.pow(beta, i)))
                emb[code] = val
            if len(set(emb.values())) == q:
                return emb
    raise FieldError("no subfield embedding found")  # unreachable for a genuine extension


def _conj_line(L: ProjLine) -> ProjLine:
    E = L.field
    A, B = L.rows
    return line_from_rows(E, [E.frobenius(x) for x in A], [E.frobenius(x) for x in B])


def _random_conjugate_pair(E: Field, rng: LCG, sub: set):
    while True:
        A = [rng.below(E.q) for _ in range(4)]
        B = [rng.below(E.q) for _ in range(4)]
        if rank([A, B], E) < 2:
            continue
        L = line_from_rows(E, A, B)
        Lc = _conj_line(L)
        if rank([list(r) for r in L.rows + Lc.rows], E) == 4:
            return L, Lc


def _transversal(x_coords, L: ProjLine, Lc: ProjLine, E: Field):
    """The line through x meeting both L and its conjugate."""
    plane_rows = [list(L.rows[0]), list(L.rows[1]), list(x_coords)]
    (h,) = nullspace(plane_rows, E)
    # point of Lc on the plane h: s*C + t*D with h.(sC + tD) = 0
    C, D = Lc.rows
    hc = _sum_e(E, (E.mul(a, b) for a, b in zip(h, C)))
    hd = _sum_e(E, (E.mul(a, b) for a, b in zip(h, D)))
    s, t = hd, E.neg(hc)
    y = [E.add(E.mul(s, c), E.mul(t, d)) for c, d in zip(C, D)]
    return line_from_rows(E, list(x_coords), y)


def _sum_e(E, it):
    acc = E.zero
    for v in it:
        acc = E.add(acc, v)
    return acc


def _spread_from_pair(F: Field, E: Field, emb: dict, L, Lc):
    back = {v: k for k, v in emb.items()}
    fam = set()
    for p in enumerate_points(F):
        x = [emb[c] for c in p.coords]
        T = _transversal(x, L, Lc, E)
        rows = []
        for row in T.rows:
            if any(v not in back for v in row):
                raise CertificationError("transversal is not defined over the base field")
            rows.append([back[v] for v in row])
        fam.add(line_from_rows(F, *rows))
    return sorted(fam)


def _certify_spread(F: Field, fam):
    q = F.q
    if len(fam) != q * q + 1:
        raise CertificationError(f"family has {len(fam)} lines, expected {q * q + 1}")
    cover = {}
    for L in fam:
        for p in points_on_line(L):
            if p in cover:
                raise CertificationError("two family lines share a point")
            cover[p] = L
    if len(cover) != q**3 + q * q + q + 1:
        raise CertificationError("family does not cover the space")


def gen_skew_cover(q: int, pairs: int = 1, seed: int = 0) -> GeneratedConfig:
    p, k = _prime_power(q)
    if p == 2:
        raise ValueError("skew covers are implemented for odd q only")
    if pairs < 1:
        raise ValueError("need at least one conjugate pair")
    F = Field(p, k)
    E = Field(p, 2 * k)
    emb = _subfield_embedding(E, F)
    rng = LCG(seed)
    fams = []
    used = []
    while len(fams) < pairs:
        L, Lc = _random_conjugate_pair(E, rng, set(emb.values()))
        # general position: the four lines of two pairs must not share a quadric
        if any(quadric_through_lines([L, Lc, A, B], E) for A, B in used):
            continue
        fam = _spread_from_pair(F, E, emb, L, Lc)
        _certify_spread(F, fam)
        fams.append(fam)
        used.append((L, Lc))
    union = sorted(set().union(*map(set, fams)))
    m = len(union)
    hi = pairs * (q * q + 1)
    lo = hi - 2 * comb(pairs, 2)
    if not lo <= m <= hi:
        raise CertificationError(f"union has {m} lines, outside [{lo}, {hi}]")
    pts = enumerate_points(F)
    gc = GeneratedConfig(
        Configuration(F, union, pts), "skew_cover", {"q": q, "pairs": pairs, "seed": seed},
        expected={"m": m, "n": len(pts)},
        notes=[f"{pairs} conjugate pair(s); union size {m} within [{lo}, {hi}]"],
        metadata={"families": [len(f) for f in fams], "m_range": (lo, hi)},
    )
    if pairs == 1:
        gc.expected.update({"I_LP": len(pts), "pair_count": 0})
    _check(gc)
    return gc


def regular_spread(q: int):
    """Independent spread: 1-dimensional F_{q^2}-subspaces of F_{q^2}^2 viewed over F_q."""
    p, k = _prime_power(q)
    F = Field(p, k)
    E = Field(p, 2 * k)
    emb = _subfield_embedding(E, F)
    back = {v: k_ for k_, v in emb.items()}
    # basis 1, w of E over the subfield
    w = next(a for a in E.elements() if a not in back)

    def coords(z):
        # solve z = a + b w with a, b in the subfield
        for b in emb.values():
            a = E.sub(z, E.mul(b, w))
            if a in back:
                return back[a], back[b]
        raise AssertionError("basis failure")

    lines = set()
    reps = [(E.one, b) for b in E.elements()] + [(E.zero, E.one)]
    for u, v in reps:
        A = coords(u) + coords(v)
        B = coords(E.mul(w, u)) + coords(E.mul(w, v))
        lines.add(line_from_rows(F, list(A), list(B)))
    return F, sorted(lines)


# ---------------------------------------------------------------------------
# plane pencils


def _random_plane(F, rng):
    while True:
        v = [rng.element(F, 7) for _ in range(4)]
        if any(x != F.zero for x in v):
            return HomogPoly.linear(F, v)


def gen_plane_pencils(a: int, b: int, seed: int = 0, field: Field | str = "Q") -> GeneratedConfig:
    F = make_field(field) if isinstance(field, str) else field
    if a < 1 or b < 1:
        raise ValueError("need a, b >= 1")
    if F.is_finite and F.q < a + b + 2:
        raise ValueError("field too small for generic planes")
    want_pts = a * b * (a + b - 2) // 2
    for attempt in range(MAX_RETRIES):
        rng = LCG(seed + attempt)
        Hs = [_random_plane(F, rng) for _ in range(a)]
        Ks = [_random_plane(F, rng) for _ in range(b)]
        planes = Hs + Ks
        # any 4 of the planes independent, any 2 distinct
        ok = all(rank([h.coefficient_vector() for h in sub], F) == len(sub)
                 for t in (2, 3, 4) for sub in itertools.combinations(planes, t))
        if not ok:
            continue
        lines = []
        for H in Hs:
            for K in Ks:
                ns = nullspace([H.coefficient_vector(), K.coefficient_vector()], F)
                lines.append(line_from_rows(F, ns[0], ns[1]))
        if len(set(lines)) != a * b:
            continue
        ipts = intersection_points(lines)
        if any(r != 2 for _, r in ipts) or len(ipts) != want_pts:
            continue
        S = Surface(F, _prod(Hs))
        T = Surface(F, _prod(Ks))
        gc = GeneratedConfig(
            Configuration(F, lines, [p for p, _ in ipts]), "plane_pencils",
            {"a": a, "b": b, "seed": seed, "field": F.spec},
            expected={"m": a * b, "n": want_pts, "I_L": want_pts, "pair_count": want_pts},
            notes=[f"certified generic with seed {seed + attempt}"],
            metadata={"S": S, "T": T, "used_seed": seed + attempt},
        )
        _check(gc)
        return gc
    raise CertificationError("no generic plane choice found")


def _prod(polys):
    out = polys[0]
    for p in polys[1:]:
        out = out * p
    return out


# ---------------------------------------------------------------------------
# random


def gen_random(m: int, n: int, field: Field | str = "F7", seed: int = 0, span: int = 5) -> GeneratedConfig:
    F = make_field(field) if isinstance(field, str) else field
    if F.is_finite:
        nl = (F.q**2 + 1) * (F.q**2 + F.q + 1)
        npnt = F.q**3 + F.q**2 + F.q + 1
        if m > nl or n > npnt:
            raise ValueError("requested more objects than the space has")
    rng = LCG(seed)
    lines, pts = set(), set()

    def rand_vec():
        while True:
            v = [rng.element(F, span) for _ in range(4)]
            if any(x != F.zero for x in v):
                return v

    while len(lines) < m:
        A, B = rand_vec(), rand_vec()
        if rank([A, B], F) == 2:
            lines.add(line_from_rows(F, A, B))
    while len(pts) < n:
        pts.add(ProjPoint(F, tuple(rand_vec())))
    gc = GeneratedConfig(Configuration(F, lines, pts), "random", {"m": m, "n": n, "field": F.spec, "seed": seed},
                         expected={"m": m, "n": n})
    _check(gc)
    return gc


GENERATORS = {
    "grid": gen_grid,
    "tilted_grid": gen_tilted_grid,
    "hermitian": gen_hermitian,
    "fermat": gen_fermat_lines,
    "planar_full": gen_planar_full,
    "skew_cover": gen_skew_cover,
    "plane_pencils": gen_plane_pencils,
    "random": gen_random,
}
