"""Bound verifiers, constants audit and characteristic-p validity annotations."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from mpmath import iv

from .exactalg import Field, make_field
from .incidence import IncidenceReport
from .intervals import ivprec, decide_le, endpoints, frac_str, interval_str, midpoint_ratio, root, to_iv

__all__ = [
    "BOUND_IDS",
    "BoundReport",
    "verify_bound",
    "bourgain_check",
    "constants_audit",
    "charp_validity",
    "applicable_bounds",
]

BOUND_IDS = ("ST2", "MAIN_C", "MAIN_C_SHARP", "MAIN_C_ALT", "MAIN_K", "INTERSECT", "PLANAR34", "PLANAR_EASY")

F_ = Fraction


def _c(x):
    return to_iv(F_(x))


def _ivmax(a, b):
    (alo, ahi), (blo, bhi) = endpoints(a), endpoints(b)
    return iv.mpf([a.a if alo >= blo else b.a, a.b if ahi >= bhi else b.b])


def _ivmin(a, b):
    (alo, ahi), (blo, bhi) = endpoints(a), endpoints(b)
    return iv.mpf([a.a if alo <= blo else b.a, a.b if ahi <= bhi else b.b])


def _rhs_builders(m: int, n: int, c_sq: Fraction):
    """Interval-valued right-hand sides, evaluated lazily inside the working precision."""
    M, N = (lambda: iv.mpf(m)), (lambda: iv.mpf(n))
    C2 = lambda: to_iv(c_sq)

    def st2():
        return _c("2.5") * root(M(), 2, 3) * root(N(), 2, 3) + M() + N()

    def main_c():
        return (_c("3.66") + _c("0.91") * C2()) * M() * root(N(), 1, 3) + _c("6.76") * N()

    def main_c_sharp():
        a = _c("3.66")
        b = _c("1.82") + _c("0.91") * C2()
        return _ivmax(a, b) * M() * root(N(), 1, 3) + _c("6.76") * N()

    def main_c_alt():
        return root(iv.mpf(6), 1, 3) * (1 + C2() / 2) * M() * root(N(), 1, 3) + _c("34.6") * N()

    def main_k():
        return (
            _c("2.45") * M() * root(N(), 2, 5)
            + _c("2.45") * root(N(), 6, 5)
            + _c("0.91") * C2() * M() * root(N(), 1, 3)
            + _c("6.74") * N()
        )

    def intersect():
        return (_c("29.1") + iv.sqrt(C2()) / 2) * root(M(), 3, 2)

    def planar34():
        return root(M(), 3, 4) * root(N(), 3, 4)

    def planar_easy():
        return _ivmin(iv.sqrt(M()) * N(), M() * iv.sqrt(N()))

    return {
        "ST2": st2,
        "MAIN_C": main_c,
        "MAIN_C_SHARP": main_c_sharp,
        "MAIN_C_ALT": main_c_alt,
        "MAIN_K": main_k,
        "INTERSECT": intersect,
        "PLANAR34": planar34,
        "PLANAR_EASY": planar_easy,
    }


@dataclass
class BoundReport:
    bound: str
    lhs: int
    lhs_name: str
    rhs: str
    rhs_interval: tuple
    verdict: str  # holds | fails | indeterminate
    ratio: str
    precision: int
    recheck_ok: bool
    inputs: dict
    notes: list = dc_field(default_factory=list)
    informational: bool = False
    hypothesis_violated: bool = False
    rhs_exact: tuple = ()  # dyadic (lo, hi) as Fractions

    @property
    def holds(self):
        return {"holds": True, "fails": False}.get(self.verdict)

    def to_dict(self):
        return {
            "bound": self.bound,
            "lhs": self.lhs,
            "lhs_name": self.lhs_name,
            "rhs": self.rhs,
            "rhs_lo": self.rhs_interval[0],
            "rhs_hi": self.rhs_interval[1],
            "verdict": self.verdict,
            "holds": self.holds,
            "ratio": self.ratio,
            "precision_bits": self.precision,
            "recheck_ok": self.recheck_ok,
            "informational": self.informational,
            "hypothesis_violated": self.hypothesis_violated,
            **{f"input_{k}": v for k, v in self.inputs.items()},
            "notes": self.notes,
        }


def verify_bound(report: IncidenceReport, bound: str, c_sq: Fraction | None = None, lhs_override: int | None = None) -> BoundReport:
    """Check one inequality on a report; c defaults to the measured plane richness / sqrt(m)."""
    bound = bound.upper()
    if bound not in BOUND_IDS:
        raise ValueError(f"unknown bound {bound!r}; choose from {', '.join(BOUND_IDS)}")
    m, n = report.m, report.n
    c_used = report.c_plane_sq if c_sq is None else Fraction(c_sq)
    notes = []
    if c_sq is None:
        notes.append("c = plane richness / sqrt(m) (measured)")
    else:
        notes.append("c supplied by caller")
    if bound == "INTERSECT":
        lhs_name, lhs = "I_L", report.I_L
    elif bound in ("PLANAR34", "PLANAR_EASY"):
        # the planar argument bounds sum (r(p) - 1); the full count exceeds m^(3/4) n^(3/4) on a whole plane
        lhs_name, lhs = "I_circ", report.I_circ
        notes.append("planar bounds are checked on I_circ = sum over covered points of (r(p) - 1)")
    else:
        lhs_name, lhs = "I_LP", report.I_LP
    if lhs_override is not None:
        lhs = lhs_override
        lhs_name = "override"
    fn = _rhs_builders(m, n, c_used)[bound]
    dec = decide_le(lhs, fn)
    # independent recomputation at twice the deciding precision
    dec2 = decide_le(lhs, fn, start=2 * dec.prec, cap=2 * dec.prec)
    recheck = dec2.verdict == dec.verdict or dec.verdict == "indeterminate"
    lo, hi = interval_str(dec.lo, dec.hi)
    mid = frac_str((dec.lo + dec.hi) / 2)
    informational = False
    violated = False
    if bound == "ST2" and report.field != "Q":
        informational = True
        notes.append("real/complex statement; informational over finite fields")
    if bound == "INTERSECT":
        # hypothesis: no quadric holds more than 2c sqrt(m) lines, i.e. k^2 <= 4 c^2 m
        k = report.quadric_richness_lower
        if Fraction(k * k) > 4 * c_used * m:
            violated = True
            notes.append(f"quadric hypothesis violated: a quadric holds >= {k} lines")
    if bound in ("PLANAR34", "PLANAR_EASY") and report.plane_richness != m:
        notes.append("configuration is not planar; planar bound reported for information")
        informational = True
    return BoundReport(
        bound=bound,
        lhs=lhs,
        lhs_name=lhs_name,
        rhs=mid,
        rhs_interval=(lo, hi),
        verdict=dec.verdict,
        ratio=midpoint_ratio(lhs, dec.lo, dec.hi),
        precision=dec.prec,
        recheck_ok=recheck,
        inputs={"m": m, "n": n, "c_sq": str(c_used), "field": report.field},
        notes=notes,
        informational=informational,
        hypothesis_violated=violated,
        rhs_exact=(dec.lo, dec.hi),
    )


# ---------------------------------------------------------------------------


def bourgain_check(m: int, n: int, characteristic: int) -> dict:
    """Which side of the point-count threshold (m, n) lies on."""
    if m <= 0 or n <= 0:
        raise ValueError("m and n must be positive")
    if characteristic == 0:
        lhs, rhs = 2500 * n * n, m**3  # n >= m^(3/2)/50
        thr = "n >= m^(3/2) / 50"
    else:
        if m < 10**4:
            return {"m": m, "n": n, "characteristic": characteristic, "applicable": False,
                    "side": "not applicable", "note": "needs m >= 10^4"}
        lhs, rhs = 20**4 * n**4, m**5  # n >= m^(5/4)/20
        thr = "n >= m^(5/4) / 20"
    side = "equality" if lhs == rhs else ("meets" if lhs > rhs else "below")
    return {"m": m, "n": n, "characteristic": characteristic, "applicable": True, "threshold": thr,
            "side": side, "meets": lhs >= rhs}


# ---------------------------------------------------------------------------


def constants_audit() -> dict:
    """Recheck the numeric steps used in the proofs with exact or interval arithmetic."""
    claims = {}
    a2 = Fraction(6, 11)  # alpha0^2
    # (i) crossing: 66 a^3 = 3(a + 6/a)  <=>  22 a^4 - a^2 - 6 = 0, and 66 a0^3 = 36 a0
    crossing = 22 * a2 * a2 - a2 - 6 == 0
    # 36 a0 < 26.6  <=>  1296 * 6/11 < 26.6^2
    below = 1296 * a2 < Fraction("26.6") ** 2
    with ivprec(128):
        lo, hi = map(float, endpoints(66 * iv.sqrt(to_iv(a2)) ** 3))
    claims["crossing_value"] = {
        "holds": crossing and below and 26.57 < lo and hi < 26.60,
        "detail": f"22a^4-a^2-6=0 at a^2=6/11: {crossing}; 66 a0^3 = 36 a0 in [{lo:.6f}, {hi:.6f}] < 26.6: {below}",
    }
    # (ii) 66 a^3 increases; 3(a + 6/a) has derivative 3(1 - 6/a^2) < 0 on (0, sqrt 6)
    mono = True
    grid = [Fraction(k, 100) for k in range(1, 245)]
    for x, y in zip(grid, grid[1:]):
        if not (66 * x**3 < 66 * y**3 and 3 * (x + 6 / x) > 3 * (y + 6 / y)):
            mono = False
    claims["min_is_max_at_crossing"] = {
        "holds": mono and all(1 - 6 / (x * x) < 0 for x in grid),
        "detail": "branches monotone on (0, sqrt 6]; the minimum peaks where they cross",
    }
    # (iii) 2.73/x + 6.76/x^3 decreases, so x = 50^(1/3) is the worst case
    dec = decide_le(1, lambda: 1 / (to_iv("2.73") / root(iv.mpf(50), 1, 3) + to_iv("6.76") / 50), strict=True)
    with ivprec(128):
        vlo, vhi = map(float, endpoints(to_iv("2.73") / root(iv.mpf(50), 1, 3) + to_iv("6.76") / 50))
    claims["bourgain_step"] = {
        "holds": dec.verdict == "holds",
        "detail": f"2.73/x + 6.76/x^3 at x^3=50 in [{vlo:.6f}, {vhi:.6f}] < 1",
    }
    # (iv) sqrt 6 + 26.6 < 29.1  <=>  6 < 2.5^2
    dec4 = decide_le(0, lambda: to_iv("29.1") - to_iv("26.6") - iv.sqrt(iv.mpf(6)), strict=True)
    claims["adding_up"] = {
        "holds": Fraction(6) < Fraction(5, 2) ** 2 and dec4.verdict == "holds",
        "detail": "sqrt(6) + 26.6 = 29.0494... < 29.1",
    }
    # supporting arithmetic quoted alongside the main steps
    claims["cube_of_3.66_below_50"] = {"holds": Fraction("3.66") ** 3 < 50, "detail": "3.66^3 = 49.03 < 50"}
    claims["cbrt6_below_1.82"] = {"holds": 6 <= Fraction("1.82") ** 3, "detail": "6 <= 1.82^3 = 6.028"}
    return {"claims": claims, "all_hold": all(c["holds"] for c in claims.values())}


# ---------------------------------------------------------------------------


def charp_validity(report: IncidenceReport, field: Field | str) -> dict:
    """Which characteristic-0 bounds stay asserted over the given field."""
    F = make_field(field) if isinstance(field, str) else field
    m, n = report.m, report.n
    out = {}
    if F.characteristic == 0:
        for b in BOUND_IDS:
            out[b] = {"asserted": True, "reason": "characteristic 0"}
        return out
    p, q = F.p, F.q
    prime = q == p
    if 6 * m < 11 * p * p:
        out["INTERSECT"] = {"asserted": True, "reason": "m < (11/6) p^2"}
    elif prime:
        out["INTERSECT"] = {"asserted": True, "reason": "prime field", "lhs": "intersection_count"}
    else:
        out["INTERSECT"] = {"asserted": False, "reason": "m >= (11/6) p^2 and q != p"}
    if p**3 > 6 * n:
        out["MAIN_C"] = {"asserted": True, "reason": "p^3 > 6n"}
    elif prime:
        out["MAIN_C"] = {"asserted": True, "reason": "prime field"}
    else:
        out["MAIN_C"] = {"asserted": False, "reason": "p^3 <= 6n and q != p"}
    for b in ("MAIN_C_SHARP", "MAIN_C_ALT"):
        out[b] = dict(out["MAIN_C"])
    out["MAIN_K"] = {"asserted": True, "reason": "valid over every field"}
    out["PLANAR34"] = {"asserted": True, "reason": "valid over every field"}
    out["PLANAR_EASY"] = {"asserted": True, "reason": "valid over every field"}
    out["ST2"] = {"asserted": False, "reason": "real/complex statement only"}
    return out


def applicable_bounds(report: IncidenceReport, field: Field) -> list[str]:
    """Bounds whose hypotheses apply to this configuration over this field."""
    val = charp_validity(report, field)
    out = []
    for b in ("MAIN_C", "MAIN_C_SHARP", "MAIN_K", "INTERSECT"):
        if val[b]["asserted"]:
            out.append(b)
    if report.m and report.plane_richness == report.m:
        out += ["PLANAR34", "PLANAR_EASY"]
    return out
