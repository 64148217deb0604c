"""Certified comparisons of exact integers against irrational expressions.

Right-hand sides are evaluated with mpmath's interval context (outward
rounding). A comparison is decided only when the interval excludes the
left-hand side; precision doubles up to ``MAX_PREC`` bits before giving up.
"""
from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from mpmath import iv, mp

START_PREC = 64
MAX_PREC = 1024


@contextmanager
def ivprec(bits: int):
    """Temporarily set the interval context precision."""
    old = iv.prec
    iv.prec = bits
    try:
        yield
    finally:
        iv.prec = old


def to_iv(x):
    """Exact rational (int, Fraction or decimal string) as a tight interval."""
    if isinstance(x, str):
        x = Fraction(x)
    x = Fraction(x)
    return iv.mpf(x.numerator) / iv.mpf(x.denominator)


def root(x, num: int, den: int):
    """``x ** (num/den)`` for a nonnegative interval."""
    if num == 0:
        return iv.mpf(1)
    return x ** (iv.mpf(num) / iv.mpf(den))


@dataclass
class Decision:
    verdict: str  # "holds" | "fails" | "indeterminate"
    prec: int
    lo: object
    hi: object

    @property
    def holds(self):
        return {"holds": True, "fails": False}.get(self.verdict)


def _endpoint(raw) -> Fraction:
    sign, man, exp, _ = raw
    if not man:
        return Fraction(0)
    v = Fraction(int(man)) * (Fraction(2) ** exp)
    return -v if sign else v


def endpoints(x) -> tuple[Fraction, Fraction]:
    """Exact dyadic endpoints of an mpmath interval."""
    lo, hi = x._mpi_
    return _endpoint(lo), _endpoint(hi)


def _decide_at(lhs, rhs_fn, prec, strict):
    lhs = Fraction(lhs)
    with ivprec(prec):
        lo, hi = endpoints(rhs_fn())
    if strict:
        v = "holds" if lhs < lo else ("fails" if lhs >= hi else "indeterminate")
    else:
        v = "holds" if lhs <= lo else ("fails" if lhs > hi else "indeterminate")
    return v, lo, hi


def decide_le(lhs, rhs_fn: Callable, strict: bool = False, start: int = START_PREC, cap: int = MAX_PREC) -> Decision:
    """Decide ``lhs <= rhs`` (or ``<`` when strict); rhs_fn is called inside the working precision."""
    prec = start
    while True:
        v, lo, hi = _decide_at(lhs, rhs_fn, prec, strict)
        if v != "indeterminate" or prec >= cap:
            return Decision(v, prec, lo, hi)
        prec *= 2


def sqrt_decimal(x: Fraction, digits: int = 12) -> str:
    """Decimal string of sqrt(x) rounded to the given number of digits."""
    with mp.workdps(digits + 10):
        return mp.nstr(mp.sqrt(mp.mpf(x.numerator) / x.denominator), digits)


def frac_str(x: Fraction, digits: int = 15) -> str:
    with mp.workdps(digits + 10):
        return mp.nstr(mp.mpf(x.numerator) / x.denominator, digits)


def interval_str(lo: Fraction, hi: Fraction, digits: int = 15) -> tuple[str, str]:
    return frac_str(lo, digits), frac_str(hi, digits)


def midpoint_ratio(lhs: int, lo: Fraction, hi: Fraction, digits: int = 12) -> str:
    mid = (lo + hi) / 2
    if mid == 0:
        return "inf" if lhs else "0"
    return frac_str(Fraction(lhs) / mid, digits)
