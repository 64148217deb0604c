"""Exact arithmetic: fields, sparse homogeneous polynomials, binary forms, linear algebra.

Field elements are plain Python values owned by a :class:`Field`:

* ``Q``: :class:`fractions.Fraction`
* ``F_p``: ``int`` in ``[0, p)``
* ``F_{p^e}``: ``int`` code ``a0 + a1*p + ... + a_{e-1}*p^(e-1)`` of the
  coefficient vector of ``a0 + a1*x + ...`` modulo the defining polynomial.

All arithmetic goes through the owning field, so values stay canonical and
equality is plain ``==``.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd, prod
from typing import Iterable, Sequence

from sympy import factorint, isprime

from . import modrank

__all__ = [
    "FieldError",
    "Field",
    "make_field",
    "HomogPoly",
    "BinaryForm",
    "monomials",
    "binary_resultant",
    "poly_restrict_to_line",
    "restrict_to_span",
    "rref",
    "rank",
    "nullspace",
    "rank_and_nullspace",
    "kernel_vector",
    "det",
    "poly_det",
]

_TABLE_LIMIT = 1024


class FieldError(ValueError):
    pass


# ---------------------------------------------------------------------------
# univariate helpers over F_p (coefficient lists, low degree first)


def _ptrim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, m, p):
    a = _ptrim(a)
    m = _ptrim(m)
    inv = pow(m[-1], -1, p)
    while len(a) >= len(m):
        c = a[-1] * inv % p
        shift = len(a) - len(m)
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        a = _ptrim(a)
    return a


def _pmulmod(a, b, m, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _pmod(out, m, p)


def _pgcd(a, b, p):
    a, b = _ptrim(a), _ptrim(b)
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Monic ``modulus`` (low degree first) irreducible over F_p.

    No roots, and ``gcd(f, x^(p^k) - x) = 1`` for every ``k <= e/2``.
    """
    f = _ptrim([c % p for c in modulus])
    e = len(f) - 1
    if e < 1:
        return False
    if e == 1:
        return True
    for r in range(p):
        if sum(c * pow(r, i, p) for i, c in enumerate(f)) % p == 0:
            return False
    xk = [0, 1]
    for _ in range(e // 2):
        # x^(p^k) mod f by repeated p-th powering
        base, acc, n = xk, [1], p
        while n:
            if n & 1:
                acc = _pmulmod(acc, base, f, p)
            base = _pmulmod(base, base, f, p)
            n >>= 1
        xk = acc
        diff = list(xk) + [0] * max(0, 2 - len(xk))
        diff[1] = (diff[1] - 1) % p
        if len(_pgcd(f, diff, p)) > 1:
            return False
    return True


def default_modulus(p: int, e: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree e (base-p scan)."""
    for n in range(p**e):
        coeffs = [(n // p**i) % p for i in range(e)] + [1]
        if is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise FieldError(f"no irreducible polynomial of degree {e} over F_{p}")  # unreachable


# ---------------------------------------------------------------------------
# fields


class Field:
    """Q, a prime field F_p, or an extension F_p[x]/(modulus)."""

    def __init__(self, p: int = 0, e: int = 1, modulus: Sequence[int] | None = None):
        if p == 0:
            self.kind = "Q"
            self.p, self.e, self.modulus, self.q = 0, 1, None, None
        else:
            if not isprime(p):
                raise FieldError(f"{p} is not prime")
            if e < 1:
                raise FieldError("extension degree must be >= 1")
            self.p, self.e, self.q = p, e, p**e
            if e == 1:
                self.kind, self.modulus = "prime", None
            else:
                self.kind = "ext"
                if modulus is None:
                    modulus = default_modulus(p, e)
                modulus = tuple(int(c) % p for c in modulus)
                if len(modulus) == e:
                    modulus = modulus + (1,)
                if len(modulus) != e + 1 or modulus[-1] != 1:
                    raise FieldError("modulus must be monic of degree e")
                if not is_irreducible(modulus, p):
                    raise FieldError(f"modulus {modulus} is reducible over F_{p}")
                self.modulus = modulus
                self._build_tables()
        self._key = (self.p, self.e, self.modulus)
        self._hash = hash(self._key)
        self.zero = Fraction(0) if self.kind == "Q" else 0
        self.one = Fraction(1) if self.kind == "Q" else 1

    # -- identity
    def __eq__(self, other):
        return self is other or (isinstance(other, Field) and self._key == other._key)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Field({self.spec})"

    @property
    def spec(self) -> str:
        if self.kind == "Q":
            return "Q"
        if self.kind == "prime":
            return f"F{self.p}"
        if self.modulus == default_modulus(self.p, self.e):
            return f"F{self.p}^{self.e}"
        return f"F{self.p}^{self.e}:" + ",".join(map(str, self.modulus))

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def cardinality(self):
        return "infinite" if self.q is None else self.q

    @property
    def is_finite(self) -> bool:
        return self.q is not None

    # -- extension tables
    def _vec(self, code):
        p = self.p
        return [(code // p**i) % p for i in range(self.e)]

    def _code(self, vec):
        return sum(int(c) * self.p**i for i, c in enumerate(vec))

    def _build_tables(self):
        p, e, q = self.p, self.e, self.q
        mod = list(self.modulus)

        def vmul(a, b):
            r = _pmulmod(_ptrim(a), _ptrim(b), mod, p)
            return r + [0] * (e - len(r))

        order = q - 1
        factors = list(factorint(order))
        for g in range(2, q):
            gv = self._vec(g)
            ok = True
            for f in factors:
                # g^(order/f) != 1
                n, acc, base = order // f, [1] + [0] * (e - 1), gv
                while n:
                    if n & 1:
                        acc = vmul(acc, base)
                    base = vmul(base, base)
                    n >>= 1
                if self._code(acc) == 1:
                    ok = False
                    break
            if ok:
                break
        exp = [0] * (2 * order)
        log = [0] * q
        cur = [1] + [0] * (e - 1)
        for k in range(order):
            c = self._code(cur)
            exp[k] = exp[k + order] = c
            log[c] = k
            cur = vmul(cur, gv)
        self._exp, self._log, self._order = exp, log, order
        self._neg = [self._code([(-c) % p for c in self._vec(a)]) for a in range(q)]
        if q <= _TABLE_LIMIT:
            vecs = [self._vec(a) for a in range(q)]
            self._addt = [
                [self._code([(x + y) % p for x, y in zip(vecs[a], vecs[b])]) for b in range(q)]
                for a in range(q)
            ]
        else:
            self._addt = None

    # -- arithmetic
    def add(self, a, b):
        k = self.kind
        if k == "Q":
            return a + b
        if k == "prime":
            return (a + b) % self.p
        if self._addt is not None:
            return self._addt[a][b]
        p = self.p
        return self._code([(x + y) % p for x, y in zip(self._vec(a), self._vec(b))])

    def neg(self, a):
        k = self.kind
        if k == "Q":
            return -a
        if k == "prime":
            return (-a) % self.p
        return self._neg[a]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        k = self.kind
        if k == "Q":
            return a * b
        if k == "prime":
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        k = self.kind
        if k == "Q":
            return 1 / a
        if k == "prime":
            return pow(a, -1, self.p)
        return self._exp[(self._order - self._log[a]) % self._order]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n: int):
        if n < 0:
            return self.pow(self.inv(a), -n)
        k = self.kind
        if k == "Q":
            return a**n
        if k == "prime":
            return pow(a, n, self.p)
        if n == 0:
            return 1
        if a == 0:
            return 0
        return self._exp[(self._log[a] * n) % self._order]

    def frobenius(self, a):
        """``a -> a^p`` (identity on Q and prime fields)."""
        if self.kind == "ext":
            return self.pow(a, self.p)
        return a

    def from_int(self, n: int):
        if self.kind == "Q":
            return Fraction(n)
        return int(n) % self.p

    def from_rational(self, x):
        x = Fraction(x)
        if self.kind == "Q":
            return x
        if x.denominator % self.p == 0:
            raise FieldError(f"{x} has no image in {self.spec}")
        return self.div(self.from_int(x.numerator), self.from_int(x.denominator))

    def elements(self) -> range:
        if self.q is None:
            raise FieldError("Q has no finite element list")
        return range(self.q)

    def sort_key(self, a):
        return a

    # -- text
    def fmt(self, a) -> str:
        if self.kind == "Q":
            return str(a)
        if self.kind == "prime":
            return str(a)
        return "[" + ",".join(map(str, self._vec(a))) + "]"

    def parse(self, s: str):
        s = s.strip()
        if self.kind == "Q":
            return Fraction(s)
        if self.kind == "prime":
            return self.from_rational(Fraction(s))
        if s.startswith("["):
            vec = [int(t) % self.p for t in s[1:-1].split(",") if t.strip()]
            if len(vec) > self.e:
                raise FieldError(f"too many coefficients in {s!r}")
            return self._code(vec)
        return self.from_rational(Fraction(s))


_SPEC = re.compile(r"^F(\d+)(?:\^(\d+))?(?::([\d,\s]+))?$")


def make_field(spec: str) -> Field:
    """Parse ``Q``, ``F<p>``, ``F<p>^<e>`` or ``F<p>^<e>:c0,c1,...`` (modulus low->high)."""
    spec = spec.strip()
    if spec in ("Q", "QQ"):
        return Field(0)
    m = _SPEC.match(spec)
    if not m:
        raise FieldError(f"bad field spec {spec!r}")
    p = int(m.group(1))
    e = int(m.group(2)) if m.group(2) is not None else 1
    modulus = None
    if m.group(3):
        if e == 1:
            raise FieldError("modulus given for a prime field")
        modulus = [int(t) for t in m.group(3).split(",") if t.strip()]
    return Field(p, e, modulus)


# ---------------------------------------------------------------------------
# monomials and homogeneous polynomials


@lru_cache(maxsize=None)
def monomials(nvars: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """Exponent vectors of the given degree, graded-lex descending (x0 > x1 > ...)."""
    out = []
    for cut in itertools.combinations(range(degree + nvars - 1), nvars - 1):
        prev, exps = -1, []
        for c in cut + (degree + nvars - 1,):
            exps.append(c - prev - 1)
            prev = c
        out.append(tuple(exps))
    out.sort(reverse=True)
    return tuple(out)


def _exp_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


class HomogPoly:
    """Sparse homogeneous polynomial; ``terms`` maps exponent tuples to nonzero coefficients.

    Treat instances as immutable.
    """

    __slots__ = ("field", "nvars", "degree", "terms")

    def __init__(self, field: Field, nvars: int, degree: int, terms=None):
        self.field = field
        self.nvars = nvars
        self.degree = degree
        clean = {}
        if terms:
            zero = field.zero
            for ex, c in terms.items():
                if c != zero:
                    ex = tuple(ex)
                    if len(ex) != nvars or sum(ex) != degree:
                        raise ValueError(f"exponent {ex} does not match degree {degree}")
                    clean[ex] = c
        self.terms = clean

    # -- constructors
    @classmethod
    def zero(cls, field, nvars, degree):
        return cls(field, nvars, degree)

    @classmethod
    def monomial(cls, field, ex, coeff=None):
        return cls(field, len(ex), sum(ex), {tuple(ex): field.one if coeff is None else coeff})

    @classmethod
    def linear(cls, field, coeffs):
        n = len(coeffs)
        return cls(field, n, 1, {tuple(int(i == j) for j in range(n)): c for i, c in enumerate(coeffs)})

    @classmethod
    def from_ints(cls, field, terms: dict):
        nvars = len(next(iter(terms)))
        degree = sum(next(iter(terms)))
        return cls(field, nvars, degree, {ex: field.from_rational(c) for ex, c in terms.items()})

    # -- basics
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, HomogPoly):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return self.field == other.field
        return (
            self.field == other.field
            and self.nvars == other.nvars
            and self.degree == other.degree
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.field, self.nvars, self.degree, frozenset(self.terms.items())))

    def __repr__(self):
        return f"HomogPoly({self.field.spec}, deg={self.degree}, {len(self.terms)} terms)"

    def sorted_terms(self):
        return sorted(self.terms.items(), reverse=True)

    def leading(self):
        ex = max(self.terms)
        return ex, self.terms[ex]

    def coeff(self, ex):
        return self.terms.get(tuple(ex), self.field.zero)

    def _check(self, other):
        if self.field != other.field:
            raise FieldError("field mismatch")
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")

    # -- arithmetic
    def __add__(self, other):
        self._check(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.degree != other.degree:
            raise ValueError("adding forms of different degree")
        F = self.field
        out = dict(self.terms)
        for ex, c in other.terms.items():
            out[ex] = F.add(out[ex], c) if ex in out else c
        return HomogPoly(F, self.nvars, self.degree, out)

    def __neg__(self):
        F = self.field
        return HomogPoly(F, self.nvars, self.degree, {ex: F.neg(c) for ex, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        F = self.field
        if c == F.zero:
            return HomogPoly(F, self.nvars, self.degree)
        return HomogPoly(F, self.nvars, self.degree, {ex: F.mul(v, c) for ex, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, HomogPoly):
            return NotImplemented
        self._check(other)
        F = self.field
        deg = self.degree + other.degree
        if self.is_zero() or other.is_zero():
            return HomogPoly(F, self.nvars, deg)
        out: dict = {}
        add, mul = F.add, F.mul
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                ex = _exp_add(ea, eb)
                v = mul(ca, cb)
                out[ex] = add(out[ex], v) if ex in out else v
        return HomogPoly(F, self.nvars, deg, out)

    def __pow__(self, n: int):
        result = HomogPoly.monomial(self.field, (0,) * self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def evaluate(self, point: Sequence):
        F = self.field
        if len(point) != self.nvars:
            raise ValueError("point has wrong length")
        acc = F.zero
        for ex, c in self.terms.items():
            v = c
            for x, k in zip(point, ex):
                if k:
                    v = F.mul(v, F.pow(x, k))
            acc = F.add(acc, v)
        return acc

    def partial(self, i: int) -> "HomogPoly":
        F = self.field
        out = {}
        for ex, c in self.terms.items():
            k = ex[i]
            if k:
                v = F.mul(c, F.from_int(k))
                if v != F.zero:
                    nex = ex[:i] + (k - 1,) + ex[i + 1 :]
                    out[nex] = v
        return HomogPoly(F, self.nvars, max(self.degree - 1, 0), out)

    def hasse(self, alpha: Sequence[int]) -> "HomogPoly":
        """Coefficient of ``y^alpha`` in ``f(x + y)``; equals ``d^alpha f / alpha!`` in char 0."""
        F = self.field
        alpha = tuple(alpha)
        out = {}
        for ex, c in self.terms.items():
            if all(e >= a for e, a in zip(ex, alpha)):
                mult = prod(comb(e, a) for e, a in zip(ex, alpha))
                v = F.mul(c, F.from_int(mult))
                if v != F.zero:
                    out[tuple(e - a for e, a in zip(ex, alpha))] = v
        return HomogPoly(F, self.nvars, self.degree - sum(alpha), out)

    def substitute(self, forms: Sequence["HomogPoly"]) -> "HomogPoly":
        """``f(forms[0], ..., forms[v-1])`` for forms of a common degree."""
        F = self.field
        k = forms[0].nvars
        deg = self.degree * forms[0].degree
        acc = HomogPoly(F, k, deg)
        cache: dict = {}

        def power(j, e):
            key = (j, e)
            if key not in cache:
                cache[key] = forms[j] ** e
            return cache[key]

        for ex, c in self.terms.items():
            term = HomogPoly.monomial(F, (0,) * k, c)
            for j, e in enumerate(ex):
                if e:
                    term = term * power(j, e)
            acc = acc + term
        return acc

    def divmod(self, g: "HomogPoly"):
        """Division by one homogeneous divisor, graded-lex order; returns (quotient, remainder)."""
        self._check(g)
        if g.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        F = self.field
        qdeg = self.degree - g.degree
        if qdeg < 0:
            return HomogPoly(F, self.nvars, 0), self
        gl, gc = g.leading()
        ginv = F.inv(gc)
        work = dict(self.terms)
        quot: dict = {}
        rem: dict = {}
        gterms = list(g.terms.items())
        while work:
            ex = max(work)
            c = work.pop(ex)
            if all(a >= b for a, b in zip(ex, gl)):
                qex = tuple(a - b for a, b in zip(ex, gl))
                qc = F.mul(c, ginv)
                quot[qex] = qc
                for gex, gcoef in gterms:
                    if gex == gl:
                        continue
                    tex = _exp_add(qex, gex)
                    v = F.sub(work.get(tex, F.zero), F.mul(qc, gcoef))
                    if v == F.zero:
                        work.pop(tex, None)
                    else:
                        work[tex] = v
            else:
                rem[ex] = c
        return (
            HomogPoly(F, self.nvars, qdeg, quot),
            HomogPoly(F, self.nvars, self.degree, rem),
        )

    def divides(self, other: "HomogPoly") -> bool:
        """True iff self divides other."""
        if other.is_zero():
            return True
        if other.degree < self.degree:
            return False
        return other.divmod(self)[1].is_zero()

    def normalized(self) -> "HomogPoly":
        """Scale so the graded-lex-least monomial present has coefficient 1."""
        if self.is_zero():
            return self
        ex = min(self.terms)
        return self.scale(self.field.inv(self.terms[ex]))

    def coefficient_vector(self):
        return [self.coeff(ex) for ex in monomials(self.nvars, self.degree)]

    @classmethod
    def from_vector(cls, field, nvars, degree, vec):
        return cls(field, nvars, degree, dict(zip(monomials(nvars, degree), vec)))

    def map_coefficients(self, field: Field, fn) -> "HomogPoly":
        return HomogPoly(field, self.nvars, self.degree, {ex: fn(c) for ex, c in self.terms.items()})


# ---------------------------------------------------------------------------
# binary forms


@dataclass(frozen=True)
class BinaryForm:
    """``sum_k coeffs[k] * s^(d-k) * t^k``."""

    field: Field
    degree: int
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.degree + 1:
            raise ValueError("binary form needs exactly degree+1 coefficients")

    @classmethod
    def from_ints(cls, field, coeffs):
        return cls(field, len(coeffs) - 1, tuple(field.from_rational(c) for c in coeffs))

    def is_zero(self) -> bool:
        return all(c == self.field.zero for c in self.coeffs)

    def evaluate(self, s, t):
        F = self.field
        d = self.degree
        acc = F.zero
        for k, c in enumerate(self.coeffs):
            if c != F.zero:
                acc = F.add(acc, F.mul(c, F.mul(F.pow(s, d - k), F.pow(t, k))))
        return acc

    def __mul__(self, other):
        F = self.field
        out = [F.zero] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if a != F.zero:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = F.add(out[i + j], F.mul(a, b))
        return BinaryForm(F, self.degree + other.degree, tuple(out))

    def divide_linear(self, s0, t0):
        """Divide by ``t0*s - s0*t`` (vanishes at (s0:t0)); returns quotient or None if not exact."""
        F = self.field
        d = self.degree
        if d == 0:
            return None
        # divide polynomial in (s,t) by linear form a*s + b*t with a=t0, b=-s0
        a, b = t0, F.neg(s0)
        c = list(self.coeffs)
        q = [F.zero] * d
        if a != F.zero:
            ainv = F.inv(a)
            for k in range(d):
                q[k] = F.mul(c[k], ainv)
                c[k] = F.zero
                c[k + 1] = F.sub(c[k + 1], F.mul(q[k], b))
            if c[d] != F.zero:
                return None
        else:
            binv = F.inv(b)
            for k in range(d, 0, -1):
                q[k - 1] = F.mul(c[k], binv)
                c[k] = F.zero
                c[k - 1] = F.sub(c[k - 1], F.mul(q[k - 1], a))
            if c[0] != F.zero:
                return None
        return BinaryForm(F, d - 1, tuple(q))

    def roots(self):
        """Field-rational roots (s:t) with multiplicities, in deterministic order."""
        if self.is_zero():
            raise ValueError("zero form has every point as a root")
        F = self.field
        if F.is_finite:
            cands = [(F.one, t) for t in F.elements()] + [(F.zero, F.one)]
        else:
            cands = _rational_root_candidates(self)
        out = []
        for s0, t0 in cands:
            mult, g = 0, self
            while g.degree > 0 and g.evaluate(s0, t0) == F.zero:
                g = g.divide_linear(s0, t0)
                mult += 1
            if mult:
                out.append(((s0, t0), mult))
        return out


def _rational_root_candidates(form: BinaryForm):
    """Candidate roots of a binary form over Q: (0:1) plus (1:t) for rational-root-theorem t."""
    from sympy import divisors

    coeffs = list(form.coeffs)
    cands = [(Fraction(0), Fraction(1))]
    # g(t) = form(1, t) = sum coeffs[k] t^k
    den = 1
    for c in coeffs:
        den = den * c.denominator // _gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    while ints and ints[-1] == 0:
        ints.pop()
    while ints and ints[0] == 0:
        ints.pop(0)
        if (Fraction(1), Fraction(0)) not in cands:
            cands.append((Fraction(1), Fraction(0)))
    if len(ints) >= 2:
        seen = set()
        for a in divisors(abs(ints[0])):
            for b in divisors(abs(ints[-1])):
                for sgn in (1, -1):
                    t = Fraction(sgn * a, b)
                    if t not in seen:
                        seen.add(t)
                        cands.append((Fraction(1), t))
    if (Fraction(1), Fraction(0)) not in cands:
        cands.append((Fraction(1), Fraction(0)))
    return cands


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def sylvester(B: Sequence, C: Sequence, zero):
    """Sylvester matrix of two binary forms given as coefficient lists (s^d first)."""
    db, dc = len(B) - 1, len(C) - 1
    n = db + dc
    rows = []
    for i in range(dc):
        rows.append([zero] * i + list(B) + [zero] * (n - db - 1 - i))
    for i in range(db):
        rows.append([zero] * i + list(C) + [zero] * (n - dc - 1 - i))
    return rows


def binary_resultant(B: BinaryForm, C: BinaryForm):
    """5x5 Sylvester determinant of a binary quadratic and a binary cubic."""
    if B.degree != 2 or C.degree != 3:
        raise ValueError("binary_resultant expects degrees (2, 3)")
    if B.field != C.field:
        raise FieldError("field mismatch")
    F = B.field
    return det(sylvester(B.coeffs, C.coeffs, F.zero), F)


# ---------------------------------------------------------------------------
# linear algebra


def _rref_prime(rows, p):
    rows = [[x % p for x in r] for r in rows]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        pr = [x * inv % p for x in rows[r]]
        rows[r] = pr
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    ri = rows[i]
                    rows[i] = [(x - f * y) % p for x, y in zip(ri, pr)]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def _rref_generic(rows, F):
    rows = [list(r) for r in rows]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    zero = F.zero
    add, mul, neg, inv = F.add, F.mul, F.neg, F.inv
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c] != zero), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        iv = inv(rows[r][c])
        pr = [mul(x, iv) for x in rows[r]]
        rows[r] = pr
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f != zero:
                    nf = neg(f)
                    rows[i] = [add(x, mul(nf, y)) if y != zero else x for x, y in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def _check_rect(M):
    if M and any(len(r) != len(M[0]) for r in M):
        raise ValueError("ragged matrix rows")


def rref(M: Sequence[Sequence], field: Field):
    """Reduced row echelon form: (nonzero rows, pivot columns); pivots normalized to 1."""
    _check_rect(M)
    if not M:
        return [], []
    if field.kind == "prime":
        return _rref_prime(M, field.p)
    return _rref_generic(M, field)


def _integer_rows(M):
    out = []
    for row in M:
        den = 1
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
        out.append([int(x * den) for x in row])
    return out


def _rank_bareiss(M) -> int:
    """Rank of an integer matrix by fraction-free elimination."""
    A = [list(r) for r in M if any(r)]
    if not A:
        return 0
    nr, nc = len(A), len(A[0])
    r, prev = 0, 1
    for c in range(nc):
        piv = next((i for i in range(r, nr) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        p = A[r][c]
        for i in range(r + 1, nr):
            a = A[i][c]
            Ai, Ar = A[i], A[r]
            A[i] = [(p * Ai[j] - a * Ar[j]) // prev for j in range(nc)]
        prev = p
        r += 1
        if r == nr:
            break
    return r


# below this many entries the pure-Python eliminations win
_SMALL = 4000


def rank(M, field: Field) -> int:
    _check_rect(M)
    if not M:
        return 0
    big = len(M) * len(M[0]) > _SMALL
    if field.kind == "Q":
        rows = _integer_rows(M)
        return modrank.rank_integer(rows) if big else _rank_bareiss(rows)
    if big and modrank.supports(field):
        return modrank.rank_finite(M, field)
    return len(rref(M, field)[1])


def nullspace(M, field: Field, ncols: int | None = None):
    """Basis of {v : M v = 0}, one vector per free column (ascending), free entry 1."""
    _check_rect(M)
    if ncols is None:
        if not M:
            raise ValueError("ncols required for an empty matrix")
        ncols = len(M[0])
    rows, pivots = rref(M, field) if M else ([], [])
    F = field
    pivset = set(pivots)
    basis = []
    for fcol in range(ncols):
        if fcol in pivset:
            continue
        v = [F.zero] * ncols
        v[fcol] = F.one
        for row, pc in zip(rows, pivots):
            if row[fcol] != F.zero:
                v[pc] = F.neg(row[fcol])
        basis.append(v)
    return basis


def kernel_vector(M, field: Field, ncols: int):
    """The first vector of ``nullspace(M)`` (up to the rank profile), or None if the kernel is zero."""
    if M and field.kind == "Q" and len(M) * ncols > _SMALL:
        _check_rect(M)
        status, out = modrank.kernel_vector_integer(_integer_rows(M), ncols)
        if status == "full":
            return None
        if status == "ok":
            nums, den = out
            return [Fraction(x, den) for x in nums]
    ns = nullspace(M, field, ncols) if M else [[field.one] + [field.zero] * (ncols - 1)]
    return ns[0] if ns else None


def rank_and_nullspace(M, field: Field, ncols: int | None = None):
    ns = nullspace(M, field, ncols)
    n = ncols if ncols is not None else len(M[0])
    return n - len(ns), ns


def det(M, field: Field):
    F = field
    n = len(M)
    if any(len(r) != n for r in M):
        raise ValueError("det needs a square matrix")
    a = [list(r) for r in M]
    result = F.one
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != F.zero), None)
        if piv is None:
            return F.zero
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            result = F.neg(result)
        result = F.mul(result, a[c][c])
        iv = F.inv(a[c][c])
        for i in range(c + 1, n):
            f = F.mul(a[i][c], iv)
            if f != F.zero:
                nf = F.neg(f)
                a[i] = [F.add(x, F.mul(nf, y)) for x, y in zip(a[i], a[c])]
    return result


def poly_det(M: Sequence[Sequence], zero_poly: HomogPoly | None = None):
    """Determinant of a square matrix of HomogPoly (None = 0) by memoized Laplace expansion."""
    n = len(M)
    memo: dict = {}

    def rec(row, cols):
        if row == n:
            return "one"
        key = (row, cols)
        if key in memo:
            return memo[key]
        acc = None
        sign_pos = 0
        for j in range(n):
            if not (cols >> j) & 1:
                continue
            entry = M[row][j]
            if entry is not None and not entry.is_zero():
                sub = rec(row + 1, cols & ~(1 << j))
                if sub is not None:
                    term = entry if sub == "one" else entry * sub
                    if sign_pos % 2:
                        term = -term
                    acc = term if acc is None else acc + term
            sign_pos += 1
        if acc is not None and acc.is_zero():
            acc = None
        memo[key] = acc
        return acc

    out = rec(0, (1 << n) - 1)
    if out is None or out == "one":
        return zero_poly
    return out


def _bf_mul(F, a, b):
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x != F.zero:
            for j, y in enumerate(b):
                if y != F.zero:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
    return out


def restrict_to_span(f: HomogPoly, P: Sequence, Q: Sequence) -> BinaryForm:
    """``f(s*P + t*Q)`` as a binary form of degree ``deg f``."""
    F = f.field
    d = f.degree
    lin = [[P[j], Q[j]] for j in range(f.nvars)]
    powers: dict = {}

    def power(j, e):
        key = (j, e)
        if key not in powers:
            powers[key] = [F.one] if e == 0 else _bf_mul(F, power(j, e - 1), lin[j])
        return powers[key]

    acc = [F.zero] * (d + 1)
    for ex, c in f.terms.items():
        term = [c]
        for j, e in enumerate(ex):
            if e:
                term = _bf_mul(F, term, power(j, e))
        for k, v in enumerate(term):
            if v != F.zero:
                acc[k] = F.add(acc[k], v)
    return BinaryForm(F, d, tuple(acc))


def poly_restrict_to_line(f: HomogPoly, L) -> BinaryForm:
    """Restriction of a quaternary form to a line, parametrized by the line's two canonical points."""
    if f.field != L.field:
        raise FieldError("field mismatch")
    P, Q = L.span
    return restrict_to_span(f, P, Q)
