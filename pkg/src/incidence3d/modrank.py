"""Vectorized exact rank: finite fields via numpy, Q via certified multi-modular reduction.

Prime fields p < 2^31 reduce with int64 arithmetic (products stay below 2^62).
Extension fields use addition and multiplication tables over the integer codes.
Over Q the rank is the largest rank seen modulo a run of primes; it is certified
once the product of those primes exceeds a Hadamard bound on every minor one
size larger, since such a minor would be divisible by each prime.
"""
from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from sympy import prevprime

PRIME_LIMIT = 1 << 31
TABLE_LIMIT = 1024


def _rank_prime_np(A: np.ndarray, p: int) -> int:
    A = A % p
    nr, nc = A.shape
    r = 0
    for c in range(nc):
        if r == nr:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r, c:] = (A[r, c:] * inv) % p
        below = r + 1 + np.flatnonzero(A[r + 1:, c])
        if below.size:
            A[np.ix_(below, np.arange(c, nc))] = (A[below, c:] - np.outer(A[below, c], A[r, c:])) % p
        r += 1
    return r


@lru_cache(maxsize=8)
def _tables(field):
    q = field.q
    els = range(q)
    add = np.array([[field.add(a, b) for b in els] for a in els], dtype=np.int32)
    mul = np.array([[field.mul(a, b) for b in els] for a in els], dtype=np.int32)
    neg = np.array([field.neg(a) for a in els], dtype=np.int32)
    inv = np.array([0] + [field.inv(a) for a in range(1, q)], dtype=np.int32)
    return add, mul, neg, inv


def _rank_table_np(A: np.ndarray, field) -> int:
    add, mul, neg, inv = _tables(field)
    A = A.astype(np.int32)
    nr, nc = A.shape
    r = 0
    for c in range(nc):
        if r == nr:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r, c:] = mul[inv[A[r, c]], A[r, c:]]
        below = r + 1 + np.flatnonzero(A[r + 1:, c])
        if below.size:
            f = neg[A[below, c]]
            A[np.ix_(below, np.arange(c, nc))] = add[A[below, c:], mul[f[:, None], A[r, c:][None, :]]]
        r += 1
    return r


def supports(field) -> bool:
    if field.kind == "Q":
        return True
    if field.kind == "prime":
        return field.p < PRIME_LIMIT
    return field.q <= TABLE_LIMIT


def rank_finite(M, field) -> int:
    A = np.array(M, dtype=np.int64)
    if A.size == 0:
        return 0
    if field.kind == "prime":
        return _rank_prime_np(A, field.p)
    return _rank_table_np(A, field)


def _hadamard_bits(M_int, size: int) -> float:
    """log2 of a bound on |minor| for every size x size minor."""
    def bound(vectors):
        norms = sorted((sum(x * x for x in v) for v in vectors), reverse=True)[:size]
        return sum(math.log2(n) / 2 for n in norms if n)
    cols = list(zip(*M_int))
    return min(bound(M_int), bound(cols))


def rank_integer(M_int) -> int:
    """Exact rank of an integer matrix (list of lists of Python ints)."""
    rows = [r for r in M_int if any(r)]
    if not rows:
        return 0
    nr, nc = len(rows), len(rows[0])
    full = min(nr, nc)
    obj = np.array(rows, dtype=object)
    best = 0
    covered = 0.0  # log2 of the product of primes used
    target = None
    p = PRIME_LIMIT
    while True:
        p = prevprime(p)
        rp = _rank_prime_np((obj % p).astype(np.int64), p)
        covered += math.log2(p)
        if rp > best:
            best = rp
            if best == full:
                return best
            target = _hadamard_bits(rows, best + 1)
        if covered > target + 1:
            return best


def _rref_prime_np(A: np.ndarray, p: int):
    """Reduced row echelon form mod p: (rows, pivot columns)."""
    A = A % p
    nr, nc = A.shape
    pivots = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r, c:] = (A[r, c:] * pow(int(A[r, c]), -1, p)) % p
        others = np.flatnonzero(A[:, c])
        others = others[others != r]
        if others.size:
            A[np.ix_(others, np.arange(c, nc))] = (A[others, c:] - np.outer(A[others, c], A[r, c:])) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rational_reconstruct(a: int, N: int):
    """n/d with n = a d mod N and |n|, d <= sqrt(N/2), or None."""
    bound = math.isqrt(N // 2)
    r0, r1 = N, a % N
    s0, s1 = 0, 1
    while r1 > bound:
        qt = r0 // r1
        r0, r1 = r1, r0 - qt * r1
        s0, s1 = s1, s0 - qt * s1
    if s1 == 0 or abs(s1) > bound or math.gcd(r1, abs(s1)) != 1:
        return None
    return (r1, s1) if s1 > 0 else (-r1, -s1)


def _inverse_prime_np(B: np.ndarray, p: int):
    n = B.shape[0]
    R, piv = _rref_prime_np(np.hstack([B % p, np.eye(n, dtype=np.int64)]), p)
    if piv[:n] != list(range(n)) or len(piv) < n:
        return None
    return R[:, n:]


DIXON_PRIME = 33554393  # largest prime below 2^25: a 2^25 x 2^25 product summed 2^12 times fits in int64


def _dixon(B_obj: np.ndarray, b: list, check, max_steps: int):
    """Solve B x = b over Q by p-adic lifting; ``check`` maps a candidate (nums, den) to a result or None."""
    p = DIXON_PRIME
    Binv = _inverse_prime_np(np.array(B_obj % p, dtype=np.int64), p)
    if Binv is None:
        return None
    c = np.array(b, dtype=object)
    acc = [0] * len(b)
    pk = 1
    next_try = 1
    for step in range(1, max_steps + 1):
        xi = (Binv @ np.array(c % p, dtype=np.int64)) % p
        xi_obj = xi.astype(object)
        acc = [a + int(x) * pk for a, x in zip(acc, xi)]
        pk *= p
        c = (c - B_obj.dot(xi_obj)) // p
        if step < next_try:
            continue
        next_try = step + 1 + step // 8
        if rational_reconstruct(acc[-1], pk) is None:
            continue
        fracs = [rational_reconstruct(a, pk) for a in acc]
        if any(f is None for f in fracs):
            continue
        den = 1
        for _, d in fracs:
            den = den * d // math.gcd(den, d)
        out = check([n * (den // d) for n, d in fracs], den)
        if out is not None:
            return out
    return None


def kernel_vector_integer(M_int, ncols: int, max_steps: int = 4000):
    """First-free-column kernel vector of an integer matrix over Q.

    Returns ("ok", (numerators, common denominator)) for a vector verified exactly,
    ("full", None) when a prime certifies full column rank, and ("fail", None)
    when lifting did not produce a verified vector.
    """
    rows = [r for r in M_int if any(r)]
    if not rows:
        return "ok", ([1] + [0] * (ncols - 1), 1)
    obj = np.array(rows, dtype=object)
    p = DIXON_PRIME
    for attempt in range(3):
        A = np.array(obj % p, dtype=np.int64)
        _, pivcols = _rref_prime_np(A, p)
        if len(pivcols) == ncols:
            return "full", None
        _, pivrows = _rref_prime_np(np.ascontiguousarray(A.T), p)
        free = next(c for c in range(ncols) if c not in set(pivcols))
        B = obj[np.ix_(pivrows, pivcols)]
        b = [-x for x in obj[pivrows, free]]

        def check(nums, den, pivcols=pivcols, free=free):
            v = [0] * ncols
            v[free] = den
            for c, x in zip(pivcols, nums):
                v[c] = x
            if all(sum(a * x for a, x in zip(row, v) if a and x) == 0 for row in rows):
                return v
            return None

        v = _dixon(B, b, check, max_steps) if len(pivcols) <= 4096 else None
        if v is not None:
            return "ok", (v, v[free])
        p = prevprime(p)  # unlucky rank profile; retry with another prime
    return "fail", None
