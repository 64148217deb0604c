from fractions import Fraction

from hypothesis import given, settings, strategies as st

from incidence3d import modrank
from incidence3d.exactalg import _rank_bareiss, kernel_vector, make_field, nullspace, rank, rref
from incidence3d.rng import LCG


def _low_rank(F, nr, nc, k, rng, span=10**6):
    """nr x nc product of random nr x k and k x nc factors."""
    if F.kind == "Q":
        B = [[rng.randint(-span, span) for _ in range(k)] for _ in range(nr)]
        C = [[rng.randint(-span, span) for _ in range(nc)] for _ in range(k)]
        return [[Fraction(sum(B[i][l] * C[l][j] for l in range(k))) for j in range(nc)] for i in range(nr)]
    B = [[rng.below(F.q) for _ in range(k)] for _ in range(nr)]
    C = [[rng.below(F.q) for _ in range(nc)] for _ in range(k)]
    out = []
    for i in range(nr):
        row = []
        for j in range(nc):
            acc = F.zero
            for l in range(k):
                acc = F.add(acc, F.mul(B[i][l], C[l][j]))
            row.append(acc)
        out.append(row)
    return out


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["F2", "F7", "F101", "F2^2", "F3^2", "F2^3"]), st.integers(0, 10**6),
       st.integers(1, 14), st.integers(1, 14), st.integers(0, 14))
def test_finite_rank_matches_rref(spec, seed, nr, nc, k):
    F = make_field(spec)
    M = _low_rank(F, nr, nc, min(k, nr, nc), LCG(seed))
    assert modrank.rank_finite(M, F) == len(rref(M, F)[1])


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 12), st.integers(1, 12), st.integers(0, 12), st.integers(1, 60))
def test_integer_rank_matches_bareiss(seed, nr, nc, k, digits):
    M = _low_rank(make_field("Q"), nr, nc, min(k, nr, nc), LCG(seed), span=10**digits)
    ints = [[int(x) for x in r] for r in M]
    assert modrank.rank_integer(ints) == _rank_bareiss(ints)


def test_large_rank_paths():
    rng = LCG(5)
    for spec in ("Q", "F7", "F3^2"):
        F = make_field(spec)
        M = _low_rank(F, 60, 90, 37, rng, span=50)
        assert len(M) * len(M[0]) > 4000  # exercises the vectorized path inside rank()
        assert rank(M, F) == 37


def test_kernel_vector_matches_nullspace():
    rng = LCG(11)
    Q = make_field("Q")
    for k in (20, 45, 59):
        M = _low_rank(Q, 50, 60, k, rng, span=30)
        v = kernel_vector(M, Q, 60)
        assert v is not None
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in M)
        assert v == nullspace(M, Q)[0]
    full = _low_rank(Q, 80, 60, 60, rng, span=30)
    assert kernel_vector(full, Q, 60) is None


@settings(max_examples=100)
@given(st.integers(-10**9, 10**9), st.integers(1, 10**9))
def test_rational_reconstruct(n, d):
    x = Fraction(n, d)
    N = 2**127 - 1  # prime, far above 2 * |n| * d
    a = x.numerator * pow(x.denominator, -1, N) % N
    assert modrank.rational_reconstruct(a, N) == (x.numerator, x.denominator)
