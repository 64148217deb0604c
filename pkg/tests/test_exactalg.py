import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from incidence3d.exactalg import (
    BinaryForm,
    FieldError,
    HomogPoly,
    binary_resultant,
    default_modulus,
    det,
    is_irreducible,
    make_field,
    monomials,
    nullspace,
    poly_det,
    poly_restrict_to_line,
    rank,
    rank_and_nullspace,
    restrict_to_span,
    rref,
)
from incidence3d.projgeom import line_through, point
from incidence3d.rng import LCG
from strategies import FIELDS, elements, matrices, nonzero, points, polys

Q = make_field("Q")
F7 = make_field("F7")

X = sympy.Symbol("x")


# --- fields -----------------------------------------------------------------


def test_make_field_prime():
    F = make_field("F7")
    assert F.kind == "prime" and F.cardinality == 7 and F.characteristic == 7


def test_make_field_f4_modulus():
    # oracle: of the four monic quadratics over F2 only x^2+x+1 has no root
    candidates = [(a, b, 1) for b in range(2) for a in range(2)]
    rootless = [c for c in candidates if all((c[0] + c[1] * r + r * r) % 2 for r in range(2))]
    assert rootless == [(1, 1, 1)]
    assert make_field("F2^2").modulus == (1, 1, 1)


@pytest.mark.parametrize("spec", ["F4", "F1", "F2^0", "F2^2:1,0,1", "G7", "F9^2"])
def test_make_field_errors(spec):
    with pytest.raises(FieldError):
        make_field(spec)


def _first_rootless(p, e):
    # for e <= 3, irreducible <=> no root; scan in base-p order
    for n in range(p**e):
        c = [(n // p**i) % p for i in range(e)] + [1]
        if all(sum(ci * r**i for i, ci in enumerate(c)) % p for r in range(p)):
            return tuple(c)


@pytest.mark.parametrize("p,e", [(2, 2), (2, 3), (3, 2), (3, 3), (5, 2), (7, 2), (7, 3)])
def test_default_modulus_is_first_irreducible(p, e):
    assert default_modulus(p, e) == _first_rootless(p, e)


@pytest.mark.parametrize("p,e", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (3, 4), (5, 2)])
def test_irreducibility_matches_sympy(p, e):
    for n in range(p**e):
        c = [(n // p**i) % p for i in range(e)] + [1]
        expected = sympy.Poly(list(reversed(c)), X, modulus=p).is_irreducible
        assert is_irreducible(c, p) == expected, c


@pytest.mark.parametrize("spec", ["F2^2", "F3^2", "F2^3", "F5^2", "F3^3"])
def test_extension_multiplication_matches_polynomial_remainder(spec):
    F = make_field(spec)
    p, e = F.p, F.e
    mod = sympy.Poly(list(reversed(F.modulus)), X, modulus=p)

    def as_poly(code):
        return sympy.Poly(list(reversed([(code // p**i) % p for i in range(e)])), X, modulus=p)

    def as_code(poly):
        cs = [int(c) % p for c in reversed(poly.all_coeffs())]
        return sum(c * p**i for i, c in enumerate(cs))

    rng = LCG(3)
    for _ in range(200):
        a, b = rng.below(F.q), rng.below(F.q)
        assert F.mul(a, b) == as_code((as_poly(a) * as_poly(b)).rem(mod))
        assert F.add(a, b) == as_code(as_poly(a) + as_poly(b))


@settings(max_examples=60)
@given(st.sampled_from(sorted(FIELDS)), st.data())
def test_field_axioms(spec, data):
    F = FIELDS[spec]
    a, b, c = (data.draw(elements(F)) for _ in range(3))
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == F.zero
    assert F.sub(F.add(a, b), b) == a
    if a != F.zero:
        assert F.mul(a, F.inv(a)) == F.one
        assert F.div(F.mul(a, b), a) == b


@settings(max_examples=40)
@given(st.sampled_from(["F2^2", "F3^2", "F2^3", "F5^2"]), st.data())
def test_frobenius_is_a_field_automorphism(spec, data):
    F = FIELDS[spec]
    a, b = data.draw(elements(F)), data.draw(elements(F))
    fr = F.frobenius
    assert fr(F.add(a, b)) == F.add(fr(a), fr(b))
    assert fr(F.mul(a, b)) == F.mul(fr(a), fr(b))
    assert F.pow(a, F.q) == a


def test_scalar_text_roundtrip():
    F = make_field("F3^2")
    for a in F.elements():
        assert F.parse(F.fmt(a)) == a
    assert F.fmt(F.from_int(2)) == "[2,0]"
    assert Q.fmt(Fraction(3, 4)) == "3/4"
    with pytest.raises(FieldError):
        F7.from_rational(Fraction(1, 7))


# --- polynomials ------------------------------------------------------------


def test_monomial_count_and_order():
    for d in range(5):
        ms = monomials(4, d)
        assert len(ms) == sympy.binomial(d + 3, 3)
        assert list(ms) == sorted(ms, reverse=True)


@settings(max_examples=50)
@given(st.sampled_from(["Q", "F7", "F2^2"]), st.data())
def test_product_evaluates_as_product(spec, data):
    F = FIELDS[spec]
    f = data.draw(polys(F))
    g = data.draw(polys(F))
    x = [data.draw(elements(F)) for _ in range(4)]
    assert (f * g).evaluate(x) == F.mul(f.evaluate(x), g.evaluate(x))
    if f.degree == g.degree:
        assert (f - g).evaluate(x) == F.sub(f.evaluate(x), g.evaluate(x))


@settings(max_examples=40)
@given(st.data())
def test_division_by_factor(data):
    F = F7
    f = data.draw(polys(F, max_degree=2).filter(lambda p: not p.is_zero()))
    g = data.draw(polys(F, max_degree=2))
    q, r = (f * g).divmod(f)
    assert r.is_zero()
    assert q * f == f * g
    # perturb by h not divisible by f: the remainder must be nonzero
    h = data.draw(polys(F, degree=f.degree + g.degree))
    if not f.divides(h):
        assert not (f * g + h).divmod(f)[1].is_zero()


@settings(max_examples=40)
@given(st.data())
def test_divmod_reconstructs(data):
    F = FIELDS[data.draw(st.sampled_from(["Q", "F7", "F3^2"]))]
    g = data.draw(polys(F, max_degree=2).filter(lambda p: not p.is_zero()))
    f = data.draw(polys(F, degree=3))
    q, r = f.divmod(g)
    rebuilt = q * g + r if not q.is_zero() else r
    assert (rebuilt - f).is_zero()


def test_partial_and_hasse():
    f = HomogPoly.from_ints(Q, {(3, 0, 0, 0): 1, (1, 1, 1, 0): 2})
    assert f.partial(0) == HomogPoly.from_ints(Q, {(2, 0, 0, 0): 3, (0, 1, 1, 0): 2})
    # second Hasse derivative in x0 is f_xx / 2
    assert f.hasse((2, 0, 0, 0)) == HomogPoly.from_ints(Q, {(1, 0, 0, 0): 3})


def test_substitute_linear_change():
    f = HomogPoly.from_ints(Q, {(2, 0, 0, 0): 1, (0, 0, 1, 1): -1})
    x = [HomogPoly.linear(Q, [Fraction(int(i == j)) for j in range(4)]) for i in range(4)]
    assert f.substitute(x) == f


# --- restriction to lines -----------------------------------------------------


QUADRIC = HomogPoly.from_ints(Q, {(1, 0, 0, 1): 1, (0, 1, 1, 0): -1})


def test_restrict_examples():
    L = line_through(point(Q, [1, 0, 0, 0]), point(Q, [0, 1, 0, 0]))
    assert poly_restrict_to_line(QUADRIC, L).is_zero()
    L2 = line_through(point(Q, [1, 0, 0, 0]), point(Q, [0, 0, 0, 1]))
    assert poly_restrict_to_line(QUADRIC, L2).coeffs == (0, 1, 0)  # s*t
    f = HomogPoly.from_ints(Q, {(2, 0, 0, 0): 1})
    L3 = line_through(point(Q, [0, 1, 0, 0]), point(Q, [0, 0, 1, 0]))
    assert poly_restrict_to_line(f, L3).is_zero()


def test_restrict_field_mismatch():
    L = line_through(point(F7, [1, 0, 0, 0]), point(F7, [0, 1, 0, 0]))
    with pytest.raises(FieldError):
        poly_restrict_to_line(QUADRIC, L)


@settings(max_examples=60)
@given(st.sampled_from(["Q", "F7", "F3^2"]), st.data())
def test_restriction_commutes_with_evaluation(spec, data):
    F = FIELDS[spec]
    f = data.draw(polys(F))
    P = data.draw(points(F))
    R = data.draw(points(F))
    s0, t0 = data.draw(elements(F)), data.draw(elements(F))
    form = restrict_to_span(f, P.coords, R.coords)
    x = [F.add(F.mul(s0, a), F.mul(t0, b)) for a, b in zip(P.coords, R.coords)]
    assert form.evaluate(s0, t0) == f.evaluate(x)


# --- resultants -----------------------------------------------------------------


def test_resultant_examples():
    B = BinaryForm.from_ints(Q, [1, 0, 0])
    C = BinaryForm.from_ints(Q, [1, 0, 0, 0])
    assert binary_resultant(B, C) == 0
    # (s-t)(s-2t) and (s-t)(s-3t)(s-4t)
    B = BinaryForm.from_ints(Q, [1, -3, 2])
    C = BinaryForm.from_ints(Q, [1, -8, 19, -12])
    assert binary_resultant(B, C) == 0


def test_resultant_against_sympy():
    # s^2 + t^2 and s^3: both leading coefficients are nonzero, so the homogeneous
    # resultant is the univariate one at t = 1
    B = BinaryForm.from_ints(Q, [1, 0, 1])
    C = BinaryForm.from_ints(Q, [1, 0, 0, 0])
    expected = sympy.resultant(X**2 + 1, X**3, X)
    assert expected != 0
    assert binary_resultant(B, C) == expected
    rng = LCG(11)
    for _ in range(30):
        b = [rng.randint(-4, 4) for _ in range(3)]
        c = [rng.randint(-4, 4) for _ in range(4)]
        b[0] = b[0] or 1
        c[0] = c[0] or 1
        pb = sum(k * X ** (2 - i) for i, k in enumerate(b))
        pc = sum(k * X ** (3 - i) for i, k in enumerate(c))
        got = binary_resultant(BinaryForm.from_ints(Q, b), BinaryForm.from_ints(Q, c))
        assert got == sympy.resultant(pb, pc, X)


def test_resultant_wrong_degrees():
    with pytest.raises(ValueError):
        binary_resultant(BinaryForm.from_ints(Q, [1, 0, 0, 0]), BinaryForm.from_ints(Q, [1, 0, 0]))


def test_resultant_split_forms_exhaustive_f5():
    F = make_field("F5")

    def split(lead, roots):
        form = BinaryForm(F, 0, (lead,))
        for r in roots:
            form = form * BinaryForm(F, 1, (1, F.neg(r)))  # s - r t
        return form

    for b in range(1, 5):
        for c in range(1, 5):
            for rs in itertools.combinations_with_replacement(range(5), 2):
                for us in itertools.combinations_with_replacement(range(5), 3):
                    expected = F.mul(F.pow(b, 3), F.pow(c, 2))
                    for r in rs:
                        for u in us:
                            expected = F.mul(expected, F.sub(r, u))
                    assert binary_resultant(split(b, rs), split(c, us)) == expected


# --- linear algebra ---------------------------------------------------------------


def test_rank_nullspace_examples():
    I3 = [[Fraction(int(i == j)) for j in range(3)] for i in range(3)]
    assert rank_and_nullspace(I3, Q) == (3, [])
    Z = [[Fraction(0)] * 5 for _ in range(2)]
    r, ns = rank_and_nullspace(Z, Q)
    assert r == 0 and len(ns) == 5
    r, ns = rank_and_nullspace([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]], Q)
    assert r == 1 and ns == [[Fraction(-2), Fraction(1)]]


def test_ragged_rows_rejected():
    with pytest.raises(ValueError):
        rank([[Fraction(1), Fraction(2)], [Fraction(1)]], Q)


@settings(max_examples=200)
@given(st.sampled_from(["Q", "F2", "F7", "F2^2", "F3^2"]), st.data())
def test_rank_plus_nullity(spec, data):
    F = FIELDS[spec]
    M = data.draw(matrices(F))
    r, ns = rank_and_nullspace(M, F)
    assert r + len(ns) == len(M[0])
    assert r == rank(M, F)
    for v in ns:
        for row in M:
            acc = F.zero
            for a, x in zip(row, v):
                acc = F.add(acc, F.mul(a, x))
            assert acc == F.zero


@settings(max_examples=80)
@given(matrices(Q, 5, 5))
def test_rank_and_det_match_sympy(M):
    assert rank(M, Q) == sympy.Matrix(M).rank()
    assert len(rref(M, Q)[1]) == sympy.Matrix(M).rank()
    n = min(len(M), len(M[0]))
    sq = [row[:n] for row in M[:n]]
    assert det(sq, Q) == sympy.Matrix(sq).det()


def test_poly_det_matches_numeric_det():
    rng = LCG(5)
    for _ in range(10):
        n = rng.randint(1, 4)
        M = [[Fraction(rng.randint(-3, 3)) for _ in range(n)] for _ in range(n)]
        P = [[HomogPoly(Q, 1, 0, {(0,): x}) for x in row] for row in M]
        got = poly_det(P)
        expected = det(M, Q)
        assert (got.evaluate([Fraction(1)]) if got is not None else 0) == expected


def test_binary_form_roots():
    F = make_field("F7")
    form = BinaryForm.from_ints(F, [1, -3, 2])  # (s - t)(s - 2t)
    assert sorted(form.roots()) == [((1, 1), 1), ((1, 4), 1)]  # (1:1) and (1:1/2)
    form = BinaryForm.from_ints(Q, [0, 1, 0])  # s*t
    assert sorted(form.roots()) == [((0, 1), 1), ((1, 0), 1)]
    form = BinaryForm.from_ints(Q, [1, -2, 1])  # (s - t)^2
    assert form.roots() == [((1, 1), 2)]
