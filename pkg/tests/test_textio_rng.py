from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from incidence3d.configzoo import gen_grid, gen_hermitian, gen_random
from incidence3d.exactalg import make_field
from incidence3d.rng import LCG
from incidence3d.textio import (
    format_csv,
    format_json,
    format_kv,
    format_poly,
    parse_point,
    parse_poly,
    read_config,
    read_surface,
    write_config,
)
from strategies import FIELDS, points, polys


@pytest.mark.parametrize("make", [lambda: gen_grid(2), lambda: gen_hermitian(2), lambda: gen_random(5, 7, field="F3^2", seed=4)])
def test_config_roundtrip(make):
    cfg = make().config
    back = read_config(write_config(cfg))
    assert back.field.spec == cfg.field.spec
    assert back.lines == cfg.lines and back.points == cfg.points


def test_read_config_errors():
    with pytest.raises(ValueError):
        read_config("line [1:0:0:0] [0:1:0:0]\n")
    with pytest.raises(ValueError):
        read_config("field Q\nline [1:0:0:0]\n")
    with pytest.raises(ValueError):
        read_config("field Q\nplane [1:0:0:0]\n")
    with pytest.raises(ValueError):
        read_config("field Q\npoint [1:0:0]\n")
    cfg = read_config("# comment\nfield F5\n\npoint [1:2:3:4]  # trailing\n")
    assert cfg.n == 1 and cfg.m == 0


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["Q", "F7", "F2^2", "F3^2"]), st.data())
def test_poly_and_point_roundtrip(spec, data):
    F = FIELDS[spec]
    f = data.draw(polys(F, 4, max_degree=3))
    assert parse_poly(format_poly(f), F) == f
    p = data.draw(points(F))
    assert parse_point(str(p), F) == p


def test_read_surface_header():
    S = read_surface("field F7\nx0^3 + x1^3\n + x2^3 + x3^3\n")
    assert S.field.spec == "F7" and S.degree == 3
    assert read_surface("x0*x3 - x1*x2").field.spec == "Q"


def test_output_formats():
    rec = {"a": 1, "b": True, "c": {"x": 2}, "d": None}
    assert format_kv(rec) == 'a=1\nb=true\nc={"x":2}\nd=none\n'
    assert format_json(rec).startswith("{\n")
    assert format_csv(rec).splitlines()[0] == "a,b,c,d"


# --- rng ------------------------------------------------------------------------


def test_lcg_deterministic():
    a, b = LCG(42), LCG(42)
    assert [a.next64() for _ in range(5)] == [b.next64() for _ in range(5)]
    assert LCG(1).next64() != LCG(2).next64()


@settings(max_examples=50)
@given(st.integers(0, 2**40), st.integers(1, 10**12))
def test_lcg_below_in_range(seed, n):
    r = LCG(seed)
    assert all(0 <= r.below(n) < n for _ in range(5))


def test_lcg_roughly_uniform():
    r = LCG(7)
    counts = Counter(r.below(6) for _ in range(6000))
    assert set(counts) == set(range(6))
    assert all(850 < c < 1150 for c in counts.values())


def test_lcg_element_and_choice():
    r = LCG(3)
    F = make_field("F2^3")
    assert all(0 <= r.element(F) < 8 for _ in range(20))
    Q = make_field("Q")
    assert all(-2 <= r.element(Q, 2) <= 2 for _ in range(20))
    assert r.choice("abc") in "abc"
    with pytest.raises(ValueError):
        r.below(0)
