from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from regdyn.polyalg import (MultiPoly, PolyParseError, homogeneous_top,
                            homogenize, parse_poly, resultant)


def test_parse_basic():
    p = parse_poly("z^2 + 3*w - 1/2")
    assert p.coeffs == {(2, 0): F(1), (0, 1): F(3), (0, 0): F(-1, 2)}


def test_parse_nested():
    p = parse_poly("(z + w)^2 - z^2 - w^2")
    assert p.coeffs == {(1, 1): F(2)}


def test_parse_error_position():
    with pytest.raises(PolyParseError):
        parse_poly("z^2 + + w")
    with pytest.raises(PolyParseError):
        parse_poly("z^")


def test_roundtrip_printer():
    for s in ["z^2 - w", "z*w + 1", "2/3*z - w^3"]:
        p = parse_poly(s)
        assert parse_poly(p.to_string()).coeffs == p.coeffs


coeffs = st.fractions(min_value=-50, max_value=50, max_denominator=10)
polys = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3)), coeffs, max_size=5
).map(MultiPoly)


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a + b).coeffs == (b + a).coeffs
    assert ((a + b) + c).coeffs == (a + (b + c)).coeffs
    assert (a * (b + c)).coeffs == (a * b + a * c).coeffs


@given(polys, polys)
def test_eval_hom(a, b):
    z, w = F(2, 3), F(-5, 7)
    assert (a * b).eval(z, w) == a.eval(z, w) * b.eval(z, w)
    assert (a + b).eval(z, w) == a.eval(z, w) + b.eval(z, w)


def test_resultant_oracles():
    # Res_w(w - z^2, w - z) = z^2 - z
    r = resultant(parse_poly("w - z^2"), parse_poly("w - z"), 1)
    assert r.coeffs == {(2, 0): F(1), (1, 0): F(-1)}
    # Res_w(w^2 + 1, w + 1) = 2
    r = resultant(parse_poly("w^2 + 1"), parse_poly("w + 1"), 1)
    assert r.coeffs == {(0, 0): F(2)}


def test_resultant_shared_root_vanishes():
    r = resultant(parse_poly("(w - z)*(w + 1)"), parse_poly("(w - z)*(w - 2)"), 1)
    assert r.is_zero()


def test_homogenize_dehomogenize():
    p = parse_poly("z^2 + w - 1")
    h = homogenize(p, 2)
    assert h.eval(1, F(3), F(4)) == p.eval(F(3), F(4))
    assert h.dehomogenize().coeffs == p.coeffs


def test_homogeneous_top():
    assert homogeneous_top(parse_poly("z^2 + z*w + w")).coeffs == \
        {(2, 0): F(1), (1, 1): F(1)}


def test_compose():
    p = parse_poly("z^2 + w")
    q = p.compose(parse_poly("w"), parse_poly("z"))
    assert q.coeffs == {(0, 2): F(1), (1, 0): F(1)}
