import random
from fractions import Fraction as F

from regdyn.exactnum import Place
from regdyn.green import (GreenContext, bad_places, green_homog, green_value,
                          nullstellensatz_constant)
from regdyn.intervals import log_of_fraction
from regdyn.maps import make_regular_map

TOL = F(1, 10**9)


def _log(q):
    return log_of_fraction(F(q))


def test_bad_places():
    assert set(bad_places(make_regular_map("z^2", "w^2"))) == set()
    assert set(bad_places(make_regular_map("z^2 + 1/3*w", "w^2"))) == {3}
    assert set(bad_places(make_regular_map("z^2", "1/3*w^2"))) == {3}


def test_nullstellensatz_good_reduction():
    f = make_regular_map("z^2", "w^2")
    for v in [Place.archimedean(), Place.finite(2), Place.finite(97)]:
        C, good = nullstellensatz_constant(f, v)
        if v.is_finite:
            assert (C, good) == (1, True)
        else:
            assert C == 1  # diagonal unit monomial branch


def test_nullstellensatz_bad_place_oracle():
    # cofactor computation for (z^2, w^2/3) at p=3 gives C_3 = 3
    f = make_regular_map("z^2", "1/3*w^2")
    C, good = nullstellensatz_constant(f, Place.finite(3))
    assert not good and C == 3


def test_good_reduction_closed_form():
    f = make_regular_map("z^2", "w^2")
    ctx = GreenContext(f, Place.finite(2))
    g = green_value(ctx, (F(1, 2), F(1)), TOL)
    assert g.lower == g.upper == _log(2).lower or \
        abs(float(g.lower) - float(_log(2).lower)) < 1e-12
    assert green_value(ctx, (F(3), F(5)), TOL).upper == 0


def test_archimedean_exact_log():
    f = make_regular_map("z^2", "w^2")
    ctx = GreenContext(f, Place.archimedean())
    g = green_value(ctx, (F(2), F(3)), TOL)
    l3 = _log(3)
    assert g.lower <= l3.upper and l3.lower <= g.upper
    assert float(g.upper - g.lower) < 1e-9


def test_bad_place_padic_iteration():
    # (z^2, w^2/3): g_3(1,1) = log 3 (v(w_n) = 1 - 2^n drives escape)
    f = make_regular_map("z^2", "1/3*w^2")
    ctx = GreenContext(f, Place.finite(3))
    g = green_value(ctx, (F(1), F(1)), TOL)
    l3 = _log(3)
    assert g.lower <= l3.upper and l3.lower <= g.upper


def test_invariance_property():
    random.seed(7)
    f = make_regular_map("z^2 + w", "w^2 + z")
    for v in [Place.archimedean(), Place.finite(2)]:
        ctx = GreenContext(f, v)
        for _ in range(5):
            pt = (F(random.randint(-9, 9), random.randint(1, 5)),
                  F(random.randint(-9, 9), random.randint(1, 5)))
            g1 = green_value(ctx, f.apply(pt), TOL)
            g2 = green_value(ctx, pt, TOL).scale(2)
            assert g1.lower <= g2.upper + TOL and g2.lower <= g1.upper + TOL


def test_homogeneity():
    f = make_regular_map("z^2", "w^2")
    ctx = GreenContext(f, Place.archimedean())
    a = green_homog(ctx, (F(1), F(2), F(3)), TOL)
    b = green_homog(ctx, (F(2), F(4), F(6)), TOL)
    l2 = _log(2)
    diff_lo = b.lower - a.upper
    diff_hi = b.upper - a.lower
    assert diff_lo <= l2.upper and l2.lower <= diff_hi


def test_green_homog_line_infinity():
    # G at [0 : 2 : 2] for the squaring map: -log 2 at the 2-adic place
    f = make_regular_map("z^2", "w^2")
    ctx = GreenContext(f, Place.finite(2))
    g = green_homog(ctx, (F(0), F(2), F(2)), TOL)
    ml2 = _log(2).scale(-1)
    assert g.lower <= ml2.upper and ml2.lower <= g.upper
