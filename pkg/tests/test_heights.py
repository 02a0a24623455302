import math
import random
from fractions import Fraction as F

import pytest

from regdyn.exactnum import AlgebraicNumber, Place
from regdyn.heights import (canonical_height, canonical_height_algebraic,
                            essential_min_estimate, height_support,
                            is_preperiodic, newton_polygon_slopes)
from regdyn.maps import make_regular_map

TOL = F(1, 10**9)


def _weil(q: F) -> float:
    return math.log(max(abs(q.numerator), q.denominator))


def test_support_finite():
    f = make_regular_map("z^2", "1/3*w^2")
    sup = height_support(f, (F(1, 2), F(5)))
    primes = {v.prime for v in sup if v.is_finite}
    assert primes == {2, 3}


def _weil_pair(z: F, w: F) -> float:
    # height of [1 : z : w]: clear denominators to a primitive integer triple
    c = math.lcm(z.denominator, w.denominator)
    a, b = z.numerator * (c // z.denominator), w.numerator * (c // w.denominator)
    g = math.gcd(math.gcd(abs(a), abs(b)), c)
    return math.log(max(abs(a), abs(b), c) // g)


def test_squaring_height_is_projective_weil():
    f = make_regular_map("z^2", "w^2")
    random.seed(3)
    for _ in range(20):
        pt = (F(random.randint(-50, 50), random.randint(1, 20)),
              F(random.randint(-50, 50), random.randint(1, 20)))
        h = canonical_height(f, pt, TOL)
        want = _weil_pair(*pt)
        assert abs(float(h.value.lower) - want) < 1e-8
        assert h.certified


def test_squaring_height_integer_points_max_form():
    # for integral coordinates the pair height reduces to max(h(z), h(w))
    f = make_regular_map("z^2", "w^2")
    random.seed(4)
    for _ in range(20):
        pt = (F(random.randint(-99, 99)), F(random.randint(-99, 99)))
        h = canonical_height(f, pt, TOL)
        want = max(_weil(pt[0]), _weil(pt[1]))
        assert abs(float(h.value.lower) - want) < 1e-8


def test_height_functional_equation():
    f = make_regular_map("z^2 + w", "w^2 - z")
    pt = (F(1, 2), F(3))
    h1 = canonical_height(f, f.apply(pt), TOL)
    h2 = canonical_height(f, pt, TOL)
    assert abs(float(h1.value.lower) - 2 * float(h2.value.lower)) < 1e-7


def test_preperiodic_exact_cycle():
    f = make_regular_map("z^2", "w^2")
    v = is_preperiodic(f, (F(-1), F(0)))
    assert v.kind == "Preperiodic" and (v.preperiod, v.period) == (1, 1)
    v = is_preperiodic(f, (F(1), F(1)))
    assert v.kind == "Preperiodic" and (v.preperiod, v.period) == (0, 1)


def test_not_preperiodic_certificate():
    f = make_regular_map("z^2", "w^2")
    v = is_preperiodic(f, (F(2), F(3)))
    assert v.kind == "NotPreperiodic"
    assert float(v.height_lower) >= math.log(3) - 1e-6


def test_not_preperiodic_small_denominators():
    # orbit collapses toward (0, 0) but the 2-adic height is positive
    f = make_regular_map("z^2", "w^2")
    v = is_preperiodic(f, (F(1, 2), F(1, 3)))
    assert v.kind == "NotPreperiodic"


def test_newton_polygon_oracles():
    # x^2 - 2 at p=2: both roots have valuation 1/2
    assert newton_polygon_slopes([-2, 0, 1], 2) == [(F(1, 2), 2)]
    # (x+1)(x+2) = x^2 + 3x + 2 at p=2: valuations 0 and 1
    slopes = newton_polygon_slopes([2, 3, 1], 2)
    assert sorted(slopes) == [(F(0), 1), (F(1), 1)]


def test_algebraic_height_sqrt2():
    f = make_regular_map("z^2", "w^2")
    a = AlgebraicNumber([-2, 0, 1], 1)  # sqrt 2
    h = canonical_height_algebraic(f, (a, F(1)))
    # h(sqrt 2) = (1/2) log 2
    assert abs(float(h.value.lower) - 0.5 * math.log(2)) < 1e-8


def test_algebraic_height_root_of_unity_zero():
    f = make_regular_map("z^2", "w^2")
    zeta3 = AlgebraicNumber([1, 1, 1], 0)
    h = canonical_height_algebraic(f, (zeta3, F(1)))
    assert float(h.value.upper) < 1e-20


def test_algebraic_height_both_irrational_rejected():
    f = make_regular_map("z^2", "w^2")
    a = AlgebraicNumber([-2, 0, 1], 1)
    with pytest.raises(NotImplementedError):
        canonical_height_algebraic(f, (a, a))


def test_essential_min_diagonal_zero():
    # {w - z} under squaring contains infinitely many preperiodic points
    f = make_regular_map("z^2", "w^2")
    from regdyn.curves import PlaneCurve
    est = essential_min_estimate(f, PlaneCurve("w - z"), num_samples=10)
    assert est <= 1e-6
