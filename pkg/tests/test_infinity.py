from fractions import Fraction as F

import pytest

from regdyn.exactnum import AlgebraicNumber
from regdyn.infinity import (ExpandingPlace, RootOfUnity, Superattracting,
                             classify_multiplier, fixed_points_infinity,
                             infinity_orbit_preperiodicity, multiplier,
                             periodic_points_infinity)
from regdyn.maps import make_regular_map


def _rat(q):
    return AlgebraicNumber.from_rational(F(q))


def test_classify_trichotomy_oracles():
    assert isinstance(classify_multiplier(_rat(1)), RootOfUnity)
    assert classify_multiplier(_rat(1)).order == 1
    assert classify_multiplier(_rat(-1)).order == 2
    c = classify_multiplier(_rat(2))
    assert isinstance(c, ExpandingPlace) and not c.place.is_finite
    c = classify_multiplier(_rat(F(1, 2)))
    assert isinstance(c, ExpandingPlace) and c.place.prime == 2
    c = classify_multiplier(_rat(F(2, 3)))
    assert isinstance(c, ExpandingPlace) and c.place.prime == 3
    zeta3 = AlgebraicNumber([1, 1, 1], 0)
    assert classify_multiplier(zeta3) == RootOfUnity(3)
    sqrt2 = AlgebraicNumber([-2, 0, 1], 1)
    assert isinstance(classify_multiplier(sqrt2), ExpandingPlace)


def test_squaring_fixed_points():
    # action at infinity is t -> t^2: fixed points [1:0], [1:1], [0:1]
    f = make_regular_map("z^2", "w^2")
    pts = fixed_points_infinity(f)
    assert sum(p.multiplicity for p in pts) == f.d + 1
    coords = sorted((p.chart, p.coordinate.as_rational()) for p in pts)
    assert coords == [(0, F(0)), (0, F(1)), (1, F(0))]
    by_coord = {(p.chart, p.coordinate.as_rational()): p for p in pts}
    assert isinstance(by_coord[(0, F(0))].classification, Superattracting)
    assert isinstance(by_coord[(1, F(0))].classification, Superattracting)
    amp = by_coord[(0, F(1))]
    assert amp.multiplier.as_rational() == 2
    assert isinstance(amp.classification, ExpandingPlace)


def test_quadratic_fixed_point_field():
    # t -> t^2/(1 + t^2) style action: (z^2 + w^2, w^2) at infinity sends
    # t = w/z to t^2 / (1 + t^2); finite fixed points solve t^3 - t^2 + t = 0
    f = make_regular_map("z^2 + w^2", "w^2")
    pts = fixed_points_infinity(f)
    assert sum(p.multiplicity for p in pts) == 3
    degs = sorted(p.coordinate.degree for p in pts if p.chart == 0)
    assert degs[0] == 1  # t = 0


def test_multiplier_matches_derivative():
    # t -> t^2 + lower order: (z^2, w^2 + z*w) has infinity action
    # t -> (t^2 + t)/1, derivative 2t + 1, so 3 at the fixed point t = 1?
    # fixed points of t^2 + t = t: t = 0 with multiplier 1
    f = make_regular_map("z^2", "w^2 + z*w")
    pts = fixed_points_infinity(f)
    by = {(p.chart, p.coordinate.as_rational() if p.coordinate.is_rational() else None): p
          for p in pts}
    assert by[(0, F(0))].multiplier.as_rational() == 1
    assert by[(0, F(0))].classification == RootOfUnity(1)


def test_orbit_preperiodicity_rational():
    f = make_regular_map("z^2", "w^2")
    v = infinity_orbit_preperiodicity(f, (F(1), F(1)))
    assert v.kind == "Preperiodic"
    v = infinity_orbit_preperiodicity(f, (F(1), F(-1)))
    assert v.kind == "Preperiodic" and v.preperiod == 1
    v = infinity_orbit_preperiodicity(f, (F(2), F(3)))
    assert v.kind == "NotPreperiodic"


def test_orbit_preperiodicity_algebraic():
    f = make_regular_map("z^2", "w^2")
    zeta3 = AlgebraicNumber([1, 1, 1], 0)
    v = infinity_orbit_preperiodicity(f, (zeta3, 0))
    assert v.kind == "Preperiodic"
    sqrt2 = AlgebraicNumber([-2, 0, 1], 1)
    v = infinity_orbit_preperiodicity(f, (sqrt2, 0))
    assert v.kind in {"NotPreperiodic", "Unknown"}


def test_periodic_points_period_two():
    # fixed points of t -> t^4: t^4 = t gives 0 and the cube roots of unity,
    # plus [0:1]
    f = make_regular_map("z^2", "w^2")
    pts = periodic_points_infinity(f, 2)
    assert sum(p.multiplicity for p in pts) == f.d ** 2 + 1
    by = {(p.chart, p.coordinate.as_rational()): p for p in pts
          if p.coordinate.is_rational()}
    # multiplier of t -> t^4 at t = 1 is 4
    assert by[(0, F(1))].multiplier.as_rational() == 4
    assert isinstance(by[(0, F(0))].classification, Superattracting)


def test_periodic_points_cap():
    f = make_regular_map("z^2", "w^2")
    with pytest.raises(ValueError):
        periodic_points_infinity(f, 9, degree_cap=4)
