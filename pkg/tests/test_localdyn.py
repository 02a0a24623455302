import math
from fractions import Fraction as F

import pytest

from regdyn.localdyn import (ContractionError, GermShapeError, LocalGerm,
                             ResonanceError, SectorMap, VerticalGraphSample,
                             bottcher_series, graph_pullback, koenigs_series,
                             localize_at_infinity, parabolic_normal_form,
                             remove_mu, rescaling_check, saddle_normal_form,
                             super_stable_series)
from regdyn.maps import make_regular_map
from regdyn.series import TruncSeries, TruncSeries2


def X(n):
    return TruncSeries2.variable(0, n)


def Y(n):
    return TruncSeries2.variable(1, n)


def _germ(first, second, d):
    return LocalGerm(first, second, d)


def test_germ_shape_validation():
    n = 8
    with pytest.raises(GermShapeError):
        # second coordinate must be y^d * unit
        LocalGerm(X(n) * 2, Y(n), 2)
    with pytest.raises(GermShapeError):
        # lambda = 0 not allowed
        LocalGerm(X(n) * X(n), Y(n) ** 2, 2)
    g = LocalGerm(X(n) * 2 + Y(n) * 3, Y(n) ** 2 * (X(n) + 1), 2)
    assert g.lam == 2 and g.mu == 3


def test_localize_squaring_at_diagonal():
    # [1:1] is fixed at infinity for (z^2, w^2); local form (2x + x^2, y^2)
    f = make_regular_map("z^2", "w^2")
    g = localize_at_infinity(f, (F(1), F(1)), N=10)
    assert g.first == X(10) * 2 + X(10) ** 2
    assert g.second == Y(10) ** 2


def test_localize_fixed_point_required():
    f = make_regular_map("z^2", "w^2")
    with pytest.raises(ValueError):
        localize_at_infinity(f, (F(2), F(1)))


def test_remove_mu():
    n = 10
    g = LocalGerm(X(n) * 2 + Y(n), Y(n) ** 2, 2)
    res = remove_mu(g)
    assert res.germ.mu == 0
    res.verify()


def test_super_stable_closed_form():
    # for (2x + y^2, y^2) the invariant graph solves 2phi + y^2 = phi(y^2)
    n = 16
    g = LocalGerm(X(n) * 2 + Y(n) ** 2, Y(n) ** 2, 2)
    phi = super_stable_series(g)
    # phi = -sum_k y^{2^k} / 2^k  truncated (derived by direct recursion)
    expect = TruncSeries.zero(n)
    for k in range(1, 5):
        if 2 ** k <= n:
            expect = expect + TruncSeries.monomial(F(-1, 2 ** k), 2 ** k, n)
    assert phi == expect


def test_bottcher_definitional():
    # u(y) = y^2 (1 + y): beta satisfies beta(u(y)) = beta(y)^2
    n = 14
    u = TruncSeries.monomial(1, 2, n) * (TruncSeries.one(n) + TruncSeries.monomial(1, 1, n))
    beta = bottcher_series(u)
    assert beta.compose(u.truncate(n)) == beta * beta
    assert beta.coeffs[1] == 1 and beta.coeffs[2] == F(1, 2)


def test_koenigs_definitional_and_resonance():
    n = 12
    s = TruncSeries([0, 2, 1], n)
    psi = koenigs_series(s)
    assert psi.compose(s) == psi * 2
    with pytest.raises(ResonanceError):
        koenigs_series(TruncSeries([0, 1, 1], n))


def test_saddle_normal_form():
    # the running saddle example: (2x(1+y), y^2(1+x))
    n = 12
    g = LocalGerm(X(n) * 2 * (Y(n) + 1), Y(n) ** 2 * (X(n) + 1), 2)
    res = saddle_normal_form(g)
    res.verify()
    out = res.germ
    # both separatrices straightened: first = 2x exactly on y = 0 and the
    # correction is divisible by x^2 y; second = y^2 exactly on x = 0 with
    # correction divisible by x y^2
    resid1 = out.first - X(n) * 2
    assert all(i >= 2 and j >= 1 for (i, j), c in resid1.coeffs.items() if c)
    resid2 = out.second - Y(n) ** 2
    assert all(i >= 1 and j >= 2 for (i, j), c in resid2.coeffs.items() if c)
    assert len(res.conjugacies) >= 3


def test_parabolic_normal_form():
    # (x(1+y) + x^2, y^2(1+x)): tangent-to-identity along the graph
    n = 12
    g = LocalGerm(X(n) * (Y(n) + 1) + X(n) ** 2, Y(n) ** 2 * (X(n) + 1), 2)
    k, res = parabolic_normal_form(g)
    res.verify()
    assert k == 1
    out = res.germ
    first = out.first
    # normalized: x + x^{k+1} + c x^{2k+1} + O(x^{2k+2}) with no y mixed in
    # below order 2k + 2, and no intermediate pure-x terms
    assert first.coeffs.get((1, 0)) == 1
    assert first.coeffs.get((2, 0)) == 1
    for j in range(2, 2 * k + 1):
        if j != k + 1:
            assert first.coeffs.get((j, 0), F(0)) == 0


def test_parabolic_scale_needs_rational_root():
    # c_k = 3 with k = 2 requires alpha with alpha^2 = 1/3: no rational root
    n = 12
    g = LocalGerm(X(n) + X(n) ** 3 * 3, Y(n) ** 2, 2)
    with pytest.raises(ValueError):
        parabolic_normal_form(g)


def test_rescaling_deviation_decays():
    n = 12
    g = LocalGerm(X(n) * 2 * (Y(n) + 1), Y(n) ** 2 * (X(n) + 1), 2)
    res = saddle_normal_form(g)
    devs = [rescaling_check(res.germ, m, 0.05) for m in (2, 6, 12)]
    assert devs[-1] < 1e-8
    assert devs[0] >= devs[1] >= devs[2]


def test_sector_pullback_contracts():
    n = 16
    g = LocalGerm(X(n) + X(n) ** 2, Y(n) ** 2 * (X(n) + 1), 2)
    k, res = parabolic_normal_form(g)
    sector = SectorMap.from_parabolic(res.germ, k, r=0.005)
    base = complex(2.0 * sector.R, 0.0)
    cur = VerticalGraphSample.constant(base, rho=0.001)
    total = 0.0
    for _ in range(5):
        cur = graph_pullback(sector, cur)
        total += cur.base.real - base.real
        base = cur.base
        assert cur.sigma <= 0.1 + 1e-9
    assert total >= 5 * 0.9 - 1e-6


def test_sector_pullback_rejects_wild_graph():
    n = 16
    g = LocalGerm(X(n) + X(n) ** 2, Y(n) ** 2 * (X(n) + 1), 2)
    k, res = parabolic_normal_form(g)
    sector = SectorMap.from_parabolic(res.germ, k, r=0.005)
    z0 = complex(2.0 * sector.R, 0.0)
    bad = VerticalGraphSample(ys=[0j], zs=[z0], rho=0.001, sigma=10.0,
                              base=z0, psi=lambda y: z0)
    with pytest.raises((ContractionError, ValueError)):
        graph_pullback(sector, bad)
