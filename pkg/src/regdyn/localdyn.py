"""Local dynamics at a fixed point of the line at infinity.

Exact truncated-series implementations of the normal-form pipeline:
localization of a regular map at a fixed point at infinity, the
super-stable manifold graph, Böttcher/Koenigs linearizations, the saddle
and parabolic normal forms — plus numeric verifiers for the rescaling
limit and the parabolic graph transform in sector coordinates.

Germs are written (x, y) with {y = 0} the line at infinity:

    f(x, y) = (lam*x + mu*y + g(x,y),  y^d (1 + h(x,y)))

with lam != 0, h(0,0) = 0 and g of order >= 2.  All conjugacies fix the
y = 0 axis and are recorded so every normal-form step can be re-verified
via Phi o G = f o Phi exactly at the truncation order.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .maps import RegularMap
from .polyalg import MultiPoly
from .series import TruncSeries, TruncSeries2, log_unit, exp_series


class GermShapeError(ValueError):
    pass


class ResonanceError(ValueError):
    pass


class ContractionError(RuntimeError):
    pass


def _x2(n):
    return TruncSeries2.variable(0, n)


def _y2(n):
    return TruncSeries2.variable(1, n)


def _shift(s: TruncSeries2, di: int, dj: int) -> TruncSeries2:
    """Multiply by the monomial x^di y^dj (exponents may not go negative)."""
    out = {}
    for (i, j), c in s.coeffs.items():
        if i + di < 0 or j + dj < 0:
            raise ValueError("negative exponent in shift")
        if i + di + j + dj <= s.order:
            out[(i + di, j + dj)] = c
    return TruncSeries2(out, s.order)


def _univ_in(ts: TruncSeries, arg: TruncSeries2) -> TruncSeries2:
    """ts(arg) for a bivariate argument vanishing at the origin."""
    if arg[(0, 0)] != 0:
        raise ValueError("argument must vanish at the origin")
    n = arg.order
    result = TruncSeries2.constant(ts.coeffs[min(ts.order, n)], n)
    for k in range(min(ts.order, n) - 1, -1, -1):
        result = result * arg + ts.coeffs[k]
    return result


class LocalGerm:
    """Truncated germ (first, second) of the shape described above."""

    def __init__(self, first: TruncSeries2, second: TruncSeries2, d: int,
                 chart: Optional[dict] = None):
        N = min(first.order, second.order)
        first, second = first.truncate(N), second.truncate(N)
        if first[(0, 0)] != 0 or second[(0, 0)] != 0:
            raise GermShapeError("germ must fix the origin")
        if not second.divisible_by(0, d):
            raise GermShapeError(f"second component not divisible by y^{d}")
        if second[(0, d)] != 1:
            raise GermShapeError("second component must be y^d*(1 + h), h(0,0)=0")
        lam = first[(1, 0)]
        if lam == 0:
            raise GermShapeError("multiplier lam = 0 (superattracting)")
        self.first = first
        self.second = second
        self.d = d
        self.N = N
        self.chart = chart

    @property
    def lam(self):
        return self.first[(1, 0)]

    @property
    def mu(self):
        return self.first[(0, 1)]

    def g_part(self) -> TruncSeries2:
        """first - lam*x - mu*y (the order-2 remainder)."""
        return self.first - _x2(self.N) * self.lam - _y2(self.N) * self.mu

    def h_part(self) -> TruncSeries2:
        """h with second = y^d*(1 + h)."""
        return _shift_div(self.second, self.d)

    def x_row(self, i: int) -> TruncSeries:
        return self.first.coefficient_in_x(i)

    def __repr__(self):
        return f"LocalGerm({self.first!r}, {self.second!r}, d={self.d})"


def _make_germ(first, second, d, chart=None) -> LocalGerm:
    return LocalGerm(first, second, d, chart)


# ---------------------------------------------------------------------------
# conjugacies


class Conjugacy:
    """An invertible coordinate change Phi fixing the origin.

    conjugate(germ) returns Phi^{-1} o germ o Phi; forward_pair gives the
    components (u, v) of Phi; verify checks Phi o G = f o Phi exactly."""

    def forward_pair(self, n: int):
        raise NotImplementedError

    def conjugate(self, germ: LocalGerm) -> LocalGerm:
        raise NotImplementedError

    def _push(self, germ: LocalGerm):
        """(f o Phi) components."""
        u, v = self.forward_pair(germ.N)
        return germ.first.compose(u, v), germ.second.compose(u, v)

    def apply_to(self, g1: TruncSeries2, g2: TruncSeries2):
        """(Phi o G) components for a candidate conjugated germ G."""
        u, v = self.forward_pair(g1.order)
        return u.compose(g1, g2), v.compose(g1, g2)

    def verify(self, source: LocalGerm, target: LocalGerm) -> bool:
        lhs = self.apply_to(target.first, target.second)
        rhs = self._push(source)
        return lhs[0] == rhs[0] and lhs[1] == rhs[1]


class Shear(Conjugacy):
    """Phi = (x + phi(y), y)."""

    def __init__(self, phi: TruncSeries):
        if phi.coeffs[0] != 0:
            raise ValueError("shear must fix the origin")
        self.phi = phi

    def forward_pair(self, n):
        return _x2(n) + self.phi.to_series2(n), _y2(n)

    def conjugate(self, germ):
        f1, f2 = self._push(germ)
        g1 = f1 - _univ_in(self.phi, f2)
        return _make_germ(g1, f2, germ.d, germ.chart)


class UnitScale(Conjugacy):
    """Phi = (x*(1 + phi(y)), y) with phi(0) = 0."""

    def __init__(self, phi: TruncSeries):
        if phi.coeffs[0] != 0:
            raise ValueError("unit scale needs phi(0) = 0")
        self.phi = phi

    def forward_pair(self, n):
        return _x2(n) * (self.phi.to_series2(n) + 1), _y2(n)

    def conjugate(self, germ):
        f1, f2 = self._push(germ)
        g1 = f1 * (_univ_in(self.phi, f2) + 1).reciprocal()
        return _make_germ(g1, f2, germ.d, germ.chart)


class HigherScale(Conjugacy):
    """Phi = (x*(1 + phi(y)*x^n), y); identity modulo x^{n+1}."""

    def __init__(self, phi: TruncSeries, n: int):
        self.phi = phi
        self.n = n

    def forward_pair(self, order):
        x = _x2(order)
        return x * (self.phi.to_series2(order) * x**self.n + 1), _y2(order)

    def conjugate(self, germ):
        f1, f2 = self._push(germ)
        # solve G1*(1 + phi(G2)*G1^n) = F1 by fixed-point iteration
        phi2 = _univ_in(self.phi, f2)
        g1 = f1
        for _ in range(germ.N + 2):
            nxt = f1 * (phi2 * g1**self.n + 1).reciprocal()
            if nxt == g1:
                break
            g1 = nxt
        return _make_germ(g1, f2, germ.d, germ.chart)


class YCoord(Conjugacy):
    """New vertical coordinate y_new = beta(y_old): Phi = (x, beta^{-1}(y))."""

    def __init__(self, beta: TruncSeries):
        self.beta = beta
        self.binv = beta.reversion()

    def forward_pair(self, n):
        return _x2(n), self.binv.to_series2(n)

    def conjugate(self, germ):
        f1, f2 = self._push(germ)
        g2 = _univ_in(self.beta, f2)
        return _make_germ(f1, g2, germ.d, germ.chart)


class XCoord(Conjugacy):
    """New horizontal coordinate x_new = psi(x_old): Phi = (psi^{-1}(x), y)."""

    def __init__(self, psi: TruncSeries):
        self.psi = psi
        self.pinv = psi.reversion()

    def forward_pair(self, n):
        return self.pinv.to_series2(n, var=0), _y2(n)

    def conjugate(self, germ):
        f1, f2 = self._push(germ)
        g1 = _univ_in(self.psi, f1)
        return _make_germ(g1, f2, germ.d, germ.chart)


class Scale(Conjugacy):
    """Phi = (ax, by), a, b invertible."""

    def __init__(self, a, b):
        if a == 0 or b == 0:
            raise ValueError("degenerate scaling")
        self.a = Fraction(a) if isinstance(a, int) else a
        self.b = Fraction(b) if isinstance(b, int) else b

    def forward_pair(self, n):
        return _x2(n) * self.a, _y2(n) * self.b

    def conjugate(self, germ):
        f1, f2 = self._push(germ)
        return _make_germ(f1 * (1 / self.a), f2 * (1 / self.b), germ.d, germ.chart)


@dataclass
class NormalFormResult:
    germ: LocalGerm
    conjugacies: list  # elementary steps, applied left to right
    intermediates: list  # germs between the steps (source first)

    def verify(self) -> bool:
        for step, src, tgt in zip(self.conjugacies, self.intermediates,
                                  self.intermediates[1:]):
            if not step.verify(src, tgt):
                return False
        return True


def _chain(germ: LocalGerm, steps) -> NormalFormResult:
    inter = [germ]
    for s in steps:
        inter.append(s.conjugate(inter[-1]))
    return NormalFormResult(inter[-1], list(steps), inter)


# ---------------------------------------------------------------------------
# localization


def _nth_root_fraction(c: Fraction, n: int) -> Fraction:
    """Exact rational n-th root, or raise."""
    if n == 1:
        return c
    if c < 0 and n % 2 == 0:
        raise ValueError("no real root")
    sign = -1 if c < 0 else 1
    num = round(abs(c.numerator) ** (1.0 / n))
    den = round(c.denominator ** (1.0 / n))
    for dn in (0, 1, -1):
        for dd in (0, 1, -1):
            a, b = num + dn, den + dd
            if a > 0 and b > 0 and Fraction(sign * a**n, b**n) == c:
                return Fraction(sign * a, b)
    raise ValueError(f"{c} has no rational {n}-th root")


def localize_at_infinity(f: RegularMap, p, N: int = 16) -> LocalGerm:
    """Expand f near a fixed point of the line at infinity.

    Chart: x is the coordinate along the line at infinity centered at p,
    y the reciprocal of the distinguished affine coordinate, so {y = 0}
    is the line at infinity.  p is an InfinityFixedPoint (or compatible
    pair (coordinate, chart)) with rational coordinate and lam != 0."""
    if hasattr(p, "coordinate"):
        coord, chart = p.coordinate, p.chart
    else:
        coord, chart = p
    if hasattr(coord, "is_rational"):
        if not coord.is_rational():
            raise NotImplementedError("algebraic fixed points not supported here")
        coord = coord.as_rational()
    b = Fraction(coord)
    d = f.d
    x = MultiPoly.variable(0)
    y = MultiPoly.variable(1)
    xb = x + b
    D = MultiPoly.zero()
    Nm = MultiPoly.zero()
    # in chart 0 the distinguished affine coordinate is z (y = 1/z, x = w/z - b);
    # in chart 1 it is w (y = 1/w, x = z/w - b)
    den_poly, num_poly = (f.P, f.Q) if chart == 0 else (f.Q, f.P)
    for (i, j), c in den_poly.coeffs.items():
        e = j if chart == 0 else i
        D = D + MultiPoly.constant(c) * xb**e * y**(d - i - j)
    for (i, j), c in num_poly.coeffs.items():
        e = j if chart == 0 else i
        Nm = Nm + MultiPoly.constant(c) * xb**e * y**(d - i - j)
    c0 = D.coefficient(0, 0)
    if c0 == 0:
        raise ValueError("point is not in the domain of this chart")
    D2 = TruncSeries2(dict(D.coeffs), N)
    Nm2 = TruncSeries2(dict(Nm.coeffs), N)
    Dinv = D2.reciprocal()
    first = (Nm2 - D2 * b) * Dinv
    second = _shift(Dinv, 0, d)
    if first[(0, 0)] != 0:
        raise ValueError("point is not fixed by the map at infinity")
    if first[(1, 0)] == 0:
        raise GermShapeError("superattracting fixed point (lam = 0)")
    # normalize the y^d coefficient to 1 by scaling y -> s*y, s^(d-1) = D(0,0)
    s = _nth_root_fraction(Fraction(c0), d - 1)
    if s != 1:
        x2, sy = _x2(N), _y2(N) * s
        first = first.compose(x2, sy)
        second = second.compose(x2, sy) * (1 / s)
    return _make_germ(first, second, d,
                      chart={"chart": chart, "center": b, "scale": s})


# ---------------------------------------------------------------------------
# normal-form steps


def remove_mu(germ: LocalGerm) -> NormalFormResult:
    """Kill the mu*y term by the shear x -> x - (mu/lam) y."""
    if germ.mu == 0:
        return NormalFormResult(germ, [], [germ])
    c = -germ.mu / germ.lam
    phi = TruncSeries([0, c], germ.N)
    res = _chain(germ, [Shear(phi)])
    assert res.germ.mu == 0
    return res


def super_stable_series(germ: LocalGerm, N: Optional[int] = None) -> TruncSeries:
    """The graph x = phi(y) of the local super-stable manifold.

    phi is the unique solution of
        lam*phi(y) + g(phi(y), y) = phi(y^d * (1 + h(phi(y), y)))
    with phi(0) = 0; solved by the order-gaining fixed-point iteration
    (each pass determines one more coefficient, any lam != 0).  A mu*y
    term is absorbed into g."""
    N = germ.N if N is None else N
    if N > germ.N:
        raise ValueError("cannot exceed the germ's truncation order")
    lam = germ.lam
    g = (germ.first - _x2(germ.N) * lam).truncate(N)
    h = germ.h_part().truncate(N)
    yid = _y2(N)
    inv_lam = 1 / lam if not isinstance(lam, Fraction) else Fraction(1) / lam
    phi = TruncSeries.zero(N)
    for _ in range(N + 1):
        phi2 = phi.to_series2(N)
        h_phi = h.compose(phi2, yid).restrict_y_axis()
        inner = TruncSeries([0] * germ.d + list((h_phi + 1).coeffs), N)
        g_phi = g.compose(phi2, yid).restrict_y_axis()
        nxt = (phi.compose(inner) - g_phi) * inv_lam
        if nxt == phi:
            break
        phi = nxt
    # exact functional equation check at truncation order
    phi2 = phi.to_series2(N)
    h_phi = h.compose(phi2, yid).restrict_y_axis()
    inner = TruncSeries([0] * germ.d + list((h_phi + 1).coeffs), N)
    lhs = phi * lam + g.compose(phi2, yid).restrict_y_axis()
    assert lhs == phi.compose(inner)
    return phi


def reduce_form(germ: LocalGerm, phi: TruncSeries) -> NormalFormResult:
    """Move the super-stable graph to {x = 0}: conjugate by (x + phi(y), y).

    Output first component is divisible by x (reduced form)."""
    res = _chain(germ, [Shear(phi)])
    if any(i == 0 and j > 0 for (i, j) in res.germ.first.coeffs):
        raise GermShapeError("reduction failed: first component not divisible by x")
    return res


def bottcher_series(u: TruncSeries, d: Optional[int] = None) -> TruncSeries:
    """beta with beta(u(y)) = beta(y)^d, beta(y) = y + O(y^2).

    u must be y^d*(1 + h0(y)).  Writing beta = y*exp(L), the equation
    becomes L(u) - d*L = -log(1 + h0), solved order by order."""
    val = u.valuation()
    if val is None or val < 2:
        raise ValueError("input must vanish to order >= 2")
    d = val if d is None else d
    if u.coeffs[d] != 1:
        raise ValueError("unit cofactor must have constant term 1")
    H = log_unit(TruncSeries([1] + u.coeffs[d + 1:], u.order))
    L = TruncSeries.zero(u.order)
    for _ in range(u.order + 1):
        nxt = (H + L.compose(u)) * Fraction(1, d)
        if nxt == L:
            break
        L = nxt
    beta = TruncSeries([0] + exp_series(L).coeffs, u.order)
    assert beta.compose(u) == beta**d
    return beta


def koenigs_series(s: TruncSeries, N: Optional[int] = None) -> TruncSeries:
    """psi with psi(s(y)) = lam*psi(y), psi = y + O(y^2); lam = s'(0)."""
    N = s.order if N is None else N
    s = s.truncate(N)
    if s.coeffs[0] != 0:
        raise ValueError("input must fix 0")
    lam = s.coeffs[1]
    if lam == 0:
        raise ValueError("multiplier must be nonzero")
    psi = TruncSeries.identity(N)
    for j in range(2, N + 1):
        r = psi.compose(s) - psi * lam
        c = r[j]
        if c == 0:
            continue
        denom = lam**j - lam
        if denom == 0:
            raise ResonanceError(f"resonance lam^{j} = lam")
        psi = psi - TruncSeries.monomial(c / denom, j, N)
    assert psi.compose(s) == psi * lam
    return psi


def _inf_product_phi(g1: TruncSeries, d: int) -> TruncSeries:
    """phi with (1 + phi(y))(1 + g1(y)) = 1 + phi(y^d):
    1 + phi = prod_k (1 + g1(y^{d^k}))^{-1}, truncated."""
    N = g1.order
    prod = TruncSeries.one(N)
    power = 1
    while power <= N:
        scaled = TruncSeries([g1[m // power] if m % power == 0 else 0
                              for m in range(N + 1)], N)
        prod = prod * (scaled + 1)
        power *= d
    return prod.reciprocal() - 1


def _geometric_sum_phi(gn: TruncSeries, d: int) -> TruncSeries:
    """phi(y) = -sum_m gn(y^{d^m}) solving phi(y) - phi(y^d) = -gn(y)."""
    N = gn.order
    total = TruncSeries.zero(N)
    power = 1
    while power <= N:
        total = total + TruncSeries([gn[m // power] if m % power == 0 else 0
                                     for m in range(N + 1)], N)
        power *= d
    return -total


def saddle_normal_form(germ: LocalGerm) -> NormalFormResult:
    """Reduce a reduced-form germ (lam not a root of unity) to

        (lam*x*(1 + x*y*gt(x,y)),  y^d*(1 + x*ht(x,y)))

    via Böttcher on {x=0}, Koenigs on {y=0}, and the infinite-product
    multiplicative correction."""
    if any(i == 0 and j > 0 for (i, j) in germ.first.coeffs):
        raise GermShapeError("saddle_normal_form needs a reduced-form germ")
    steps = []
    # 1. Böttcher: straighten y -> y^d on the invariant axis {x = 0}
    u0 = germ.second.restrict_y_axis()
    beta = bottcher_series(u0, germ.d)
    steps.append(YCoord(beta))
    g1 = steps[-1].conjugate(germ)
    assert g1.second.restrict_y_axis() == TruncSeries.monomial(1, germ.d, germ.N)
    # 2. Koenigs: linearize x -> lam*x*(1+...) on {y = 0}
    s0 = g1.first.restrict_x_axis()
    psi = koenigs_series(s0)
    steps.append(XCoord(psi))
    g2 = steps[-1].conjugate(g1)
    assert g2.first.restrict_x_axis() == TruncSeries([0, g2.lam], g2.N)
    # 3. multiplicative correction on the x-linear row
    row1 = g2.x_row(1)
    inv_lam = Fraction(1) / g2.lam if isinstance(g2.lam, Fraction) else 1 / g2.lam
    grow = row1 * inv_lam - 1
    if not grow.is_zero():
        phi = _inf_product_phi(grow, g2.d)
        steps.append(UnitScale(phi))
        g2 = steps[-1].conjugate(g2)
    out = g2
    lamx = _x2(out.N) * out.lam
    if not (out.first - lamx).divisible_by(2, 1):
        raise GermShapeError("saddle form: first component residual not in x^2*y")
    if not (out.second - _shift(TruncSeries2.constant(1, out.N), 0, out.d)) \
            .divisible_by(1, out.d):
        raise GermShapeError("saddle form: second component residual not in x*y^d")
    return NormalFormResult(out, steps, _intermediates(germ, steps))


def _intermediates(germ, steps):
    inter = [germ]
    for s in steps:
        inter.append(s.conjugate(inter[-1]))
    return inter


def parabolic_normal_form(germ: LocalGerm) -> tuple:
    """For lam = 1: (k, result) with the germ conjugated to

        (x + x^{k+1} + x^{2k+1}*gt(x,y),  y^d*(1 + x*ht(x,y))).

    Requires the restriction to {y = 0} to differ from the identity at
    the truncation order."""
    if germ.lam != 1:
        raise GermShapeError("parabolic normal form needs lam = 1")
    steps = []
    work = germ
    if work.mu != 0:
        r = remove_mu(work)
        steps += r.conjugacies
        work = r.germ
    # super-stable manifold to {x = 0}, then Böttcher on the vertical axis
    phi = super_stable_series(work)
    if not phi.is_zero():
        steps.append(Shear(phi))
        work = steps[-1].conjugate(work)
    u0 = work.second.restrict_y_axis()
    if u0 != TruncSeries.monomial(1, work.d, work.N):
        beta = bottcher_series(u0, work.d)
        steps.append(YCoord(beta))
        work = steps[-1].conjugate(work)
    # read off k from the restriction to {y = 0}
    rx = work.first.restrict_x_axis()
    tail = rx - TruncSeries.identity(work.N)
    val = tail.valuation()
    if val is None:
        raise GermShapeError("restriction to {y=0} is the identity at this order")
    k = val - 1
    # 1-D normalization on the axis: f(x,0) = x + x^{k+1} + O(x^{2k+1})
    for j in range(k + 1, 2 * k):
        cj = (work.first.restrict_x_axis() - TruncSeries.identity(work.N))[j + 1]
        if cj == 0:
            continue
        # the x^{j+1} coefficient is affine in e for S = x + e*x^{j-k+1}
        def coeff_after(e):
            st = XCoord(TruncSeries.identity(work.N)
                        + TruncSeries.monomial(e, j - k + 1, work.N))
            return st, (st.conjugate(work).first.restrict_x_axis())[j + 1]
        _, c1 = coeff_after(Fraction(1))
        gamma = c1 - cj
        if gamma == 0:
            raise GermShapeError("degenerate axis normalization")
        st, cnew = coeff_after(-cj / gamma)
        assert cnew == 0
        steps.append(st)
        work = st.conjugate(work)
    ck = work.first.restrict_x_axis()[k + 1]
    if ck != 1:
        alpha = _nth_root_fraction(Fraction(1) / ck, k)
        steps.append(Scale(alpha, Fraction(1)))
        work = steps[-1].conjugate(work)
        assert work.first.restrict_x_axis()[k + 1] == 1
    # kill the y-dependence of the rows x^{n+1}, n = 0..2k-1
    row1 = work.x_row(1)
    g0 = row1 - 1
    if not g0.is_zero():
        steps.append(UnitScale(_inf_product_phi(g0, work.d)))
        work = steps[-1].conjugate(work)
    for n in range(1, 2 * k):
        gn = work.x_row(n + 1) - (1 if n == k else 0)
        if gn.is_zero():
            continue
        phin = _geometric_sum_phi(gn, work.d)
        steps.append(HigherScale(phin, n))
        work = steps[-1].conjugate(work)
    # posts
    for n in range(0, 2 * k):
        row = work.x_row(n + 1)
        want = TruncSeries([1] if n in (0, k) else [0], work.N)
        if row != want:
            raise GermShapeError(f"parabolic form: row x^{n+1} not normalized")
    if not (work.second - _shift(TruncSeries2.constant(1, work.N), 0, work.d)) \
            .divisible_by(1, work.d):
        raise GermShapeError("parabolic form: second component residual not x*y^d")
    return k, NormalFormResult(work, steps, _intermediates(germ, steps))


# ---------------------------------------------------------------------------
# numeric verifiers


def _eval_c(s: TruncSeries2, x: complex, y: complex) -> complex:
    total = 0j
    for (i, j), c in s.coeffs.items():
        total += float(c) * x**i * y**j
    return total


def rescaling_check(germ: LocalGerm, n: int, r: float, grid: int = 8) -> float:
    """max over a grid of |f^n(x/lam^n, y) - (x, 0)| for a saddle-form germ.

    Numeric verifier of the rescaling limit; raises if an orbit leaves
    the unit polydisk (radius too large)."""
    lam = complex(float(germ.lam))
    dev = 0.0
    pts = [r * cmath.exp(2j * math.pi * t / grid) for t in range(grid)] + [0j]
    for x0 in pts:
        for y0 in pts:
            x, y = x0 / lam**n, y0
            for _ in range(n):
                x, y = _eval_c(germ.first, x, y), _eval_c(germ.second, x, y)
                if abs(x) > 0.9 or abs(y) > 0.9:
                    raise ValueError("orbit left the polydisk; reduce the radius")
            dev = max(dev, abs(x - x0), abs(y))
    return dev


class SectorMap:
    """The parabolic germ in sector coordinates z = (k x^k)^{-1}:

        f(z, y) = (z - 1 + a(z,y)/z,  y^d * (1 + b(z,y)/z^{1/k}))

    defined on Omega_R x D_r with |a|, |b| and their derivatives <= M."""

    def __init__(self, a: Callable, b: Callable, k: int, d: int,
                 R: float, r: float, M: float):
        self.a, self.b, self.k, self.d, self.R, self.r, self.M = a, b, k, d, R, r, M

    def apply(self, z: complex, y: complex):
        return (z - 1 + self.a(z, y) / z,
                y**self.d * (1 + self.b(z, y) / z**(1.0 / self.k)))

    @staticmethod
    def model(k: int, d: int, R: float, r: float) -> "SectorMap":
        return SectorMap(lambda z, y: 0j, lambda z, y: 0j, k, d, R, r, 0.0)

    @staticmethod
    def from_parabolic(germ: LocalGerm, k: int, r: float) -> "SectorMap":
        """Sector expression of a germ in parabolic normal form."""
        d = germ.d
        R = 1.0 / (k * r**k)
        htilde = _shift_div(germ.second, d)  # second = y^d*(1 + x*ht) -> x*ht

        def a(z, y):
            x = (k * z) ** (-1.0 / k)
            x1 = _eval_c(germ.first, x, y)
            return z * (1.0 / (k * x1**k) - z + 1)

        def b(z, y):
            x = (k * z) ** (-1.0 / k)
            return z ** (1.0 / k) * _eval_c(htilde, x, y)

        M = 0.0
        for t in range(8):
            z = 1.5 * R * cmath.exp(1j * (math.pi / 4) * (t / 7.0 * 2 - 1) * 0.98)
            for s in range(4):
                y = 0.95 * r * cmath.exp(2j * math.pi * s / 4)
                eps = 1e-5
                M = max(M, abs(a(z, y)), abs(b(z, y)),
                        abs(a(z + eps, y) - a(z, y)) / eps,
                        abs(b(z + eps, y) - b(z, y)) / eps,
                        abs(a(z, y + eps) - a(z, y)) / eps,
                        abs(b(z, y + eps) - b(z, y)) / eps)
        return SectorMap(a, b, k, d, R, r, 1.2 * M)


def _shift_div(second: TruncSeries2, d: int) -> TruncSeries2:
    """second/y^d - 1 (equals x*ht for a normal-form germ)."""
    return TruncSeries2({(i, j - d): c for (i, j), c in second.coeffs.items()},
                        second.order) - 1


@dataclass
class VerticalGraphSample:
    """A vertical graph z = psi(y) over the disk of radius rho."""
    ys: list
    zs: list
    rho: float
    sigma: float
    base: complex
    psi: Callable

    @staticmethod
    def constant(z0: complex, rho: float) -> "VerticalGraphSample":
        return VerticalGraphSample([0j], [z0], rho, 0.0, z0, lambda y: z0)


def graph_pullback(sector: SectorMap, graph: VerticalGraphSample,
                   samples: int = 32) -> VerticalGraphSample:
    """One graph-transform step: the pullback of a vertical graph.

    Solves z = l(z, y) with
        l(z, y) = psi(y^d*(1 + b(z,y)/z^{1/k})) + 1 - a(z,y)/z
    per sample by the certified contraction; checks the admissibility
    constraints and the quantitative outputs (slope <= 1/10, real-part
    advance >= 9/10)."""
    k, d = sector.k, sector.d
    if graph.sigma * graph.rho >= 1.0 / (100 * d):
        raise ContractionError("slope*radius out of the admissible regime")
    if sector.M > 0 and sector.M / sector.R ** (1.0 / k) > 1.0 / 100:
        raise ContractionError("M/R^{1/k} too large for the contraction")
    if sector.r >= 1.0 / (10 * d):
        raise ContractionError("sector radius r too large")
    rho1 = min((graph.rho / 2) ** (1.0 / d), sector.r)

    def ell(z, y):
        yt = y**d * (1 + sector.b(z, y) / z ** (1.0 / k))
        return graph.psi(yt) + 1 - sector.a(z, y) / z

    def in_sector(z):
        return abs(z) > sector.R and abs(cmath.phase(z)) < math.pi / 4

    nodes = [rho1 * cmath.exp(2j * math.pi * t / samples) for t in range(samples)]
    sols = []
    for y in nodes:
        z = graph.base + 1
        for _ in range(200):
            nz = ell(z, y)
            if not in_sector(nz):
                raise ContractionError("iterate left the sector Omega_R")
            if abs(nz - z) < 1e-13:
                z = nz
                break
            z = nz
        else:
            raise ContractionError("fixed-point solve did not converge")
        eps = 1e-6
        if abs(ell(z + eps, y) - ell(z, y)) / eps > 0.5:
            raise ContractionError("contraction certificate failed")
        sols.append(z)

    # trigonometric interpolation -> Taylor coefficients on |y| <= rho1
    m = samples
    coeffs = []
    for mm in range(m):
        c = sum(sols[t] * cmath.exp(-2j * math.pi * mm * t / m)
                for t in range(m)) / m
        coeffs.append(c)

    def psi_new(y, _c=coeffs, _r=rho1):
        w = y / _r
        total = 0j
        for c in reversed(_c):
            total = total * w + c
        return total

    base = coeffs[0]
    sigma_new = sum(mm * abs(coeffs[mm]) for mm in range(1, m)) / rho1
    if sigma_new > 0.1 + 1e-9:
        raise ContractionError(f"output slope {sigma_new} exceeds 1/10")
    advance = min((z.real for z in sols)) - graph.base.real
    if advance < 0.9 - 1e-9:
        raise ContractionError(f"real-part advance {advance} below 9/10")
    return VerticalGraphSample(nodes, sols, rho1, sigma_new, base, psi_new)
