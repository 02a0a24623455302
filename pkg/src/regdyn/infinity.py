"""Dynamics of the induced map on the line at infinity.

A regular map restricts to f_inf = [P_d : Q_d] on the invariant line at
infinity.  Fixed points are the projective roots of z2*P_d - z1*Q_d; each
carries a multiplier whose arithmetic nature drives the trichotomy:
superattracting (multiplier 0), root of unity, or a place where the
multiplier has absolute value > 1 (Kronecker's theorem makes these
exhaustive and exclusive).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import sympy as sp

from .exactnum import (AlgebraicNumber, ExpandingPlaceWitness, Place,
                       find_expanding_place, is_root_of_unity)
from .heights import PreperiodicityVerdict
from .maps import RegularMap
from .numberfield import NumberField
from .polyalg import MultiPoly

_x = sp.Symbol("x")


@dataclass(frozen=True)
class Superattracting:
    pass


@dataclass(frozen=True)
class RootOfUnity:
    order: int


@dataclass(frozen=True)
class ExpandingPlace:
    place: Place
    witness: ExpandingPlaceWitness


@dataclass
class InfinityFixedPoint:
    """A fixed point of f_inf given by (coordinate, chart):
    chart 0 means [1 : t], chart 1 means [t : 1]."""
    coordinate: AlgebraicNumber
    chart: int
    multiplicity: int
    multiplier: AlgebraicNumber
    classification: object

    def projective(self) -> str:
        t = self.coordinate
        s = str(t.as_rational()) if t.is_rational() else repr(t)
        return f"[1 : {s}]" if self.chart == 0 else f"[{s} : 1]"


def classify_multiplier(lam: AlgebraicNumber):
    if lam.is_zero() or (lam.is_rational() and lam.as_rational() == 0):
        return Superattracting()
    rou, n = is_root_of_unity(lam)
    if rou:
        return RootOfUnity(n)
    witness = find_expanding_place(lam)
    # Kronecker: a nonzero algebraic integer-or-not that is not a root of
    # unity always has an expanding place
    return ExpandingPlace(witness.place, witness)


def _fixed_form(f: RegularMap) -> MultiPoly:
    """z2 * P_d(z1,z2) - z1 * Q_d(z1,z2), a binary form of degree d+1
    (variables reused as (z, w) = (z1, z2))."""
    z = MultiPoly.variable(0)
    w = MultiPoly.variable(1)
    return w * f.top_P - z * f.top_Q


def _nf_multiplier(f: RegularMap, alpha: AlgebraicNumber, chart: int) -> AlgebraicNumber:
    """Multiplier of f_inf at the fixed point with chart coordinate alpha.

    chart 1: t = z/w, map t -> P_d(t,1)/Q_d(t,1); chart 0: t = w/z,
    map t -> Q_d(1,t)/P_d(1,t).  Derivative evaluated exactly in Q(alpha)."""
    if chart == 1:
        num = [f.top_P.coefficient(f.d - k, k) for k in range(f.d + 1)][::-1]
        den = [f.top_Q.coefficient(f.d - k, k) for k in range(f.d + 1)][::-1]
    else:
        num = [f.top_Q.coefficient(f.d - k, k) for k in range(f.d + 1)]
        den = [f.top_P.coefficient(f.d - k, k) for k in range(f.d + 1)]
    # num/den as univariate polys in t (ascending)
    K = alpha.number_field()
    a = K.generator() if alpha.degree > 1 else K(alpha.as_rational())
    if alpha.degree == 1:
        K = None
        a = alpha.as_rational()

    def ev(cs, t):
        total = 0
        for c in reversed(cs):
            total = total * t + c
        return total

    def dcs(cs):
        return [k * cs[k] for k in range(1, len(cs))]

    N, D = ev(num, a), ev(den, a)
    Np, Dp = ev(dcs(num), a), ev(dcs(den), a)
    lam = (Np * D - N * Dp) / (D * D)  # (N/D)'
    if K is None:
        return AlgebraicNumber.from_rational(Fraction(lam))
    return _algebraic_from_nf(lam, alpha)


def _algebraic_from_nf(elem, alpha: AlgebraicNumber) -> AlgebraicNumber:
    """Package an element of Q(alpha) as an AlgebraicNumber with the
    embedding matching alpha's."""
    if elem == 0 or (hasattr(elem, "is_rational") and elem.is_rational()):
        q = elem.as_rational() if hasattr(elem, "as_rational") else Fraction(elem)
        return AlgebraicNumber.from_rational(q)
    root = alpha.root()
    expr = sum(sp.Rational(c.numerator, c.denominator) * root**k
               for k, c in enumerate(elem.coeffs))
    return AlgebraicNumber.from_expr(expr)


def fixed_points_infinity(f: RegularMap) -> list:
    """All fixed points of f_inf with multiplicities (summing to d+1),
    multipliers, and classifications."""
    form = _fixed_form(f)
    d = f.d
    out = []
    # dehomogenize in chart [1 : t], t = z2/z1: the degree drop of form(1, t)
    # against d+1 is exactly the multiplicity of the root at [0 : 1]
    poly_t = sum(sp.Rational(c.numerator, c.denominator) * _x**j
                 for (i, j), c in form.coeffs.items())
    poly_t = sp.Poly(poly_t, _x)
    drop = d + 1 - poly_t.degree()
    # roots with t = w/z finite: chart 0 coordinates
    for fac, mult in sp.factor_list(poly_t)[1]:
        fac = sp.Poly(fac, _x)
        for idx in range(fac.degree()):
            alpha = AlgebraicNumber(fac, idx)
            lam = _nf_multiplier(f, alpha, chart=0)
            out.append(InfinityFixedPoint(alpha, 0, mult, lam,
                                          classify_multiplier(lam)))
    if drop > 0:
        # remaining multiplicity sits at [0:1] (t = infinity in this chart)
        alpha = AlgebraicNumber.from_rational(0)  # chart 1 coordinate z/w = 0
        lam = _nf_multiplier(f, alpha, chart=1)
        out.append(InfinityFixedPoint(alpha, 1, drop, lam,
                                      classify_multiplier(lam)))
    assert sum(p.multiplicity for p in out) == d + 1
    return out


def multiplier(f: RegularMap, point) -> AlgebraicNumber:
    """Multiplier at a projective point (pair [z1 : z2] of rationals or an
    (AlgebraicNumber, chart) pair); the point must be fixed by f_inf."""
    if isinstance(point, InfinityFixedPoint):
        return point.multiplier
    if isinstance(point, tuple) and isinstance(point[0], AlgebraicNumber):
        alpha, chart = point
    else:
        z1, z2 = Fraction(point[0]), Fraction(point[1])
        if z1 == z2 == 0:
            raise ValueError("not a projective point")
        if z1 != 0:
            alpha, chart = AlgebraicNumber.from_rational(z2 / z1), 0
        else:
            alpha, chart = AlgebraicNumber.from_rational(0), 1
    if not _is_fixed(f, alpha, chart):
        raise ValueError("point is not fixed by the map at infinity")
    return _nf_multiplier(f, alpha, chart)


def _is_fixed(f: RegularMap, alpha: AlgebraicNumber, chart: int) -> bool:
    form = _fixed_form(f)
    if alpha.degree == 1:
        t = alpha.as_rational()
        val = form.eval(Fraction(1), t) if chart == 0 else form.eval(t, Fraction(1))
        return val == 0
    K = alpha.number_field()
    a = K.generator()
    val = form.eval(K(1), a) if chart == 0 else form.eval(a, K(1))
    return val.is_zero()


# ---------------------------------------------------------------------------
# orbits on the line at infinity


def _one_var_canonical_height_positive(f: RegularMap, z1: Fraction, z2: Fraction) -> bool:
    """True iff the point [z1:z2] has positive canonical height for f_inf.

    Uses the coprime-integer-pair model: write the point as coprime
    integers and iterate the binary forms with gcd removal; the logarithm
    of max(|a|,|b|) then tracks d^n times the height, which is positive
    iff it exceeds the comparison constant after enough steps."""
    import math
    a = z1.numerator * z2.denominator
    b = z2.numerator * z1.denominator
    g = math.gcd(a, b)
    a, b = a // g, b // g
    # height h_n = log max(|a_n|, |b_n|)/d^n converges; h > 0 iff escape
    d = f.d
    logmax = []
    for n in range(12):
        na = f.top_P.eval(Fraction(a), Fraction(b))
        nb = f.top_Q.eval(Fraction(a), Fraction(b))
        den = na.denominator * nb.denominator // math.gcd(na.denominator, nb.denominator)
        ia, ib = int(na * den), int(nb * den)
        g = math.gcd(ia, ib)
        a, b = ia // g, ib // g
        logmax.append(math.log(max(abs(a), abs(b))) / d ** (n + 1))
        if max(abs(a), abs(b)).bit_length() > 4000:
            break
    return logmax and logmax[-1] > 1e-3


def infinity_orbit_preperiodicity(f: RegularMap, point, orbit_cap: int = 64,
                                  degree_cap: int = 64) -> PreperiodicityVerdict:
    """Exact orbit of a point of the line at infinity under [P_d : Q_d]
    with cycle detection inside the field of definition."""
    if isinstance(point, InfinityFixedPoint):
        return PreperiodicityVerdict.preperiodic(0, 1, [point])
    if isinstance(point, tuple) and len(point) == 2 \
            and isinstance(point[0], AlgebraicNumber):
        alpha, chart = point
        if alpha.degree > degree_cap:
            return PreperiodicityVerdict.unknown()
        if alpha.degree == 1:
            q = alpha.as_rational()
            z1, z2 = (Fraction(1), q) if chart == 0 else (q, Fraction(1))
            return _rational_infinity_orbit(f, z1, z2, orbit_cap)
        return _nf_infinity_orbit(f, alpha, chart, orbit_cap)
    z1, z2 = Fraction(point[0]), Fraction(point[1])
    return _rational_infinity_orbit(f, z1, z2, orbit_cap)


def _normalize_rational_pair(z1: Fraction, z2: Fraction):
    import math
    if z1 == 0:
        return (0, 1)
    if z2 == 0:
        return (1, 0)
    a = z1.numerator * z2.denominator
    b = z2.numerator * z1.denominator
    g = math.gcd(a, b)
    a, b = a // g, b // g
    if b < 0 or (b == 0 and a < 0):
        a, b = -a, -b
    return (a, b)


def _rational_infinity_orbit(f: RegularMap, z1, z2, orbit_cap):
    cur = _normalize_rational_pair(z1, z2)
    seen = {cur: 0}
    orbit = [cur]
    for n in range(1, orbit_cap + 1):
        a, b = cur
        na = f.top_P.eval(Fraction(a), Fraction(b))
        nb = f.top_Q.eval(Fraction(a), Fraction(b))
        cur = _normalize_rational_pair(na, nb)
        if cur in seen:
            k = seen[cur]
            return PreperiodicityVerdict.preperiodic(k, n - k, orbit)
        if max(abs(cur[0]), abs(cur[1])) > 10**60:
            break
        seen[cur] = n
        orbit.append(cur)
    if _one_var_canonical_height_positive(f, Fraction(z1), Fraction(z2)):
        return PreperiodicityVerdict.not_preperiodic(Fraction(1, 10**6))
    return PreperiodicityVerdict.unknown()


def _nf_infinity_orbit(f: RegularMap, alpha: AlgebraicNumber, chart, orbit_cap):
    K = alpha.number_field()
    a0 = K.generator()
    cur = (K(1), a0) if chart == 0 else (a0, K(1))
    cur = _normalize_nf_pair(cur)
    seen = {_nf_key(cur): 0}
    orbit = [cur]
    for n in range(1, orbit_cap + 1):
        z1, z2 = cur
        nz1 = f.top_P.eval(z1, z2)
        nz2 = f.top_Q.eval(z1, z2)
        if nz1.is_zero() and nz2.is_zero():
            raise RuntimeError("regular map sent a projective point to 0")
        cur = _normalize_nf_pair((nz1, nz2))
        key = _nf_key(cur)
        if key in seen:
            k = seen[key]
            return PreperiodicityVerdict.preperiodic(k, n - k, orbit)
        if max(c.numerator.bit_length() + c.denominator.bit_length()
               for z in cur for c in z.coeffs) > 4096:
            break
        seen[key] = n
        orbit.append(cur)
    return PreperiodicityVerdict.unknown()


def _normalize_nf_pair(pair):
    z1, z2 = pair
    if not z2.is_zero():
        return (z1 / z2, z2 / z2)
    return (z1 / z1, z2 / z1)


def _nf_key(pair):
    return (pair[0].coeffs, pair[1].coeffs)


def periodic_points_infinity(f: RegularMap, period: int, degree_cap: int = 4) -> list:
    """Fixed points of the n-fold composition of the binary forms."""
    if period > degree_cap:
        raise ValueError(f"period {period} exceeds cap {degree_cap}")
    A, B = f.top_P, f.top_Q
    for _ in range(period - 1):
        A, B = A.compose(f.top_P, f.top_Q), B.compose(f.top_P, f.top_Q)
    gmap = RegularMap(A, B, f.d ** period, A, B, Fraction(1))
    # reuse the fixed-point machinery on the composed forms (the resultant
    # slot is unused by _fixed_form/_nf_multiplier)
    return fixed_points_infinity(gmap)
