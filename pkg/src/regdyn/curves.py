"""Plane curves: points at infinity, pushforward under regular maps,
curve-level preperiodicity, and the integrated dynamical report.

Curves are stored as canonical polynomials (squarefree, primitive integer
coefficients, sign-normalized) so that equality of curves is equality of
polynomials and orbit cycles in curve space are detected exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import sympy as sp

from .exactnum import AlgebraicNumber
from .heights import PreperiodicityVerdict, is_preperiodic
from .infinity import (RegularMap, Superattracting, classify_multiplier,
                       infinity_orbit_preperiodicity, multiplier)
from .numberfield import NumberField
from .polyalg import MultiPoly, homogeneous_top, parse_poly

_z, _w = sp.symbols("z w")
_Z, _W = sp.symbols("Z W")
_t = sp.Symbol("t")


class PlaneCurve:
    """A plane curve {R = 0} in canonical form."""

    def __init__(self, poly):
        if isinstance(poly, str):
            poly = parse_poly(poly)
        if isinstance(poly, PlaneCurve):
            poly = poly.poly
        expr = poly.to_sympy(_z, _w)
        if sp.Poly(expr, _z, _w).total_degree() < 1:
            raise ValueError("curve polynomial must be nonconstant")
        # squarefree part
        _c, factors = sp.factor_list(expr, _z, _w)
        expr = sp.prod([b for b, _m in factors])
        p = sp.Poly(sp.expand(expr), _z, _w, domain="QQ")
        _den, p = p.clear_denoms(convert=True)
        _cont, p = p.primitive()
        # sign normalization on the lexicographically leading coefficient
        if p.coeffs()[0] < 0:
            p = -p
        self.poly = MultiPoly.from_sympy(p.as_expr(), _z, _w)

    @property
    def degree(self) -> int:
        return self.poly.degree

    def key(self):
        return tuple(sorted(self.poly.coeffs.items()))

    def __eq__(self, other):
        return isinstance(other, PlaneCurve) and self.poly.coeffs == other.poly.coeffs

    def __hash__(self):
        return hash(self.key())

    def contains(self, pt) -> bool:
        return self.poly.eval(pt[0], pt[1]) == 0

    def __repr__(self):
        return f"PlaneCurve({self.poly.to_string()})"


@dataclass
class InfinityPoint:
    """A point of the line at infinity: [1 : t] in chart 0, [t : 1] in chart 1."""
    coordinate: AlgebraicNumber
    chart: int
    multiplicity: int

    def projective(self):
        if self.coordinate.is_rational():
            t = self.coordinate.as_rational()
            return (Fraction(1), t) if self.chart == 0 else (t, Fraction(1))
        return None


@dataclass
class InfinityDivisor:
    points: list

    def total_multiplicity(self) -> int:
        return sum(p.multiplicity for p in self.points)


def points_at_infinity(C: PlaneCurve) -> InfinityDivisor:
    """Roots of the top homogeneous form of R, with multiplicities
    (the intersection numbers of the closure with the line at infinity)."""
    top = homogeneous_top(C.poly)
    D = C.degree
    # chart 0 coordinate t = w/z
    poly_t = sum(sp.Rational(c.numerator, c.denominator) * _t**j
                 for (i, j), c in top.coeffs.items())
    poly_t = sp.Poly(poly_t, _t)
    pts = []
    drop = D - poly_t.degree()
    if drop > 0:  # the root [0 : 1]
        pts.append(InfinityPoint(AlgebraicNumber.from_rational(0), 1, drop))
    for fac, mult in sp.factor_list(poly_t)[1]:
        fac = sp.Poly(fac, _t)
        if fac.degree() == 0:
            continue
        for idx in range(fac.degree()):
            pts.append(InfinityPoint(AlgebraicNumber(fac, idx), 0, mult))
    div = InfinityDivisor(pts)
    assert div.total_multiplicity() == D
    return div


# ---------------------------------------------------------------------------
# pushforward


class EliminationError(RuntimeError):
    pass


def pushforward(f: RegularMap, C: PlaneCurve) -> PlaneCurve:
    """The squarefree defining polynomial of the Zariski closure of f(C).

    Two-stage resultant elimination per irreducible component, followed by
    exact extraneous-factor removal: a factor G of the eliminant is kept
    iff the component's polynomial divides G(P, Q)."""
    Pe = f.P.to_sympy(_z, _w)
    Qe = f.Q.to_sympy(_z, _w)
    Re = C.poly.to_sympy(_z, _w)
    kept = []
    for Ri, _m in sp.factor_list(Re, _z, _w)[1]:
        if sp.Poly(Ri, _z, _w).total_degree() < 1:
            continue
        kept.extend(_component_image(Ri, Pe, Qe))
    prod = sp.expand(sp.prod(kept))
    out = PlaneCurve(MultiPoly.from_sympy(prod, _Z, _W))
    if out.degree > f.d * C.degree:
        raise EliminationError("degree bound violated (elimination bug)")
    return out


def _split_eliminant(expr, inner):
    """(squarefree part of the factors involving inner, inner-free factors).

    Pure-inner factors are dropped: they impose no condition on (Z, W).
    Discarding multiplicities keeps root sets, which is all the later
    divisibility filter needs."""
    mixed, free = [], []
    for b, _m in sp.factor_list(expr, gens=(_z, _w, _Z, _W))[1]:
        has_inner = sp.degree(b, inner) >= 1
        has_target = sp.degree(b, _Z) >= 1 or sp.degree(b, _W) >= 1
        if has_inner and has_target:
            mixed.append(b)
        elif has_target:
            free.append(b)
    return mixed, free


def _component_image(Ri, Pe, Qe) -> list:
    for shear in (0, 1, 2, 3, 5):
        P1 = sp.expand(Pe + shear * Qe)
        Rp = sp.Poly(Ri, _z, _w)
        inner = _z if Rp.degree(_w) > 0 else _w
        outer = _w if inner is _z else _z
        E1 = sp.resultant(Ri, _Z - P1, outer)
        E2 = sp.resultant(Ri, _W - Qe, outer)
        if E1 == 0 or E2 == 0:
            continue
        m1, free1 = _split_eliminant(E1, inner)
        m2, free2 = _split_eliminant(E2, inner)
        candidates = list(free1) + list(free2)
        if m1 and m2:
            elim = sp.resultant(sp.prod(m1), sp.prod(m2), inner)
            if elim == 0:
                continue  # shared inner factor; retry sheared
            candidates += [G for G, _m in sp.factor_list(sp.expand(elim), _Z, _W)[1]
                           if sp.Poly(G, _Z, _W).total_degree() >= 1]
        out = []
        for G in candidates:
            G0 = sp.expand(G.subs(_Z, _Z + shear * _W)) if shear else G
            # exact component test: Ri | G0(P, Q)
            val = sp.expand(G0.subs({_Z: Pe, _W: Qe}, simultaneous=True))
            _q, r = sp.div(val, Ri, _z, _w)
            if r == 0 and G0 not in out:
                out.append(sp.expand(G0))
        if out:
            return out
    raise EliminationError("elimination degenerated for every shear tried")


# ---------------------------------------------------------------------------
# curve orbits


@dataclass
class CurveOrbitStatus:
    kind: str  # "Fixed" | "Periodic" | "PreperiodicTo" | "NotDetectedPreperiodic"
    preperiod: Optional[int] = None
    period: Optional[int] = None
    orbit: list = field(default_factory=list)
    caps: dict = field(default_factory=dict)


def curve_preperiodicity(f: RegularMap, C: PlaneCurve, max_iters: int = 8,
                         max_degree: int = 64) -> CurveOrbitStatus:
    """Iterate pushforward with exact canonical-form cycle detection."""
    C = C if isinstance(C, PlaneCurve) else PlaneCurve(C)
    orbit = [C]
    seen = {C.key(): 0}
    for n in range(1, max_iters + 1):
        nxt = pushforward(f, orbit[-1])
        if nxt.key() in seen:
            k = seen[nxt.key()]
            period = n - k
            kind = "Fixed" if (k, period) == (0, 1) \
                else ("Periodic" if k == 0 else "PreperiodicTo")
            return CurveOrbitStatus(kind, k, period, orbit)
        if nxt.degree > max_degree:
            orbit.append(nxt)
            return CurveOrbitStatus("NotDetectedPreperiodic", orbit=orbit,
                                    caps={"max_degree": max_degree,
                                          "reached_degree": nxt.degree})
        seen[nxt.key()] = n
        orbit.append(nxt)
    return CurveOrbitStatus("NotDetectedPreperiodic", orbit=orbit,
                            caps={"max_iters": max_iters})


# ---------------------------------------------------------------------------
# preperiodic point search


@dataclass
class FoundPoint:
    point: tuple
    verdict: PreperiodicityVerdict


def _bounded_rationals(height_bound: int):
    for den in range(1, height_bound + 1):
        for num in range(-height_bound, height_bound + 1):
            q = Fraction(num, den)
            if q.denominator == den:
                yield q


def _roots_of_unity(max_order: int):
    """(exponent a, order n) for each root of unity exp(2*pi*i*a/n)."""
    for n in range(1, max_order + 1):
        for a in range(n):
            if math.gcd(a, n) == 1:
                yield a, n


def _on_curve_cyclotomic(R: MultiPoly, a1, n1, a2, n2) -> bool:
    """Exact test R(zeta^e1, zeta^e2) = 0 in the lcm cyclotomic field."""
    L = n1 * n2 // math.gcd(n1, n2)
    e1, e2 = a1 * L // n1, a2 * L // n2
    x = sp.Dummy("x")
    expr = sp.Integer(0)
    for (i, j), c in R.coeffs.items():
        expr += sp.Rational(c.numerator, c.denominator) * x ** ((i * e1 + j * e2) % L)
    return sp.rem(sp.Poly(expr, x), sp.Poly(sp.cyclotomic_poly(L, x), x)).is_zero


def _cyclotomic_orbit(f: RegularMap, a1, n1, a2, n2, orbit_cap: int):
    """Exact orbit of (zeta^e1, zeta^e2) in Q(zeta_L); None if no cycle found."""
    L = n1 * n2 // math.gcd(n1, n2)
    x = sp.Dummy("x")
    K = NumberField(sp.Poly(sp.cyclotomic_poly(L, x), x).all_coeffs()[::-1])
    g = K.generator()
    cur = (g ** (a1 * L // n1), g ** (a2 * L // n2))
    key = lambda pr: (tuple(pr[0].coeffs), tuple(pr[1].coeffs))
    seen = {key(cur): 0}
    orbit = [cur]
    for n in range(1, orbit_cap + 1):
        cur = (f.P.eval(cur[0], cur[1]), f.Q.eval(cur[0], cur[1]))
        if key(cur) in seen:
            k = seen[key(cur)]
            return PreperiodicityVerdict.preperiodic(k, n - k, orbit)
        if max(abs(c.numerator) + c.denominator
               for e in cur for c in e.coeffs) > 10**60:
            return None
        seen[key(cur)] = n
        orbit.append(cur)
    return None


def find_preperiodic_points(f: RegularMap, C: PlaneCurve, height_bound: int = 3,
                            max_order: int = 24, orbit_cap: int = 64) -> list:
    """Preperiodic points found on C: rational points from vertical-line
    slices at bounded-height rationals, plus roots-of-unity pairs on C
    (membership and orbits checked exactly in cyclotomic fields)."""
    C = C if isinstance(C, PlaneCurve) else PlaneCurve(C)
    R = C.poly
    found = []
    seen = set()
    # rational probes along vertical lines z = a
    for a in _bounded_rationals(height_bound):
        expr = sum(sp.Rational((c * a**i).numerator, (c * a**i).denominator) * _w**j
                   for (i, j), c in R.coeffs.items())
        expr = sp.expand(expr)
        if expr == 0:
            roots = list(_bounded_rationals(height_bound))  # whole line on C
        elif not expr.free_symbols:
            continue
        else:
            roots = []
            for fac, _m in sp.factor_list(sp.Poly(expr, _w))[1]:
                fac = sp.Poly(fac, _w)
                if fac.degree() == 1:
                    c1, c0 = fac.all_coeffs()
                    roots.append(Fraction(int(sp.Rational(-c0, c1).p),
                                          int(sp.Rational(-c0, c1).q)))
        for b in roots:
            if (a, b) in seen:
                continue
            seen.add((a, b))
            verdict = is_preperiodic(f, (a, b), orbit_cap=orbit_cap)
            if verdict.kind == "Preperiodic":
                found.append(FoundPoint((a, b), verdict))
    # roots-of-unity probes (numeric prefilter, exact confirmation)
    rous = list(_roots_of_unity(max_order))
    for a1, n1 in rous:
        z1 = complex(math.cos(2 * math.pi * a1 / n1), math.sin(2 * math.pi * a1 / n1))
        for a2, n2 in rous:
            z2 = complex(math.cos(2 * math.pi * a2 / n2),
                         math.sin(2 * math.pi * a2 / n2))
            if abs(complex(R.eval(z1, z2))) > 1e-8:
                continue
            if not _on_curve_cyclotomic(R, a1, n1, a2, n2):
                continue
            tag = ("rou", a1, n1, a2, n2)
            if tag in seen or (n1 <= 2 and n2 <= 2):
                continue  # (+-1, +-1) already covered by the rational search
            seen.add(tag)
            verdict = _cyclotomic_orbit(f, a1, n1, a2, n2, orbit_cap)
            if verdict is not None:
                pt = (sp.exp(2 * sp.pi * sp.I * sp.Rational(a1, n1)),
                      sp.exp(2 * sp.pi * sp.I * sp.Rational(a2, n2)))
                found.append(FoundPoint(pt, verdict))
    return found


# ---------------------------------------------------------------------------
# integrated report


@dataclass
class InfinityPointReport:
    point: InfinityPoint
    orbit_verdict: PreperiodicityVerdict
    terminal_classification: object  # None when not computed
    note: str = ""


@dataclass
class DmmReport:
    infinity_points: list
    preperiodic_points: list
    curve_status: CurveOrbitStatus
    hypothesis_witnessed: bool
    conclusion_witnessed: bool
    consistency: Optional[bool]
    notes: list


def _terminal_classification(f: RegularMap, pt: InfinityPoint,
                             verdict: PreperiodicityVerdict):
    """Multiplier classification of the terminal cycle, when reachable."""
    if verdict.kind != "Preperiodic":
        return None, "orbit not resolved"
    period = verdict.period
    if period == 1 and verdict.preperiod == 0:
        lam = multiplier(f, pt.projective() if pt.projective() is not None
                         else (pt.coordinate, pt.chart))
        return classify_multiplier(lam), ""
    cyc = verdict.orbit[verdict.preperiod] if verdict.preperiod < len(verdict.orbit) \
        else None
    if cyc is None or not isinstance(cyc[0], (int, Fraction)):
        return None, "terminal cycle not rational; classification skipped"
    A, B = f.top_P, f.top_Q
    for _ in range(period - 1):
        A, B = A.compose(f.top_P, f.top_Q), B.compose(f.top_P, f.top_Q)
    gmap = RegularMap(A, B, f.d ** period, A, B, Fraction(1))
    lam = multiplier(gmap, (Fraction(cyc[0]), Fraction(cyc[1])))
    return classify_multiplier(lam), ""


def dmm_report(f: RegularMap, C: PlaneCurve, max_iters: int = 8,
               max_degree: int = 64, height_bound: int = 3,
               max_order: int = 24) -> DmmReport:
    """Assemble the full dynamical Manin-Mumford style report for (f, C):
    orbits of the points at infinity, multiplier classifications of their
    terminal cycles, preperiodic points found on C, and the curve's own
    orbit status — with witness-carrying flags for the theorem's
    hypothesis (a point at infinity not eventually superattracting) and
    conclusion (the curve is preperiodic)."""
    C = C if isinstance(C, PlaneCurve) else PlaneCurve(C)
    notes = []
    inf_reports = []
    for pt in points_at_infinity(C).points:
        proj = pt.projective()
        target = proj if proj is not None else (pt.coordinate, pt.chart)
        verdict = infinity_orbit_preperiodicity(f, target)
        cls, note = _terminal_classification(f, pt, verdict)
        inf_reports.append(InfinityPointReport(pt, verdict, cls, note))
        if note:
            notes.append(f"point {pt}: {note}")
    curve_status = curve_preperiodicity(f, C, max_iters, max_degree)
    pts = find_preperiodic_points(f, C, height_bound, max_order)
    hypothesis = any(r.orbit_verdict.kind == "Preperiodic"
                     and r.terminal_classification is not None
                     and not isinstance(r.terminal_classification, Superattracting)
                     for r in inf_reports)
    conclusion = curve_status.kind in ("Fixed", "Periodic", "PreperiodicTo")
    if not hypothesis and conclusion:
        notes.append("curve preperiodic but outside the theorem's hypothesis "
                     "(no non-superattracting point at infinity witnessed)")
    if not pts:
        notes.append("no preperiodic points found at the search caps; the "
                     "infinitude hypothesis is unsupported by this sample")
    consistency = None
    if conclusion and curve_status.period is not None:
        sides = [(r.orbit_verdict.preperiod, r.orbit_verdict.period)
                 for r in inf_reports
                 if r.orbit_verdict.kind == "Preperiodic"
                 and r.terminal_classification is not None
                 and not isinstance(r.terminal_classification, Superattracting)]
        if sides:
            consistency = all(s == (curve_status.preperiod, curve_status.period)
                              for s in sides)
    return DmmReport(inf_reports, pts, curve_status, hypothesis, conclusion,
                     consistency, notes)
