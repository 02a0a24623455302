"""Places of Q, exact absolute values, and algebraic numbers.

The base field is fixed to the rationals.  Algebraic numbers are
represented by an irreducible primitive integer minimal polynomial
together with an embedding index (sympy's ``CRootOf`` root ordering)
and are refinable to arbitrary precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import sympy as sp
from sympy.functions.combinatorial.numbers import totient

from .intervals import RealInterval
from .numberfield import NumberField

_x = sp.Symbol("x")

Rational = Fraction


@dataclass(frozen=True)
class Place:
    """An absolute value on Q: the Archimedean one or a p-adic one."""

    prime: Optional[int] = None  # None means Archimedean
    local_degree: int = 1

    def __post_init__(self):
        if self.prime is not None and not sp.isprime(self.prime):
            raise ValueError(f"{self.prime} is not prime")

    @property
    def is_finite(self) -> bool:
        return self.prime is not None

    @staticmethod
    def archimedean() -> "Place":
        return Place(None)

    @staticmethod
    def finite(p: int) -> "Place":
        return Place(p)

    def __repr__(self):
        return "Place(inf)" if self.prime is None else f"Place({self.prime})"


def valuation(x: Fraction, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("valuation of 0 is +infinity")
    v = 0
    n = x.numerator
    while n % p == 0:
        n //= p
        v += 1
    d = x.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v


def abs_at_place(x, v: Place) -> RealInterval:
    """|x|_v as an exact rational enclosure (|p|_p = 1/p normalization)."""
    x = Fraction(x)
    if x == 0:
        return RealInterval.exact(0)
    if v.is_finite:
        return RealInterval.exact(Fraction(v.prime) ** (-valuation(x, v.prime)))
    return RealInterval.exact(abs(x))


def abs_at_place_exact(x, v: Place) -> Fraction:
    return abs_at_place(x, v).lower


@dataclass(frozen=True)
class ProductFormulaWitness:
    support: dict  # Place -> Fraction, the places where |x|_v != 1
    product: Fraction

    @property
    def holds(self) -> bool:
        return self.product == 1


def product_formula_check(x) -> ProductFormulaWitness:
    """Finite support of |x|_v and the exact product over it."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("product formula needs a nonzero rational")
    support = {}
    a = abs(x)
    if a != 1:
        support[Place.archimedean()] = a
    primes = set(sp.factorint(abs(x.numerator))) | set(sp.factorint(x.denominator))
    for p in sorted(primes):
        ap = Fraction(p) ** (-valuation(x, p))
        if ap != 1:
            support[Place.finite(p)] = ap
    prod = Fraction(1)
    for val in support.values():
        prod *= val
    return ProductFormulaWitness(support, prod)


@dataclass(frozen=True)
class ComplexInterval:
    re: RealInterval
    im: RealInterval

    @property
    def width(self) -> Fraction:
        return max(self.re.width, self.im.width)

    def contains(self, z: complex) -> bool:
        return self.re.contains(Fraction(z.real)) and self.im.contains(Fraction(z.imag))

    def disjoint(self, other: "ComplexInterval") -> bool:
        return not (self.re.overlaps(other.re) and self.im.overlaps(other.im))

    def center(self) -> complex:
        return complex(self.re.midpoint()) + 1j * complex(self.im.midpoint())

    def abs_lower(self) -> Fraction:
        def lo(i):
            if i.lower <= 0 <= i.upper:
                return Fraction(0)
            return min(abs(i.lower), abs(i.upper))
        # |z|^2 >= lo(re)^2 + lo(im)^2; return a dyadic-safe underestimate of |z|
        s = lo(self.re) ** 2 + lo(self.im) ** 2
        return _sqrt_lower(s)

    def abs_upper(self) -> Fraction:
        s = max(abs(self.re.lower), abs(self.re.upper)) ** 2 \
            + max(abs(self.im.lower), abs(self.im.upper)) ** 2
        return _sqrt_upper(s)


def _sqrt_lower(q: Fraction, bits: int = 128) -> Fraction:
    # floor-isqrt based certified lower bound for sqrt(q)
    if q == 0:
        return Fraction(0)
    import math
    scale = 1 << bits
    n = q.numerator * q.denominator * scale * scale
    return Fraction(math.isqrt(n), q.denominator * scale)


def _sqrt_upper(q: Fraction, bits: int = 128) -> Fraction:
    if q == 0:
        return Fraction(0)
    import math
    scale = 1 << bits
    n = q.numerator * q.denominator * scale * scale
    return Fraction(math.isqrt(n) + 1, q.denominator * scale)


class AlgebraicNumber:
    """Root number ``embedding_index`` (CRootOf order) of an irreducible
    primitive integer polynomial."""

    def __init__(self, minpoly, embedding_index: int = 0):
        poly = sp.Poly([sp.Integer(c) for c in reversed(list(minpoly))], _x) \
            if not isinstance(minpoly, sp.Poly) else minpoly
        poly = poly.primitive()[1]
        if poly.LC() < 0:
            poly = -poly
        if not poly.is_irreducible:
            raise ValueError("minimal polynomial must be irreducible")
        self.minpoly = poly
        if not 0 <= embedding_index < poly.degree():
            raise ValueError("embedding index out of range")
        self.embedding_index = embedding_index

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_rational(q) -> "AlgebraicNumber":
        q = Fraction(q)
        return AlgebraicNumber([-q.numerator, q.denominator])

    @staticmethod
    def from_expr(expr) -> "AlgebraicNumber":
        """Algebraic number from an exact sympy expression."""
        mp = sp.minimal_polynomial(expr, _x)
        poly = sp.Poly(mp, _x)
        roots = poly.all_roots()
        for prec in (30, 60, 120):
            target = sp.N(expr, prec)
            dists = [abs(sp.N(r, prec) - target) for r in roots]
            best = min(range(len(roots)), key=lambda i: dists[i])
            others = [d for i, d in enumerate(dists) if i != best]
            if not others or dists[best] < min(others) / 4:
                return AlgebraicNumber(poly, best)
        raise ValueError("could not certify embedding index")

    # -- basic data ---------------------------------------------------

    @property
    def degree(self) -> int:
        return self.minpoly.degree()

    def minpoly_coeffs(self) -> tuple:
        """Coefficients c_0..c_n, ascending."""
        return tuple(int(c) for c in reversed(self.minpoly.all_coeffs()))

    def is_rational(self) -> bool:
        return self.degree == 1

    def as_rational(self) -> Fraction:
        c0, c1 = self.minpoly_coeffs()
        return Fraction(-c0, c1)

    def number_field(self) -> NumberField:
        return NumberField(self.minpoly_coeffs())

    def root(self) -> sp.Expr:
        return self.minpoly.all_roots()[self.embedding_index]

    def isolating_box(self, precision=Fraction(1, 10**6)) -> ComplexInterval:
        return self.conjugate_boxes(precision)[self.embedding_index]

    def conjugate_boxes(self, precision=Fraction(1, 10**6)) -> list:
        return conjugates(self, precision)

    def approx(self, digits: int = 30) -> complex:
        return complex(sp.N(self.root(), digits))

    def is_zero(self) -> bool:
        return self.minpoly == sp.Poly(_x, _x)

    def __eq__(self, other):
        return (isinstance(other, AlgebraicNumber)
                and self.minpoly == other.minpoly
                and self.embedding_index == other.embedding_index)

    def __hash__(self):
        return hash((self.minpoly, self.embedding_index))

    def __repr__(self):
        if self.is_rational():
            return f"AlgebraicNumber({self.as_rational()})"
        return f"AlgebraicNumber({self.minpoly.as_expr()}, root #{self.embedding_index})"


def conjugates(a: AlgebraicNumber, precision=Fraction(1, 10**6)) -> list:
    """Pairwise-disjoint complex boxes, one per root of the minimal
    polynomial, each of width <= precision."""
    precision = Fraction(precision)
    if precision <= 0:
        raise ValueError("precision must be positive")
    roots = a.minpoly.all_roots()
    for digits in (20, 40, 80, 160, 320, 640):
        radius = Fraction(1, 10 ** (digits - 3))
        if 2 * radius > precision:
            continue
        boxes = []
        for r in roots:
            val = sp.N(r, digits)
            re = Fraction(str(sp.re(val)))
            im = Fraction(str(sp.im(val)))
            boxes.append(ComplexInterval(
                RealInterval(re - radius, re + radius),
                RealInterval(im - radius, im + radius)))
        ok = all(boxes[i].disjoint(boxes[j])
                 for i in range(len(boxes)) for j in range(i + 1, len(boxes)))
        if ok:
            return boxes
    raise RuntimeError("failed to isolate roots at requested precision")


def is_root_of_unity(a: AlgebraicNumber):
    """(True, n) iff the minimal polynomial is the n-th cyclotomic
    polynomial; (False, None) otherwise.  Exact."""
    if a.is_zero():
        raise ValueError("0 is not a root of unity")
    deg = a.degree
    # phi(n) >= sqrt(n/2), so phi(n) = deg forces n <= 2*deg^2 + 1
    for n in range(1, 2 * deg * deg + 2):
        if totient(n) != deg:
            continue
        cyc = sp.Poly(sp.polys.specialpolys.cyclotomic_poly(n, _x), _x)
        if cyc == a.minpoly:
            return True, n
    return False, None


@dataclass(frozen=True)
class ExpandingPlaceWitness:
    place: Place
    embedding_index: Optional[int] = None  # Archimedean witness
    note: str = ""


def find_expanding_place(a: AlgebraicNumber) -> Optional[ExpandingPlaceWitness]:
    """A place v (with extension witness) where |a|_v > 1, or None.

    None happens exactly when a is a root of unity (Kronecker)."""
    if a.is_zero():
        raise ValueError("0 has no expanding place")
    rou, _ = is_root_of_unity(a)
    if rou:
        return None
    # Archimedean embeddings first
    for precision in (Fraction(1, 10**6), Fraction(1, 10**20), Fraction(1, 10**50)):
        boxes = conjugates(a, precision)
        for i, box in enumerate(boxes):
            if box.abs_lower() > 1:
                return ExpandingPlaceWitness(Place.archimedean(), i,
                                             note=f"|conjugate {i}| > 1")
        lead = a.minpoly_coeffs()[-1]
        if abs(lead) > 1:
            p = min(sp.factorint(lead))
            return ExpandingPlaceWitness(
                Place.finite(int(p)), None,
                note=f"minimal polynomial not monic: {p} divides leading coefficient")
        # monic with no archimedean witness found yet: by Kronecker a
        # non-root-of-unity must have a conjugate of modulus > 1, keep refining
    raise RuntimeError("could not certify an expanding place; refinement exhausted")


def nth_power_in_quotient(a: AlgebraicNumber, n: int):
    """a^n computed exactly in Q[x]/(minpoly)."""
    K = a.number_field()
    return K.generator() ** n
