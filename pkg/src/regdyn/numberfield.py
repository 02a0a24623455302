"""Exact arithmetic in Q[x]/(m(x)) for an irreducible modulus m.

Used wherever orbits must be iterated exactly inside the field generated
by an algebraic coordinate (roots of unity on curves, fixed points at
infinity, ...).  Elements are coefficient tuples, so equality and
hashing are exact and cheap, which is what cycle detection needs.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def _trim(cs):
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _poly_divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    inv_lead = Fraction(1) / b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] * inv_lead
        if c:
            q[i] = c
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    return q, _trim(a)


class NumberField:
    """Q[x]/(m) with m monic irreducible over Q."""

    def __init__(self, modulus: Sequence):
        m = _trim([Fraction(c) for c in modulus])
        if len(m) < 2:
            raise ValueError("modulus must have positive degree")
        lead = m[-1]
        self.modulus = tuple(c / lead for c in m)
        self.degree = len(self.modulus) - 1

    def __call__(self, coeffs) -> "NFElement":
        if isinstance(coeffs, NFElement):
            if coeffs.field is not self and coeffs.field.modulus != self.modulus:
                raise ValueError("element of a different field")
            return coeffs
        if isinstance(coeffs, (int, Fraction)):
            coeffs = [coeffs]
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > self.degree:
            _, cs = _poly_divmod(cs, list(self.modulus))
        cs = cs + [Fraction(0)] * (self.degree - len(cs))
        return NFElement(self, tuple(cs[: self.degree]))

    def generator(self) -> "NFElement":
        return self([0, 1])

    def zero(self) -> "NFElement":
        return self(0)

    def one(self) -> "NFElement":
        return self(1)

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.modulus == other.modulus

    def __hash__(self):
        return hash(self.modulus)

    def __repr__(self):
        return f"NumberField(deg={self.degree})"


class NFElement:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: NumberField, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs

    def _lift(self, other):
        if isinstance(other, NFElement):
            if other.field.modulus != self.field.modulus:
                raise ValueError("mixed fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return NFElement(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return NFElement(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        prod = _poly_mul(list(self.coeffs), list(o.coeffs))
        _, rem = _poly_divmod(prod, list(self.field.modulus))
        rem = rem + [Fraction(0)] * (self.field.degree - len(rem))
        return NFElement(self.field, tuple(rem[: self.field.degree]))

    __rmul__ = __mul__

    def inverse(self) -> "NFElement":
        # extended Euclid in Q[x] against the modulus
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        # invariant: t_i * self ≡ r_i (mod modulus)
        r0, t0 = list(self.field.modulus), [Fraction(0)]
        r1, t1 = _trim(self.coeffs), [Fraction(1)]
        while r1:
            q, r = _poly_divmod(r0, r1)
            qt = _poly_mul(q, t1)
            n = max(len(t0), len(qt))
            t = _trim([(t0[i] if i < len(t0) else 0) - (qt[i] if i < len(qt) else 0)
                       for i in range(n)])
            r0, t0, r1, t1 = r1, t1, r, t
        if len(r0) != 1:
            raise ZeroDivisionError("element not invertible; modulus reducible?")
        return self.field([c / r0[0] for c in t0])

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.field(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.coeffs[0]

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.field.modulus, self.coeffs))

    def __repr__(self):
        return f"NFElement{self.coeffs}"
