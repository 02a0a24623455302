"""Regular polynomial endomorphisms of the affine plane.

A polynomial map f = (P, Q) of degree d is *regular* when the top-degree
forms P_d, Q_d share no projective zero, i.e. their homogeneous resultant
is nonzero.  Such a map extends to the projective plane, fixes the line
at infinity, and restricts there to the degree-d map [P_d : Q_d].
"""

from __future__ import annotations

from fractions import Fraction

import sympy as sp

from .polyalg import MultiPoly, HomogPoly3, homogenize, parse_poly


class NotRegular(ValueError):
    pass


class DegreeTooLow(ValueError):
    pass


class BitSizeCap(RuntimeError):
    pass


def binary_form_resultant(p: MultiPoly, q: MultiPoly, d: int) -> Fraction:
    """Resultant of two binary forms of formal degree d (Sylvester determinant).

    The coefficient vectors are padded to length d+1, so vanishing leading
    coefficients (a zero at [1:0]) are handled uniformly."""
    pc = [sp.Rational(p.coefficient(d - k, k)) for k in range(d + 1)]
    qc = [sp.Rational(q.coefficient(d - k, k)) for k in range(d + 1)]
    n = 2 * d
    rows = []
    for s in range(d):
        rows.append([pc[j - s] if 0 <= j - s <= d else 0 for j in range(n)])
    for s in range(d):
        rows.append([qc[j - s] if 0 <= j - s <= d else 0 for j in range(n)])
    det = sp.Rational(sp.Matrix(rows).det(method="bareiss"))
    return Fraction(int(det.p), int(det.q))


class RegularMap:
    """Certified regular endomorphism; immutable after construction."""

    def __init__(self, P: MultiPoly, Q: MultiPoly, d: int, top_P: MultiPoly,
                 top_Q: MultiPoly, res: Fraction):
        self.P = P
        self.Q = Q
        self.d = d
        self.top_P = top_P
        self.top_Q = top_Q
        self.res = res

    @property
    def degree(self) -> int:
        return self.d

    def lift(self) -> tuple:
        """Homogeneous lift F = (z0^d, P~, Q~) of degree d."""
        z0d = HomogPoly3({(self.d, 0, 0): 1}, self.d)
        return (z0d, homogenize(self.P, self.d), homogenize(self.Q, self.d))

    def restrict_infinity(self) -> tuple:
        """The induced self-map [P_d : Q_d] of the line at infinity, as a
        coprime pair of binary forms in (z, w)."""
        return (self.top_P, self.top_Q)

    def apply(self, pt):
        z, w = pt
        return (self.P.eval(z, w), self.Q.eval(z, w))

    def iterate(self, n: int, pt, max_bits: int = 10**6):
        """Exact n-th image of a point with rational (or number-field)
        coordinates; raises BitSizeCap if coordinates blow up."""
        if n < 0:
            raise ValueError("iterate needs n >= 0")
        z, w = pt
        for _ in range(n):
            z, w = self.P.eval(z, w), self.Q.eval(z, w)
            if isinstance(z, Fraction) and isinstance(w, Fraction):
                bits = max(z.numerator.bit_length(), z.denominator.bit_length(),
                           w.numerator.bit_length(), w.denominator.bit_length())
                if bits > max_bits:
                    raise BitSizeCap(f"coordinate size {bits} bits exceeds cap")
        return (z, w)

    def __repr__(self):
        return f"RegularMap(({self.P.to_string()}, {self.Q.to_string()}), d={self.d})"


def make_regular_map(P, Q) -> RegularMap:
    """Certify and build a regular map from two polynomials (or strings)."""
    if isinstance(P, str):
        P = parse_poly(P)
    if isinstance(Q, str):
        Q = parse_poly(Q)
    d = max(P.degree, Q.degree)
    if d < 2:
        raise DegreeTooLow(f"degree {d} < 2")
    top_P = P.homogeneous_part(d)
    top_Q = Q.homogeneous_part(d)
    res = binary_form_resultant(top_P, top_Q, d)
    if res == 0:
        raise NotRegular("top-degree forms share a projective zero "
                         "(homogeneous resultant vanishes)")
    return RegularMap(P, Q, d, top_P, top_Q, res)
