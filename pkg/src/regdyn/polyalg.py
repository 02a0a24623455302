"""Exact bivariate polynomials over Q, parsing, homogenization, resultants."""

from __future__ import annotations

from fractions import Fraction

import sympy as sp


class PolyParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def _coerce_coeff(c):
    if isinstance(c, (int, Fraction)):
        return Fraction(c)
    return c  # generic ring element (e.g. a number-field element)


class MultiPoly:
    """Sparse bivariate polynomial: {(i, j): coefficient}."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        cs = {}
        if coeffs:
            for (i, j), c in coeffs.items():
                c = _coerce_coeff(c)
                if c != 0:
                    cs[(int(i), int(j))] = c
        self.coeffs = cs

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "MultiPoly":
        return MultiPoly()

    @staticmethod
    def constant(c) -> "MultiPoly":
        return MultiPoly({(0, 0): c})

    @staticmethod
    def variable(which: int) -> "MultiPoly":
        return MultiPoly({(1, 0) if which == 0 else (0, 1): 1})

    # -- structure ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.coeffs:
            return -1
        return max(i + j for i, j in self.coeffs)

    def degree_in(self, var: int) -> int:
        if not self.coeffs:
            return -1
        return max(e[var] for e in self.coeffs)

    def coefficient(self, i: int, j: int):
        return self.coeffs.get((i, j), Fraction(0))

    # -- arithmetic ---------------------------------------------------

    def _lift(self, other):
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.constant(other)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        out = dict(self.coeffs)
        for e, c in o.coeffs.items():
            s = out.get(e, 0) + c
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        return MultiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly({e: -c for e, c in self.coeffs.items()})

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
        out = {}
        for (i1, j1), c1 in self.coeffs.items():
            for (i2, j2), c2 in o.coeffs.items():
                e = (i1 + i2, j1 + j2)
                s = out.get(e, 0) + c1 * c2
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        return MultiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    # -- evaluation / substitution ------------------------------------

    def eval(self, z, w):
        """Evaluate at a point of any commutative ring."""
        total = 0
        for (i, j), c in self.coeffs.items():
            total = total + c * z**i * w**j
        return total

    def compose(self, u: "MultiPoly", v: "MultiPoly") -> "MultiPoly":
        """Substitute polynomials for the two variables."""
        result = MultiPoly.zero()
        upows = {0: MultiPoly.constant(1)}
        vpows = {0: MultiPoly.constant(1)}
        for (i, j), c in self.coeffs.items():
            if i not in upows:
                upows[i] = u**i
            if j not in vpows:
                vpows[j] = v**j
            result = result + MultiPoly.constant(c) * upows[i] * vpows[j]
        return result

    def compose_second(self, v: "MultiPoly") -> "MultiPoly":
        out = MultiPoly.zero()
        vpows = {0: MultiPoly.constant(1)}
        for (i, j), c in self.coeffs.items():
            if j not in vpows:
                vpows[j] = v**j
            out = out + MultiPoly({(i, 0): c}) * vpows[j]
        return out

    # -- homogeneous pieces -------------------------------------------

    def homogeneous_part(self, d: int) -> "MultiPoly":
        return MultiPoly({e: c for e, c in self.coeffs.items() if e[0] + e[1] == d})

    # -- printing / sympy ---------------------------------------------

    def to_sympy(self, zsym, wsym):
        expr = sp.Integer(0)
        for (i, j), c in self.coeffs.items():
            c = sp.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else c
            expr += c * zsym**i * wsym**j
        return expr

    @staticmethod
    def from_sympy(expr, zsym, wsym) -> "MultiPoly":
        poly = sp.Poly(expr, zsym, wsym)
        out = {}
        for (i, j), c in zip(poly.monoms(), poly.coeffs()):
            q = sp.Rational(c)
            out[(i, j)] = Fraction(int(q.p), int(q.q))
        return MultiPoly(out)

    def to_string(self, vars=("z", "w")) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for (i, j) in sorted(self.coeffs, key=lambda e: (-(e[0] + e[1]), -e[0])):
            c = self.coeffs[(i, j)]
            mono = "*".join(
                ([f"{vars[0]}^{i}" if i > 1 else vars[0]] if i else [])
                + ([f"{vars[1]}^{j}" if j > 1 else vars[1]] if j else []))
            if not mono:
                term = str(c)
            elif c == 1:
                term = mono
            elif c == -1:
                term = f"-{mono}"
            else:
                term = f"{c}*{mono}"
            parts.append(term)
        s = parts[0]
        for t in parts[1:]:
            s += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return s

    def __repr__(self):
        return f"MultiPoly({self.to_string()})"


class HomogPoly3:
    """Sparse homogeneous polynomial in three variables, fixed degree."""

    def __init__(self, coeffs: dict, degree: int):
        self.degree = degree
        cs = {}
        for e, c in coeffs.items():
            if sum(e) != degree:
                raise ValueError(f"exponent {e} does not sum to {degree}")
            c = _coerce_coeff(c)
            if c != 0:
                cs[tuple(int(k) for k in e)] = c
        self.coeffs = cs

    def eval(self, z0, z1, z2):
        total = 0
        for (a, b, c), coeff in self.coeffs.items():
            total = total + coeff * z0**a * z1**b * z2**c
        return total

    def dehomogenize(self) -> MultiPoly:
        """Set the first coordinate to 1."""
        out = {}
        for (a, b, c), coeff in self.coeffs.items():
            out[(b, c)] = out.get((b, c), 0) + coeff
        return MultiPoly(out)

    def __eq__(self, other):
        return (isinstance(other, HomogPoly3) and self.degree == other.degree
                and self.coeffs == other.coeffs)

    def __repr__(self):
        return f"HomogPoly3(deg={self.degree}, {self.coeffs})"


def homogenize(P: MultiPoly, degree: int) -> HomogPoly3:
    """z0^degree * P(z1/z0, z2/z0)."""
    if P.degree > degree:
        raise ValueError("polynomial degree exceeds homogenization degree")
    out = {}
    for (i, j), c in P.coeffs.items():
        out[(degree - i - j, i, j)] = c
    return HomogPoly3(out, degree)


def homogeneous_top(P: MultiPoly) -> MultiPoly:
    """Sum of the terms of maximal total degree."""
    if P.is_zero():
        raise ValueError("zero polynomial has no top form")
    return P.homogeneous_part(P.degree)


_Z, _W = sp.symbols("z w")


def resultant(f: MultiPoly, g: MultiPoly, eliminate: int) -> MultiPoly:
    """Resultant with respect to one variable (0 = first, 1 = second).

    Vanishes iff f and g share a factor involving that variable."""
    if f.degree_in(eliminate) <= 0 and g.degree_in(eliminate) <= 0:
        raise ValueError("both inputs constant in the eliminated variable")
    fe = f.to_sympy(_Z, _W)
    ge = g.to_sympy(_Z, _W)
    var = _Z if eliminate == 0 else _W
    res = sp.resultant(fe, ge, var)
    return MultiPoly.from_sympy(sp.expand(res), _Z, _W)


# ---------------------------------------------------------------------------
# parser


class _Tokenizer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self._skip_ws()
        if self.pos >= len(self.text):
            return None
        return self.text[self.pos]

    def take(self):
        c = self.peek()
        self.pos += 1
        return c

    def take_uint(self) -> int:
        self._skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise PolyParseError("expected integer", start)
        return int(self.text[start:self.pos])

    def take_name(self) -> str:
        self._skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum()
                                             or self.text[self.pos] == "_"):
            self.pos += 1
        if self.pos == start:
            raise PolyParseError("expected name", start)
        return self.text[start:self.pos]


def parse_poly(text: str, vars=("z", "w")) -> MultiPoly:
    """Parse an exact polynomial in the two declared variables.

    Grammar: expr := ['-'] term (('+'|'-') term)*; term := factor ('*' factor)*;
    factor := base ('^' uint)?; base := rational | var | '(' expr ')'."""
    tok = _Tokenizer(text)
    result = _parse_expr(tok, vars)
    tok._skip_ws()
    if tok.pos != len(text):
        raise PolyParseError(f"unexpected character {text[tok.pos]!r}", tok.pos)
    return result


def _parse_expr(tok: _Tokenizer, vars) -> MultiPoly:
    sign = 1
    if tok.peek() == "-":
        tok.take()
        sign = -1
    elif tok.peek() == "+":
        tok.take()
    result = _parse_term(tok, vars) * sign
    while tok.peek() in ("+", "-"):
        op = tok.take()
        t = _parse_term(tok, vars)
        result = result + t if op == "+" else result - t
    return result


def _parse_term(tok: _Tokenizer, vars) -> MultiPoly:
    result = _parse_factor(tok, vars)
    while tok.peek() == "*":
        tok.take()
        result = result * _parse_factor(tok, vars)
    return result


def _parse_factor(tok: _Tokenizer, vars) -> MultiPoly:
    base = _parse_base(tok, vars)
    if tok.peek() == "^":
        tok.take()
        return base ** tok.take_uint()
    return base


def _parse_base(tok: _Tokenizer, vars) -> MultiPoly:
    c = tok.peek()
    if c is None:
        raise PolyParseError("unexpected end of input", tok.pos)
    if c == "(":
        tok.take()
        inner = _parse_expr(tok, vars)
        if tok.peek() != ")":
            raise PolyParseError("expected ')'", tok.pos)
        tok.take()
        return inner
    if c.isdigit():
        num = tok.take_uint()
        if tok.peek() == "/":
            tok.take()
            den = tok.take_uint()
            if den == 0:
                raise PolyParseError("zero denominator", tok.pos)
            return MultiPoly.constant(Fraction(num, den))
        return MultiPoly.constant(num)
    if c.isalpha():
        pos = tok.pos
        name = tok.take_name()
        if name == vars[0]:
            return MultiPoly.variable(0)
        if name == vars[1]:
            return MultiPoly.variable(1)
        raise PolyParseError(f"unknown variable {name!r}", pos)
    raise PolyParseError(f"unexpected character {c!r}", tok.pos)
