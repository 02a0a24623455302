"""Exact truncated power series in one and two variables.

Coefficients are Fractions by default but any exact field elements with
Python arithmetic (e.g. number-field elements) work.  All operations
truncate to a fixed order N, i.e. compute mod y^(N+1) resp. mod total
degree N+1; truncation order is part of the value and mixed-order
arithmetic truncates to the smaller order.
"""

from __future__ import annotations

from fractions import Fraction


def _cf(c):
    if isinstance(c, int):
        return Fraction(c)
    return c


class TruncSeries:
    """Univariate series a_0 + a_1 y + ... + a_N y^N (exact, mod y^{N+1})."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs, order: int):
        cs = [_cf(c) for c in coeffs[: order + 1]]
        cs += [Fraction(0)] * (order + 1 - len(cs))
        self.coeffs = cs
        self.order = order

    @staticmethod
    def zero(order: int) -> "TruncSeries":
        return TruncSeries([], order)

    @staticmethod
    def one(order: int) -> "TruncSeries":
        return TruncSeries([1], order)

    @staticmethod
    def identity(order: int) -> "TruncSeries":
        return TruncSeries([0, 1], order)

    @staticmethod
    def monomial(c, k: int, order: int) -> "TruncSeries":
        return TruncSeries([0] * k + [c], order)

    def __getitem__(self, k: int):
        return self.coeffs[k] if 0 <= k <= self.order else Fraction(0)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def valuation(self):
        """Order of vanishing; None for the zero truncation."""
        for k, c in enumerate(self.coeffs):
            if c != 0:
                return k
        return None

    def truncate(self, order: int) -> "TruncSeries":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return TruncSeries(self.coeffs[: order + 1], order)

    def _common(self, other):
        if isinstance(other, TruncSeries):
            n = min(self.order, other.order)
            return self.truncate(n), other.truncate(n)
        return self, TruncSeries([other], self.order)

    def __add__(self, other):
        a, b = self._common(other)
        return TruncSeries([x + y for x, y in zip(a.coeffs, b.coeffs)], a.order)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        a, b = self._common(other)
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncSeries):
            a, b = self._common(other)
            n = a.order
            out = [Fraction(0)] * (n + 1)
            for i, ai in enumerate(a.coeffs):
                if ai == 0:
                    continue
                for j in range(min(n - i, b.order) + 1):
                    bj = b.coeffs[j]
                    if bj != 0:
                        out[i + j] += ai * bj
            return TruncSeries(out, n)
        return TruncSeries([c * other for c in self.coeffs], self.order)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("use reciprocal for negative powers")
        result = TruncSeries.one(self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, TruncSeries):
            return self.order == other.order and self.coeffs == other.coeffs
        return NotImplemented

    def compose(self, inner: "TruncSeries") -> "TruncSeries":
        """self(inner); inner must have zero constant term."""
        if inner[0] != 0:
            raise ValueError("inner series must vanish at 0")
        n = min(self.order, inner.order)
        a = self
        result = TruncSeries([a.coeffs[n]], n)
        for k in range(n - 1, -1, -1):  # Horner
            result = result * inner.truncate(n) + a.coeffs[k]
        return result

    def reciprocal(self) -> "TruncSeries":
        """1/self; constant term must be invertible."""
        c0 = self.coeffs[0]
        if c0 == 0:
            raise ZeroDivisionError("reciprocal of a series vanishing at 0")
        inv0 = 1 / c0 if not isinstance(c0, Fraction) else Fraction(1) / c0
        out = [inv0] + [Fraction(0)] * self.order
        for k in range(1, self.order + 1):
            s = 0
            for j in range(1, k + 1):
                if self.coeffs[j] != 0:
                    s = s + self.coeffs[j] * out[k - j]
            out[k] = -inv0 * s
        return TruncSeries(out, self.order)

    def __truediv__(self, other):
        if isinstance(other, TruncSeries):
            return self * other.reciprocal()
        return self * (Fraction(1) / Fraction(other))

    def derivative(self) -> "TruncSeries":
        return TruncSeries([k * self.coeffs[k] for k in range(1, self.order + 1)],
                           self.order - 1)

    def reversion(self) -> "TruncSeries":
        """Compositional inverse; needs a_0 = 0 and a_1 invertible."""
        if self.coeffs[0] != 0:
            raise ValueError("reversion needs zero constant term")
        a1 = self.coeffs[1]
        if a1 == 0:
            raise ValueError("reversion needs invertible linear term")
        inv1 = 1 / a1 if not isinstance(a1, Fraction) else Fraction(1) / a1
        # g correct mod y^{m+1} stays correct and gains one order per pass:
        # self(g + delta) = self(g) + a1*delta + (higher valuation)
        g = TruncSeries([0, inv1], self.order)
        for _ in range(self.order):
            err = self.compose(g) - TruncSeries.identity(self.order)
            if err.is_zero():
                break
            g = g - err * inv1
        return g

    def pad(self, order: int) -> "TruncSeries":
        """Re-declare at a higher order (tail coefficients unknown-as-zero).

        Only safe when the caller knows the extra coefficients vanish or
        are irrelevant to the computation at hand."""
        return TruncSeries(self.coeffs + [Fraction(0)] * (order - self.order), order)

    def nth_root_of_unit(self, n: int) -> "TruncSeries":
        """The unique n-th root with the same constant term 1."""
        if self.coeffs[0] != 1:
            raise ValueError("root extraction needs constant term 1")
        r = TruncSeries.one(self.order)
        for _ in range(self.order + 2):  # Newton: r <- r - (r^n - s)/(n r^{n-1})
            err = r**n - self
            if err.is_zero():
                return r
            r = r - err * (r ** (n - 1) * n).reciprocal()
        raise RuntimeError("root iteration failed to stabilize")

    def eval(self, x):
        total = 0
        for c in reversed(self.coeffs):
            total = total * x + c
        return total

    def to_series2(self, order: int, var: int = 1) -> "TruncSeries2":
        out = {}
        for k, c in enumerate(self.coeffs[: order + 1]):
            if c != 0:
                out[(0, k) if var == 1 else (k, 0)] = c
        return TruncSeries2(out, order)

    def __repr__(self):
        from .polyalg import MultiPoly
        terms = {(0, k): c for k, c in enumerate(self.coeffs) if c != 0}
        body = MultiPoly(terms).to_string(("y", "y")) if terms else "0"
        return f"TruncSeries({body} + O(y^{self.order + 1}))"


def log_unit(s: TruncSeries) -> TruncSeries:
    """log of a series with constant term 1, via (log s)' = s'/s."""
    if s.coeffs[0] != 1:
        raise ValueError("log needs constant term 1")
    d = (s.derivative() * s.truncate(s.order - 1).reciprocal()) \
        if s.order >= 1 else TruncSeries.zero(0)
    out = [Fraction(0)] * (s.order + 1)
    for k in range(1, s.order + 1):
        out[k] = d[k - 1] / k if isinstance(d[k - 1], Fraction) else d[k - 1] * Fraction(1, k)
    return TruncSeries(out, s.order)


def exp_series(a: TruncSeries) -> TruncSeries:
    """exp of a series with zero constant term (coefficient recursion e' = a'e)."""
    if a.coeffs[0] != 0:
        raise ValueError("exp needs zero constant term")
    out = [Fraction(1)] + [Fraction(0)] * a.order
    for k in range(1, a.order + 1):
        s = 0
        for m in range(1, k + 1):
            if a.coeffs[m] != 0:
                s = s + m * a.coeffs[m] * out[k - m]
        out[k] = s * Fraction(1, k) if not isinstance(s, Fraction) else s / k
    return TruncSeries(out, a.order)


class TruncSeries2:
    """Bivariate series mod total degree N+1, sparse {(i, j): coeff}."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: dict, order: int):
        cs = {}
        for (i, j), c in coeffs.items():
            if i + j <= order:
                c = _cf(c)
                if c != 0:
                    cs[(i, j)] = c
        self.coeffs = cs
        self.order = order

    @staticmethod
    def zero(order: int) -> "TruncSeries2":
        return TruncSeries2({}, order)

    @staticmethod
    def constant(c, order: int) -> "TruncSeries2":
        return TruncSeries2({(0, 0): c}, order)

    @staticmethod
    def variable(which: int, order: int) -> "TruncSeries2":
        return TruncSeries2({(1, 0) if which == 0 else (0, 1): 1}, order)

    def __getitem__(self, ij):
        return self.coeffs.get(tuple(ij), Fraction(0))

    def is_zero(self) -> bool:
        return not self.coeffs

    def valuation(self):
        if not self.coeffs:
            return None
        return min(i + j for i, j in self.coeffs)

    def valuation_in(self, var: int):
        if not self.coeffs:
            return None
        return min(e[var] for e in self.coeffs)

    def truncate(self, order: int) -> "TruncSeries2":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return TruncSeries2(self.coeffs, order)

    def _common(self, other):
        if isinstance(other, TruncSeries2):
            n = min(self.order, other.order)
            return self.truncate(n), other.truncate(n)
        return self, TruncSeries2({(0, 0): other}, self.order)

    def __add__(self, other):
        a, b = self._common(other)
        out = dict(a.coeffs)
        for e, c in b.coeffs.items():
            s = out.get(e, 0) + c
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        return TruncSeries2(out, a.order)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries2({e: -c for e, c in self.coeffs.items()}, self.order)

    def __sub__(self, other):
        a, b = self._common(other)
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncSeries2):
            a, b = self._common(other)
            n = a.order
            out = {}
            for (i1, j1), c1 in a.coeffs.items():
                d1 = i1 + j1
                for (i2, j2), c2 in b.coeffs.items():
                    if d1 + i2 + j2 > n:
                        continue
                    e = (i1 + i2, j1 + j2)
                    s = out.get(e, 0) + c1 * c2
                    if s == 0:
                        out.pop(e, None)
                    else:
                        out[e] = s
            return TruncSeries2(out, n)
        return TruncSeries2({e: c * other for e, c in self.coeffs.items()}, self.order)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("use reciprocal for negative powers")
        result = TruncSeries2.constant(1, self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, TruncSeries2):
            return self.order == other.order and self.coeffs == other.coeffs
        return NotImplemented

    def reciprocal(self) -> "TruncSeries2":
        """1/self; constant term must be invertible (Newton doubling)."""
        c0 = self.coeffs.get((0, 0), Fraction(0))
        if c0 == 0:
            raise ZeroDivisionError("reciprocal of a series vanishing at 0")
        inv0 = 1 / c0 if not isinstance(c0, Fraction) else Fraction(1) / c0
        r = TruncSeries2.constant(inv0, self.order)
        known = 1
        while known <= self.order:
            r = r * (2 - self * r)
            known *= 2
        return r

    def __truediv__(self, other):
        if isinstance(other, TruncSeries2):
            return self * other.reciprocal()
        return self * (Fraction(1) / Fraction(other))

    def compose(self, u: "TruncSeries2", v: "TruncSeries2") -> "TruncSeries2":
        """self(u, v); both inner series must vanish at the origin.

        Fast paths when u is the identity in x, v is the identity in y, or
        v involves only y — the shapes every conjugacy here produces."""
        if u[(0, 0)] != 0 or v[(0, 0)] != 0:
            raise ValueError("inner series must vanish at the origin")
        n = min(self.order, u.order, v.order)
        u, v = u.truncate(n), v.truncate(n)
        u_is_x = u.coeffs == {(1, 0): _cf(1)}
        v_is_y = v.coeffs == {(0, 1): _cf(1)}
        if u_is_x and v_is_y:
            return self.truncate(n)
        v_pure_y = all(i == 0 for i, _ in v.coeffs)
        by_i = {}
        for (i, j), c in self.coeffs.items():
            by_i.setdefault(i, {})[j] = c
        imax = max(by_i) if by_i else 0
        rows = []
        for i in range(imax + 1):
            row = by_i.get(i, {})
            if v_is_y:
                qi = TruncSeries2({(0, j): c for j, c in row.items()}, n)
            elif v_pure_y:
                cs = [Fraction(0)] * (n + 1)
                for j, c in row.items():
                    cs[j] = c
                vu = TruncSeries([v[(0, j)] for j in range(n + 1)], n)
                qi = TruncSeries(cs, n).compose(vu).to_series2(n)
            else:
                qi = TruncSeries2.zero(n)
                if row:
                    jmax = max(row)
                    for j in range(jmax, 0, -1):
                        qi = (qi + row.get(j, 0)) * v
                    qi = qi + row.get(0, 0)
            rows.append(qi)
        if u_is_x:
            out = {}
            for i, qi in enumerate(rows):
                for (a, b), c in qi.coeffs.items():
                    if a + i + b <= n:
                        e = (a + i, b)
                        out[e] = out.get(e, 0) + c
            return TruncSeries2(out, n)
        result = rows[imax]
        for i in range(imax - 1, -1, -1):
            result = result * u + rows[i]
        return result

    def subs_y(self, v) -> "TruncSeries2":
        """Substitute for the second variable only (v vanishing at origin)."""
        if isinstance(v, TruncSeries):
            v = v.to_series2(self.order)
        x = TruncSeries2.variable(0, min(self.order, v.order))
        return self.compose(x, v)

    def subs_x(self, u: "TruncSeries2") -> "TruncSeries2":
        y = TruncSeries2.variable(1, min(self.order, u.order))
        return self.compose(u, y)

    def coefficient_in_x(self, i: int) -> TruncSeries:
        """The series p_i(y) in self = sum_i x^i p_i(y)."""
        out = [Fraction(0)] * (self.order + 1)
        for (a, j), c in self.coeffs.items():
            if a == i:
                out[j] = c
        return TruncSeries(out, self.order)

    def restrict_y_axis(self) -> TruncSeries:
        """self(0, y) as a univariate series."""
        return self.coefficient_in_x(0)

    def restrict_x_axis(self) -> TruncSeries:
        out = [Fraction(0)] * (self.order + 1)
        for (i, j), c in self.coeffs.items():
            if j == 0:
                out[i] = c
        return TruncSeries(out, self.order)

    def divisible_by(self, i: int, j: int) -> bool:
        """True when every monomial is a multiple of x^i y^j."""
        return all(a >= i and b >= j for a, b in self.coeffs)

    def eval(self, x, y):
        total = 0
        for (i, j), c in sorted(self.coeffs.items()):
            total = total + c * x**i * y**j
        return total

    def __repr__(self):
        from .polyalg import MultiPoly
        body = MultiPoly(dict(self.coeffs)).to_string(("x", "y")) if self.coeffs else "0"
        return f"TruncSeries2({body} + O(deg {self.order + 1}))"
