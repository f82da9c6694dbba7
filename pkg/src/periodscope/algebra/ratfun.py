"""Exact rational functions in one variable over Q.

Normal form: ``gcd(num, den) = 1`` and ``den`` monic, so equality is a
structural comparison of coefficient tuples.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import UniPoly, poly_gcd


class RationalFunction:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None, var: str | None = None, _normalized: bool = False):
        if not isinstance(num, UniPoly):
            num = UniPoly([num], var or "t")
        if den is None:
            den = UniPoly([1], num.var)
        elif not isinstance(den, UniPoly):
            den = UniPoly([den], num.var)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if var is not None:
            num = UniPoly(num.coeffs, var)
            den = UniPoly(den.coeffs, var)
        if not _normalized:
            num, den = _normalize(num, den)
        self.num = num
        self.den = den

    @property
    def var(self) -> str:
        return self.num.var

    @classmethod
    def variable(cls, var: str = "t") -> "RationalFunction":
        return cls(UniPoly.x(var))

    @classmethod
    def const(cls, c, var: str = "t") -> "RationalFunction":
        return cls(UniPoly([c], var))

    # queries

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def is_constant(self) -> bool:
        return self.den.degree == 0 and self.num.degree <= 0

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num[0] if self.num.coeffs else Fraction(0)

    @property
    def total_degree(self) -> int:
        return max(self.num.degree, 0) + self.den.degree

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        if isinstance(other, UniPoly):
            return self.den.degree == 0 and self.num == other
        if isinstance(other, (int, Fraction)):
            return self.den.degree == 0 and self.num == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.num.coeffs, self.den.coeffs))

    # arithmetic

    def _lift(self, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, UniPoly):
            return RationalFunction(UniPoly(other.coeffs, self.var), _normalized=True)
        if isinstance(other, (int, Fraction)):
            return RationalFunction(UniPoly([other], self.var), _normalized=True)
        raise TypeError(f"cannot combine RationalFunction with {type(other).__name__}")

    def __add__(self, other) -> "RationalFunction":
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den, _normalized=True)

    def __sub__(self, other) -> "RationalFunction":
        try:
            return self + (-self._lift(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other) -> "RationalFunction":
        return self._lift(other) - self

    def __mul__(self, other) -> "RationalFunction":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return RationalFunction(UniPoly([], self.var), _normalized=True)
            return RationalFunction(self.num * other, self.den, _normalized=True)
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        if self.den.degree == 0 and o.den.degree == 0:
            return RationalFunction(self.num * o.num, _normalized=True)
        # cross-cancel before multiplying keeps the gcds small
        g1 = poly_gcd(self.num, o.den)
        g2 = poly_gcd(o.num, self.den)
        n1, d2 = (self.num.exact_div(g1), o.den.exact_div(g1)) if g1.degree > 0 else (self.num, o.den)
        n2, d1 = (o.num.exact_div(g2), self.den.exact_div(g2)) if g2.degree > 0 else (o.num, self.den)
        num, den = n1 * n2, d1 * d2
        if num.is_zero():
            return RationalFunction(UniPoly([], self.var), _normalized=True)
        c = den.lc
        if c != 1:
            num, den = num * (1 / c), den * (1 / c)
        return RationalFunction(num, den, _normalized=True)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        c = self.num.lc
        return RationalFunction(self.den * (1 / c), self.num * (1 / c), _normalized=True)

    def __truediv__(self, other) -> "RationalFunction":
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other) -> "RationalFunction":
        return self._lift(other) * self.inverse()

    def __pow__(self, k: int) -> "RationalFunction":
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFunction(self.num ** k, self.den ** k, _normalized=True)

    # calculus and evaluation

    def derivative(self) -> "RationalFunction":
        n, d = self.num, self.den
        return RationalFunction(n.derivative() * d - n * d.derivative(), d * d)

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"pole of {self} at {x}")
        return self.num(x) / d

    def substitute(self, inner: "RationalFunction") -> "RationalFunction":
        """Composition ``self(inner)``."""
        def ev(p: UniPoly):
            acc = RationalFunction(UniPoly([], inner.var), _normalized=True)
            for c in reversed(p.coeffs):
                acc = acc * inner + c
            return acc
        return ev(self.num) / ev(self.den)

    def __repr__(self) -> str:
        return f"RationalFunction({self!s})"

    def __str__(self) -> str:
        if self.den.degree == 0:
            return str(self.num)
        return f"({self.num})/({self.den})"


def _normalize(num: UniPoly, den: UniPoly) -> tuple[UniPoly, UniPoly]:
    if num.is_zero():
        return UniPoly([], num.var), UniPoly([1], num.var)
    if den.degree > 0:
        g = poly_gcd(num, den)
        if g.degree > 0:
            num = num.exact_div(g)
            den = den.exact_div(g)
    c = den.lc
    if c != 1:
        inv = 1 / c
        num = num * inv
        den = den * inv
    return num, den
