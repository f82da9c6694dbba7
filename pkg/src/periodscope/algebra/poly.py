"""Dense univariate polynomials over an exact field.

Coefficients are stored lowest degree first.  The coefficient field is
whatever the entries support: :class:`fractions.Fraction` for Q[x], or
:class:`~periodscope.algebra.ratfun.RationalFunction` for Q(λ)[t].
Plain ints are promoted to ``Fraction`` on construction.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


def _coerce(c):
    if isinstance(c, int) and not isinstance(c, bool):
        return Fraction(c)
    return c


class UniPoly:
    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "t"):
        cs = [_coerce(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple = tuple(cs)
        self.var = var

    # construction helpers

    @classmethod
    def constant(cls, c, var: str = "t") -> "UniPoly":
        return cls([c], var)

    @classmethod
    def x(cls, var: str = "t") -> "UniPoly":
        return cls([0, 1], var)

    @classmethod
    def from_roots(cls, roots: Sequence, var: str = "t") -> "UniPoly":
        p = cls([1], var)
        for r in roots:
            p = p * cls([-r, 1], var)
        return p

    # basic queries

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return self._zero()

    def _zero(self):
        if self.coeffs:
            return self.coeffs[0] * 0
        return Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        other = _coerce(other)
        if other == 0:
            return not self.coeffs
        return len(self.coeffs) == 1 and self.coeffs[0] == other

    def __hash__(self) -> int:
        return hash(self.coeffs)

    # arithmetic

    def _wrap(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        return UniPoly([other], self.var)

    def __add__(self, other) -> "UniPoly":
        other = self._wrap(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return UniPoly(out, self.var)

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other) -> "UniPoly":
        return self + (-self._wrap(other))

    def __rsub__(self, other) -> "UniPoly":
        return self._wrap(other) - self

    def __mul__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            other = _coerce(other)
            if other == 0:
                return UniPoly([], self.var)
            return UniPoly([c * other for c in self.coeffs], self.var)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly([], self.var)
        out = [a[0] * 0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return UniPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "UniPoly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = UniPoly([1], self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "UniPoly":
        return self * c

    def __divmod__(self, other: "UniPoly"):
        other = self._wrap(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly([], self.var), UniPoly(rem, self.var)
        inv = 1 / other.lc
        quo = [None] * (dq + 1)
        db = other.degree
        for k in range(dq, -1, -1):
            c = rem[k + db] * inv
            quo[k] = c
            if c != 0:
                for i, b in enumerate(other.coeffs):
                    rem[k + i] = rem[k + i] - c * b
        return UniPoly(quo, self.var), UniPoly(rem[:db], self.var)

    def __floordiv__(self, other) -> "UniPoly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "UniPoly":
        return divmod(self, other)[1]

    def exact_div(self, other) -> "UniPoly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        inv = 1 / self.lc
        return UniPoly([c * inv for c in self.coeffs], self.var)

    # calculus and evaluation

    def derivative(self) -> "UniPoly":
        return UniPoly([c * i for i, c in enumerate(self.coeffs)][1:], self.var)

    def __call__(self, x):
        acc = self._zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def map_coeffs(self, fn, var: str | None = None) -> "UniPoly":
        return UniPoly([fn(c) for c in self.coeffs], var or self.var)

    def taylor_shift(self, a) -> "UniPoly":
        """Return p(x + a)."""
        out = UniPoly([], self.var)
        lin = UniPoly([a, 1], self.var)
        for c in reversed(self.coeffs):
            out = out * lin + c
        return out

    def reversed_poly(self, degree: int | None = None) -> "UniPoly":
        """Return x^d p(1/x) with d = ``degree`` (default: deg p)."""
        d = self.degree if degree is None else degree
        cs = list(self.coeffs) + [self._zero()] * (d + 1 - len(self.coeffs))
        return UniPoly(reversed(cs[: d + 1]), self.var)

    def valuation(self) -> int:
        """Order of vanishing at 0 (``-1`` for the zero polynomial)."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return -1

    # display

    def __repr__(self) -> str:
        return f"UniPoly({self!s}, var={self.var!r})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            cs = str(c)
            if i == 0:
                terms.append(f"({cs})" if " " in cs else cs)
                continue
            mono = self.var if i == 1 else f"{self.var}^{i}"
            if c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append(f"-{mono}")
            else:
                terms.append(f"({cs})*{mono}" if (" " in cs or "/" in cs) else f"{cs}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic greatest common divisor; ``gcd(0, 0) = 0``."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def squarefree_decomposition(p: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun's algorithm over a field of characteristic zero.

    Returns monic squarefree factors with multiplicities, product equal to
    ``monic(p)``.
    """
    if p.degree < 1:
        return []
    out = []
    a = p.monic()
    b = a.derivative()
    c = poly_gcd(a, b)
    w = a.exact_div(c)
    y = b.exact_div(c)
    z = y - w.derivative()
    i = 1
    while w.degree > 0:
        g = poly_gcd(w, z)
        if g.degree > 0:
            out.append((g, i))
        w = w.exact_div(g)
        y = z.exact_div(g)
        z = y - w.derivative()
        i += 1
    return out


def content_and_primitive(p: UniPoly) -> tuple[Fraction, UniPoly]:
    """Split a Q[x] polynomial into rational content and primitive integer part."""
    from math import gcd, lcm

    if p.is_zero():
        return Fraction(0), p
    den = 1
    for c in p.coeffs:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in p.coeffs]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if ints[-1] < 0:
        g = -g
    return Fraction(g, den), UniPoly([Fraction(v // g) for v in ints], p.var)
