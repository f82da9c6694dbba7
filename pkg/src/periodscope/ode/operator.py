"""Linear differential operators  sum_i p_i(t) d^i/dt^i  with rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from ..algebra import RationalFunction, UniPoly, poly_gcd
from ..algebra.serialize import poly_from_json, poly_to_json, ratfun_from_json, ratfun_to_json


class ODEOperator:
    """Immutable operator; ``coefficients[i]`` multiplies the i-th derivative."""

    __slots__ = ("coefficients", "var", "_cleared")

    def __init__(self, coefficients: Sequence, var: str = "t"):
        cs = []
        for c in coefficients:
            if not isinstance(c, RationalFunction):
                c = RationalFunction(c if isinstance(c, UniPoly) else UniPoly([c], var), var=var)
            elif c.var != var:
                c = RationalFunction(c.num, c.den, var=var)
            cs.append(c)
        while cs and cs[-1].is_zero():
            cs.pop()
        if not cs:
            raise ValueError("zero operator")
        self.coefficients: tuple[RationalFunction, ...] = tuple(cs)
        self.var = var
        self._cleared = None

    @classmethod
    def from_polys(cls, polys: Sequence[Sequence], var: str = "t") -> "ODEOperator":
        return cls([RationalFunction(UniPoly(p, var)) for p in polys], var)

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def monic(self) -> "ODEOperator":
        lead = self.coefficients[-1]
        return ODEOperator([c / lead for c in self.coefficients], self.var)

    def cleared(self) -> list[UniPoly]:
        """Polynomial coefficients with no common factor, primitive over Z, leading one positive."""
        if self._cleared is None:
            L = UniPoly([1], self.var)
            for c in self.coefficients:
                L = L * c.den.exact_div(poly_gcd(L, c.den))
            polys = [c.num * L.exact_div(c.den) for c in self.coefficients]
            g = UniPoly([], self.var)
            for p in polys:
                g = poly_gcd(g, p)
            polys = [p.exact_div(g) for p in polys]
            den, num = 1, 0
            for p in polys:
                for c in p.coeffs:
                    den = lcm(den, c.denominator)
            for p in polys:
                for c in p.coeffs:
                    num = gcd(num, int(c * den))
            scale = Fraction(den, num)
            if polys[-1].lc < 0:
                scale = -scale
            self._cleared = [p * scale for p in polys]
        return list(self._cleared)

    def equals_up_to_unit(self, other: "ODEOperator") -> bool:
        return self.monic().coefficients == other.monic().coefficients

    def __eq__(self, other) -> bool:
        return isinstance(other, ODEOperator) and self.coefficients == other.coefficients

    def __hash__(self):
        return hash(self.coefficients)

    def at_infinity(self, var: str = "s") -> "ODEOperator":
        """The same operator written in the chart s = 1/t (so t = oo becomes s = 0)."""
        s = RationalFunction.variable(var)
        inv = s.inverse()
        # d/dt = -s^2 d/ds; expand (d/dt)^i = sum_k c[i][k](s) (d/ds)^k
        zero = RationalFunction(UniPoly([], var))
        powers = [[RationalFunction.const(1, var)]]
        for _ in range(self.order):
            prev = powers[-1]
            nxt = [zero] * (len(prev) + 1)
            for k, c in enumerate(prev):
                nxt[k] = nxt[k] + (-s * s) * c.derivative()
                nxt[k + 1] = nxt[k + 1] + (-s * s) * c
            powers.append(nxt)
        out = [zero] * (self.order + 1)
        for i, p in enumerate(self.coefficients):
            pi = RationalFunction(UniPoly(p.num.coeffs, var), UniPoly(p.den.coeffs, var)).substitute(inv)
            for k, c in enumerate(powers[i]):
                out[k] = out[k] + pi * c
        return ODEOperator(out, var)

    def evaluate(self, t0, derivs: Sequence):
        """sum_i p_i(t0) * derivs[i]; works for exact or mpmath arguments."""
        acc = 0
        for c, d in zip(self.coefficients, derivs):
            acc = acc + c.num(t0) / c.den(t0) * d
        return acc

    # serialization

    def to_json(self) -> dict:
        return {
            "variable": self.var,
            "order": str(self.order),
            "coefficients": [ratfun_to_json(c) for c in self.coefficients],
            "cleared": [poly_to_json(p) for p in self.cleared()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ODEOperator":
        var = data.get("variable", "t")
        if "coefficients" in data:
            return cls([ratfun_from_json(c, var) for c in data["coefficients"]], var)
        return cls([RationalFunction(poly_from_json(p, var)) for p in data["cleared"]], var)

    def __repr__(self) -> str:
        return f"ODEOperator({self!s})"

    def __str__(self) -> str:
        d = f"D{self.var}"
        parts = []
        for i in range(self.order, -1, -1):
            c = self.coefficients[i]
            if c.is_zero():
                continue
            op = "" if i == 0 else (d if i == 1 else f"{d}^{i}")
            parts.append(f"({c})" + (f"*{op}" if op else ""))
        return " + ".join(parts)
