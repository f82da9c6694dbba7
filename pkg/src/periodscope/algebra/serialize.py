"""JSON encodings: rationals as "p/q" strings, polynomials as arrays of them."""

from __future__ import annotations

from fractions import Fraction

from .poly import UniPoly
from .ratfun import RationalFunction


def rational_to_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def rational_from_str(s: str) -> Fraction:
    if not isinstance(s, str):
        raise TypeError(f"expected a 'p/q' string, got {s!r}")
    return Fraction(s.strip())


def poly_to_json(p: UniPoly) -> list[str]:
    return [rational_to_str(c) for c in p.coeffs]


def poly_from_json(data, var: str = "t") -> UniPoly:
    return UniPoly([rational_from_str(s) for s in data], var)


def ratfun_to_json(f: RationalFunction) -> dict:
    return {"num": poly_to_json(f.num), "den": poly_to_json(f.den)}


def ratfun_from_json(data, var: str = "t") -> RationalFunction:
    if isinstance(data, str):
        return RationalFunction.const(rational_from_str(data), var)
    return RationalFunction(poly_from_json(data["num"], var), poly_from_json(data["den"], var))
