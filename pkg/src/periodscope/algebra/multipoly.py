"""Sparse multivariate polynomials keyed by exponent vectors."""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Callable, Iterable, Mapping


class MultiPoly:
    """Map exponent-vector -> coefficient; zero coefficients are never stored.

    Coefficients may be ``Fraction`` or ``RationalFunction``.  ``grade``, when
    given, is checked against every stored monomial.
    """

    __slots__ = ("n_vars", "terms", "grade")

    def __init__(self, n_vars: int, terms: Mapping[tuple, object] | Iterable = (), grade: int | None = None):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[tuple, object] = {}
        for e, c in items:
            e = tuple(e)
            if len(e) != n_vars:
                raise ValueError(f"exponent {e} has wrong length for {n_vars} variables")
            if isinstance(c, int):
                c = Fraction(c)
            if e in clean:
                c = clean[e] + c
            if c == 0:
                clean.pop(e, None)
            else:
                clean[e] = c
        if grade is not None:
            for e in clean:
                if sum(e) != grade:
                    raise ValueError(f"monomial {e} is not of degree {grade}")
        self.n_vars = n_vars
        self.terms = clean
        self.grade = grade

    @classmethod
    def monomial(cls, exponent: tuple, coeff=1) -> "MultiPoly":
        return cls(len(exponent), {tuple(exponent): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def homogeneous_degree(self) -> int | None:
        """The common degree of all monomials, or ``None`` if mixed (or zero)."""
        degs = {sum(e) for e in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def coeff(self, exponent: tuple):
        return self.terms.get(tuple(exponent), Fraction(0))

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.n_vars == other.n_vars and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return MultiPoly(self.n_vars, out)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.n_vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            return MultiPoly(self.n_vars, {e: c * other for e, c in self.terms.items()})
        out: dict[tuple, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = c1 * c2
                out[e] = out[e] + v if e in out else v
        return MultiPoly(self.n_vars, out)

    def __rmul__(self, other) -> "MultiPoly":
        return self * other

    def __pow__(self, k: int) -> "MultiPoly":
        result = MultiPoly(self.n_vars, {(0,) * self.n_vars: 1})
        for _ in range(k):
            result = result * self
        return result

    def diff(self, i: int) -> "MultiPoly":
        """Partial derivative with respect to variable ``i``."""
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = e[:i] + (e[i] - 1,) + e[i + 1:]
                out[ne] = c * e[i]
        return MultiPoly(self.n_vars, out)

    def map_coeffs(self, fn: Callable) -> "MultiPoly":
        return MultiPoly(self.n_vars, {e: fn(c) for e, c in self.terms.items()}, self.grade)

    def with_grade(self, grade: int) -> "MultiPoly":
        return MultiPoly(self.n_vars, self.terms, grade)

    def __repr__(self) -> str:
        return f"MultiPoly({self!s})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            mono = "*".join(
                f"x{i + 1}" if k == 1 else f"x{i + 1}^{k}" for i, k in enumerate(e) if k
            )
            c = self.terms[e]
            parts.append(f"({c})*{mono}" if mono else f"({c})")
        return " + ".join(parts)


def monomial_basis(n_vars: int, degree: int) -> list[tuple[int, ...]]:
    """All exponent vectors of the given total degree, lexicographically descending.

    >>> monomial_basis(2, 2)
    [(2, 0), (1, 1), (0, 2)]
    """
    if n_vars == 0:
        return [()] if degree == 0 else []
    if n_vars == 1:
        return [(degree,)]
    out = []
    for first in range(degree, -1, -1):
        for rest in monomial_basis(n_vars - 1, degree - first):
            out.append((first,) + rest)
    assert len(out) == comb(degree + n_vars - 1, n_vars - 1)
    return out
