"""Rational function reconstruction from exact samples."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..errors import ReconstructionError
from .linalg import FieldMatrix, solve_linear
from .poly import UniPoly
from .ratfun import RationalFunction


def rational_reconstruct(samples: Sequence[tuple[Fraction, Fraction]], deg_num: int, deg_den: int,
                         var: str = "t") -> RationalFunction:
    """Find ``a/b`` with ``deg a <= deg_num``, ``deg b <= deg_den`` through the samples.

    The last ``min(2, len(samples) - deg_num - deg_den - 1)`` samples are held
    out and used only for verification.  Any nonzero kernel vector of the
    linearized system ``a(x) - y b(x) = 0`` represents the interpolant once
    enough points are used, so the first one is taken and reduced.
    """
    samples = [(Fraction(x), Fraction(y)) for x, y in samples]
    need = deg_num + deg_den + 1
    if len(samples) < need + 1:
        raise ValueError(f"need at least {need + 1} samples for bounds ({deg_num}, {deg_den})")
    if len({x for x, _ in samples}) != len(samples):
        raise ValueError("sample points must be distinct")
    held = min(2, len(samples) - need)
    fit, check = samples[: len(samples) - held], samples[len(samples) - held:]

    rows = []
    for x, y in fit:
        powers = [Fraction(1)]
        for _ in range(max(deg_num, deg_den)):
            powers.append(powers[-1] * x)
        rows.append(powers[: deg_num + 1] + [-y * p for p in powers[: deg_den + 1]])
    M = FieldMatrix.from_rows(rows)
    sol = solve_linear(M, [Fraction(0)] * len(rows))
    assert sol is not None  # homogeneous systems are always consistent
    _, null = sol
    if not null:
        raise ReconstructionError("no interpolant within the degree bounds")
    v = null[0]
    num = UniPoly(v[: deg_num + 1], var)
    den = UniPoly(v[deg_num + 1:], var)
    if den.is_zero():
        raise ReconstructionError("degenerate: denominator vanished identically", code="degenerate")
    f = RationalFunction(num, den)
    for x, y in fit:
        if f.den(x) == 0:
            raise ReconstructionError(f"degenerate: reconstructed pole at sample {x}", code="degenerate")
        if f(x) != y:
            raise ReconstructionError(f"sample at {x} not interpolated")
    for x, y in check:
        if f.den(x) == 0 or f(x) != y:
            raise ReconstructionError(f"held-out sample at {x} disagrees")
    return f
