"""Numerical analytic continuation of a solution basis along polygonal loops."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Sequence

import mpmath

from ..errors import LoopTooClose, PrecisionExhausted
from .local import SingularPoint, singular_points
from .operator import ODEOperator

GUARD_DIGITS = 15
DEFAULT_DIGITS = 50


def _cq(z) -> tuple[Fraction, Fraction]:
    """Normalise a waypoint to a pair of Fractions (exact complex rational)."""
    if isinstance(z, tuple):
        return Fraction(z[0]), Fraction(z[1])
    if isinstance(z, complex):
        return Fraction(z.real).limit_denominator(10 ** 12), Fraction(z.imag).limit_denominator(10 ** 12)
    return Fraction(z), Fraction(0)


@dataclass(frozen=True)
class Loop:
    """Closed polygon with complex-rational vertices; ``waypoints[0]`` is the base point."""

    waypoints: tuple

    def __init__(self, waypoints: Sequence):
        pts = [_cq(z) for z in waypoints]
        if pts[0] != pts[-1]:
            pts.append(pts[0])
        object.__setattr__(self, "waypoints", tuple(pts))

    @property
    def base(self) -> tuple[Fraction, Fraction]:
        return self.waypoints[0]

    def then(self, other: "Loop") -> "Loop":
        if other.base != self.base:
            raise ValueError("loops must share a base point")
        return Loop(self.waypoints + other.waypoints[1:])

    def reversed(self) -> "Loop":
        return Loop(tuple(reversed(self.waypoints)))

    def to_json(self) -> list:
        return [[f"{a.numerator}/{a.denominator}", f"{b.numerator}/{b.denominator}"] for a, b in self.waypoints]


@dataclass
class MonodromyMatrix:
    entries: list  # rows of mpmath.mpc
    base_point: tuple
    loop: Loop
    precision_digits: int
    radius: object  # mpf, estimated error bound on every entry

    @property
    def size(self) -> int:
        return len(self.entries)

    def matrix(self) -> mpmath.matrix:
        return mpmath.matrix(self.entries)

    def to_json(self, digits: int | None = None) -> dict:
        d = digits or self.precision_digits
        return {
            "entries": [[[mpmath.nstr(mpmath.re(z), d, min_fixed=-mpmath.inf, max_fixed=mpmath.inf),
                          mpmath.nstr(mpmath.im(z), d, min_fixed=-mpmath.inf, max_fixed=mpmath.inf)]
                         for z in row] for row in self.entries],
            "radius": mpmath.nstr(self.radius, 5),
            "base_point": [f"{self.base_point[0]}", f"{self.base_point[1]}"],
            "loop": self.loop.to_json(),
            "precision_digits": str(self.precision_digits),
        }


def _sing_values(op: ODEOperator) -> list[tuple]:
    out = []
    for pt in singular_points(op):
        if pt.infinity:
            continue
        out.append((mpmath.mpc(pt.mp_value()), pt.radius))
    return out


def default_loop(op: ODEOperator, around) -> Loop:
    """Counterclockwise square around a finite point, or a clockwise square
    enclosing every finite singularity for ``around='oo'``."""
    sings = _sing_values(op)
    if around in ("oo", "inf", "infinity") or (isinstance(around, SingularPoint) and around.infinity):
        R = max((abs(z) for z, _ in sings), default=mpmath.mpf(0))
        R = Fraction(int(mpmath.ceil(2 * R + 1)))
        return Loop([(R, 0), (R, -R), (-R, -R), (-R, R), (R, R), (R, 0)])
    if isinstance(around, SingularPoint):
        p = around.mp_value()
    else:
        p = mpmath.mpmathify(around if not isinstance(around, Fraction) else mpmath.mpf(around.numerator) / around.denominator)
    p = mpmath.mpc(p)
    others = [abs(z - p) for z, _ in sings if abs(z - p) > 1e-30]
    dist = min(others, default=mpmath.mpf(2))
    s = Fraction(mpmath.nstr(dist / 2, 6)).limit_denominator(10 ** 6)
    pr = Fraction(mpmath.nstr(mpmath.re(p), 30)).limit_denominator(10 ** 12)
    pi = Fraction(mpmath.nstr(mpmath.im(p), 30)).limit_denominator(10 ** 12)
    return Loop([(pr + s, pi), (pr + s, pi + s), (pr - s, pi + s), (pr - s, pi - s), (pr + s, pi - s), (pr + s, pi)])


@lru_cache(maxsize=None)
def _ff(n: int, k: int) -> int:
    """Falling factorial n (n-1) ... (n-k+1)."""
    out = 1
    for i in range(k):
        out *= n - i
    return out


class _Transporter:
    def __init__(self, op: ODEOperator, dps: int):
        self.r = op.order
        self.polys = op.cleared()
        self.sings = _sing_values(op)
        self.dps = dps
        self.eps = mpmath.mpf(10) ** (-dps)

    def nearest(self, z) -> object:
        return min((abs(z - s) for s, _ in self.sings), default=mpmath.inf)

    def step(self, z0, h):
        """Transfer matrix T with Y(z0+h) = T Y(z0) for Y = (y, y', ..., y^(r-1)).

        Works with scaled Taylor coefficients b_n = a_n h^n so every quantity
        stays of moderate size; the recurrence comes from the cleared polynomial
        coefficients shifted to z0.
        """
        r = self.r
        qs = []
        for i, p in enumerate(self.polys):
            shifted = [mpmath.mpf(c.numerator) / c.denominator for c in p.coeffs]
            n = len(shifted)
            for a in range(n):
                for j in range(n - 2, a - 1, -1):
                    shifted[j] += z0 * shifted[j + 1]
            qs.append([(k, mpmath.mpc(c) * h ** (k + r - i)) for k, c in enumerate(shifted) if c != 0])
        lead = dict(qs[r]).get(0, mpmath.mpc(0))
        if abs(lead) < self.eps * max((abs(c) for lst in qs for _, c in lst), default=1):
            raise LoopTooClose("transport point is singular")
        rho = self.nearest(z0)
        ratio = abs(h) / rho if rho != mpmath.inf else mpmath.mpf(0)
        rest = [(i, k, c) for i, lst in enumerate(qs) for k, c in lst if not (i == r and k == 0)]
        # b[n][j]: scaled coefficient n of the solution with y^(k)(z0) = delta_jk
        b = [[mpmath.mpc(0)] * r for _ in range(r)]
        for j in range(r):
            b[j][j] = h ** j / factorial(j)
        vals = [[mpmath.mpc(0)] * r for _ in range(r)]  # vals[k][j] = h^k y_j^(k)(z0+h)
        small = 0
        n = 0
        last = mpmath.mpf(0)
        while True:
            m = n
            if len(b) < m + r + 1:
                row = []
                for j in range(r):
                    acc = mpmath.mpc(0)
                    for i, k, c in rest:
                        idx = m - k + i
                        if m - k < 0:
                            continue
                        acc += c * b[idx][j] * _ff(idx, i)
                    row.append(-acc / (lead * _ff(m + r, r)))
                b.append(row)
            bn = b[n]
            for k in range(min(r, n + 1)):
                f = _ff(n, k)
                for j in range(r):
                    vals[k][j] += bn[j] * f
            mag = max(abs(x) for x in bn) * (n + 1) ** r
            scale = max(mpmath.mpf(1), max(abs(v) for row in vals for v in row))
            small = small + 1 if mag < self.eps * scale else 0
            last = max(last, mag) if small else mag
            n += 1
            if small >= r + 2 and n > r + 4:
                break
            if n > 20000:
                raise PrecisionExhausted("Taylor series did not converge")
        geom = 1 / (1 - ratio) if ratio < 1 else mpmath.mpf(10)
        tail_est = last * geom
        T = mpmath.matrix(r, r)
        for k in range(r):
            hk = h ** k
            for j in range(r):
                T[k, j] = vals[k][j] / hk
        scale = max(mpmath.mpf(1), *(abs(h) ** -k for k in range(r)))
        return T, tail_est * scale


def _segment_distance(a, b, p):
    ab = b - a
    L2 = abs(ab) ** 2
    if L2 == 0:
        return abs(p - a)
    t = mpmath.re((p - a) * mpmath.conj(ab)) / L2
    t = max(mpmath.mpf(0), min(mpmath.mpf(1), t))
    return abs(a + t * ab - p)


def numerical_monodromy(op: ODEOperator, loop: Loop, precision_digits: int = DEFAULT_DIGITS) -> MonodromyMatrix:
    """Continue the basis with unit initial conditions at ``loop.base`` around the loop.

    Columns of the result are (y_j, y_j', ..., y_j^(r-1)) at the end of the loop,
    where y_j had initial vector e_j.  Continuing along A then B gives M_B M_A.
    """
    dps = precision_digits + GUARD_DIGITS
    with mpmath.workdps(dps):
        tr = _Transporter(op, dps)
        pts = [mpmath.mpc(mpmath.mpf(a.numerator) / a.denominator, mpmath.mpf(b.numerator) / b.denominator)
               for a, b in loop.waypoints]
        for s, rad in tr.sings:
            margin = max(10 * mpmath.mpf(rad), mpmath.mpf(10) ** -8)
            for a, b in zip(pts, pts[1:]):
                if _segment_distance(a, b, s) < margin:
                    raise LoopTooClose(f"loop passes within {margin} of singular point {mpmath.nstr(s, 8)}")
        r = op.order
        Phi = mpmath.eye(r)
        err = mpmath.mpf(0)
        for a, b in zip(pts, pts[1:]):
            z = a
            while abs(b - z) > 0:
                rho = tr.nearest(z)
                remaining = b - z
                if abs(remaining) <= rho / 2:
                    h = remaining
                else:
                    h = remaining / abs(remaining) * rho / 2
                T, tail = tr.step(z, h)
                err = err * mpmath.mnorm(T, 1) + tail * mpmath.mnorm(Phi, 1)
                Phi = T * Phi
                z = z + h if h != remaining else b
        radius = err + mpmath.mpf(10) ** (-(dps - 5)) * mpmath.mnorm(Phi, 1)
        tol = mpmath.mpf(10) ** (-(precision_digits // 2))
        if radius > tol:
            raise PrecisionExhausted(f"estimated error {mpmath.nstr(radius, 3)} exceeds {mpmath.nstr(tol, 3)}")
        entries = [[Phi[i, j] for j in range(r)] for i in range(r)]
    return MonodromyMatrix(entries, loop.base, loop, precision_digits, radius)
