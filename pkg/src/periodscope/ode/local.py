"""Local analysis at singular points: Fuchs test, indicial equation, Frobenius
bases with exact log structure, and the maximal-unipotency classification.

Everything is exact at rational points and at infinity.  At irrational roots of
the leading coefficient the expansions are done in mpmath at ``ALG_DPS`` digits
and exponents are snapped to nearby rationals; such exponents are flagged
``certified=False``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath

from ..algebra import UniPoly, squarefree_decomposition
from ..errors import IrregularPoint
from .operator import ODEOperator

ALG_DPS = 80
_SNAP_TOL = mpmath.mpf(10) ** -15


@dataclass(frozen=True)
class SingularPoint:
    """A point of P^1: a rational number, an irrational root of a squarefree
    factor of the leading coefficient, or infinity."""

    value: Fraction | None = None
    infinity: bool = False
    factor: UniPoly | None = None
    root_index: int = 0
    approx: complex = 0j
    radius: float = 0.0
    regular: bool = True

    @classmethod
    def at(cls, value) -> "SingularPoint":
        value = Fraction(value)
        return cls(value=value, approx=complex(value))

    @classmethod
    def oo(cls) -> "SingularPoint":
        return cls(infinity=True, approx=complex("inf"))

    @property
    def is_exact(self) -> bool:
        return self.infinity or self.value is not None

    def same_place(self, other: "SingularPoint") -> bool:
        if self.infinity or other.infinity:
            return self.infinity and other.infinity
        if self.value is not None or other.value is not None:
            return self.value == other.value
        return abs(self.approx - other.approx) < max(self.radius, other.radius, 1e-12)

    def mp_value(self):
        if self.value is not None:
            return mpmath.mpf(self.value.numerator) / self.value.denominator
        return self._refined()

    def _refined(self):
        # re-isolate at working precision from the exact factor
        with mpmath.workdps(ALG_DPS + 10):
            roots = _sorted_roots(self.factor)
            return roots[self.root_index]

    @property
    def label(self) -> str:
        if self.infinity:
            return "oo"
        if self.value is not None:
            return str(self.value)
        return f"root {self.root_index} of {self.factor} (~{self.approx:.6g})"

    def to_json(self) -> dict:
        out = {"label": self.label, "regular": self.regular}
        if self.infinity:
            out["point"] = "oo"
        elif self.value is not None:
            out["point"] = f"{self.value.numerator}/{self.value.denominator}"
        else:
            out["factor"] = [f"{c.numerator}/{c.denominator}" for c in self.factor.coeffs]
            out["root_index"] = str(self.root_index)
            out["approx"] = [repr(self.approx.real), repr(self.approx.imag)]
            out["radius"] = repr(self.radius)
        return out


@dataclass(frozen=True)
class Exponent:
    approx: complex
    exact: Fraction | None = None
    certified: bool = True

    def __str__(self) -> str:
        if self.exact is not None:
            return str(self.exact)
        return f"{self.approx:.12g}"

    def to_json(self):
        if self.exact is not None:
            return {"exact": f"{self.exact.numerator}/{self.exact.denominator}",
                    "certified": self.certified}
        return {"approx": [repr(self.approx.real), repr(self.approx.imag)], "certified": False}


@dataclass
class FormalSolution:
    """x^rho * sum_n sum_m coeffs[n][m] x^n log(x)^m / m!  (truncated)."""

    rho: Exponent
    shift: int
    coeffs: list
    log_degree: int

    def evaluate(self, x):
        """Numerical value of the truncated series at a local coordinate ``x``."""
        x = mpmath.mpmathify(x)
        lg = mpmath.log(x)
        rho = self.rho.exact if self.rho.exact is not None else self.rho.approx
        rho = mpmath.mpmathify(rho if not isinstance(rho, Fraction) else mpmath.mpf(rho.numerator) / rho.denominator)
        total = 0
        xn = 1
        for row in self.coeffs:
            lp = 1
            for m, c in enumerate(row):
                if m:
                    lp = lp * lg / m
                if c != 0:
                    total += _to_mp(c) * xn * lp
            xn *= x
        return total * x ** rho


@dataclass
class LocalData:
    point: SingularPoint
    exponents: list[Exponent]
    indicial: list  # coefficients, low degree first
    log_ranks: list[int] | None = None
    jordan_blocks: list[int] | None = None
    classes: list[dict] = field(default_factory=list)

    @property
    def order(self) -> int:
        return len(self.exponents)

    def to_json(self) -> dict:
        out = {
            "point": self.point.to_json(),
            "exponents": [e.to_json() for e in self.exponents],
            "indicial": [_num_str(c) for c in self.indicial],
        }
        if self.jordan_blocks is not None:
            out["jordan_blocks"] = [str(b) for b in self.jordan_blocks]
            out["log_ranks"] = [str(b) for b in self.log_ranks]
        return out


def _num_str(c) -> str:
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return mpmath.nstr(c, 20)


def _to_mp(c):
    if isinstance(c, Fraction):
        return mpmath.mpf(c.numerator) / c.denominator
    return c


# ---------------------------------------------------------------------------
# roots of the leading coefficient


def _sorted_roots(p: UniPoly) -> list:
    if p.degree == 1:
        return [mpmath.mpf(-p.coeffs[0].numerator) / p.coeffs[0].denominator / _to_mp(p.coeffs[1])]
    coeffs = [_to_mp(c) for c in reversed(p.coeffs)]
    roots = mpmath.polyroots(coeffs, maxsteps=400, extraprec=4 * mpmath.mp.prec)
    return sorted((mpmath.mpc(r) for r in roots), key=lambda z: (float(mpmath.re(z)), float(mpmath.im(z))))


def _rational_roots(p: UniPoly) -> tuple[list[Fraction], UniPoly]:
    """Rational roots of a squarefree Q-polynomial, and the cofactor."""
    found = []
    with mpmath.workdps(50):
        for z in _sorted_roots(p) if p.degree > 0 else []:
            if abs(mpmath.im(z)) > 1e-20:
                continue
            cand = Fraction(mpmath.nstr(mpmath.re(z), 40)).limit_denominator(10 ** 9)
            if p(cand) == 0 and cand not in found:
                found.append(cand)
    rest = p
    for r in found:
        rest = rest.exact_div(UniPoly([-r, 1], p.var))
    return found, rest


def _place_roots(lead: UniPoly) -> list[tuple]:
    """(exact value or None, factor, index, approx, radius) for each distinct root."""
    out = []
    for factor, _mult in squarefree_decomposition(lead):
        rats, rest = _rational_roots(factor)
        for r in rats:
            out.append((r, UniPoly([-r, 1], lead.var), 0, complex(r), 0.0))
        if rest.degree > 0:
            with mpmath.workdps(60):
                roots = _sorted_roots(rest)
                sep = min((abs(a - b) for i, a in enumerate(roots) for b in roots[i + 1:]), default=mpmath.mpf(1))
                for i, z in enumerate(roots):
                    out.append((None, rest, i, complex(z), min(float(sep) / 4, 1e-40)))
    return out


def singular_points(op: ODEOperator) -> list[SingularPoint]:
    """Zeros of the cleared leading coefficient, then infinity, with Fuchs flags."""
    lead = op.cleared()[-1]
    pts = []
    for value, factor, idx, approx, radius in _place_roots(lead):
        pt = SingularPoint(value=value, factor=factor, root_index=idx, approx=approx, radius=radius)
        pts.append(_with_regularity(op, pt))
    pts.append(_with_regularity(op, SingularPoint.oo()))
    return pts


def _with_regularity(op: ODEOperator, pt: SingularPoint) -> SingularPoint:
    polys, is_zero = _local_polys(op, pt)
    vals = [_valuation(p, is_zero) for p in polys]
    r = op.order
    vr = vals[-1]
    regular = all(v - vr >= -(r - i) for i, v in enumerate(vals) if v is not None)
    return SingularPoint(pt.value, pt.infinity, pt.factor, pt.root_index, pt.approx, pt.radius, regular)


# ---------------------------------------------------------------------------
# local expansions


def _local_polys(op: ODEOperator, pt: SingularPoint):
    """Cleared coefficient polynomials in the local coordinate at ``pt``."""
    if pt.infinity:
        return [p for p in op.at_infinity().cleared()], _exact_zero
    polys = op.cleared()
    if pt.value is not None:
        return [p.taylor_shift(pt.value) for p in polys], _exact_zero
    with mpmath.workdps(ALG_DPS):
        a = pt.mp_value()
        shifted = [UniPoly([_to_mp(c) for c in p.coeffs], p.var).taylor_shift(a) for p in polys]
    tol = mpmath.mpf(10) ** (-ALG_DPS // 2)
    return shifted, lambda c: abs(c) < tol


def _exact_zero(c) -> bool:
    return c == 0


def _valuation(p: UniPoly, is_zero) -> int | None:
    for i, c in enumerate(p.coeffs):
        if not is_zero(c):
            return i
    return None


def _series_div(num: Sequence, den: Sequence, n: int) -> list:
    """First ``n`` coefficients of num/den, den[0] != 0."""
    out = []
    inv = 1 / den[0]
    for k in range(n):
        acc = num[k] if k < len(num) else 0 * den[0]
        for j in range(1, min(k, len(den) - 1) + 1):
            acc = acc - den[j] * out[k - j]
        out.append(acc * inv)
    return out


def _falling(i: int) -> list:
    """Coefficients of theta(theta-1)...(theta-i+1)."""
    p = [Fraction(1)]
    for k in range(i):
        nxt = [Fraction(0)] * (len(p) + 1)
        for j, c in enumerate(p):
            nxt[j + 1] += c
            nxt[j] -= k * c
        p = nxt
    return p


def theta_form(op: ODEOperator, pt: SingularPoint, nterms: int):
    """Polynomials P_0..P_{nterms-1} in theta = x d/dx with
    (x^r / p_r) L = sum_k x^k P_k(theta) in the local coordinate x."""
    polys, is_zero = _local_polys(op, pt)
    r = op.order
    vals = [_valuation(p, is_zero) for p in polys]
    vr = vals[-1]
    for i, v in enumerate(vals):
        if v is not None and v - vr < -(r - i):
            raise IrregularPoint(f"Fuchs criterion fails at {pt.label} for coefficient {i}")
    lead = list(polys[-1].coeffs[vr:])
    ctx_dps = ALG_DPS if not pt.is_exact else mpmath.mp.dps
    with mpmath.workdps(ctx_dps):
        a_series = []
        for i, p in enumerate(polys):
            shift = r - i - vr  # x^{r-i} p_i / (x^vr u)
            cs = list(p.coeffs)
            if shift >= 0:
                num = [0 * lead[0]] * shift + cs
            else:
                num = cs[-shift:]
            a_series.append(_series_div(num, lead, nterms))
        out = []
        for k in range(nterms):
            Pk = [0 * lead[0]] * (r + 1)
            for i in range(r + 1):
                c = a_series[i][k]
                if is_zero(c):
                    continue
                for j, f in enumerate(_falling(i)):
                    Pk[j] = Pk[j] + c * f
            out.append(Pk)
    return out, is_zero


def _taylor_at(poly: Sequence, z) -> list:
    """[P(z), P'(z), P''(z)/2!, ...] for a coefficient list."""
    cs = list(poly)
    out = []
    n = len(cs)
    for _ in range(n):
        acc = 0 * z
        for c in reversed(cs):
            acc = acc * z + c
        out.append(acc)
        cs = [cs[i] * i for i in range(1, len(cs))]
        if not cs:
            break
    # convert derivatives to Taylor coefficients
    fact = 1
    for d in range(len(out)):
        if d:
            fact *= d
        out[d] = out[d] / fact
    return out


def _exponents_from_indicial(P0: list, exact: bool) -> list[Exponent]:
    if exact:
        poly = UniPoly(P0, "rho")
        out = []
        for factor, mult in squarefree_decomposition(poly):
            rats, rest = _rational_roots(factor)
            for r in rats:
                out.extend([Exponent(complex(r), r)] * mult)
            if rest.degree > 0:
                with mpmath.workdps(50):
                    for z in _sorted_roots(rest):
                        out.extend([Exponent(complex(z))] * mult)
        return sorted(out, key=lambda e: (e.approx.real, e.approx.imag))
    with mpmath.workdps(ALG_DPS):
        coeffs = list(reversed(P0))
        roots = mpmath.polyroots(coeffs, maxsteps=500, extraprec=8 * mpmath.mp.prec)
        out = []
        for z in roots:
            z = mpmath.mpc(z)
            cand = Fraction(mpmath.nstr(mpmath.re(z), 30)).limit_denominator(1000)
            if abs(z - _to_mp(cand)) < _SNAP_TOL:
                out.append(Exponent(complex(cand), cand, certified=False))
            else:
                out.append(Exponent(complex(z)))
    return sorted(out, key=lambda e: (e.approx.real, e.approx.imag))


def indicial_polynomial(op: ODEOperator, pt: SingularPoint) -> list:
    (P0,), _ = theta_form(op, pt, 1)
    return P0


def indicial_data(op: ODEOperator, pt: SingularPoint) -> LocalData:
    """Indicial polynomial and exponents (no log analysis)."""
    P0 = indicial_polynomial(op, pt)
    return LocalData(pt, _exponents_from_indicial(P0, pt.is_exact), P0)


def _exponent_classes(exps: list[Exponent]) -> list[tuple[Exponent, dict[int, int]]]:
    """Group exponents differing by integers: (base exponent, {offset: multiplicity})."""
    classes: list[tuple[Exponent, dict[int, int]]] = []

    def diff(a: Exponent, b: Exponent):
        if a.exact is not None and b.exact is not None:
            d = a.exact - b.exact
            return int(d) if d.denominator == 1 else None
        d = a.approx - b.approx
        k = round(d.real)
        return k if abs(d - k) < 1e-12 else None

    for e in exps:
        for i, (base, offs) in enumerate(classes):
            d = diff(e, base)
            if d is None:
                continue
            if d < 0:
                new = {o - d: m for o, m in offs.items()}
                new[0] = new.get(0, 0) + 1
                classes[i] = (e, new)
            else:
                offs[d] = offs.get(d, 0) + 1
            break
        else:
            classes.append((e, {0: 1}))
    return classes


def _jordan_from_nilpotent(D: list[list], is_zero) -> list[int]:
    n = len(D)
    if n == 0:
        return []

    def mat_rank(A):
        A = [list(r) for r in A]
        rk = 0
        cols = len(A[0]) if A else 0
        for c in range(cols):
            piv = None
            best = None
            for i in range(rk, len(A)):
                if not is_zero(A[i][c]):
                    mag = abs(A[i][c])
                    if best is None or mag > best:
                        piv, best = i, mag
            if piv is None:
                continue
            A[rk], A[piv] = A[piv], A[rk]
            for i in range(len(A)):
                if i != rk and not is_zero(A[i][c]):
                    f = A[i][c] / A[rk][c]
                    A[i] = [x - f * y for x, y in zip(A[i], A[rk])]
            rk += 1
        return rk

    def matmul(A, B):
        return [[sum((A[i][k] * B[k][j] for k in range(n)), 0 * A[0][0]) for j in range(n)] for i in range(n)]

    ranks = [n]
    P = D
    while True:
        rk = mat_rank(P)
        ranks.append(rk)
        if rk == 0:
            break
        P = matmul(P, D)
    # blocks of size >= k: ranks[k-1] - ranks[k]
    ge = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    blocks = []
    for k in range(len(ge)):
        exact_k = ge[k] - (ge[k + 1] if k + 1 < len(ge) else 0)
        blocks.extend([k + 1] * exact_k)
    return sorted(blocks, reverse=True)


def frobenius_solutions(op: ODEOperator, pt: SingularPoint, truncation: int = 10):
    """Formal basis of solutions at ``pt`` plus the full ``LocalData``.

    Within each class of exponents congruent mod Z, solutions are built in the
    space of log-polynomial coefficient vectors: theta acts on
    x^(rho0+n) log^m/m! as (rho0+n) + N with N the log shift, so the recurrence
    P_0(J_n) c_n = -sum_k P_k(J_{n-k}) c_{n-k} has a kernel of dimension equal
    to the root multiplicity at each exponent.  The log shift N commutes with
    the operator, and its matrix on the class gives the Jordan blocks of the
    local monodromy exactly.
    """
    r = op.order
    ld = indicial_data(op, pt)
    classes = _exponent_classes(ld.exponents)
    max_off = max(max(offs) for _, offs in classes)
    nterms = max(truncation, max_off + 1)
    thetas, is_zero = theta_form(op, pt, nterms)
    exact = pt.is_exact
    solutions: list[FormalSolution] = []
    blocks: list[int] = []
    log_ranks: list[int] = []
    class_info = []
    prec = ALG_DPS if not exact else mpmath.mp.dps
    with mpmath.workdps(prec):
        for base, offs in classes:
            if exact and base.exact is not None:
                rho0 = base.exact
                zero = Fraction(0)
                one = Fraction(1)
                zt = _exact_zero
            else:
                rho0 = mpmath.mpc(base.approx) if base.exact is None else _to_mp(base.exact)
                zero = mpmath.mpc(0)
                one = mpmath.mpc(1)
                tol = mpmath.mpf(10) ** (-(prec // 3))
                zt = lambda c, tol=tol: abs(c) < tol
            M = sum(offs.values())
            seeds = [(n, s) for n in sorted(offs) for s in range(offs[n])]
            cls_solutions = []
            taus = [[_taylor_at(thetas[k], rho0 + n) for n in range(nterms)] for k in range(len(thetas))]
            for seed in seeds:
                rows = []
                for n in range(nterms):
                    rhs = [zero] * M
                    for k in range(1, min(n, len(thetas) - 1) + 1):
                        prev = rows[n - k]
                        if all(zt(c) for c in prev):
                            continue
                        tau = taus[k][n - k]
                        for m in range(M):
                            acc = zero
                            for d in range(len(tau)):
                                if m + d < M and not zt(prev[m + d]):
                                    acc = acc + tau[d] * prev[m + d]
                            rhs[m] = rhs[m] - acc
                    tau0 = taus[0][n]
                    mu = offs.get(n, 0)
                    c = [zero] * M
                    for s in range(mu):
                        c[s] = one if seed == (n, s) else zero
                    for m in range(M - 1 - mu, -1, -1):
                        acc = rhs[m]
                        for d in range(mu + 1, len(tau0)):
                            if m + d < M:
                                acc = acc - tau0[d] * c[m + d]
                        c[m + mu] = acc / tau0[mu]
                    for m in range(max(M - mu, 0), M):
                        if not zt(rhs[m]):
                            raise ArithmeticError("log space too small in Frobenius recursion")
                    rows.append(c)
                logdeg = max((m for row in rows for m, v in enumerate(row) if not zt(v)), default=0)
                cls_solutions.append(rows)
                solutions.append(FormalSolution(
                    Exponent(complex(_to_mp(rho0)) + seed[0], (rho0 + seed[0]) if isinstance(rho0, Fraction) else None,
                             base.certified),
                    seed[0], [row[:] for row in rows[:truncation]], logdeg))
            # matrix of the log shift in the free-parameter coordinates
            D = [[zero] * len(seeds) for _ in seeds]
            for j, rows in enumerate(cls_solutions):
                for i, (n, s) in enumerate(seeds):
                    D[i][j] = rows[n][s + 1] if s + 1 < M else zero
            cb = _jordan_from_nilpotent(D, zt)
            blocks.extend(cb)
            log_ranks.append(sum(b - 1 for b in cb))
            class_info.append({"base": base, "offsets": dict(offs), "jordan_blocks": cb})
    ld.log_ranks = log_ranks
    ld.jordan_blocks = sorted(blocks, reverse=True)
    ld.classes = class_info
    assert sum(ld.jordan_blocks) == r
    return solutions, ld


def local_data(op: ODEOperator, pt: SingularPoint) -> LocalData:
    return frobenius_solutions(op, pt, truncation=1)[1]


def _is_integer(e: Exponent) -> bool:
    if e.exact is not None:
        return e.exact.denominator == 1
    return False


def is_maximally_unipotent(ld: LocalData, rank: int) -> bool:
    """True iff all exponents are one repeated integer and there is a single Jordan block."""
    if ld.jordan_blocks is None or sum(ld.jordan_blocks) != rank:
        raise ValueError("LocalData must carry Jordan blocks summing to the rank")
    exps = ld.exponents
    if not exps or not all(_is_integer(e) for e in exps):
        return False
    if len({e.exact for e in exps}) != 1:
        return False
    return ld.jordan_blocks == [rank]


def vhs_mum_verdict(op: ODEOperator, pt: SingularPoint, eigenspace_multiplicity: int = 2) -> tuple[int, bool]:
    """Maximal Jordan block of the full variation and whether it is MUM.

    The full local system is modelled as ``eigenspace_multiplicity`` copies of
    the operator's local monodromy (the eigenspace and its complex
    conjugate), block-diagonally.  MUM needs one unipotent block of the full
    rank, which block-diagonal doubling can never produce.
    """
    ld = local_data(op, pt)
    blocks = ld.jordan_blocks * eigenspace_multiplicity
    full_rank = op.order * eigenspace_multiplicity
    max_block = max(blocks)
    unipotent = all(_is_integer(e) for e in ld.exponents)
    mum = unipotent and max_block == full_rank
    assert not (mum and max_block < full_rank)
    return max_block, mum
