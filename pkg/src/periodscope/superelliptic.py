"""Cyclic covers v^n = f(t, λ) of the line: genus, eigenspace dimensions,
Gauss-Manin connection and Picard-Fuchs operators of eigenforms.

Forms are represented as  g(t) dt / v^j  with g a rational function of t whose
only poles are at the branch roots.  Internally a form is a numerator
polynomial N(t) over a fixed power R(t)^K of the radical R = prod (t - r_i),
with coefficients in Q(λ).

Counting formula for holomorphic forms.  With mults m_i reduced mod n and
D = sum m_i, the form p(t) dt / v^j is holomorphic iff
    ord_{r_i} p >= floor(j m_i / n)   for every root r_i, and
    deg p <= ceil(j D / n) - 2        (the condition at infinity),
so  h10_j = max(0, ceil(jD/n) - 1 - sum_i floor(j m_i / n)),  and the
holomorphic forms are  H_j(t) t^i dt / v^j  with H_j = prod (t - r_i)^floor(j m_i / n),
0 <= i < h10_j.  The beta-eigenvalue of dt/v^j is xi^(-j) (beta: v -> xi v).
"""

from __future__ import annotations

import ast
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce as _fold
from math import gcd
from typing import Sequence

from .algebra import FieldMatrix, RationalFunction, UniPoly, solve_linear
from .algebra.serialize import ratfun_from_json, ratfun_to_json
from .errors import OrderExceeded, ReducibleCover, ReductionFailure
from .ode.operator import ODEOperator

PARAM = "λ"
TVAR = "t"


def _rf(c, var: str = PARAM) -> RationalFunction:
    if isinstance(c, RationalFunction):
        return c
    return RationalFunction.const(Fraction(c), var)


@dataclass(frozen=True)
class SuperellipticFamily:
    """v^n = prod (t - root_i)^mult_i with roots in Q(λ)."""

    n: int
    branch_factors: tuple
    var: str = PARAM

    def __init__(self, n: int, branch_factors: Sequence, var: str = PARAM):
        if n < 2:
            raise ValueError("cover degree must be at least 2")
        facs = tuple((_rf(r, var), int(m)) for r, m in branch_factors)
        if any(m <= 0 for _, m in facs):
            raise ValueError("multiplicities must be positive")
        roots = [r for r, _ in facs]
        for a in range(len(roots)):
            for b in range(a + 1, len(roots)):
                if roots[a] == roots[b]:
                    raise ValueError(f"repeated branch root {roots[a]}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "branch_factors", facs)
        object.__setattr__(self, "var", var)

    @property
    def roots(self) -> list[RationalFunction]:
        return [r for r, _ in self.branch_factors]

    @property
    def mults(self) -> list[int]:
        return [m for _, m in self.branch_factors]

    @property
    def degree(self) -> int:
        return sum(self.mults)

    def normalized(self) -> tuple["SuperellipticFamily", bool]:
        """n-th-power-free model: multiplicities reduced mod n, trivial factors dropped."""
        facs = [(r, m % self.n) for r, m in self.branch_factors if m % self.n]
        changed = len(facs) != len(self.branch_factors) or any(
            m != m2 for (_, m), (_, m2) in zip(facs, self.branch_factors))
        return SuperellipticFamily(self.n, facs, self.var), changed

    def is_irreducible(self) -> bool:
        return _fold(gcd, self.mults, self.n) == 1

    def f(self) -> UniPoly:
        p = UniPoly([_rf(1, self.var)], TVAR)
        for r, m in self.branch_factors:
            p = p * UniPoly([-r, _rf(1, self.var)], TVAR) ** m
        return p

    def to_json(self) -> dict:
        return {"n": str(self.n), "factors": [{"root": ratfun_to_json(r), "mult": str(m)} for r, m in self.branch_factors]}

    @classmethod
    def from_json(cls, data: dict, var: str = PARAM) -> "SuperellipticFamily":
        return cls(int(data["n"]), [(ratfun_from_json(f["root"], var), int(f["mult"])) for f in data["factors"]], var)


@dataclass(frozen=True)
class EigenForm:
    """extra_factor(t) * t^i dt / v^j."""

    i: int
    j: int
    extra_factor: UniPoly | None = None

    def g(self, var: str = PARAM) -> UniPoly:
        one = _rf(1, var)
        base = UniPoly([_rf(0, var)] * self.i + [one], TVAR)
        return base * self.extra_factor if self.extra_factor is not None else base

    def __str__(self) -> str:
        pre = f"({self.extra_factor})*" if self.extra_factor is not None else ""
        ti = "" if self.i == 0 else ("t*" if self.i == 1 else f"t^{self.i}*")
        return f"{pre}{ti}dt/v" + (f"^{self.j}" if self.j > 1 else "")


@dataclass
class CurveCohomClass:
    """sum coefficient * form, all forms in the same eigenspace."""

    terms: list = field(default_factory=list)

    def __post_init__(self):
        if len({f.j for f, _ in self.terms}) > 1:
            raise ValueError("mixed eigenspaces in one class")

    @property
    def j(self) -> int | None:
        return self.terms[0][0].j if self.terms else None


# ---------------------------------------------------------------------------
# counting

@dataclass(frozen=True)
class GenusReport:
    genus: int
    normalization_changed: bool
    ramification: tuple  # contributions per finite root, then infinity


def genus_report(family: SuperellipticFamily) -> GenusReport:
    """Riemann-Hurwitz on the n-th-power-free model."""
    fam, changed = family.normalized()
    if not fam.branch_factors or not fam.is_irreducible():
        raise ReducibleCover(f"v^{family.n} = f defines a reducible cover")
    n = fam.n
    contrib = [n - gcd(m, n) for m in fam.mults]
    contrib.append(n - gcd(fam.degree, n))
    two_g_minus_2 = -2 * n + sum(contrib)
    assert two_g_minus_2 % 2 == 0
    return GenusReport(two_g_minus_2 // 2 + 1, changed, tuple(contrib))


def genus(family: SuperellipticFamily) -> int:
    return genus_report(family).genus


def _holo_count(fam: SuperellipticFamily, j: int) -> int:
    n, D = fam.n, fam.degree
    return max(0, -(-j * D // n) - 1 - sum(j * m // n for m in fam.mults))


def eigenspace_dims(family: SuperellipticFamily) -> dict[int, tuple[int, int]]:
    """j -> (h10_j, h01_j) for the eigenspace of dt/v^j, j = 1..n-1."""
    fam, _ = family.normalized()
    if not fam.branch_factors or not fam.is_irreducible():
        raise ReducibleCover(f"v^{family.n} = f defines a reducible cover")
    h10 = {j: _holo_count(fam, j) for j in range(1, fam.n)}
    return {j: (h10[j], h10[fam.n - j]) for j in range(1, fam.n)}


def holomorphic_prefactor(family: SuperellipticFamily, j: int) -> UniPoly:
    p = UniPoly([_rf(1, family.var)], TVAR)
    for r, m in family.branch_factors:
        e = j * m // family.n
        if e:
            p = p * UniPoly([-r, _rf(1, family.var)], TVAR) ** e
    return p


# ---------------------------------------------------------------------------
# the form module of one eigenspace

class _FormModule:
    """Forms N(t)/R(t)^K dt/v^j modulo exact forms, over Q(λ) or over Q after specializing."""

    def __init__(self, family: SuperellipticFamily, j: int, specialize=None):
        self.family = family
        self.j = j
        self.spec = specialize
        var = family.var
        self.one = self._c(_rf(1, var))
        lin = [UniPoly([self._c(-r), self.one], TVAR) for r in family.roots]
        self.R = _fold(lambda a, b: a * b, lin, UniPoly([self.one], TVAR))
        self.S = UniPoly([], TVAR)  # f'/f = S/R
        self.Sl = UniPoly([], TVAR)  # df/dλ / f = Sl/R
        for k, (r, m) in enumerate(family.branch_factors):
            others = _fold(lambda a, b: a * b, [p for q, p in enumerate(lin) if q != k], UniPoly([self.one], TVAR))
            self.S = self.S + others * self._c(_rf(m, var))
            self.Sl = self.Sl + others * self._c(-r.derivative() * m)
        self.jn = self._c(_rf(Fraction(j, family.n), var))

    def _c(self, x):
        if self.spec is None:
            return x
        return x(self.spec) if isinstance(x, RationalFunction) else Fraction(x)

    def poly(self, g: UniPoly) -> UniPoly:
        return UniPoly([self._c(c) for c in g.coeffs], TVAR)

    def exact_numerator(self, a: int, K: int) -> UniPoly:
        """Numerator over R^K of d(t^a / R^(K-1) / v^j)."""
        ta = UniPoly([self.one * 0] * a + [self.one], TVAR)
        dta = ta.derivative()
        out = dta * self.R - ta * self.S * self.jn
        if K > 1:
            out = out - ta * self.R.derivative() * self._c(_rf(K - 1, self.family.var))
        return out

    def lift(self, N: UniPoly, K_from: int, K_to: int) -> UniPoly:
        return N * self.R ** (K_to - K_from) if K_to > K_from else N

    def solve(self, basis_nums: list[UniPoly], targets: list[UniPoly], K: int, A: int):
        """Coordinates of each target (numerators over R^K) on the basis, modulo exact forms."""
        exact = [self.exact_numerator(a, K) for a in range(A + 1)]
        cols = basis_nums + exact
        deg = max([p.degree for p in cols + targets] + [0])
        zero = self.one * 0
        rows = [[p[d] for p in cols] for d in range(deg + 1)]
        M = FieldMatrix.from_rows(rows)
        out = []
        for T in targets:
            sol = solve_linear(M, [T[d] for d in range(deg + 1)])
            if sol is None:
                return None
            x, null = sol
            # basis coordinates must be determined uniquely
            if any(any(v[i] != zero for i in range(len(basis_nums))) for v in null):
                raise ReductionFailure("basis forms are dependent modulo exact forms")
            out.append(x[: len(basis_nums)])
        return out

    def derivative_numerator(self, g: UniPoly) -> UniPoly:
        """Numerator over R of d/dλ (g dt/v^j) for polynomial g (symbolic module only)."""
        if self.spec is not None:
            raise ValueError("derivatives must be taken before specializing")
        dg = UniPoly([c.derivative() for c in g.coeffs], TVAR)
        return dg * self.R - g * self.Sl * self.jn


def _windows(family: SuperellipticFamily):
    base = max(family.degree, 2)
    yield 1, base
    yield 1, 2 * base
    yield 2, 2 * base
    yield 2, 4 * base


def eigenspace_basis(family: SuperellipticFamily, j: int) -> list[EigenForm]:
    """Holomorphic forms H_j t^i dt/v^j first, then further H_j t^i dt/v^j up to
    the eigenspace dimension h10_j + h01_j, skipping dependent candidates."""
    fam, _ = family.normalized()
    dims = eigenspace_dims(fam)
    want = sum(dims[j])
    H = holomorphic_prefactor(fam, j)
    extra = H if H.degree > 0 else None
    mod = _FormModule(fam, j)
    chosen: list[EigenForm] = []
    i = 0
    while len(chosen) < want:
        if i > want + fam.degree + 4:
            raise ReductionFailure(f"could not find {want} independent forms for j = {j}")
        cand = EigenForm(i, j, extra)
        trial = chosen + [cand]
        if _independent(mod, trial, fam):
            chosen = trial
        i += 1
    return chosen


def _independent(mod: _FormModule, forms: list[EigenForm], fam: SuperellipticFamily) -> bool:
    from .algebra import rank

    K, A = 1, 2 * max(fam.degree, 2)
    nums = [f.g(fam.var) * mod.R for f in forms]
    exact = [mod.exact_numerator(a, K) for a in range(A + 1)]
    deg = max(p.degree for p in nums + exact)
    def mat(cols):
        return FieldMatrix.from_rows([[p[d] for p in cols] for d in range(deg + 1)])
    return rank(mat(nums + exact)) - rank(mat(exact)) == len(forms)


def _reduce_targets(mod: _FormModule, basis: list[EigenForm], targets_over_R: list[UniPoly], fam):
    for K, A in _windows(fam):
        bn = [mod.lift(mod.poly(f.g(fam.var)) * mod.R, 1, K) for f in basis]
        tg = [mod.lift(T, 1, K) for T in targets_over_R]
        res = mod.solve(bn, tg, K, A)
        if res is not None:
            return res
    raise ReductionFailure("exact-form relations do not reach the target forms")


def gauss_manin_matrix(family: SuperellipticFamily, j: int, basis: list[EigenForm] | None = None) -> FieldMatrix:
    """G with d/dλ basis[b] = sum_c G[b, c] basis[c] in H^1_dR, entries in Q(λ)."""
    fam = family
    basis = basis or eigenspace_basis(fam, j)
    mod = _FormModule(fam, j)
    targets = [mod.derivative_numerator(f.g(fam.var)) for f in basis]
    rows = _reduce_targets(mod, basis, targets, fam)
    return FieldMatrix.from_rows(rows)


def gauss_manin_matrix_at(family: SuperellipticFamily, j: int, lam, basis: list[EigenForm] | None = None,
                          windows=((2, None),)) -> FieldMatrix:
    """The Gauss-Manin matrix specialized at λ = lam, with the reduction done over Q
    using a different exact-form window (an independent route to the same matrix)."""
    basis = basis or eigenspace_basis(family, j)
    sym = _FormModule(family, j)
    targets = [sym.derivative_numerator(f.g(family.var)) for f in basis]
    mod = _FormModule(family, j, specialize=Fraction(lam))
    base = 3 * max(family.degree, 2)
    for K, _ in windows:
        bn = [mod.lift(mod.poly(f.g(family.var) * sym.R), 1, K) for f in basis]
        tg = [mod.lift(mod.poly(T), 1, K) for T in targets]
        res = mod.solve(bn, tg, K, base)
        if res is not None:
            return FieldMatrix.from_rows(res)
    raise ReductionFailure("specialized reduction failed")


def reduce_form(family: SuperellipticFamily, form: EigenForm, basis: list[EigenForm] | None = None) -> CurveCohomClass:
    basis = basis or eigenspace_basis(family, form.j)
    mod = _FormModule(family, form.j)
    [coords] = _reduce_targets(mod, basis, [form.g(family.var) * mod.R], family)
    return CurveCohomClass([(b, c) for b, c in zip(basis, coords)])


def pf_operator_for_form(family: SuperellipticFamily, form: EigenForm) -> ODEOperator:
    """Minimal monic operator in d/dλ annihilating the periods of ``form``."""
    var = family.var
    basis = eigenspace_basis(family, form.j)
    G = gauss_manin_matrix(family, form.j, basis)
    r = len(basis)
    cls = reduce_form(family, form, basis)
    vecs = [[c for _, c in cls.terms]]
    for order in range(1, r + 2):
        prev = vecs[-1]
        nxt = [prev[c].derivative() + sum((prev[b] * G[b, c] for b in range(r)), _rf(0, var)) for c in range(r)]
        vecs.append(nxt)
        # look for sum_{i<order} a_i v_i = -v_order
        M = FieldMatrix.from_rows([[vecs[i][c] for i in range(order)] for c in range(r)])
        sol = solve_linear(M, [-x for x in vecs[order]])
        if sol is not None:
            x, _ = sol
            return ODEOperator(list(x) + [_rf(1, var)], var)
    raise OrderExceeded(f"no relation up to order {r + 1}")


# ---------------------------------------------------------------------------
# parsing of CLI strings

_PARAM_NAMES = {"λ", "l", "lam", "lambda"}


def _eval_expr(text: str, var: str = PARAM, allow_t: bool = True) -> UniPoly:
    """Evaluate an arithmetic expression in t and λ to a UniPoly in t over Q(λ)."""
    src = text.replace("λ", "lam").replace("^", "**").replace("²", "**2").replace("³", "**3")
    tree = ast.parse(src, mode="eval")
    one = _rf(1, var)

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return UniPoly([one * node.value], TVAR)
        if isinstance(node, ast.Name):
            if node.id in _PARAM_NAMES:
                return UniPoly([RationalFunction.variable(var)], TVAR)
            if node.id == "t" and allow_t:
                return UniPoly([one * 0, one], TVAR)
            raise ValueError(f"unknown symbol {node.id!r}")
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                if b.degree > 0:
                    raise ValueError("division by a polynomial in t is not allowed")
                return a * UniPoly([1 / b[0]], TVAR)
            if isinstance(node.op, ast.Pow):
                if b.degree > 0 or not (b[0].is_constant() and b[0].constant_value().denominator == 1):
                    raise ValueError("exponents must be integers")
                e = int(b[0].constant_value())
                if e < 0:
                    if a.degree > 0:
                        raise ValueError("negative powers of t are not allowed")
                    return UniPoly([a[0] ** e], TVAR)
                return a ** e
        raise ValueError(f"unsupported expression: {text!r}")

    return ev(tree)


def parse_root(text: str, var: str = PARAM) -> RationalFunction:
    p = _eval_expr(text, var, allow_t=False)
    return p[0] if p.degree >= 0 else _rf(0, var)


def parse_form(text: str, var: str = PARAM) -> EigenForm:
    """Parse strings such as 'dt/v', 't*dt/v', '(t-λ)dt/v^2', '(t-λ)*dt/v²'."""
    s = text.replace(" ", "").replace("²", "^2").replace("³", "^3")
    if "dt/v" not in s:
        raise ValueError(f"form must contain 'dt/v': {text!r}")
    pre, post = s.split("dt/v", 1)
    if post == "":
        j = 1
    elif post.startswith("^") or post.startswith("**"):
        j = int(post.lstrip("^*"))
    else:
        raise ValueError(f"cannot parse the power of v in {text!r}")
    pre = pre.rstrip("*")
    if not pre:
        return EigenForm(0, j)
    g = _eval_expr(pre, var)
    return EigenForm(0, j, g)


def family_from_strings(n: int, roots: Sequence[str], mults: Sequence[int], var: str = PARAM) -> SuperellipticFamily:
    if len(roots) != len(mults):
        raise ValueError("roots and mults must have the same length")
    return SuperellipticFamily(n, [(parse_root(r, var), int(m)) for r, m in zip(roots, mults)], var)
