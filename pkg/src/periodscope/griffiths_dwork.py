"""Picard-Fuchs operator of the invariant periods of the Dwork quintic pencil.

The derivation follows the specialize-and-interpolate strategy: for each
rational sample t0 the classes nabla^i omega (i = 0..4) are reduced over Q to
the canonical basis of the rank-4 invariant quotient (see ``conventions``),
the unique linear relation among them is found, and the relation coefficients
are reconstructed as rational functions of t.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import count
from math import gcd
from typing import Callable, Iterable, Iterator, Sequence

from . import conventions as C
from .algebra import MultiPoly, RationalFunction, UniPoly, rational_reconstruct, solve_linear, solve_sparse
from .algebra.linalg import FieldMatrix
from .errors import NotReducible, ReconstructionError, SingularFiber
from .ode.operator import ODEOperator


@dataclass(frozen=True)
class PencilSpec:
    """F = sum x_i^degree + param_coeff * t * x^deforming_monomial."""

    n_vars: int = C.N_VARS
    degree: int = C.DEGREE
    deforming_monomial: tuple = C.DEFORMING_MONOMIAL
    param_coeff: Fraction = C.PARAM_COEFF

    def __post_init__(self):
        if sum(self.deforming_monomial) != self.degree:
            raise ValueError("deforming monomial must have total degree equal to the pencil degree")
        if len(self.deforming_monomial) != self.n_vars:
            raise ValueError("deforming monomial has the wrong number of variables")
        if self.n_vars != self.degree:
            raise ValueError("only the Calabi-Yau case n_vars == degree is supported")
        object.__setattr__(self, "param_coeff", Fraction(self.param_coeff))

    def is_singular(self, t_value) -> bool:
        """X_t is singular iff (-param_coeff * t / degree)^degree = 1."""
        return (-self.param_coeff * Fraction(t_value) / self.degree) ** self.degree == 1


@dataclass(frozen=True)
class ResidueForm:
    """numerator * Omega / F^pole_order, with deg numerator = n_vars * (pole_order - 1)."""

    pole_order: int
    numerator: MultiPoly

    def __post_init__(self):
        n = self.numerator.n_vars
        if not 1 <= self.pole_order <= n:
            raise ValueError(f"pole order {self.pole_order} outside 1..{n}")
        want = n * (self.pole_order - 1)
        for e in self.numerator.terms:
            if sum(e) != want:
                raise ValueError(f"numerator monomial {e} has degree {sum(e)}, expected {want}")


@dataclass(frozen=True)
class ReductionCertificate:
    """numerator(input) = sum_i cofactors[i] * dF/dx_i(t_value) + remainder, exactly."""

    input: ResidueForm
    cofactors: tuple
    remainder: MultiPoly
    basis_coords: dict
    t_value: Fraction
    output: ResidueForm

    def check(self, spec: PencilSpec) -> bool:
        F = pencil_equation(spec, self.t_value)
        acc = self.remainder
        for i, A in enumerate(self.cofactors):
            acc = acc + A * F.diff(i)
        return acc == _specialize(self.input.numerator, self.t_value)


def _prod_monomial(spec: PencilSpec, power: int = 1) -> tuple:
    return tuple(power * a for a in spec.deforming_monomial)


def pencil_equation(spec: PencilSpec, t) -> MultiPoly:
    """sum x_i^d + param_coeff * t * x^m as a MultiPoly (coefficients in Q or Q(t))."""
    n, d = spec.n_vars, spec.degree
    terms = {}
    for i in range(n):
        e = [0] * n
        e[i] = d
        terms[tuple(e)] = Fraction(1) if not isinstance(t, RationalFunction) else RationalFunction.const(1, t.var)
    terms[spec.deforming_monomial] = t * spec.param_coeff
    return MultiPoly(n, terms, grade=d)


def _coeff_dt(c):
    return c.derivative() if isinstance(c, RationalFunction) else Fraction(0)


def gauss_manin_step(form: ResidueForm, spec: PencilSpec) -> ResidueForm:
    """d/dt of the form, using the convention in ``conventions``:

    numerator' = k * GM_FACTOR * prod(x) * A + F * dA/dt, pole order k + 1.
    """
    k = form.pole_order
    A = form.numerator
    P = MultiPoly.monomial(spec.deforming_monomial, -spec.param_coeff)
    out = A * P * k
    dA = A.map_coeffs(_coeff_dt)
    if not dA.is_zero():
        var = next(c.var for c in A.terms.values() if isinstance(c, RationalFunction))
        out = out + dA * pencil_equation(spec, RationalFunction.variable(var))
    return ResidueForm(k + 1, out)


def omega(spec: PencilSpec) -> ResidueForm:
    return ResidueForm(1, MultiPoly(spec.n_vars, {(0,) * spec.n_vars: 1}))


def _specialize(A: MultiPoly, t_value) -> MultiPoly:
    return A.map_coeffs(lambda c: c(t_value) if isinstance(c, RationalFunction) else Fraction(c))


def _character(e: tuple, d: int) -> tuple:
    """Exponent vector modulo d, modulo the diagonal (1, ..., 1)."""
    return tuple((a - e[0]) % d for a in e)


@lru_cache(maxsize=None)
def _monomials(n: int, deg: int) -> tuple:
    from .algebra import monomial_basis

    return tuple(monomial_basis(n, deg))


@lru_cache(maxsize=None)
def _monomials_in_class(n: int, deg: int, d: int, chi: tuple) -> tuple:
    return tuple(e for e in _monomials(n, deg) if _character(e, d) == chi)


def jacobian_reduce(form: ResidueForm, spec: PencilSpec, t_value) -> tuple[ResidueForm, ReductionCertificate]:
    """Write numerator = sum A_i dF/dx_i + R at t = t_value and lower the pole order.

    R is a multiple of prod(x)^(k-1) (the canonical basis element e_(k-1)) when
    k - 1 <= n - 2, and zero otherwise.  The returned form has pole order
    k - 1 and numerator (1/(k-1)) sum dA_i/dx_i; R's coordinate is recorded in
    the certificate's ``basis_coords``.
    """
    t_value = Fraction(t_value)
    k = form.pole_order
    if k < 2:
        raise ValueError("jacobian_reduce needs pole order >= 2")
    if spec.is_singular(t_value):
        raise SingularFiber(f"X_t is singular at t = {t_value}")
    n, d = spec.n_vars, spec.degree
    A = _specialize(form.numerator, t_value)
    deg = n * (k - 1)
    F = pencil_equation(spec, t_value)
    dF = [F.diff(i) for i in range(n)]
    P_pow = _prod_monomial(spec, k - 1) if k - 1 <= n - 2 else None

    classes: dict[tuple, list] = {}
    for e in A.terms:
        classes.setdefault(_character(e, d), []).append(e)

    cofactors = [dict() for _ in range(n)]
    remainder_coeff = Fraction(0)
    for chi in classes:
        # unknowns: monomials of A_i whose product with dF_i lands in class chi
        cols: list[tuple] = []
        for i in range(n):
            ei = tuple(1 if j == i else 0 for j in range(n))
            chi_i = _character(tuple(c + b for c, b in zip(chi, ei)), d)
            # A_i * x_i^(d-1) must be in class chi: class(A_i) = chi + e_i (mod diagonal)
            for m in _monomials_in_class(n, deg - (d - 1), d, chi_i):
                cols.append((i, m))
        use_rem = P_pow is not None and _character(P_pow, d) == chi
        ncols = len(cols) + (1 if use_rem else 0)
        rows_idx = {e: r for r, e in enumerate(_monomials_in_class(n, deg, d, chi))}
        rows = [dict() for _ in rows_idx]
        for c, (i, m) in enumerate(cols):
            for e, v in dF[i].terms.items():
                tgt = tuple(a + b for a, b in zip(m, e))
                r = rows_idx[tgt]
                rows[r][c] = rows[r].get(c, 0) + v
        if use_rem:
            rows[rows_idx[P_pow]][len(cols)] = Fraction(1)
        rhs = [Fraction(0)] * len(rows)
        for e in classes[chi]:
            rhs[rows_idx[e]] = A.terms[e]
        sol = solve_sparse(rows, rhs, ncols)
        if sol is None:
            raise NotReducible(f"numerator class {chi} at pole order {k} is not in the Jacobian ideal plus the canonical span")
        for c, v in sol.items():
            if v == 0:
                continue
            if c == len(cols):
                remainder_coeff += v
            else:
                i, m = cols[c]
                cofactors[i][m] = cofactors[i].get(m, 0) + v

    cof = tuple(MultiPoly(n, cofactors[i]) for i in range(n))
    new_num = MultiPoly(n, {})
    for i in range(n):
        new_num = new_num + cof[i].diff(i)
    new_num = new_num * Fraction(1, k - 1)
    out = ResidueForm(k - 1, MultiPoly(n, new_num.terms))
    remainder = MultiPoly(n, {P_pow: remainder_coeff}) if P_pow is not None else MultiPoly(n, {})
    coords = {k - 1: remainder_coeff} if remainder_coeff else {}
    cert = ReductionCertificate(form, cof, remainder, coords, t_value, out)
    return out, cert


def reduce_to_basis(form: ResidueForm, spec: PencilSpec, t_value) -> tuple[list[Fraction], list[ReductionCertificate]]:
    """Coordinates of the class of ``form`` at t_value on e_0..e_(n-2)."""
    coords = [Fraction(0)] * (spec.n_vars - 1)
    certs = []
    cur = form
    while cur.pole_order >= 2:
        cur, cert = jacobian_reduce(cur, spec, t_value)
        certs.append(cert)
        for j, v in cert.basis_coords.items():
            coords[j] += v
    coords[0] += _specialize(cur.numerator, t_value).coeff((0,) * spec.n_vars)
    return coords, certs


def derivative_forms(spec: PencilSpec, order: int | None = None) -> list[ResidueForm]:
    """omega, nabla omega, ..., nabla^order omega."""
    order = spec.n_vars - 1 if order is None else order
    forms = [omega(spec)]
    for _ in range(order):
        forms.append(gauss_manin_step(forms[-1], spec))
    return forms


@dataclass
class SampleRelation:
    t_value: Fraction
    coefficients: list  # p_0(t0) .. p_r(t0) with p_r = 1
    certificates: list


def sample_relation(spec: PencilSpec, t_value) -> SampleRelation:
    """Reduce nabla^i omega at t_value and solve for the monic linear relation.

    Pure and independent per sample, so callers may map it in parallel.
    """
    t_value = Fraction(t_value)
    forms = derivative_forms(spec)
    cols, certs = [], []
    for f in forms:
        c, cs = reduce_to_basis(f, spec, t_value)
        cols.append(c)
        certs.extend(cs)
    M = FieldMatrix.from_rows([[cols[j][i] for j in range(len(forms))] for i in range(len(cols[0]))])
    _, null = solve_linear(M, [Fraction(0)] * M.rows)
    if len(null) != 1:
        raise NotReducible(f"expected a unique relation at t = {t_value}, nullity {len(null)}")
    v = null[0]
    if v[-1] == 0:
        raise SingularFiber(f"leading relation coefficient vanishes at t = {t_value}")
    return SampleRelation(t_value, [x / v[-1] for x in v], certs)


def sample_points(start: int = 0, step: int = 1) -> Iterator[Fraction]:
    """Small rationals 2, -2, 1/2, -1/2, 3, -3, 3/2, ... (0 and +-1 skipped), sliced."""

    def gen():
        for h in count(2):
            for q in range(1, h + 1):
                for p in range(1, h + 1):
                    if max(p, q) == h and gcd(p, q) == 1:
                        yield Fraction(p, q)
                        yield Fraction(-p, q)

    seen = set()
    i = 0
    for x in gen():
        if x in seen or x == 0 or abs(x) == 1:
            continue
        seen.add(x)
        if i >= start and (i - start) % step == 0:
            yield x
        i += 1


@dataclass
class DworkDerivation:
    operator: ODEOperator
    samples_used: list
    degree_bounds: tuple
    certificates_checked: int
    skipped: list = field(default_factory=list)

    def provenance(self) -> dict:
        return {
            "method": "specialize-and-interpolate Griffiths-Dwork reduction on the invariant subspace",
            "sample_points": [f"{x.numerator}/{x.denominator}" for x in self.samples_used],
            "skipped_samples": [f"{x.numerator}/{x.denominator}" for x in self.skipped],
            "degree_bounds": {"numerator": str(self.degree_bounds[0]), "denominator": str(self.degree_bounds[1])},
            "certificates_checked": str(self.certificates_checked),
        }


def derive_pf_dwork(spec: PencilSpec | None = None, samples: Iterable | None = None,
                    mapper: Callable | None = None, check_certificates: bool = True) -> DworkDerivation:
    """Run the full derivation and keep provenance.

    ``mapper`` (e.g. ``executor.map``) may be supplied to evaluate the per-sample
    reductions in parallel; it is called as ``mapper(fn, points)``.
    """
    spec = spec or PencilSpec()
    pts = iter(samples if samples is not None else sample_points())
    mapper = mapper or map
    relations: list[SampleRelation] = []
    skipped: list[Fraction] = []
    n_certs = 0
    bound = C.INITIAL_DEGREE_BOUND
    while True:
        need = 2 * bound + 1 + C.HELD_OUT_SAMPLES
        while len(relations) < need:
            batch = []
            for x in pts:
                if spec.is_singular(x):
                    skipped.append(x)
                    continue
                batch.append(x)
                if len(batch) == need - len(relations):
                    break
            if not batch:
                raise ReconstructionError("ran out of sample points", code="reconstruction failed")
            for x, rel in zip(batch, mapper(_safe_relation, [(spec, b) for b in batch])):
                if rel is None:
                    skipped.append(x)
                    continue
                if check_certificates:
                    for cert in rel.certificates:
                        if not cert.check(spec):
                            raise NotReducible(f"certificate failed to re-expand at t = {x}")
                    n_certs += len(rel.certificates)
                relations.append(rel)
        try:
            coeffs = []
            r = len(relations[0].coefficients) - 1
            for i in range(r + 1):
                data = [(rel.t_value, rel.coefficients[i]) for rel in relations[:need]]
                coeffs.append(rational_reconstruct(data, bound, bound, "t"))
            # all samples gathered so far must agree, not just those used
            for rel in relations:
                for i, f in enumerate(coeffs):
                    if f(rel.t_value) != rel.coefficients[i]:
                        raise ReconstructionError("extra sample disagrees")
            op = ODEOperator(coeffs, "t")
            return DworkDerivation(op, [rel.t_value for rel in relations], (bound, bound), n_certs, skipped)
        except ReconstructionError:
            bound *= 2
            if bound > C.MAX_DEGREE_BOUND:
                raise ReconstructionError("degree bounds exceeded 64", code="reconstruction failed")


def _safe_relation(args):
    spec, x = args
    try:
        return sample_relation(spec, x)
    except SingularFiber:
        return None


def compute_pf_dwork(spec: PencilSpec | None = None, samples: Iterable | None = None,
                     mapper: Callable | None = None) -> ODEOperator:
    """The monic order-4 operator annihilating omega (see ``derive_pf_dwork``)."""
    return derive_pf_dwork(spec, samples, mapper).operator


def z5_symmetry_defects(op: ODEOperator) -> list[str]:
    """Check the t -> zeta t symmetry of a monic operator of order r.

    The pencil is invariant under t -> zeta t combined with x_1 -> zeta^-1 x_1,
    under which omega picks up a factor zeta^-1; the monic operator must then
    satisfy p_i(zeta t) = zeta^(i-r) p_i(t), i.e. t^(r-i) p_i(t) is a function
    of t^5.  Returns the list of violated coefficients (empty when symmetric).
    """
    r = op.order
    mon = op.monic()
    bad = []
    t = RationalFunction.variable(op.var)
    for i, p in enumerate(mon.coefficients):
        q = p * t ** (r - i)
        shift = q.den.degree % 5
        ok = all(c == 0 or (e - shift) % 5 == 0 for e, c in enumerate(q.den.coeffs))
        ok = ok and all(c == 0 or (e - shift) % 5 == 0 for e, c in enumerate(q.num.coeffs))
        if not ok:
            bad.append(f"p_{i}")
    return bad
