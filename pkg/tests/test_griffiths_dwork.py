from fractions import Fraction

import mpmath
import pytest

from periodscope.algebra import MultiPoly, UniPoly
from periodscope.errors import SingularFiber
from periodscope.griffiths_dwork import (
    PencilSpec,
    ResidueForm,
    derivative_forms,
    derive_pf_dwork,
    jacobian_reduce,
    omega,
    pencil_equation,
    reduce_to_basis,
    sample_points,
    sample_relation,
    z5_symmetry_defects,
)
from periodscope.ode import is_maximally_unipotent, local_data, singular_points
from periodscope.verification import dwork_oracle_residuals

SPEC = PencilSpec()
EXPECTED_CLEARED = [[0, 1], [0, 0, 15], [0, 0, 0, 25], [0, 0, 0, 0, 10], [-1, 0, 0, 0, 0, 1]]


@pytest.fixture(scope="module")
def derivation():
    return derive_pf_dwork()


def test_singular_fibres_are_fifth_roots_of_unity():
    assert SPEC.is_singular(1)
    assert not SPEC.is_singular(-1)
    assert not SPEC.is_singular(2)
    with pytest.raises(SingularFiber):
        reduce_to_basis(derivative_forms(SPEC)[2], SPEC, 1)


def test_gauss_manin_convention():
    # nabla^k omega = k! 5^k prod(x)^k / F^(k+1): numerators stay t-independent
    forms = derivative_forms(SPEC)
    fact = 1
    for k, f in enumerate(forms):
        fact *= max(k, 1)
        assert f.pole_order == k + 1
        assert f.numerator == MultiPoly.monomial((k,) * 5, fact * 5 ** k)


def test_residue_form_checks_degree():
    with pytest.raises(ValueError):
        ResidueForm(2, MultiPoly.monomial((1, 0, 0, 0, 0)))


def test_jacobian_reduction_certificate_reexpands():
    form = derivative_forms(SPEC)[3]
    out, cert = jacobian_reduce(form, SPEC, Fraction(2))
    assert out.pole_order == form.pole_order - 1
    assert cert.check(SPEC)
    # tampering with the remainder breaks the certificate
    bad = type(cert)(cert.input, cert.cofactors, cert.remainder + MultiPoly.monomial((3, 3, 3, 3, 3), 1),
                     cert.basis_coords, cert.t_value, cert.output)
    assert not bad.check(SPEC)


def test_omega_reduces_to_first_basis_vector():
    coords, certs = reduce_to_basis(omega(SPEC), SPEC, Fraction(3))
    assert coords == [1, 0, 0, 0] and certs == []


def test_sample_relation_is_monic():
    rel = sample_relation(SPEC, Fraction(2))
    assert rel.coefficients[-1] == 1
    assert all(c.check(SPEC) for c in rel.certificates)


def test_sample_points_skip_degenerate_values():
    pts = list(zip(range(12), sample_points()))
    values = [p for _, p in pts]
    assert values[:4] == [2, -2, Fraction(1, 2), Fraction(-1, 2)]
    assert 0 not in values and 1 not in values and -1 not in values
    assert len(set(values)) == len(values)


def test_derived_operator(derivation):
    op = derivation.operator
    assert op.order == 4
    cleared = op.cleared()
    lead = cleared[-1]
    ref = [UniPoly(c, "t") for c in EXPECTED_CLEARED]
    # equal up to a rational scalar
    scale = lead.lc / ref[-1].lc
    assert [p for p in cleared] == [r.scale(scale) for r in ref]
    assert (lead % UniPoly([-1, 0, 0, 0, 0, 1], "t")).is_zero()
    assert derivation.certificates_checked > 0
    assert z5_symmetry_defects(op) == []


def test_independent_of_sample_choice(derivation):
    other = derive_pf_dwork(samples=sample_points(1, 2))
    assert other.operator == derivation.operator
    assert set(other.samples_used) != set(derivation.samples_used)


def test_local_structure(derivation):
    op = derivation.operator
    pts = {p.label: p for p in singular_points(op)}
    assert "oo" in pts and "1" in pts and "0" not in pts
    ld_inf = local_data(op, pts["oo"])
    assert {e.exact for e in ld_inf.exponents} == {1}
    assert ld_inf.jordan_blocks == [4]
    assert is_maximally_unipotent(ld_inf, 4)
    ld1 = local_data(op, pts["1"])
    assert sorted(e.exact for e in ld1.exponents) == [0, 1, 1, 2]
    assert not is_maximally_unipotent(ld1, 4)


def test_annihilates_closed_form_solutions(derivation):
    res = dwork_oracle_residuals(derivation.operator, 50)
    assert max(abs(r) for r in res) < mpmath.mpf(10) ** -20


def test_pencil_equation_terms():
    F = pencil_equation(SPEC, Fraction(3))
    assert F.coeff((5, 0, 0, 0, 0)) == 1
    assert F.coeff((1, 1, 1, 1, 1)) == -15
