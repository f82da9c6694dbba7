from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from periodscope.errors import ReducibleCover
from periodscope.superelliptic import (
    PARAM,
    SuperellipticFamily,
    eigenspace_basis,
    eigenspace_dims,
    family_from_strings,
    gauss_manin_matrix,
    gauss_manin_matrix_at,
    genus,
    genus_report,
    parse_form,
    pf_operator_for_form,
)
from periodscope.verification import (
    hypergeometric_curve_operator,
    q4_curve,
    reference_curve_operator,
    rohde_curve,
)


@pytest.fixture(scope="module")
def family():
    return family_from_strings(3, ["0", "1", PARAM], [1, 1, 2])


def test_reference_family_invariants(family):
    assert family.is_irreducible()
    assert family.degree == 4
    assert genus(family) == 2
    assert eigenspace_dims(family) == {1: (1, 1), 2: (1, 1)}


def test_eigenspace_bases(family):
    assert [str(f) for f in eigenspace_basis(family, 1)] == ["dt/v", "t*dt/v"]
    assert len(eigenspace_basis(family, 2)) == 2


def test_curve_operator_is_gauss_hypergeometric():
    op = reference_curve_operator()
    assert op.order == 2
    assert op.monic() == hypergeometric_curve_operator().monic()


def test_conjugate_eigenspace_gives_same_operator(family):
    op2 = pf_operator_for_form(family, parse_form("(t-λ)dt/v^2"))
    assert op2.monic() == hypergeometric_curve_operator().monic()


def _period(lam, k):
    """d^k/dλ^k of the integral of dt / (t (1-t) (λ-t)^2)^(1/3) over [0, 1], λ > 1."""
    coef = [mpmath.mpf(1), mpmath.mpf(-2) / 3, mpmath.mpf(10) / 9][k]
    return mpmath.quad(lambda t: coef * (t * (1 - t)) ** (-mpmath.mpf(1) / 3)
                       * (lam - t) ** (-mpmath.mpf(2) / 3 - k), [0, mpmath.mpf(1) / 2, 1])


@pytest.mark.parametrize("lam", [Fraction(3), Fraction(5, 2)])
def test_operator_annihilates_numerical_period(lam):
    with mpmath.workdps(30):
        lm = mpmath.mpf(lam.numerator) / lam.denominator
        P = [_period(lm, k) for k in range(3)]
        # the operator derived here: λ(1-λ) P'' + (1-2λ) P' - 2/9 P
        good = lm * (1 - lm) * P[2] + (1 - 2 * lm) * P[1] - mpmath.mpf(2) / 9 * P[0]
        # the coefficient -2/3 does not annihilate the period
        other = lm * (1 - lm) * P[2] + (1 - 2 * lm) * P[1] - mpmath.mpf(2) / 3 * P[0]
        assert abs(good) < mpmath.mpf(10) ** -20 * abs(P[0])
        assert abs(other) > mpmath.mpf(10) ** -2 * abs(P[0])


def test_gauss_manin_specialization_matches(family):
    basis = eigenspace_basis(family, 1)
    G = gauss_manin_matrix(family, 1, basis)
    G5 = gauss_manin_matrix_at(family, 1, Fraction(5), basis)
    for b in range(2):
        for c in range(2):
            assert G[b, c](Fraction(5)) == G5[b, c]


@pytest.mark.parametrize("dims,want", [((6, 0), 4), ((4, 1), 3), ((2, 2), 2), ((0, 3), 1)])
def test_triple_cover_genera(dims, want):
    fam = rohde_curve(*dims)
    assert genus(fam) == want
    assert sum(a + b for a, b in eigenspace_dims(fam).values()) == 2 * want


def test_q4_curve():
    fam = q4_curve()
    assert fam.degree == 12
    g = genus(fam)
    assert g == 10
    dims = eigenspace_dims(fam)
    assert sum(a + b for a, b in dims.values()) == 2 * g
    assert [dims[j][0] for j in range(1, 6)] == [1, 3, 0, 2, 4]


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 7), st.lists(st.integers(1, 6), min_size=1, max_size=5))
def test_eigenspaces_sum_to_twice_genus(n, mults):
    from math import gcd
    mults = [m % n or 1 for m in mults]
    g = 0
    for m in mults:
        g = gcd(g, m)
    if gcd(g, n) != 1:
        mults[0] = 1
    fam = family_from_strings(n, [str(i) for i in range(len(mults))], mults)
    rep = genus_report(fam)
    assert rep.genus >= 0
    assert sum(a + b for a, b in eigenspace_dims(fam).values()) == 2 * rep.genus


def test_reducible_cover_rejected():
    fam = family_from_strings(4, ["0", "1"], [2, 2])
    assert not fam.is_irreducible()
    with pytest.raises(ReducibleCover):
        eigenspace_dims(fam)


def test_family_json_roundtrip(family):
    data = family.to_json()
    assert data["n"] == "3"
    back = SuperellipticFamily.from_json(data)
    assert back.to_json() == data


def test_parse_form_variants():
    assert parse_form("dt/v").j == 1
    assert parse_form("(t-λ)dt/v^2").j == 2
    assert parse_form("(t-λ)*dt/v²").j == 2
    with pytest.raises(ValueError):
        parse_form("dx/y")
