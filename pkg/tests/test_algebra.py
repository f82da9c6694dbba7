import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from periodscope.algebra import (
    FieldMatrix,
    MultiPoly,
    RationalFunction,
    UniPoly,
    poly_from_json,
    poly_gcd,
    poly_to_json,
    rank,
    rational_from_str,
    rational_reconstruct,
    rational_to_str,
    ratfun_from_json,
    ratfun_to_json,
    solve_linear,
    solve_sparse,
    squarefree_decomposition,
)
from periodscope.errors import ReconstructionError

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=30)
polys = st.lists(fractions, max_size=5).map(lambda cs: UniPoly(cs, "t"))
nonzero_polys = polys.filter(lambda p: not p.is_zero())


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a - a).is_zero()


@given(polys, nonzero_polys)
def test_division_with_remainder(a, b):
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.is_zero() or r.degree < b.degree


@given(polys, nonzero_polys, nonzero_polys)
def test_ratfun_field_ops(a, b, c):
    f = RationalFunction(a, b)
    g = RationalFunction(c, b)
    assert (f + g) * RationalFunction(b) == RationalFunction(a + c)
    if not f.is_zero():
        assert f * f.inverse() == RationalFunction.const(1)


@given(fractions)
def test_rational_string_roundtrip(x):
    s = rational_to_str(x)
    assert "/" in s
    assert rational_from_str(s) == x


@given(polys, nonzero_polys)
def test_json_roundtrip_is_bit_exact(a, b):
    f = RationalFunction(a, b)
    data = ratfun_to_json(f)
    text = json.dumps(data, sort_keys=True)
    back = ratfun_from_json(json.loads(text))
    assert back == f
    assert json.dumps(ratfun_to_json(back), sort_keys=True) == text
    assert poly_from_json(poly_to_json(a)) == a


def test_derivative_and_evaluation():
    t = RationalFunction.variable("t")
    f = (t ** 2 + 1) / (t - 3)
    assert f(Fraction(1)) == Fraction(-1)
    # quotient rule: ((2t)(t-3) - (t^2+1)) / (t-3)^2
    assert f.derivative() == (t ** 2 - 6 * t - 1) / (t - 3) ** 2


def test_gcd_and_squarefree():
    x = UniPoly.x("t")
    p = (x - 1) ** 2 * (x + 2)
    q = (x - 1) * (x - 5)
    assert poly_gcd(p, q) == (x - 1).monic()
    parts = squarefree_decomposition(p)
    assert {(str(f.monic()), m) for f, m in parts} == {(str((x + 2).monic()), 1), (str((x - 1).monic()), 2)}


def test_multipoly_derivative_and_grade():
    x = [MultiPoly.monomial(tuple(int(i == j) for j in range(3))) for i in range(3)]
    f = x[0] ** 3 + x[0] * x[1] * x[2]
    assert f.homogeneous_degree() == 3
    assert f.diff(0) == 3 * x[0] ** 2 + x[1] * x[2]


def test_dense_solve_and_nullspace():
    M = FieldMatrix.from_rows([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert rank(M) == 2
    x, null = solve_linear(M, [6, 12, 2])
    assert M.apply(x) == [6, 12, 2]
    assert len(null) == 1 and M.apply(null[0]) == [0, 0, 0]
    assert solve_linear(M, [1, 0, 0]) is None


@given(st.lists(st.lists(st.integers(-4, 4), min_size=4, max_size=4), min_size=1, max_size=5),
       st.lists(st.integers(-5, 5), min_size=4, max_size=4))
def test_sparse_solver_agrees_with_dense(rows, x0):
    rhs = [sum(Fraction(a) * b for a, b in zip(r, x0)) for r in rows]
    sparse_rows = [{j: Fraction(a) for j, a in enumerate(r) if a} for r in rows]
    sol = solve_sparse(sparse_rows, rhs, 4)
    assert sol is not None
    vec = [sol.get(j, Fraction(0)) for j in range(4)]
    assert [sum(Fraction(a) * v for a, v in zip(r, vec)) for r in rows] == rhs


def test_sparse_solver_detects_inconsistency():
    assert solve_sparse([{0: Fraction(1)}, {0: Fraction(2)}], [Fraction(1), Fraction(3)], 1) is None


@settings(max_examples=30, deadline=None)
@given(st.lists(fractions, min_size=1, max_size=4), st.lists(fractions, min_size=1, max_size=3))
def test_reconstruction_recovers_rational_functions(num, den):
    target = RationalFunction(UniPoly(num, "t"), UniPoly(den, "t") + UniPoly([0, 0, 0, 0, 1], "t"))
    xs = [Fraction(k, 3) for k in range(-20, 20)]
    pts = [(x, target(x)) for x in xs if target.den(x) != 0][:4 + 5 + 1 + 2]
    assert rational_reconstruct(pts, 4, 5) == target


def test_reconstruction_rejects_inconsistent_samples():
    pts = [(Fraction(k), Fraction(k * k)) for k in range(1, 8)]
    pts[-1] = (Fraction(7), Fraction(50))
    with pytest.raises(ReconstructionError) as exc:
        rational_reconstruct(pts, 2, 1)
    assert exc.value.code == "inconsistent samples"


def test_reconstruction_needs_enough_samples():
    with pytest.raises(ValueError):
        rational_reconstruct([(Fraction(1), Fraction(1))], 2, 2)
