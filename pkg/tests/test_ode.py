import json
from fractions import Fraction

import mpmath
import pytest

from periodscope.errors import IrregularPoint, LoopTooClose
from periodscope.ode import (
    Loop,
    ODEOperator,
    SingularPoint,
    default_loop,
    frobenius_solutions,
    is_maximally_unipotent,
    local_data,
    numerical_monodromy,
    singular_points,
    vhs_mum_verdict,
)
from periodscope.verification import composition_loops, hypergeometric_curve_operator

HYP = hypergeometric_curve_operator()


def test_operator_json_roundtrip_is_canonical():
    data = HYP.to_json()
    text = json.dumps(data, sort_keys=True)
    back = ODEOperator.from_json(json.loads(text))
    assert back == HYP
    assert json.dumps(back.to_json(), sort_keys=True) == text
    assert data["order"] == "2"


def test_monic_and_unit_equivalence():
    scaled = ODEOperator([c * Fraction(7, 3) for c in HYP.coefficients], HYP.var)
    assert scaled.equals_up_to_unit(HYP)
    assert scaled.monic() == HYP.monic()


def test_singular_points_and_exponents():
    pts = {p.label: p for p in singular_points(HYP)}
    assert set(pts) == {"0", "1", "oo"}
    ld0 = local_data(HYP, pts["0"])
    assert [e.exact for e in ld0.exponents] == [0, 0]
    assert ld0.jordan_blocks == [2]
    assert is_maximally_unipotent(ld0, 2)
    ldi = local_data(HYP, pts["oo"])
    assert sorted(e.exact for e in ldi.exponents) == [Fraction(1, 3), Fraction(2, 3)]
    assert ldi.jordan_blocks == [1, 1]


def test_doubled_variation_is_never_mum():
    for p in singular_points(HYP):
        block, mum = vhs_mum_verdict(HYP, p, 2)
        assert block <= 2 and not mum
    # a single copy at 0 is maximally unipotent of rank 2
    assert vhs_mum_verdict(HYP, SingularPoint.at(0), 1) == (2, True)


def test_frobenius_series_satisfy_operator():
    sols, _ = frobenius_solutions(HYP, SingularPoint.at(0), truncation=60)
    with mpmath.workdps(40):
        x = mpmath.mpf(1) / 10
        for s in sols:
            vals = [mpmath.diff(s.evaluate, x, k) for k in range(3)]
            res = HYP.evaluate(Fraction(1, 10), vals)
            assert abs(res) < mpmath.mpf(10) ** -20


def test_irregular_point_detected():
    # t^2 D^2 + D has an irregular singularity at 0
    op = ODEOperator.from_polys([[0], [1], [0, 0, 1]], "t")
    with pytest.raises(IrregularPoint):
        local_data(op, SingularPoint.at(0))


def test_ordinary_point_has_consecutive_exponents():
    ld = local_data(HYP, SingularPoint.at(Fraction(1, 2)))
    assert [e.exact for e in ld.exponents] == [0, 1]
    assert ld.jordan_blocks == [1, 1]


def test_unipotent_monodromy_at_zero():
    with mpmath.workdps(45):
        M = numerical_monodromy(HYP, default_loop(HYP, 0), 30)
        A = M.matrix()
        N = A - mpmath.eye(2)
        assert mpmath.mnorm(N * N, 1) < 1e-20
        assert mpmath.mnorm(N, 1) > 1e-3
        assert M.radius < 1e-25


def test_loop_composition_identity():
    l0, l1, linf = composition_loops()
    with mpmath.workdps(60):
        M0 = numerical_monodromy(HYP, l0, 40).matrix()
        M1 = numerical_monodromy(HYP, l1, 40).matrix()
        Mi = numerical_monodromy(HYP, linf, 40).matrix()
        assert mpmath.mnorm(Mi * M0 * M1 - mpmath.eye(2), 1) < mpmath.mpf(10) ** -30
        # the loop around infinity has eigenvalues exp(±2πi/3)
        ev = mpmath.eig(Mi, left=False, right=False)
        w = mpmath.expjpi(mpmath.mpf(2) / 3)
        assert min(abs(e - w) for e in ev) < 1e-20
        assert min(abs(e - mpmath.conj(w)) for e in ev) < 1e-20


def test_concatenated_loop_multiplies():
    l0, l1, _ = composition_loops()
    with mpmath.workdps(50):
        M0 = numerical_monodromy(HYP, l0, 30).matrix()
        M1 = numerical_monodromy(HYP, l1, 30).matrix()
        M10 = numerical_monodromy(HYP, l1.then(l0), 30).matrix()
        assert mpmath.mnorm(M10 - M0 * M1, 1) < 1e-25


def test_reversed_loop_inverts():
    l0, _, _ = composition_loops()
    with mpmath.workdps(50):
        M = numerical_monodromy(HYP, l0, 30).matrix()
        R = numerical_monodromy(HYP, l0.reversed(), 30).matrix()
        assert mpmath.mnorm(M * R - mpmath.eye(2), 1) < 1e-25


def test_loop_through_singularity_rejected():
    with pytest.raises(LoopTooClose):
        numerical_monodromy(HYP, Loop([(Fraction(1, 2), 0), (Fraction(3, 2), 0), (1, 1)]), 20)


def test_monodromy_json_encodes_strings():
    M = numerical_monodromy(HYP, default_loop(HYP, 0), 20)
    data = M.to_json(20)
    assert isinstance(data["radius"], str)
    assert all(isinstance(x, str) for row in data["entries"] for z in row for x in z)


def test_wronskian_determinant_matches_residue():
    # t D^2 + (1/3) D: solutions 1 and t^(2/3); a ccw loop around 0 gives
    # det M = exp(-2 pi i res(p1/p2)) = exp(-2 pi i / 3)
    op = ODEOperator.from_polys([[0], [Fraction(1, 3)], [0, 1]], "t")
    with mpmath.workdps(45):
        M = numerical_monodromy(op, default_loop(op, 0), 30).matrix()
        want = mpmath.expjpi(-mpmath.mpf(2) / 3)
        assert abs(mpmath.det(M) - want) < 1e-25
