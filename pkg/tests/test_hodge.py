import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from periodscope.errors import BoundaryPoint, OutOfRange, UnknownEntry
from periodscope.hodge import (
    CATALOG_KEYS,
    BallPoint,
    ball_from_hodge,
    borcea_voisin_hodge,
    catalog,
    hodge_from_ball,
    period_domain_dim,
    rohde_data,
    rohde_eigenspace_dims,
    rohde_table,
    sigma,
    verify_polarization,
)


@given(st.integers(0, 10 ** 6))
def test_period_domain_formula(q):
    assert period_domain_dim(q) == q + (q + 2) * (q + 1) // 2


def test_period_domain_small_and_invalid():
    assert period_domain_dim(1) == 4
    assert period_domain_dim(0) == 1
    with pytest.raises(OutOfRange):
        period_domain_dim(-1)


def test_borcea_voisin():
    hn = borcea_voisin_hodge(10)
    assert (hn.h11, hn.h21) == (65, 1)
    assert hn.to_json() == {"h11": "65", "h21": "1"}
    with pytest.raises(OutOfRange):
        borcea_voisin_hodge(12)


def test_rohde_table():
    assert rohde_table() == {(6, 0): (4, 3, 51), (4, 1): (3, 2, 62), (2, 2): (2, 1, 73), (0, 3): (1, 0, 84)}
    assert rohde_data(2, 2) == (2, 1, 73)
    with pytest.raises(UnknownEntry):
        rohde_data(1, 1)


@pytest.mark.parametrize("k", range(7))
def test_rohde_eigenspace_dims(k):
    dim_t, q, dim_n = rohde_eigenspace_dims(k)
    assert dim_t + dim_n == 22
    assert (dim_t, q, dim_n) == (14 - 2 * k, 6 - k, 8 + 2 * k)


def test_rohde_eigenspace_dims_range():
    with pytest.raises(OutOfRange):
        rohde_eigenspace_dims(7)


@pytest.mark.parametrize("name", CATALOG_KEYS)
def test_catalog_entries_have_provenance(name):
    data = catalog(name).to_json()
    assert data["name"] == name
    assert data["provenance"]
    for v in data.get("data", {}).values():
        assert isinstance(v, str)


def test_catalog_values():
    assert catalog("rohde-q4").hodge.h11 == 40
    assert catalog("easiest-case").hodge.h11 == 65
    with pytest.raises(UnknownEntry):
        catalog("no-such-entry")


def _ball_points(q):
    coords = st.tuples(st.floats(-1, 1), st.floats(-1, 1)).map(lambda p: complex(*p))
    return st.tuples(st.lists(coords, min_size=q, max_size=q), st.floats(0, 0.999)).filter(
        lambda v: any(abs(z) > 1e-6 for z in v[0])).map(
        lambda v: [z / math.sqrt(sum(abs(x) ** 2 for x in v[0])) * v[1] for z in v[0]])


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6).flatmap(lambda q: st.tuples(st.just(q), _ball_points(q))))
def test_ball_structures_are_polarized(qw):
    q, w = qw
    hs = hodge_from_ball(q, w)
    rep = verify_polarization(hs)
    assert rep.ok, rep.diagnostics
    back = ball_from_hodge(hs)
    assert max(abs(complex(a) - b) for a, b in zip(back.w, w)) < 1e-10


def test_boundary_rejected():
    with pytest.raises(BoundaryPoint):
        BallPoint([1, 0])
    with pytest.raises(BoundaryPoint):
        hodge_from_ball(1, [1 - 1e-12])
    with pytest.raises(BoundaryPoint):
        hodge_from_ball(2, [0.8, 0.7])


def test_swapped_pieces_fail_signature():
    hs = hodge_from_ball(2, [0.5, 0])
    hs.pieces["3,0"], hs.pieces["2,1"][0:1] = hs.pieces["2,1"][0:1], hs.pieces["3,0"]
    rep = verify_polarization(hs)
    assert not rep
    assert any(d.startswith("sign:") for d in rep.diagnostics)


def test_perturbation_breaks_orthogonality():
    hs = hodge_from_ball(2, [0.5, 0])
    hs.pieces["2,1"][0][1] += 1e-6
    rep = verify_polarization(hs)
    assert any(d.startswith("orthogonality:") for d in rep.diagnostics)


def test_wrong_dimension_reported():
    hs = hodge_from_ball(2, [0.1, 0.2])
    hs.pieces["2,1"] = hs.pieces["2,1"][:1]
    rep = verify_polarization(hs)
    assert any(d.startswith("dimension:") for d in rep.diagnostics)


def test_sigma_is_an_involution():
    hs = hodge_from_ball(3, [0.1 + 0.2j, -0.3, 0.05j])
    v = hs.pieces["2,1"][1]
    assert sigma(sigma(v, 3), 3) == v


def test_structure_json_is_strings():
    data = hodge_from_ball(1, ["0.5"]).to_json(10)
    assert data["q"] == "1"
    assert data["pieces"]["3,0"][0][1] == ["0.5", "0.0"]
