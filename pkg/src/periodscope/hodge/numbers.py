"""Closed-form Hodge-number bookkeeping."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import OutOfRange, UnknownEntry


@dataclass(frozen=True)
class HodgeNumbers:
    h11: int
    h21: int

    def __post_init__(self):
        if self.h11 < 0 or self.h21 < 0:
            raise ValueError("Hodge numbers are nonnegative")

    def to_json(self) -> dict:
        return {"h11": str(self.h11), "h21": str(self.h21)}


def period_domain_dim(q: int) -> int:
    """Dimension (q^2 + 5q + 2)/2 of the period domain of CY-type structures with h21 = q."""
    if q < 0:
        raise OutOfRange("q must be nonnegative")
    num = q * q + 5 * q + 2
    assert num % 2 == 0
    return num // 2


def borcea_voisin_hodge(k: int) -> HodgeNumbers:
    """(15 + 5k, 11 - k) for the K3 involution fixing k rational curves (0 <= k <= 11)."""
    if not 0 <= k <= 11:
        raise OutOfRange(f"k = {k} outside 0..11 (h21 = 11 - k must be nonnegative)")
    return HodgeNumbers(15 + 5 * k, 11 - k)


# (deg g, deg h) -> (genus of C_f, q = h21, h11) for f = g h^2, v^3 = f
_ROHDE_TABLE = {
    (6, 0): (4, 3, 51),
    (4, 1): (3, 2, 62),
    (2, 2): (2, 1, 73),
    (0, 3): (1, 0, 84),
}


def rohde_data(deg_g: int, deg_h: int) -> tuple[int, int, int]:
    try:
        return _ROHDE_TABLE[(deg_g, deg_h)]
    except KeyError:
        raise UnknownEntry(f"no table row for (deg g, deg h) = ({deg_g}, {deg_h})") from None


def rohde_table() -> dict:
    return dict(_ROHDE_TABLE)


def rohde_eigenspace_dims(k: int) -> tuple[int, int, int]:
    """(dim T_S, q, dim N_S) = (14 - 2k, 6 - k, 8 + 2k) for an order-3 K3 automorphism
    fixing k rational curves."""
    if not 0 <= k <= 6:
        raise OutOfRange(f"k = {k} outside 0..6")
    dim_t, q, dim_n = 14 - 2 * k, 6 - k, 8 + 2 * k
    assert dim_t + dim_n == 22
    return dim_t, q, dim_n
