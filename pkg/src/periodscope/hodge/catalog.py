"""Named examples with their Hodge data, stored verbatim with provenance notes."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import UnknownEntry
from .numbers import HodgeNumbers, borcea_voisin_hodge


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    hodge: HodgeNumbers | None
    data: dict = field(default_factory=dict)
    notes: tuple = ()

    def to_json(self) -> dict:
        out = {"name": self.name}
        if self.hodge is not None:
            out.update(self.hodge.to_json())
        out["data"] = {k: str(v) for k, v in self.data.items()}
        out["provenance"] = list(self.notes)
        return out


def _entries() -> dict[str, CatalogEntry]:
    bv8 = borcea_voisin_hodge(8)
    return {
        "triple-elliptic-G4": CatalogEntry(
            "triple-elliptic-G4",
            HodgeNumbers(51, 3),
            {"k": 8, "h11_from_borcea_voisin_formula": bv8.h11},
            (
                "resolution of (E1 x E2 x E3)/G4, G4 generated by two products of inversions: h21 = 3, h11 = 51 as stated for this example",
                "birational to the Borcea-Voisin quotient with k = 8 fixed rational curves; the formula 15 + 5k gives h11 = 55",
                "the listed h11 = 51 differs from the formula value 55 (the birational models may differ); no equality is asserted",
            ),
        ),
        "easiest-case": CatalogEntry(
            "easiest-case",
            borcea_voisin_hodge(10),
            {"k": 10, "rank": 4, "dim_T_S": 2, "q": 1},
            (
                "Borcea-Voisin with the K3 surface whose involution fixes k = 10 rational curves",
                "h11 = 15 + 5k = 65, h21 = 11 - k = 1; H^3 = T_S (x) H^1(E), T_S of rank 2, rank-4 variation without maximally unipotent monodromy",
            ),
        ),
        "abelian3-primitive": CatalogEntry(
            "abelian3-primitive",
            None,
            {"rank": 14, "q": 6},
            (
                "primitive H^3 of a polarized abelian threefold: rank 14 (isomorphic to Z^14), CY type with q = h21_prim = 9 - 3 = 6",
            ),
        ),
        "gross-E7": CatalogEntry(
            "gross-E7",
            None,
            {"h21": 27, "rank": 56},
            (
                "CY-type variation over the Hermitian symmetric domain of type E7 with h21 = 27 (rank 2(1 + q) = 56); no CY family known",
            ),
        ),
        "rohde-q4": CatalogEntry(
            "rohde-q4",
            HodgeNumbers(40, 4),
            {"q": 4, "curve": "v^6 = l(t), deg l = 12 with 5 double zeros", "fixed_curves": 2, "fixed_points": 5},
            (
                "Rohde construction from the K3 surface S_l: h21 = q = 4, h11 = 40",
            ),
        ),
        "rohde-q5": CatalogEntry(
            "rohde-q5",
            HodgeNumbers(29, 5),
            {"q": 5, "fixed_curves": 1, "fixed_points": 4},
            (
                "Rohde construction from a K3 surface with an order-3 automorphism fixing one rational curve and 4 points: h21 = q = 5, h11 = 29",
            ),
        ),
        "dwork-invariant": CatalogEntry(
            "dwork-invariant",
            HodgeNumbers(1, 101),
            {"rank_invariant": 4, "q_invariant": 1, "mirror_h11": 101, "mirror_h21": 1, "pf_order": 4},
            (
                "Dwork pencil sum x_i^5 - 5t prod x_i: h11 = 1, h21 = 101; the (Z/5)^3-invariant part T_t has rank 4",
                "the resolved quotient M_t has h11 = 101, h21 = 1 and H^3(M_t) = T_t; degree-4 Picard-Fuchs equation",
            ),
        ),
    }


CATALOG_KEYS = tuple(_entries())


def catalog(name: str) -> CatalogEntry:
    entries = _entries()
    if name not in entries:
        raise UnknownEntry(f"unknown catalog entry {name!r}; known: {', '.join(entries)}")
    return entries[name]
