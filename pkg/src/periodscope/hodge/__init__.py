"""Hodge-number bookkeeping, catalog of named examples and the ball model."""

from .ball import (
    BallPoint,
    CYHodgeStructure,
    PolarizationReport,
    ball_from_hodge,
    hodge_from_ball,
    sigma,
    verify_polarization,
)
from .catalog import CATALOG_KEYS, CatalogEntry, catalog
from .numbers import (
    HodgeNumbers,
    borcea_voisin_hodge,
    period_domain_dim,
    rohde_data,
    rohde_eigenspace_dims,
    rohde_table,
)

__all__ = [
    "BallPoint",
    "CATALOG_KEYS",
    "CYHodgeStructure",
    "CatalogEntry",
    "HodgeNumbers",
    "PolarizationReport",
    "ball_from_hodge",
    "borcea_voisin_hodge",
    "catalog",
    "hodge_from_ball",
    "period_domain_dim",
    "rohde_data",
    "rohde_eigenspace_dims",
    "rohde_table",
    "sigma",
    "verify_polarization",
]
