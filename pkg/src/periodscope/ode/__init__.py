"""Differential operators: local analysis and numerical monodromy."""

from .local import (
    Exponent,
    FormalSolution,
    LocalData,
    SingularPoint,
    frobenius_solutions,
    indicial_data,
    is_maximally_unipotent,
    local_data,
    singular_points,
    vhs_mum_verdict,
)
from .monodromy import Loop, MonodromyMatrix, default_loop, numerical_monodromy
from .operator import ODEOperator

__all__ = [
    "Exponent",
    "FormalSolution",
    "LocalData",
    "Loop",
    "MonodromyMatrix",
    "ODEOperator",
    "SingularPoint",
    "default_loop",
    "frobenius_solutions",
    "indicial_data",
    "is_maximally_unipotent",
    "local_data",
    "numerical_monodromy",
    "singular_points",
    "vhs_mum_verdict",
]
