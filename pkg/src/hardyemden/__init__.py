"""Positive radial solutions of semilinear elliptic equations with an
inverse-square potential on punctured domains: classification, closed
forms, certified barriers, shooting, boundary value schemes, asymptotics."""

from .params import (
    CaseLabel,
    CriticalExponents,
    ProblemParams,
    StructureReport,
    classify,
    compute_exponents,
    kelvin_dual_params,
    solution_set,
)
from .gridio import RadialFunction, log_grid

__all__ = [
    "CaseLabel",
    "CriticalExponents",
    "ProblemParams",
    "StructureReport",
    "RadialFunction",
    "classify",
    "compute_exponents",
    "kelvin_dual_params",
    "log_grid",
    "solution_set",
]

__version__ = "0.1.0"
