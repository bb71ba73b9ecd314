"""Riemannian conjugate gradient methods on the unit sphere.

Exponential-map retraction, transport by the differential of the
exponential map, seven comparison beta rules plus the Hager-Zhang family,
and a benchmark harness with Dolan-More performance profiles.
"""

from .linesearch import LineSearchExhausted, NotDescent, WolfeParams
from .objectives import Graph, ObjectiveProblem, RayleighProblem, SpdMatrix, StabilityProblem
from .rules import BetaRule, DegenerateDenominator, DirectionContext, Variant, compute_beta, next_direction
from .solver import SolveResult, SolverConfig, TheoryViolation, solve, stability_number
from .sphere import TangentVector, random_unit_point

__version__ = "0.1.0"

__all__ = [
    "BetaRule", "DegenerateDenominator", "DirectionContext", "Graph", "LineSearchExhausted",
    "NotDescent", "ObjectiveProblem", "RayleighProblem", "SolveResult", "SolverConfig", "SpdMatrix",
    "StabilityProblem", "TangentVector", "TheoryViolation", "Variant", "WolfeParams", "compute_beta",
    "next_direction", "random_unit_point", "solve", "stability_number",
]
