"""Riemannian conjugate gradient on the sphere with exp retraction and dexp transport."""

from __future__ import annotations

import csv
import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import sphere
from .linesearch import LineSearchExhausted, WolfeParams, search
from .objectives import Graph, ObjectiveProblem, StabilityProblem
from .rules import BetaRule, DegenerateDenominator, DirectionContext, compute_beta, next_direction
from .sphere import random_unit_point  # noqa: F401  (re-exported)

TRACE_COLUMNS = ("k", "f", "g_norm", "alpha", "beta", "g_dot_eta", "zoutendijk_term")

DESCENT_SLACK = 1e-10
GAUSS_RTOL = 1e-9


class TheoryViolation(AssertionError):
    """A runtime check of a property the method guarantees did not hold."""


@dataclass(frozen=True)
class SolverConfig:
    rule: BetaRule = field(default_factory=BetaRule)
    wolfe: WolfeParams = field(default_factory=WolfeParams)
    tolerance: float = 1e-6
    max_iterations: int = 10000
    assert_theory: bool = False
    record_trace: bool = False

    def __post_init__(self):
        if not self.tolerance > 0.0:
            raise ValueError("tolerance must be > 0")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")


@dataclass
class TraceRow:
    k: int
    f: float
    g_norm: float
    alpha: float
    beta: float
    g_dot_eta: float
    zoutendijk_term: float
    # diagnostics of the step taken from x_k (nan on the last row)
    f_next: float = math.nan
    slope_next: float = math.nan
    y_dot_teta: float = math.nan
    g_next_dot_teta: float = math.nan
    restarted: bool = False


@dataclass
class SolveResult:
    x_final: np.ndarray
    f_final: float
    g_norm_final: float
    iterations: int
    converged: bool
    value_evals: int
    gradient_evals: int
    elapsed_ns: int
    status: str = "converged"
    message: str = ""
    restarts: int = 0
    trace: list[TraceRow] | None = None

    @property
    def elapsed(self) -> float:
        return self.elapsed_ns * 1e-9

    @property
    def failed(self) -> bool:
        return self.status == "failed"


def _close(a: float, b: float, rtol: float) -> bool:
    return abs(a - b) <= rtol * max(abs(a), abs(b))


def solve(problem: ObjectiveProblem, x0, config: SolverConfig = SolverConfig()) -> SolveResult:
    """Minimize ``problem`` over the sphere starting from ``x0``.

    Runs until the Riemannian gradient norm drops below
    ``config.tolerance`` or ``config.max_iterations`` steps were taken.
    A failed line search, a vanishing beta denominator or a non-descent
    direction restart the method with beta = 0; a second consecutive
    failure ends the run with status "failed".
    """
    x = sphere.as_point(x0)
    if x.shape != (problem.dimension,):
        raise ValueError(f"x0 has shape {x.shape}, problem dimension is {problem.dimension}")
    rule, wolfe, tol = config.rule, config.wolfe, config.tolerance
    descent_const = 1.0 - 1.0 / (4.0 * rule.mu)
    trace: list[TraceRow] | None = [] if config.record_trace else None

    start = time.perf_counter_ns()
    f = problem.value(x)
    g = problem.riemannian_gradient(x)
    nval = ngrad = 1
    eta = -g
    beta = 0.0
    k = 0
    restarts = 0
    restarted = False
    status, message = "max_iterations", ""

    def finish(status_: str, msg: str = "") -> SolveResult:
        elapsed = max(1, time.perf_counter_ns() - start)
        g_norm = g.norm()
        return SolveResult(
            x_final=x, f_final=f, g_norm_final=g_norm, iterations=k,
            converged=bool(g_norm < tol), value_evals=nval, gradient_evals=ngrad,
            elapsed_ns=elapsed, status=status_, message=msg, restarts=restarts, trace=trace,
        )

    if not (np.isfinite(f) and np.all(np.isfinite(g.coords))):
        return finish("failed", "non-finite objective or gradient at x0")

    while True:
        g_norm_sq = float(g.coords @ g.coords)
        g_norm = math.sqrt(g_norm_sq)
        g_dot_eta = float(g.coords @ eta.coords)

        if g_norm >= tol and not g_dot_eta < 0.0:
            if restarted:
                status, message = "failed", "steepest-descent restart did not give a descent direction"
                break
            eta, beta, restarted = -g, 0.0, True
            restarts += 1
            g_dot_eta = -g_norm_sq

        if config.assert_theory and rule.hz_family and g_norm > 0.0:
            if g_dot_eta > -descent_const * g_norm_sq + DESCENT_SLACK:
                raise TheoryViolation(
                    f"sufficient descent failed at k={k}: <g,eta>={g_dot_eta!r}, "
                    f"bound={-descent_const * g_norm_sq!r}")

        eta_norm_sq = float(eta.coords @ eta.coords)
        zterm = g_dot_eta * g_dot_eta / eta_norm_sq if eta_norm_sq > 0.0 else 0.0
        row = TraceRow(k, f, g_norm, math.nan, beta, g_dot_eta, zterm, restarted=restarted)
        if trace is not None:
            trace.append(row)

        if g_norm < tol:
            status = "converged"
            break
        if k >= config.max_iterations:
            status = "max_iterations"
            break

        force_restart = False
        try:
            step = search(problem, x, eta, f, g_dot_eta, wolfe)
        except LineSearchExhausted as exc:
            nval += exc.value_evals
            ngrad += exc.gradient_evals
            if exc.best is None or not exc.best.armijo_ok:
                status, message = "failed", "line search exhausted without sufficient decrease"
                break
            step = exc.best
            force_restart = True
        else:
            nval += step.value_evals
            ngrad += step.gradient_evals

        alpha, x_new, f_new, g_new = step.alpha, step.x_new, step.f_new, step.g_new
        if not (np.isfinite(f_new) and np.all(np.isfinite(g_new.coords))):
            status, message = "failed", f"non-finite value or gradient at k={k + 1}"
            break

        t_eta = step.t_eta
        t_g = sphere.dexp(x, alpha * eta, g, endpoint=x_new)
        g_new_dot_teta = float(g_new.coords @ t_eta.coords)
        y_dot_teta = float((g_new.coords - t_g.coords) @ t_eta.coords)

        if config.assert_theory:
            if not wolfe.armijo(f, g_dot_eta, alpha, f_new):
                raise TheoryViolation(f"sufficient decrease failed at k={k}, alpha={alpha!r}")
            if not wolfe.curvature(g_dot_eta, g_new_dot_teta):
                raise TheoryViolation(f"{wolfe.mode} curvature condition failed at k={k}, alpha={alpha!r}")
            transported = float(t_g.coords @ t_eta.coords)
            if not _close(transported, g_dot_eta, GAUSS_RTOL):
                raise TheoryViolation(f"transport changed <g,eta> at k={k}: {transported!r} vs {g_dot_eta!r}")
            if not _close(y_dot_teta, g_new_dot_teta - g_dot_eta, GAUSS_RTOL):
                raise TheoryViolation(f"denominator identity failed at k={k}")

        row.alpha = alpha
        row.f_next = f_new
        row.slope_next = g_new_dot_teta
        row.y_dot_teta = y_dot_teta
        row.g_next_dot_teta = g_new_dot_teta

        restarted = False
        if force_restart:
            beta, restarted = 0.0, True
            restarts += 1
        else:
            ctx = DirectionContext(g_new, t_g, t_eta, g_norm_sq, g_dot_eta, math.sqrt(eta_norm_sq))
            try:
                beta = compute_beta(rule, ctx)
            except DegenerateDenominator:
                beta, restarted = 0.0, True
                restarts += 1
        eta = next_direction(g_new, beta, t_eta)
        x, f, g = x_new, f_new, g_new
        k += 1

    return finish(status, message)


def stability_number(G: Graph, restarts: int = 10, config: SolverConfig = SolverConfig(),
                     seed: int = 0) -> tuple[int, float]:
    """Estimate S(G) as round(1 / min f) over seeded random starts."""
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    problem = StabilityProblem(G)
    best = math.inf
    for r in range(restarts):
        res = solve(problem, random_unit_point(G.n, seed + r), config)
        if not res.failed and np.isfinite(res.f_final):
            best = min(best, res.f_final)
    if not np.isfinite(best):
        raise RuntimeError("every restart failed")
    return int(round(1.0 / best)), best


def write_trace_csv(trace: list[TraceRow], path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(TRACE_COLUMNS)
        for row in trace:
            w.writerow([row.k] + [repr(float(getattr(row, c))) for c in TRACE_COLUMNS[1:]])


__all__ = [
    "SolverConfig", "SolveResult", "TraceRow", "TheoryViolation", "TRACE_COLUMNS",
    "solve", "stability_number", "random_unit_point", "write_trace_csv",
]
