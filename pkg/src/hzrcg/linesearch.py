"""Wolfe and strong Wolfe step selection along a geodesic.

The line function is phi(a) = f(exp_x(a * eta)) with derivative
phi'(a) = <grad f(exp_x(a * eta)), dexp_x(a * eta)[eta]>.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from . import sphere
from .sphere import TangentVector

Mode = Literal["wolfe", "strong_wolfe"]

_EPS = float(np.finfo(float).eps)


@dataclass(frozen=True)
class WolfeParams:
    c1: float = 1e-4
    c2: float = 0.9
    mode: Mode = "strong_wolfe"
    initial_step: float = 1.0
    expansion: float = 2.0
    max_bracket: int = 30
    max_zoom: int = 30

    def __post_init__(self):
        if not 0.0 < self.c1 < self.c2 < 1.0:
            raise ValueError(f"need 0 < c1 < c2 < 1, got c1={self.c1}, c2={self.c2}")
        if self.mode not in ("wolfe", "strong_wolfe"):
            raise ValueError(f"unknown line search mode {self.mode!r}")
        if self.initial_step <= 0.0 or self.expansion <= 1.0:
            raise ValueError("initial_step must be > 0 and expansion > 1")
        if self.max_bracket < 1 or self.max_zoom < 0:
            raise ValueError("max_bracket must be >= 1 and max_zoom >= 0")

    def armijo(self, f0: float, slope0: float, alpha: float, f_new: float) -> bool:
        return f_new <= f0 + self.c1 * alpha * slope0

    def curvature(self, slope0: float, slope_new: float) -> bool:
        if self.mode == "strong_wolfe":
            return abs(slope_new) <= self.c2 * abs(slope0)
        return slope_new >= self.c2 * slope0


@dataclass
class StepResult:
    alpha: float
    x_new: np.ndarray
    f_new: float
    g_new: TangentVector
    slope_new: float
    t_eta: TangentVector
    value_evals: int = 0
    gradient_evals: int = 0
    armijo_ok: bool = True
    curvature_ok: bool = True

    @property
    def evals(self) -> tuple[int, int]:
        return self.value_evals, self.gradient_evals


class LineSearchError(Exception):
    pass


class NotDescent(LineSearchError):
    def __init__(self, slope0: float):
        super().__init__(f"direction is not a descent direction (slope {slope0!r} >= 0)")
        self.slope0 = slope0


class LineSearchExhausted(LineSearchError):
    """No acceptable step within the trial budget.

    ``best`` is the lowest-value trial seen (None if every trial was
    non-finite); its ``armijo_ok``/``curvature_ok`` flags say which
    conditions it meets.
    """

    def __init__(self, best: StepResult | None, value_evals: int, gradient_evals: int):
        super().__init__("line search budget exhausted without an acceptable step")
        self.best = best
        self.value_evals = value_evals
        self.gradient_evals = gradient_evals


def _trial(problem, x, eta: TangentVector, alpha: float) -> StepResult:
    if alpha == 0.0:
        g = problem.riemannian_gradient(x)
        f = problem.value(x)
        return StepResult(0.0, x, f, g, sphere.inner(g, eta), eta)
    step = alpha * eta
    y = sphere.exp(x, step)
    f = problem.value(y)
    g = problem.riemannian_gradient(y)
    t_eta = sphere.dexp(x, step, eta, endpoint=y)
    return StepResult(alpha, y, f, g, float(g.coords @ t_eta.coords), t_eta)


def phi_and_slope(problem, x: np.ndarray, eta: TangentVector, alpha: float) -> tuple[float, float]:
    """Value and derivative of a -> f(exp_x(a * eta)) at ``alpha``."""
    r = _trial(problem, x, eta, alpha)
    if not np.isfinite(r.f_new):
        raise FloatingPointError(f"objective is not finite at alpha={alpha!r}")
    return r.f_new, r.slope_new


def search(problem, x: np.ndarray, eta: TangentVector, f0: float, slope0: float,
           params: WolfeParams = WolfeParams()) -> StepResult:
    """Bracket-then-zoom search for a (strong) Wolfe step.

    Bracketing starts at ``params.initial_step`` and grows by
    ``params.expansion``. Zoom bisects the bracket, taking the quadratic
    interpolant's minimizer instead whenever it falls inside the middle
    80% of the bracket.
    """
    if not slope0 < 0.0:
        raise NotDescent(slope0)

    nevals = 0
    best: StepResult | None = None

    def evaluate(alpha: float) -> StepResult:
        nonlocal nevals, best
        r = _trial(problem, x, eta, alpha)
        nevals += 1
        r.value_evals = r.gradient_evals = nevals
        r.armijo_ok = math.isfinite(r.f_new) and params.armijo(f0, slope0, alpha, r.f_new)
        r.curvature_ok = math.isfinite(r.slope_new) and params.curvature(slope0, r.slope_new)
        if math.isfinite(r.f_new) and (best is None or r.f_new < best.f_new):
            best = r
        return r

    def exhausted() -> LineSearchExhausted:
        return LineSearchExhausted(best, nevals, nevals)

    def zoom(lo: StepResult, hi: StepResult) -> StepResult:
        for _ in range(params.max_zoom):
            a_lo, a_hi = lo.alpha, hi.alpha
            width = abs(a_hi - a_lo)
            if width <= 4.0 * _EPS * max(a_lo, a_hi):
                break
            d = a_hi - a_lo
            curv = hi.f_new - lo.f_new - lo.slope_new * d
            cand = 0.5 * (a_lo + a_hi)
            if curv > 0.0 and np.isfinite(curv):
                q = a_lo - lo.slope_new * d * d / (2.0 * curv)
                left, right = min(a_lo, a_hi), max(a_lo, a_hi)
                if left + 0.1 * width <= q <= right - 0.1 * width:
                    cand = q
            r = evaluate(cand)
            if not r.armijo_ok or r.f_new >= lo.f_new:
                hi = r
                continue
            if r.curvature_ok:
                return r
            if r.slope_new * (a_hi - a_lo) >= 0.0:
                hi = lo
            lo = r
        raise exhausted()

    prev = StepResult(0.0, x, f0, None, slope0, eta)  # type: ignore[arg-type]
    alpha = params.initial_step
    for i in range(params.max_bracket):
        r = evaluate(alpha)
        if not r.armijo_ok or (i > 0 and r.f_new >= prev.f_new):
            return zoom(prev, r)
        if r.curvature_ok:
            return r
        if r.slope_new >= 0.0:
            return zoom(r, prev)
        prev = r
        alpha *= params.expansion
    raise exhausted()
