"""Dolan-More performance profiles and their CSV/SVG renderings."""

from __future__ import annotations

import bisect
import csv
import math
from collections import OrderedDict
from dataclasses import dataclass
from typing import Iterable, Sequence
from xml.sax.saxutils import escape

from .benchmark import RunRecord

METRICS = ("iterations", "time")


@dataclass(frozen=True)
class ProfileCurve:
    """Step function P(tau): fraction of problems with ratio <= tau.

    ``breakpoints`` lists (tau, P) at every distinct finite ratio, sorted
    by tau; P is 0 left of the first breakpoint.
    """

    solver_id: str
    breakpoints: tuple[tuple[float, float], ...]

    def __call__(self, tau: float) -> float:
        taus = [b[0] for b in self.breakpoints]
        i = bisect.bisect_right(taus, tau)
        return self.breakpoints[i - 1][1] if i else 0.0

    @property
    def solved_fraction(self) -> float:
        return self.breakpoints[-1][1] if self.breakpoints else 0.0


def _cost(rec: RunRecord, metric: str) -> float:
    if not rec.converged:
        return math.inf
    if metric == "iterations":
        # a start that is already optimal costs 0 iterations; count it as 1
        return float(max(rec.iterations, 1))
    if metric == "time":
        return float(max(rec.elapsed_ns, 1))
    raise ValueError(f"unknown metric {metric!r}; choose from {', '.join(METRICS)}")


def performance_profile(records: Iterable[RunRecord], metric: str = "iterations") -> list[ProfileCurve]:
    """Performance profile of every solver appearing in ``records``.

    Failed runs get cost +inf. Problems on which every solver failed are
    dropped from the problem set.
    """
    if metric not in METRICS:
        raise ValueError(f"unknown metric {metric!r}; choose from {', '.join(METRICS)}")
    records = list(records)
    if not records:
        raise ValueError("no records to profile")
    solvers = list(OrderedDict.fromkeys(r.solver_id for r in records))
    costs: dict[str, dict[str, float]] = OrderedDict()
    for r in records:
        costs.setdefault(r.problem_id, {})[r.solver_id] = _cost(r, metric)

    ratios: dict[str, list[float]] = {s: [] for s in solvers}
    n_problems = 0
    for per_solver in costs.values():
        best = min(per_solver.values())
        if math.isinf(best):
            continue
        n_problems += 1
        for s in solvers:
            t = per_solver.get(s, math.inf)
            if not math.isinf(t):
                ratios[s].append(t / best)

    curves = []
    for s in solvers:
        pts: list[tuple[float, float]] = []
        if n_problems:
            rs = sorted(ratios[s])
            for i, r in enumerate(rs):
                p = (i + 1) / n_problems
                if pts and pts[-1][0] == r:
                    pts[-1] = (r, p)
                else:
                    pts.append((r, p))
        curves.append(ProfileCurve(s, tuple(pts)))
    return curves


def write_profile_csv(curves: Sequence[ProfileCurve], path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(("solver", "tau", "P"))
        for c in curves:
            for tau, p in c.breakpoints:
                w.writerow((c.solver_id, repr(tau), repr(p)))


PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2",
           "#7f7f7f", "#bcbd22", "#17becf")


def profile_svg(curves: Sequence[ProfileCurve], title: str = "Performance profile",
                width: int = 640, height: int = 420) -> str:
    """Render curves as a standalone SVG with a log2 tau axis."""
    if not curves:
        raise ValueError("need at least one curve")
    finite = [t for c in curves for t, _ in c.breakpoints if math.isfinite(t)]
    tau_max = max(finite, default=1.0)
    log_max = math.log2(tau_max) if tau_max > 1.0 else 1.0
    left, right, top, bottom = 60, 150, 40, 50
    pw, ph = width - left - right, height - top - bottom

    def sx(tau: float) -> float:
        return left + pw * (math.log2(tau) / log_max)

    def sy(p: float) -> float:
        return top + ph * (1.0 - p)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2:.1f}" y="22" text-anchor="middle" font-family="sans-serif" '
        f'font-size="15">{escape(title)}</text>',
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for p in (0.0, 0.25, 0.5, 0.75, 1.0):
        out.append(f'<text x="{left - 8}" y="{sy(p) + 4:.1f}" text-anchor="end" '
                   f'font-family="sans-serif" font-size="11">{p:g}</text>')
    n_ticks = max(1, min(8, int(math.ceil(log_max))))
    for i in range(n_ticks + 1):
        e = log_max * i / n_ticks
        out.append(f'<text x="{left + pw * i / n_ticks:.1f}" y="{top + ph + 16}" text-anchor="middle" '
                   f'font-family="sans-serif" font-size="11">{2.0 ** e:.3g}</text>')
    out.append(f'<text x="{left + pw / 2:.1f}" y="{height - 10}" text-anchor="middle" '
               f'font-family="sans-serif" font-size="12">tau (log2 scale)</text>')

    for idx, c in enumerate(curves):
        color = PALETTE[idx % len(PALETTE)]
        prev = c(1.0)
        pts = [(sx(1.0), sy(prev))]
        for tau, p in c.breakpoints:
            if tau <= 1.0:
                continue
            x = sx(tau)
            pts.append((x, sy(prev)))
            pts.append((x, sy(p)))
            prev = p
        pts.append((sx(tau_max) if tau_max > 1.0 else left + pw, sy(prev)))
        coords = " ".join(f"{x:.2f},{y:.2f}" for x, y in pts)
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.8" points="{coords}"/>')
        ly = top + 14 + 18 * idx
        out.append(f'<line x1="{left + pw + 12}" y1="{ly}" x2="{left + pw + 36}" y2="{ly}" '
                   f'stroke="{color}" stroke-width="2"/>')
        out.append(f'<text class="legend" x="{left + pw + 42}" y="{ly + 4}" font-family="sans-serif" '
                   f'font-size="12">{escape(c.solver_id)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_profile_svg(curves: Sequence[ProfileCurve], path, title: str = "Performance profile") -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(profile_svg(curves, title))
