"""Batched solver runs over seeded random instances, with CSV persistence."""

from __future__ import annotations

import csv
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Iterable, Sequence

from .instances import generate_gnp, generate_spd
from .objectives import RayleighProblem, StabilityProblem
from .rules import BetaRule
from .solver import SolverConfig, solve
from .sphere import random_unit_point

log = logging.getLogger(__name__)

SUITES = ("rayleigh", "stability")

RECORD_HEADER = ("problem_id", "solver", "seed", "n", "converged", "iterations", "value_evals",
                 "gradient_evals", "elapsed_ns", "f_final", "g_norm_final")


@dataclass(frozen=True)
class RunRecord:
    problem_id: str
    solver_id: str
    seed: int
    n: int
    converged: bool
    iterations: int
    value_evals: int
    gradient_evals: int
    elapsed_ns: int
    f_final: float
    g_norm_final: float


class RecordFormatError(ValueError):
    pass


def make_problem(suite: str, n: int, p: float, seed: int, spectrum: str = "uniform"):
    if suite == "rayleigh":
        return RayleighProblem(generate_spd(n, seed, spectrum), id=f"rayleigh-n{n}-s{seed}")
    if suite == "stability":
        return StabilityProblem(generate_gnp(n, p, seed), id=f"stability-n{n}-p{p:g}-s{seed}")
    raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")


def _run_instance(suite: str, n: int, p: float, seed: int, rules: Sequence[BetaRule],
                  config: SolverConfig, spectrum: str) -> list[RunRecord]:
    problem = make_problem(suite, n, p, seed, spectrum)
    x0 = random_unit_point(n, seed)
    out = []
    for rule in rules:
        res = solve(problem, x0, replace(config, rule=rule))
        if res.failed:
            log.warning("%s on %s failed: %s", rule.name, problem.id, res.message)
        out.append(RunRecord(problem.id, rule.name, seed, n, res.converged, res.iterations,
                             res.value_evals, res.gradient_evals, res.elapsed_ns,
                             res.f_final, res.g_norm_final))
    return out


def run_suite(suite: str, instances: int = 100, n: int = 100, p: float = 0.1,
              solvers: Sequence[BetaRule] | None = None, base_seed: int = 0,
              config: SolverConfig = SolverConfig(), workers: int = 1,
              spectrum: str = "uniform") -> list[RunRecord]:
    """Solve ``instances`` seeded problems with every rule in ``solvers``.

    Instance i uses seed ``base_seed + i`` for both the problem and the
    start point, so every solver sees the same problem and x0. Records come
    back in (instance, solver) order. ``workers > 1`` spreads instances over
    worker processes; timing measurements should use a single worker.
    """
    if instances < 1:
        raise ValueError("instances must be >= 1")
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    rules = list(solvers) if solvers is not None else [BetaRule()]
    seeds = [base_seed + i for i in range(instances)]
    if workers <= 1:
        batches = [_run_instance(suite, n, p, s, rules, config, spectrum) for s in seeds]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_run_instance, suite, n, p, s, rules, config, spectrum)
                       for s in seeds]
            batches = [f.result() for f in futures]
    return [rec for batch in batches for rec in batch]


def default_workers() -> int:
    return max(1, (os.cpu_count() or 1))


def _format(rec: RunRecord) -> list[str]:
    return [rec.problem_id, rec.solver_id, str(rec.seed), str(rec.n),
            "true" if rec.converged else "false", str(rec.iterations), str(rec.value_evals),
            str(rec.gradient_evals), str(rec.elapsed_ns), repr(float(rec.f_final)),
            repr(float(rec.g_norm_final))]


def write_records_csv(records: Iterable[RunRecord], path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(RECORD_HEADER)
        for rec in records:
            w.writerow(_format(rec))


def _parse_bool(s: str) -> bool:
    s = s.strip().lower()
    if s in ("true", "1"):
        return True
    if s in ("false", "0"):
        return False
    raise ValueError(f"not a boolean: {s!r}")


def read_records_csv(path) -> list[RunRecord]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [c for c in RECORD_HEADER if c not in header]
        if missing:
            raise RecordFormatError(f"records file is missing column(s): {', '.join(missing)}")
        out = []
        for row in reader:
            lineno = reader.line_num
            try:
                out.append(RunRecord(
                    problem_id=row["problem_id"], solver_id=row["solver"], seed=int(row["seed"]),
                    n=int(row["n"]), converged=_parse_bool(row["converged"]),
                    iterations=int(row["iterations"]), value_evals=int(row["value_evals"]),
                    gradient_evals=int(row["gradient_evals"]), elapsed_ns=int(row["elapsed_ns"]),
                    f_final=float(row["f_final"]), g_norm_final=float(row["g_norm_final"]),
                ))
            except (TypeError, ValueError, AttributeError) as exc:
                raise RecordFormatError(f"line {lineno}: {exc}") from None
    return out


__all__ = [
    "RunRecord", "RECORD_HEADER", "SUITES", "RecordFormatError", "make_problem", "run_suite",
    "read_records_csv", "write_records_csv", "default_workers",
]
