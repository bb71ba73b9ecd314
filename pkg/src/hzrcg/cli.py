"""Command-line interface: ``hzrcg {solve,gen,bench,profile,verify}``.

Exit codes: 0 success (solve: converged), 1 usage or I/O error,
2 solve finished without converging.
"""

from __future__ import annotations

import argparse
import logging
import math
import sys
from pathlib import Path

from . import benchmark, instances, profiles, verify
from .linesearch import WolfeParams
from .objectives import RayleighProblem, StabilityProblem
from .rules import RULE_NAMES, BetaRule
from .solver import SolverConfig, solve, write_trace_csv
from .sphere import random_unit_point

EXIT_OK, EXIT_USAGE, EXIT_NOT_CONVERGED = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _positive_float(s: str) -> float:
    v = float(s)
    if not v > 0.0 or not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"must be a positive number, got {s}")
    return v


def _add_solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mu", type=float, default=2.0, help="HZ parameter, must exceed 1/4 (default 2)")
    p.add_argument("--zeta", type=_positive_float, default=0.01, help="modified-HZ floor constant")
    p.add_argument("--c1", type=float, default=1e-4, help="sufficient decrease constant")
    p.add_argument("--c2", type=float, default=0.9, help="curvature constant")
    p.add_argument("--wolfe", choices=("weak", "strong"), default="strong")
    p.add_argument("--tol", type=_positive_float, default=1e-6, help="gradient-norm tolerance")
    p.add_argument("--max-iter", type=int, default=10000)


def _config(args, method: str = "hz", **kw) -> SolverConfig:
    if not args.mu > 0.25:
        raise UsageError(f"--mu must satisfy mu > 1/4, got {args.mu}")
    if not 0.0 < args.c1 < args.c2 < 1.0:
        raise UsageError(f"need 0 < c1 < c2 < 1, got c1={args.c1}, c2={args.c2}")
    if args.max_iter < 1:
        raise UsageError("--max-iter must be >= 1")
    wolfe = WolfeParams(c1=args.c1, c2=args.c2, mode="strong_wolfe" if args.wolfe == "strong" else "wolfe")
    rule = BetaRule.parse(method, mu=args.mu, zeta=args.zeta)
    return SolverConfig(rule=rule, wolfe=wolfe, tolerance=args.tol, max_iterations=args.max_iter, **kw)


def _methods(text: str) -> list[str]:
    names = [m.strip().lower() for m in text.split(",") if m.strip()]
    bad = [m for m in names if m not in RULE_NAMES]
    if bad or not names:
        raise UsageError(f"unknown method(s) {', '.join(bad) or '(none)'}; choose from {', '.join(RULE_NAMES)}")
    return names


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hzrcg", description="Riemannian conjugate gradient on the unit sphere")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="solve one instance")
    p.add_argument("--problem", choices=("rayleigh", "stability"), required=True)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", type=Path, help="matrix file (rayleigh) or edge list (stability)")
    src.add_argument("--random", type=int, metavar="N", help="generate a random instance of size N")
    p.add_argument("--p", type=float, default=0.1, help="edge probability for --random graphs")
    p.add_argument("--spectrum", choices=instances.SPECTRA, default="uniform")
    p.add_argument("--method", choices=RULE_NAMES, default="hz")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=1, help="random starts (best value kept)")
    p.add_argument("--trace", type=Path, help="write the per-iteration trace CSV here")
    _add_solver_flags(p)

    p = sub.add_parser("gen", help="write a random instance file")
    p.add_argument("--problem", choices=("rayleigh", "stability"), required=True)
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--p", type=float, default=0.1)
    p.add_argument("--spectrum", choices=instances.SPECTRA, default="uniform")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=Path, required=True)

    p = sub.add_parser("bench", help="run a benchmark suite and write the records CSV")
    p.add_argument("--suite", choices=benchmark.SUITES, required=True)
    p.add_argument("--instances", type=int, default=100)
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--p", type=float, default=0.1)
    p.add_argument("--methods", default=",".join(RULE_NAMES))
    p.add_argument("--seed", type=int, default=0, help="base seed; instance i uses seed+i")
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--sequential", action="store_true", help="single process, for clean timings")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--spectrum", choices=instances.SPECTRA, default="uniform")
    _add_solver_flags(p)

    p = sub.add_parser("profile", help="performance profiles from a records CSV")
    p.add_argument("--runs", type=Path, required=True)
    p.add_argument("--metric", choices=profiles.METRICS, default="iterations")
    p.add_argument("--out", type=Path, help="profile CSV (solver,tau,P)")
    p.add_argument("--svg", type=Path)
    p.add_argument("--title", default=None)

    sub.add_parser("verify", help="run the built-in invariant checks")
    return parser


def cmd_solve(args) -> int:
    if args.restarts < 1:
        raise UsageError("--restarts must be >= 1")
    config = _config(args, args.method, record_trace=args.trace is not None)
    if args.problem == "rayleigh":
        if args.input is not None:
            A = instances.read_matrix(args.input.read_text())
        else:
            A = instances.generate_spd(args.random, args.seed, spectrum=args.spectrum)
        problem = RayleighProblem(A)
    else:
        if args.input is not None:
            G = instances.read_edge_list(args.input.read_text())
        else:
            G = instances.generate_gnp(args.random, args.p, args.seed)
        problem = StabilityProblem(G)
    if problem.dimension < 2:
        raise UsageError("problem dimension must be at least 2")

    best = None
    for r in range(args.restarts):
        res = solve(problem, random_unit_point(problem.dimension, args.seed + r), config)
        if best is None or (not res.failed and (best.failed or res.f_final < best.f_final)):
            best = res
    print(f"f_final={best.f_final!r}")
    print(f"g_norm={best.g_norm_final!r}")
    print(f"iterations={best.iterations}")
    print(f"converged={str(best.converged).lower()}")
    if args.problem == "stability" and best.f_final > 0:
        print(f"stability_number={int(round(1.0 / best.f_final))}")
    if best.message:
        print(f"message={best.message}")
    if args.trace is not None:
        write_trace_csv(best.trace or [], args.trace)
    return EXIT_OK if best.converged else EXIT_NOT_CONVERGED


def cmd_gen(args) -> int:
    if args.problem == "rayleigh":
        text = instances.write_matrix(instances.generate_spd(args.n, args.seed, spectrum=args.spectrum))
    else:
        text = instances.write_edge_list(instances.generate_gnp(args.n, args.p, args.seed))
    args.out.write_text(text)
    return EXIT_OK


def cmd_bench(args) -> int:
    if args.instances < 1:
        raise UsageError("--instances must be >= 1")
    rules = [BetaRule.parse(m, mu=args.mu, zeta=args.zeta) for m in _methods(args.methods)]
    config = _config(args)
    workers = 1 if args.sequential else (args.workers or benchmark.default_workers())
    records = benchmark.run_suite(args.suite, args.instances, args.n, args.p, rules, args.seed, config,
                                  workers, spectrum=args.spectrum)
    benchmark.write_records_csv(records, args.out)
    solved = sum(r.converged for r in records)
    print(f"wrote {len(records)} records to {args.out} ({solved} converged)")
    return EXIT_OK


def cmd_profile(args) -> int:
    records = benchmark.read_records_csv(args.runs)
    curves = profiles.performance_profile(records, args.metric)
    if args.out:
        profiles.write_profile_csv(curves, args.out)
    if args.svg:
        title = args.title or f"Performance profile versus {'number of iterations' if args.metric == 'iterations' else 'elapsed time'}"
        profiles.emit_profile_svg(curves, args.svg, title)
    for c in curves:
        print(f"{c.solver_id}: P(1)={c(1.0):.3f} P(2)={c(2.0):.3f} P(4)={c(4.0):.3f} solved={c.solved_fraction:.3f}")
    return EXIT_OK


def cmd_verify(args) -> int:
    return EXIT_OK if verify.run_all() else EXIT_USAGE


COMMANDS = {"solve": cmd_solve, "gen": cmd_gen, "bench": cmd_bench, "profile": cmd_profile, "verify": cmd_verify}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s")
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
