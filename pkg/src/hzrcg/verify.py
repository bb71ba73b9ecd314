"""Self-contained invariant checks run by ``hzrcg verify``.

Each check returns (passed, detail). They use reduced sample sizes so the
whole suite finishes in well under a minute.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from . import sphere
from .benchmark import RunRecord
from .instances import generate_gnp, generate_spd
from .linesearch import WolfeParams, search
from .objectives import RayleighProblem, StabilityProblem
from .oracles import brute_force_stability, smallest_eigenvalue_oracle
from .profiles import performance_profile
from .rules import BetaRule, RULE_NAMES
from .solver import SolverConfig, solve, stability_number
from .sphere import random_unit_point


def _triples(n: int, count: int, seed: int):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        x = random_unit_point(n, int(rng.integers(2**31)))
        yield x, sphere.random_tangent(x, rng, rng.uniform(0.1, 3.0)), sphere.random_tangent(x, rng)


def check_geometry() -> tuple[bool, str]:
    worst = {"norm": 0.0, "gauss": 0.0, "fd": 0.0, "tangent": 0.0}
    h = 1e-6
    for n in (2, 3, 10, 100):
        for x, eta, xi in _triples(n, 100, n):
            y = sphere.exp(x, eta)
            worst["norm"] = max(worst["norm"], abs(np.linalg.norm(y) - 1.0))
            t_eta = sphere.dexp(x, eta, eta, endpoint=y)
            t_xi = sphere.dexp(x, eta, xi, endpoint=y)
            gauss = abs(sphere.inner(t_eta, t_xi) - sphere.inner(eta, xi)) / (1 + eta.norm() * xi.norm())
            worst["gauss"] = max(worst["gauss"], gauss)
            fd = (sphere.exp(x, eta + h * xi) - sphere.exp(x, eta - h * xi)) / (2 * h)
            worst["fd"] = max(worst["fd"], np.linalg.norm(fd - t_xi.coords) / max(np.linalg.norm(t_xi.coords), 1e-300))
            worst["tangent"] = max(worst["tangent"], abs(t_xi.coords @ y))
    ok = worst["norm"] <= 1e-12 and worst["gauss"] <= 1e-10 and worst["fd"] < 1e-5 and worst["tangent"] <= 1e-10
    return ok, ", ".join(f"{k}={v:.2e}" for k, v in worst.items())


def check_gradients() -> tuple[bool, str]:
    rng = np.random.default_rng(1)
    problems = [RayleighProblem(generate_spd(12, 3)), StabilityProblem(generate_gnp(12, 0.4, 3))]
    worst = 0.0
    h = 1e-6
    for prob in problems:
        for _ in range(20):
            x = random_unit_point(12, int(rng.integers(2**31)))
            grad = prob.euclidean_gradient(x)
            fd = np.array([(prob.value(x + h * e) - prob.value(x - h * e)) / (2 * h) for e in np.eye(12)])
            worst = max(worst, np.linalg.norm(fd - grad) / np.linalg.norm(grad))
    return worst < 1e-5, f"max relative error {worst:.2e}"


def check_motzkin_straus() -> tuple[bool, str]:
    G = generate_gnp(10, 0.3, 5)
    S = brute_force_stability(G)
    rng = np.random.default_rng(2)
    x = rng.standard_normal((20000, G.n))
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    adj = G.adjacency()
    y = x * x
    vals = np.sum(y * y, axis=1) + np.einsum("ij,jk,ik->i", y, adj, y)
    ok = vals.min() >= 1.0 / S - 1e-9
    return bool(ok), f"S(G)={S}, min sampled f={vals.min():.6f} >= 1/S={1 / S:.6f}"


def check_line_search() -> tuple[bool, str]:
    prob = RayleighProblem(generate_spd(20, 4))
    params = WolfeParams()
    bad = 0
    for seed in range(20):
        x = random_unit_point(20, seed)
        g = prob.riemannian_gradient(x)
        eta = -g
        f0, s0 = prob.value(x), sphere.inner(g, eta)
        r = search(prob, x, eta, f0, s0, params)
        if not (r.f_new <= f0 + params.c1 * r.alpha * s0 and abs(r.slope_new) <= params.c2 * abs(s0)):
            bad += 1
    return bad == 0, f"{bad} of 20 steps violate the strong Wolfe conditions"


def check_rayleigh_solve() -> tuple[bool, str]:
    worst = 0.0
    for seed in range(3):
        A = generate_spd(30, seed)
        lam = smallest_eigenvalue_oracle(A)
        for name in RULE_NAMES:
            cfg = SolverConfig(rule=BetaRule.parse(name), assert_theory=True)
            res = solve(RayleighProblem(A), random_unit_point(30, seed), cfg)
            if not res.converged:
                return False, f"{name} did not converge on seed {seed}"
            worst = max(worst, abs(res.f_final - lam) / (1 + abs(lam)))
    return worst <= 1e-8, f"max relative error vs Jacobi oracle {worst:.2e}"


def check_stability_number() -> tuple[bool, str]:
    hits = 0
    for seed in range(5):
        G = generate_gnp(12, 0.3, seed)
        S = brute_force_stability(G)
        est, f = stability_number(G, 10, SolverConfig(assert_theory=True), seed=seed)
        if f < 1.0 / S - 1e-9:
            return False, f"f={f} below the Motzkin-Straus bound 1/{S}"
        hits += est == S
    return hits >= 4, f"{hits} of 5 graphs recovered S(G) exactly"


def check_profiles() -> tuple[bool, str]:
    def rec(p, s, it, ok=True):
        return RunRecord(p, s, 0, 2, ok, it, it, it, 1, 0.0, 0.0)

    curves = {c.solver_id: c for c in performance_profile(
        [rec("p1", "a", 1), rec("p1", "b", 2), rec("p2", "a", 2), rec("p2", "b", 1)])}
    ok = all(curves[s](1.0) == 0.5 and curves[s](2.0) == 1.0 for s in "ab")
    rng = np.random.default_rng(0)
    for _ in range(200):
        recs = [rec(f"p{i}", f"s{j}", int(rng.integers(1, 50)), bool(rng.random() < 0.8))
                for i in range(5) for j in range(3)]
        kept = len({r.problem_id for r in recs if r.converged})
        if not kept:
            continue
        for c in performance_profile(recs):
            ps = [p for _, p in c.breakpoints]
            solved = sum(r.converged for r in recs if r.solver_id == c.solver_id)
            if ps != sorted(ps) or (ps and ps[-1] > solved / kept + 1e-15):
                ok = False
    return ok, "hand example and 200 fuzzed record sets"


CHECKS: dict[str, Callable[[], tuple[bool, str]]] = {
    "geometry": check_geometry,
    "gradients": check_gradients,
    "motzkin-straus": check_motzkin_straus,
    "line-search": check_line_search,
    "rayleigh-solve": check_rayleigh_solve,
    "stability-number": check_stability_number,
    "profiles": check_profiles,
}


def run_all(echo: Callable[[str], None] = print) -> bool:
    all_ok = True
    for name, check in CHECKS.items():
        try:
            ok, detail = check()
        except Exception as exc:  # a crashing check is a failed check
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        all_ok &= ok
        echo(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    return all_ok

