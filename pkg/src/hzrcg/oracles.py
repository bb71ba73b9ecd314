"""Verification oracles that share no code path with the optimizer."""

from __future__ import annotations

import numpy as np

from .objectives import Graph, SpdMatrix

MAX_BRUTE_FORCE_N = 25


def _round_robin(n: int):
    """Yield n-1 (or n) rounds of disjoint index pairs covering all pairs once."""
    players = list(range(n)) + ([-1] if n % 2 else [])
    m = len(players)
    for _ in range(m - 1):
        pairs = []
        for k in range(m // 2):
            p, q = players[k], players[m - 1 - k]
            if p >= 0 and q >= 0:
                pairs.append((min(p, q), max(p, q)))
        yield pairs
        players = [players[0], players[-1]] + players[1:-1]


def jacobi_eigenvalues(A, tol: float = 1e-12, max_sweeps: int = 100) -> np.ndarray:
    """Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.

    Each sweep visits every off-diagonal pair once in round-robin order;
    the rotations inside one round act on disjoint index pairs and are
    applied together. Iterates until the off-diagonal Frobenius norm drops
    below ``tol`` (scaled by max(1, |A|_F)).
    """
    a = np.array(A.entries if isinstance(A, SpdMatrix) else A, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("expected a square matrix")
    n = a.shape[0]
    if n and np.max(np.abs(a - a.T)) > 1e-12 * max(1.0, np.max(np.abs(a))):
        raise ValueError("matrix is not symmetric")
    a = 0.5 * (a + a.T)
    if n < 2:
        return np.diag(a).copy()
    target = tol * max(1.0, float(np.linalg.norm(a)))
    rounds = [np.array(r, dtype=int).T for r in _round_robin(n)]
    for _ in range(max_sweeps):
        off = np.sqrt(2.0 * float(np.sum(np.triu(a, 1) ** 2)))
        if off < target:
            return np.sort(np.diag(a))
        for P, Q in rounds:
            apq = a[P, Q]
            active = apq != 0.0
            if not np.any(active):
                continue
            P, Q, apq = P[active], Q[active], apq[active]
            with np.errstate(over="ignore", divide="ignore"):
                theta = (a[Q, Q] - a[P, P]) / (2.0 * apq)
                # |theta| huge: t ~ 1/(2 theta), avoids squaring overflow
                big = np.abs(theta) > 1e150
                t = np.where(big, 0.5 / np.where(big, theta, 1.0),
                             np.sign(theta) / (np.abs(theta) + np.sqrt(np.where(big, 0.0, theta) ** 2 + 1.0)))
            t[theta == 0.0] = 1.0
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            colp, colq = a[:, P].copy(), a[:, Q].copy()
            a[:, P] = c * colp - s * colq
            a[:, Q] = s * colp + c * colq
            rowp, rowq = a[P, :].copy(), a[Q, :].copy()
            a[P, :] = c[:, None] * rowp - s[:, None] * rowq
            a[Q, :] = s[:, None] * rowp + c[:, None] * rowq
            a[P, Q] = 0.0
            a[Q, P] = 0.0
    raise RuntimeError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")


def smallest_eigenvalue_oracle(A) -> float:
    return float(jacobi_eigenvalues(A)[0])


def brute_force_stability(G: Graph) -> int:
    """Exact size of a maximum independent set, by pruned subset enumeration."""
    if G.n > MAX_BRUTE_FORCE_N:
        raise ValueError(f"brute force limited to n <= {MAX_BRUTE_FORCE_N}, got n={G.n}")
    nbrs = G.neighbor_masks()
    best = 0

    def search(candidates: int, size: int) -> None:
        nonlocal best
        if size + candidates.bit_count() <= best:
            return
        if not candidates:
            best = size
            return
        v = (candidates & -candidates).bit_length() - 1
        bit = 1 << v
        search(candidates & ~bit & ~nbrs[v], size + 1)
        search(candidates & ~bit, size)

    search((1 << G.n) - 1, 0)
    return best
