"""Seeded instance generators and the plain-text instance formats.

Edge-list file::

    # comment
    n
    i j
    ...

Matrix file: a first line ``n`` followed by n rows of n decimals.
"""

from __future__ import annotations

import numpy as np

from .objectives import Graph, SpdMatrix


class InstanceFormatError(ValueError):
    pass


SPECTRA = ("uniform", "loguniform")


def generate_spd(n: int, seed: int, spectrum: str = "uniform") -> SpdMatrix:
    """Random SPD matrix Q diag(lam) Q^T with Haar-distributed Q.

    ``spectrum="uniform"`` draws lam from 1 + U[0, 1) (condition number
    below 2); ``"loguniform"`` draws log(lam) uniformly so lam lies in
    [1e-2, 1] (condition number up to 100).
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if spectrum not in SPECTRA:
        raise ValueError(f"unknown spectrum {spectrum!r}; choose from {', '.join(SPECTRA)}")
    rng = np.random.default_rng(seed)
    Q, R = np.linalg.qr(rng.standard_normal((n, n)))
    # fix column signs so Q is a deterministic function of the Gaussian draw
    Q = Q * np.sign(np.diag(R))
    if spectrum == "uniform":
        lam = 1.0 + rng.uniform(0.0, 1.0, size=n)
    else:
        lam = np.exp(rng.uniform(np.log(1e-2), 0.0, size=n))
    A = (Q * lam) @ Q.T
    return SpdMatrix(0.5 * (A + A.T))


def generate_gnp(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi G(n, p): each pair i < j kept independently with probability p."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability p={p} outside [0, 1]")
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(iu.size) < p
    return Graph(n, frozenset(zip(iu[keep].tolist(), ju[keep].tolist())))


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def read_edge_list(text: str) -> Graph:
    lines = _content_lines(text)
    try:
        lineno, first = next(lines)
    except StopIteration:
        raise InstanceFormatError("empty edge list: missing vertex count") from None
    try:
        n = int(first)
    except ValueError:
        raise InstanceFormatError(f"line {lineno}: expected vertex count, got {first!r}") from None
    if n < 1:
        raise InstanceFormatError(f"line {lineno}: vertex count must be positive")
    edges = set()
    for lineno, line in lines:
        parts = line.split()
        if len(parts) != 2:
            raise InstanceFormatError(f"line {lineno}: expected 'i j', got {line!r}")
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise InstanceFormatError(f"line {lineno}: non-integer vertex in {line!r}") from None
        if i == j:
            raise InstanceFormatError(f"line {lineno}: self-loop at vertex {i}")
        if not (0 <= i < n and 0 <= j < n):
            raise InstanceFormatError(f"line {lineno}: vertex out of range for n={n}")
        edges.add((min(i, j), max(i, j)))
    return Graph(n, frozenset(edges))


def write_edge_list(G: Graph) -> str:
    rows = [str(G.n)] + [f"{i} {j}" for i, j in sorted(G.edges)]
    return "\n".join(rows) + "\n"


def read_matrix(text: str, sym_tol: float = 1e-8) -> SpdMatrix:
    lines = list(_content_lines(text))
    if not lines:
        raise InstanceFormatError("empty matrix file")
    lineno, first = lines[0]
    try:
        n = int(first)
    except ValueError:
        raise InstanceFormatError(f"line {lineno}: expected dimension, got {first!r}") from None
    rows = lines[1:]
    if len(rows) != n:
        raise InstanceFormatError(f"header says n={n} but found {len(rows)} matrix rows")
    A = np.empty((n, n))
    for r, (lineno, line) in enumerate(rows):
        parts = line.split()
        if len(parts) != n:
            raise InstanceFormatError(f"line {lineno}: expected {n} entries, got {len(parts)}")
        try:
            A[r] = [float(p) for p in parts]
        except ValueError:
            raise InstanceFormatError(f"line {lineno}: malformed number in {line!r}") from None
    if not np.all(np.isfinite(A)):
        raise InstanceFormatError("matrix contains non-finite entries")
    asym = np.max(np.abs(A - A.T)) if n else 0.0
    if asym > sym_tol:
        raise InstanceFormatError(f"matrix is not symmetric (max asymmetry {asym:.3g})")
    return SpdMatrix(0.5 * (A + A.T))


def write_matrix(A: SpdMatrix) -> str:
    rows = [str(A.n)] + [" ".join(repr(float(v)) for v in row) for row in A.entries]
    return "\n".join(rows) + "\n"
