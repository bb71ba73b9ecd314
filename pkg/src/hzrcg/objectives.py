"""Objective functions on the sphere: Rayleigh quotient and Motzkin-Straus."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .sphere import TangentVector, riemannian_grad


@dataclass(frozen=True, eq=False)
class SpdMatrix:
    entries: np.ndarray

    @property
    def n(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices 0..n-1; edges stored as (i, j), i < j."""

    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        for i, j in self.edges:
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"edge ({i}, {j}) out of range for n={self.n}")
            if i > j:
                raise ValueError(f"edge ({i}, {j}) not normalized to i < j")

    @classmethod
    def from_pairs(cls, n: int, pairs) -> "Graph":
        edges = set()
        for i, j in pairs:
            i, j = int(i), int(j)
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            edges.add((min(i, j), max(i, j)))
        return cls(n, frozenset(edges))

    def adjacency(self) -> np.ndarray:
        adj = np.zeros((self.n, self.n))
        for i, j in self.edges:
            adj[i, j] = adj[j, i] = 1.0
        return adj

    def neighbor_masks(self) -> list[int]:
        masks = [0] * self.n
        for i, j in self.edges:
            masks[i] |= 1 << j
            masks[j] |= 1 << i
        return masks


class ObjectiveProblem:
    """A smooth function restricted to S^{n-1}.

    Subclasses provide ``value`` and ``euclidean_gradient`` on ambient
    coordinates; the Riemannian gradient follows by projection.
    """

    id: str = "problem"
    dimension: int
    known_optimum: float | None = None

    def value(self, x: np.ndarray) -> float:
        raise NotImplementedError

    def euclidean_gradient(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def riemannian_gradient(self, x: np.ndarray) -> TangentVector:
        return riemannian_grad(x, self.euclidean_gradient(x))

    def _check(self, x: np.ndarray) -> None:
        if x.shape != (self.dimension,):
            raise ValueError(f"dimension mismatch: problem has n={self.dimension}, point has shape {x.shape}")


def rayleigh_value(A: SpdMatrix, x: np.ndarray) -> float:
    if x.shape != (A.n,):
        raise ValueError(f"dimension mismatch: A is {A.n}x{A.n}, x has shape {x.shape}")
    return float(x @ (A.entries @ x))


def rayleigh_euclidean_grad(A: SpdMatrix, x: np.ndarray) -> np.ndarray:
    if x.shape != (A.n,):
        raise ValueError(f"dimension mismatch: A is {A.n}x{A.n}, x has shape {x.shape}")
    return 2.0 * (A.entries @ x)


def stability_value(G: Graph, x: np.ndarray, adjacency: np.ndarray | None = None) -> float:
    # each undirected edge counted twice: sum over ordered pairs
    if x.shape != (G.n,):
        raise ValueError(f"dimension mismatch: graph has n={G.n}, x has shape {x.shape}")
    adj = G.adjacency() if adjacency is None else adjacency
    y = x * x
    return float(y @ y + y @ (adj @ y))


def stability_euclidean_grad(G: Graph, x: np.ndarray, adjacency: np.ndarray | None = None) -> np.ndarray:
    if x.shape != (G.n,):
        raise ValueError(f"dimension mismatch: graph has n={G.n}, x has shape {x.shape}")
    adj = G.adjacency() if adjacency is None else adjacency
    y = x * x
    return 4.0 * x * (y + adj @ y)


class RayleighProblem(ObjectiveProblem):
    """Minimize x^T A x on the sphere; the optimum is the smallest eigenvalue."""

    def __init__(self, A: SpdMatrix, id: str = "rayleigh", known_optimum: float | None = None):
        self.A = A
        self.id = id
        self.dimension = A.n
        self.known_optimum = known_optimum
        self._M = A.entries

    def value(self, x):
        self._check(x)
        return float(x @ (self._M @ x))

    def euclidean_gradient(self, x):
        self._check(x)
        return 2.0 * (self._M @ x)


class StabilityProblem(ObjectiveProblem):
    """Motzkin-Straus quartic whose minimum over the sphere is 1/S(G)."""

    def __init__(self, G: Graph, id: str = "stability", known_optimum: float | None = None):
        self.G = G
        self.id = id
        self.dimension = G.n
        self.known_optimum = known_optimum
        self._adj = G.adjacency()

    def value(self, x):
        self._check(x)
        y = x * x
        return float(y @ y + y @ (self._adj @ y))

    def euclidean_gradient(self, x):
        self._check(x)
        y = x * x
        return 4.0 * x * (y + self._adj @ y)
