"""Exact geometry of the unit sphere S^{n-1} embedded in R^n.

Points are plain 1-D float arrays of unit norm. Tangent vectors carry their
base point so that operations mixing tangent spaces can be rejected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# below this step norm exp/dexp switch to truncated Taylor series
SMALL_NORM = 1e-8


class GeometryError(ValueError):
    """Raised on dimension or base-point mismatch."""


def _same_base(a: np.ndarray, b: np.ndarray) -> bool:
    if a is b:
        return True
    return a.shape == b.shape and np.array_equal(a, b)


@dataclass(frozen=True, eq=False)
class TangentVector:
    """Ambient coordinates of a vector tangent to the sphere at ``base``."""

    base: np.ndarray
    coords: np.ndarray

    def _check(self, other: "TangentVector") -> None:
        if not _same_base(self.base, other.base):
            raise GeometryError("tangent vectors live at different base points")

    def __add__(self, other: "TangentVector") -> "TangentVector":
        self._check(other)
        return TangentVector(self.base, self.coords + other.coords)

    def __sub__(self, other: "TangentVector") -> "TangentVector":
        self._check(other)
        return TangentVector(self.base, self.coords - other.coords)

    def __mul__(self, scalar: float) -> "TangentVector":
        return TangentVector(self.base, scalar * self.coords)

    __rmul__ = __mul__

    def __neg__(self) -> "TangentVector":
        return TangentVector(self.base, -self.coords)

    def norm(self) -> float:
        return math.sqrt(self.coords @ self.coords)

    def at(self, base: np.ndarray) -> "TangentVector":
        """Re-express the same ambient vector as tangent at ``base``."""
        return project_tangent(base, self.coords)


def as_point(v, *, normalize: bool = False, atol: float = 1e-12) -> np.ndarray:
    """Validate (or normalize) ``v`` as a point on the sphere."""
    x = np.array(v, dtype=float)
    if x.ndim != 1 or x.size < 2:
        raise GeometryError(f"a sphere point needs a 1-D vector of length >= 2, got shape {x.shape}")
    nrm = np.linalg.norm(x)
    if normalize:
        if nrm == 0.0 or not np.isfinite(nrm):
            raise GeometryError("cannot normalize a zero or non-finite vector")
        return x / nrm
    if abs(nrm - 1.0) > atol:
        raise GeometryError(f"point has norm {nrm!r}, expected 1")
    return x


def project_tangent(x: np.ndarray, v) -> TangentVector:
    """Orthogonal projection of the ambient vector ``v`` onto T_x S^{n-1}."""
    v = np.asarray(v, dtype=float)
    if v.shape != x.shape:
        raise GeometryError(f"dimension mismatch: point {x.shape}, vector {v.shape}")
    return TangentVector(x, v - (v @ x) * x)


def riemannian_grad(x: np.ndarray, euclid_grad) -> TangentVector:
    """Riemannian gradient from the Euclidean one (projection onto T_x)."""
    return project_tangent(x, euclid_grad)


def tangent(x: np.ndarray, v) -> TangentVector:
    """Wrap ``v`` as tangent at ``x`` without projecting; checks orthogonality."""
    v = np.asarray(v, dtype=float)
    if v.shape != x.shape:
        raise GeometryError(f"dimension mismatch: point {x.shape}, vector {v.shape}")
    if abs(v @ x) > 1e-10 * max(1.0, float(np.linalg.norm(v))):
        raise GeometryError("vector is not tangent at the given point")
    return TangentVector(x, v)


def zero(x: np.ndarray) -> TangentVector:
    return TangentVector(x, np.zeros_like(x))


def inner(xi: TangentVector, zeta: TangentVector) -> float:
    """Riemannian metric: the ambient dot product."""
    xi._check(zeta)
    return float(xi.coords @ zeta.coords)


def exp(x: np.ndarray, eta: TangentVector) -> np.ndarray:
    """Exponential map: follow the great circle from ``x`` with velocity ``eta``."""
    if not _same_base(x, eta.base):
        raise GeometryError("tangent vector is not based at x")
    v = eta.coords
    s = math.sqrt(v @ v)
    if s == 0.0:
        return x
    if s < SMALL_NORM:
        y = (1.0 - 0.5 * s * s) * x + (1.0 - s * s / 6.0) * v
    else:
        y = math.cos(s) * x + (math.sin(s) / s) * v
    return y / math.sqrt(y @ y)


def dexp(x: np.ndarray, eta: TangentVector, xi: TangentVector,
         endpoint: np.ndarray | None = None) -> TangentVector:
    """Differential of exp_x at ``eta`` applied to ``xi``.

    This is the vector transport used by the solver: it carries ``xi`` from
    T_x to T_y with y = exp_x(eta). Pass ``endpoint`` when y is already
    known so the result shares that array as its base.

    The closed form splits ``xi`` into a component along u = eta/|eta|
    (moved like the geodesic velocity) and an orthogonal part (a Jacobi
    field, scaled by sin(s)/s).
    """
    if not (_same_base(x, eta.base) and _same_base(x, xi.base)):
        raise GeometryError("eta and xi must both be based at x")
    y = exp(x, eta) if endpoint is None else endpoint
    v = eta.coords
    s = math.sqrt(v @ v)
    if s < SMALL_NORM:
        return project_tangent(y, xi.coords)
    u = v / s
    a = float(xi.coords @ u)
    w = xi.coords - a * u
    sin_s, cos_s = math.sin(s), math.cos(s)
    out = a * (cos_s * u - sin_s * x) + (sin_s / s) * w
    return TangentVector(y, out)


def distance(x: np.ndarray, y: np.ndarray) -> float:
    """Geodesic (great-circle) distance in radians."""
    return float(np.arccos(np.clip(x @ y, -1.0, 1.0)))


def random_unit_point(n: int, seed: int) -> np.ndarray:
    """Uniformly distributed point on S^{n-1}, deterministic per seed."""
    if n < 2:
        raise GeometryError("sphere dimension n must be >= 2")
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(n)
    return v / np.linalg.norm(v)


def random_tangent(x: np.ndarray, rng: np.random.Generator, scale: float = 1.0) -> TangentVector:
    return project_tangent(x, scale * rng.standard_normal(x.shape[0]))
