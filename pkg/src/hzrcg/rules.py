"""Conjugate-gradient beta rules evaluated from transported quantities."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .sphere import TangentVector


class Variant(enum.Enum):
    FR = "fr"
    PRP = "prp"
    HS = "hs"
    DY = "dy"
    HYBRID_HS_DY = "hsdy"
    HYBRID_FR_PRP = "frprp"
    HZ = "hz"
    MODIFIED_HZ = "mhz"


RULE_NAMES = tuple(v.value for v in Variant)


@dataclass(frozen=True)
class BetaRule:
    variant: Variant = Variant.HZ
    mu: float = 2.0
    zeta: float = 0.01

    def __post_init__(self):
        if not self.mu > 0.25:
            raise ValueError(f"mu must be > 1/4, got {self.mu}")
        if not self.zeta > 0.0:
            raise ValueError(f"zeta must be > 0, got {self.zeta}")

    @classmethod
    def parse(cls, name: str, **kw) -> "BetaRule":
        key = name.strip().lower()
        if key not in RULE_NAMES:
            raise ValueError(f"unknown rule {name!r}; choose from {', '.join(RULE_NAMES)}")
        return cls(Variant(key), **kw)

    @property
    def name(self) -> str:
        return self.variant.value

    @property
    def hz_family(self) -> bool:
        return self.variant in (Variant.HZ, Variant.MODIFIED_HZ)


class DegenerateDenominator(ArithmeticError):
    """The rule's denominator vanished; the caller should restart with beta = 0."""


@dataclass(frozen=True)
class DirectionContext:
    """Everything a beta rule needs at iterate k+1.

    g_new is grad f(x_{k+1}); t_g_old and t_eta_old are g_k and eta_k carried
    to x_{k+1} by the exponential differential.
    """

    g_new: TangentVector
    t_g_old: TangentVector
    t_eta_old: TangentVector
    g_old_norm_sq: float
    g_old_dot_eta_old: float
    eta_old_norm: float

    def __post_init__(self):
        if not self.g_old_norm_sq > 0.0:
            raise ValueError("g_old_norm_sq must be positive")

    @property
    def y(self) -> TangentVector:
        return self.g_new - self.t_g_old


def _ratio(num: float, den: float) -> float:
    if den == 0.0 or not np.isfinite(den) or abs(den) < 1e-300 * abs(num):
        raise DegenerateDenominator(f"denominator {den!r} for numerator {num!r}")
    out = num / den
    if not np.isfinite(out):
        raise DegenerateDenominator(f"non-finite ratio {num!r}/{den!r}")
    return out


def compute_beta(rule: BetaRule, ctx: DirectionContext) -> float:
    g = ctx.g_new.coords
    t_eta = ctx.t_eta_old.coords
    y = g - ctx.t_g_old.coords
    v = rule.variant

    def fr():
        return _ratio(float(g @ g), ctx.g_old_norm_sq)

    def prp():
        return _ratio(float(g @ y), ctx.g_old_norm_sq)

    def hs():
        # denominator <y, T eta> equals <g_new, T eta> - <g_old, eta_old> by the Gauss lemma
        return _ratio(float(g @ y), float(y @ t_eta))

    def dy():
        return _ratio(float(g @ g), float(g @ t_eta) - ctx.g_old_dot_eta_old)

    def hz():
        d = float(y @ t_eta)
        return hs() - rule.mu * _ratio(float(y @ y) * float(g @ t_eta), d * d)

    if v is Variant.FR:
        return fr()
    if v is Variant.PRP:
        return prp()
    if v is Variant.HS:
        return hs()
    if v is Variant.DY:
        return dy()
    if v is Variant.HYBRID_HS_DY:
        return max(0.0, min(hs(), dy()))
    if v is Variant.HYBRID_FR_PRP:
        return max(0.0, min(fr(), prp()))
    if v is Variant.HZ:
        return hz()
    if v is Variant.MODIFIED_HZ:
        g_norm = float(np.sqrt(g @ g))
        scale = ctx.eta_old_norm * min(rule.zeta, g_norm)
        if scale == 0.0:
            return hz()
        return max(hz(), -1.0 / scale)
    raise AssertionError(v)


def next_direction(g_new: TangentVector, beta: float, t_eta_old: TangentVector | None = None) -> TangentVector:
    """eta = -g_new + beta * t_eta_old (steepest descent when there is no history)."""
    if t_eta_old is None or beta == 0.0:
        if t_eta_old is not None:
            g_new._check(t_eta_old)
        return -g_new
    return -g_new + beta * t_eta_old
