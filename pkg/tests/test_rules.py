import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from hzrcg import sphere
from hzrcg.rules import RULE_NAMES, BetaRule, DegenerateDenominator, DirectionContext, Variant, compute_beta, next_direction
from hzrcg.sphere import random_unit_point

X = np.array([1.0, 0.0, 0.0, 0.0])


def at_x(*coords):
    return sphere.tangent(X, np.array([0.0, *coords]))


def hand_context(**kw):
    # y = (0,1,2,0): |y|^2 = 5; t_eta = e3: <y,t_eta> = 2; g = (0,-5,3,0): <g,y> = 1, <g,t_eta> = 3
    g = at_x(-5.0, 3.0, 0.0)
    y = at_x(1.0, 2.0, 0.0)
    args = dict(g_new=g, t_g_old=g - y, t_eta_old=at_x(0.0, 1.0, 0.0), g_old_norm_sq=1.0,
                g_old_dot_eta_old=-1.0, eta_old_norm=1.0)
    args.update(kw)
    return DirectionContext(**args)


def test_hand_context_inner_products():
    ctx = hand_context()
    assert sphere.inner(ctx.g_new, ctx.y) == 1.0
    assert sphere.inner(ctx.y, ctx.t_eta_old) == 2.0
    assert sphere.inner(ctx.y, ctx.y) == 5.0
    assert sphere.inner(ctx.g_new, ctx.t_eta_old) == 3.0


def test_hs_and_hz_hand_example():
    ctx = hand_context()
    assert compute_beta(BetaRule(Variant.HS), ctx) == 0.5
    assert compute_beta(BetaRule(Variant.HZ, mu=2.0), ctx) == -7.0


def test_modified_hz_hand_example():
    ctx = hand_context()
    assert compute_beta(BetaRule(Variant.MODIFIED_HZ, mu=2.0, zeta=0.01), ctx) == -7.0
    # a larger floor overrides the HZ value: -1 / (1 * min(1, sqrt(34))) = -1
    assert compute_beta(BetaRule(Variant.MODIFIED_HZ, mu=2.0, zeta=1.0), ctx) == -1.0


def test_fr_equal_norms_is_one():
    g_old = at_x(0.3, -0.4, 1.2)
    ctx = DirectionContext(g_new=g_old, t_g_old=g_old, t_eta_old=-g_old, g_old_norm_sq=float(g_old.coords @ g_old.coords),
                           g_old_dot_eta_old=-1.0, eta_old_norm=1.0)
    assert compute_beta(BetaRule(Variant.FR), ctx) == pytest.approx(1.0, abs=1e-15)


def test_orthogonal_case_gives_zero():
    g = at_x(1.0, 0.0, 0.0)
    y = at_x(0.0, 1.0, 0.0)
    t_eta = at_x(0.0, 1.0, 1.0)
    ctx = DirectionContext(g_new=g, t_g_old=g - y, t_eta_old=t_eta, g_old_norm_sq=2.0,
                           g_old_dot_eta_old=-1.0, eta_old_norm=1.0)
    for v in (Variant.PRP, Variant.HS, Variant.HZ):
        assert compute_beta(BetaRule(v), ctx) == 0.0


def test_degenerate_denominator():
    g = at_x(1.0, 0.0, 0.0)
    ctx = DirectionContext(g_new=g, t_g_old=g, t_eta_old=at_x(0.0, 1.0, 0.0), g_old_norm_sq=1.0,
                           g_old_dot_eta_old=0.0, eta_old_norm=1.0)
    with pytest.raises(DegenerateDenominator):
        compute_beta(BetaRule(Variant.HS), ctx)
    with pytest.raises(DegenerateDenominator):
        compute_beta(BetaRule(Variant.DY), ctx)


def test_rule_parsing_and_validation():
    assert [BetaRule.parse(n).name for n in RULE_NAMES] == list(RULE_NAMES)
    assert BetaRule.parse("HZ").hz_family and BetaRule.parse("mhz").hz_family
    assert not BetaRule.parse("fr").hz_family
    with pytest.raises(ValueError):
        BetaRule.parse("cg")
    with pytest.raises(ValueError):
        BetaRule(mu=0.25)
    with pytest.raises(ValueError):
        BetaRule(Variant.MODIFIED_HZ, zeta=0.0)


def test_next_direction():
    g = at_x(1.0, 0.0, 0.0)
    t_eta = at_x(0.0, 1.0, 0.0)
    assert np.array_equal(next_direction(g, 0.0, t_eta).coords, -g.coords)
    assert np.array_equal(next_direction(g, 2.0, t_eta).coords, [0.0, -1.0, 2.0, 0.0])
    assert np.array_equal(next_direction(g, 5.0).coords, -g.coords)


# ---------------------------------------------------------------- properties

def genuine_context(seed, n, s):
    """Context built from real sphere transports of random g_k, eta_k."""
    rng = np.random.default_rng([seed, 7])
    x = random_unit_point(n, seed)
    g_old = sphere.random_tangent(x, rng)
    eta_old = sphere.random_tangent(x, rng)
    step = eta_old * (s / eta_old.norm())
    y_pt = sphere.exp(x, step)
    g_new = sphere.random_tangent(y_pt, rng)
    t_g = sphere.dexp(x, step, g_old, endpoint=y_pt)
    t_eta = sphere.dexp(x, step, eta_old, endpoint=y_pt)
    return DirectionContext(g_new, t_g, t_eta, float(g_old.coords @ g_old.coords),
                            sphere.inner(g_old, eta_old), eta_old.norm())


seeds = st.integers(0, 2**31 - 1)


@settings(max_examples=100, deadline=None)
@given(seed=seeds, n=st.integers(3, 30), s=st.floats(1e-3, 3.0))
def test_denominator_identity_under_transport(seed, n, s):
    ctx = genuine_context(seed, n, s)
    lhs = sphere.inner(ctx.y, ctx.t_eta_old)
    rhs = sphere.inner(ctx.g_new, ctx.t_eta_old) - ctx.g_old_dot_eta_old
    assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(lhs))


@settings(max_examples=100, deadline=None)
@given(seed=seeds, n=st.integers(3, 30), s=st.floats(1e-3, 3.0), mu=st.floats(0.3, 10.0))
def test_hz_family_sufficient_descent(seed, n, s, mu):
    ctx = genuine_context(seed, n, s)
    assume(abs(sphere.inner(ctx.y, ctx.t_eta_old)) > 1e-8)
    gg = float(ctx.g_new.coords @ ctx.g_new.coords)
    for v in (Variant.HZ, Variant.MODIFIED_HZ):
        beta = compute_beta(BetaRule(v, mu=mu), ctx)
        eta = next_direction(ctx.g_new, beta, ctx.t_eta_old)
        assert sphere.inner(ctx.g_new, eta) <= -(1 - 1 / (4 * mu)) * gg + 1e-10 * (1 + gg)


@settings(max_examples=100, deadline=None)
@given(seed=seeds, n=st.integers(3, 30), s=st.floats(1e-3, 3.0))
def test_hybrid_and_modified_bounds(seed, n, s):
    ctx = genuine_context(seed, n, s)
    assume(abs(sphere.inner(ctx.y, ctx.t_eta_old)) > 1e-8)
    b = {v: compute_beta(BetaRule(v), ctx) for v in Variant}
    assert 0.0 <= b[Variant.HYBRID_HS_DY] <= max(0.0, b[Variant.DY])
    assert 0.0 <= b[Variant.HYBRID_FR_PRP] <= b[Variant.FR]
    assert b[Variant.MODIFIED_HZ] >= b[Variant.HZ]
    assert b[Variant.MODIFIED_HZ] <= max(b[Variant.HZ], 0.0)
    # with genuine transports the two HS denominators coincide
    assert b[Variant.HS] == pytest.approx(
        sphere.inner(ctx.g_new, ctx.y) / (sphere.inner(ctx.g_new, ctx.t_eta_old) - ctx.g_old_dot_eta_old),
        rel=1e-8, abs=1e-12)
