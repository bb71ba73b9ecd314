import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hzrcg.objectives import (Graph, RayleighProblem, SpdMatrix, StabilityProblem, rayleigh_euclidean_grad,
                              rayleigh_value, stability_euclidean_grad, stability_value)
from hzrcg.instances import generate_gnp, generate_spd
from hzrcg.oracles import brute_force_stability
from hzrcg.sphere import random_unit_point

R2 = 1.0 / math.sqrt(2.0)
R3 = 1.0 / math.sqrt(3.0)


def complete(n):
    return Graph.from_pairs(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def test_rayleigh_values():
    x = random_unit_point(6, 0)
    assert rayleigh_value(SpdMatrix(np.eye(6)), x) == pytest.approx(1.0, abs=1e-15)
    assert rayleigh_value(SpdMatrix(np.diag([1.0, 2.0, 3.0])), np.array([1.0, 0, 0])) == 1.0
    assert rayleigh_value(SpdMatrix(np.diag([1.0, 2.0])), np.array([R2, R2])) == pytest.approx(1.5, abs=1e-15)


def test_rayleigh_gradients():
    assert np.array_equal(rayleigh_euclidean_grad(SpdMatrix(np.eye(3)), np.array([1.0, 0, 0])), [2.0, 0, 0])
    A = SpdMatrix(np.diag([1.0, 2.0, 3.0]))
    assert np.array_equal(rayleigh_euclidean_grad(A, np.array([0, 0, 1.0])), [0, 0, 6.0])
    g = rayleigh_euclidean_grad(SpdMatrix(np.diag([1.0, 2.0])), np.array([R2, R2]))
    assert np.allclose(g, [math.sqrt(2), 2 * math.sqrt(2)], atol=1e-15)


def test_rayleigh_riemannian_gradient_hand_example():
    prob = RayleighProblem(SpdMatrix(np.diag([1.0, 2.0])))
    g = prob.riemannian_gradient(np.array([R2, R2]))
    assert np.allclose(g.coords, [-R2, R2], atol=1e-15)


def test_identity_riemannian_gradient_vanishes():
    prob = RayleighProblem(SpdMatrix(np.eye(3)))
    assert np.allclose(prob.riemannian_gradient(np.array([1.0, 0, 0])).coords, 0.0)


def test_stability_values():
    empty4 = Graph(4, frozenset())
    assert stability_value(empty4, np.full(4, 0.5)) == pytest.approx(0.25, abs=1e-15)
    assert stability_value(complete(3), np.full(3, R3)) == pytest.approx(1.0, abs=1e-15)
    G = generate_gnp(9, 0.5, 2)
    assert stability_value(G, np.eye(9)[0]) == 1.0


def test_stability_gradients():
    assert np.array_equal(stability_euclidean_grad(Graph(4, frozenset()), np.eye(4)[0]), [4.0, 0, 0, 0])
    g = stability_euclidean_grad(complete(3), np.full(3, R3))
    assert np.allclose(g, 12 / (3 * math.sqrt(3)), atol=1e-14)


def _fd_gradient(f, x, h=1e-6):
    return np.array([(f(x + h * ei) - f(x - h * ei)) / (2 * h) for ei in np.eye(x.size)])


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10_000), n=st.integers(2, 12), p=st.floats(0.0, 1.0))
def test_stability_gradient_finite_difference(seed, n, p):
    G = generate_gnp(n, p, seed)
    x = random_unit_point(n, seed)
    g = stability_euclidean_grad(G, x)
    fd = _fd_gradient(lambda z: stability_value(G, z), x)
    assert np.linalg.norm(fd - g) <= 1e-6 * np.linalg.norm(g)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10_000), n=st.integers(2, 12))
def test_rayleigh_gradient_finite_difference(seed, n):
    A = generate_spd(n, seed)
    x = random_unit_point(n, seed + 1)
    g = rayleigh_euclidean_grad(A, x)
    fd = _fd_gradient(lambda z: rayleigh_value(A, z), x)
    assert np.linalg.norm(fd - g) <= 1e-6 * np.linalg.norm(g)


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 10_000), n=st.integers(2, 10), p=st.floats(0.0, 1.0))
def test_motzkin_straus_lower_bound(seed, n, p):
    G = generate_gnp(n, p, seed)
    bound = 1.0 / brute_force_stability(G)
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((200, n))
    X /= np.linalg.norm(X, axis=1, keepdims=True)
    assert min(stability_value(G, x) for x in X) >= bound - 1e-12


def test_motzkin_straus_bound_attained_on_independent_set():
    # uniform weights on a maximum independent set give exactly 1/S
    G = Graph.from_pairs(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    x = np.zeros(5)
    x[[0, 2, 4]] = R3
    assert stability_value(G, x) == pytest.approx(1 / 3, abs=1e-15)


def test_graph_validation():
    with pytest.raises(ValueError):
        Graph(3, frozenset({(1, 1)}))
    with pytest.raises(ValueError):
        Graph(3, frozenset({(0, 3)}))
    G = Graph.from_pairs(3, [(1, 0), (0, 1)])
    assert G.edges == frozenset({(0, 1)})
    assert np.array_equal(G.adjacency(), G.adjacency().T)


def test_problem_dimension_check():
    prob = StabilityProblem(complete(3))
    with pytest.raises(ValueError):
        prob.value(np.array([1.0, 0.0]))
