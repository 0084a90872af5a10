from itertools import combinations
from math import factorial

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hdxspec import build_complex, extend_top_weight, homogeneous_weight
from hdxspec.errors import MissingFacet, NonPositiveWeight, SimplexNotInComplex
from hdxspec.generators import single_simplex
from hdxspec.weights import (
    WeightFunction,
    cofacet_sums,
    link_weight,
    to_probability_weight,
    verify_balanced,
    verify_weight_identities,
)


def brute_extension(X, top):
    """m(tau) = (n-k)! * sum of facet weights over facets containing tau."""
    n = X.dim
    out = {}
    for k in range(-1, n + 1):
        out[k] = [factorial(n - k) * sum(w for f, w in zip(X.facets, top) if set(t) <= set(f))
                  for t in X.simplices(k)]
    return out


def test_octahedron_homogeneous_values(octahedron):
    X, m, _ = octahedron
    assert m(()) == 48
    assert np.all(m.on(0) == 8)
    assert np.all(m.on(1) == 2)
    assert np.all(m.on(2) == 1)


def test_single_triangle_values(triangle):
    X, m = triangle
    assert (m(()), m((0,)), m((0, 1)), m((0, 1, 2))) == (6, 2, 1, 1)


def test_complete_2_complex_values(k4):
    X, m = k4
    assert np.all(m.on(1) == 2) and np.all(m.on(0) == 6) and m(()) == 24


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_single_simplex_factorial_values(n):
    X = single_simplex(n)
    m = homogeneous_weight(X)
    for k in range(-1, n + 1):
        assert np.all(m.on(k) == factorial(n - k))


def test_scaling_is_linear(octahedron):
    X, m, _ = octahedron
    m3 = extend_top_weight(X, np.full(8, 3.0))
    for k in range(-1, 3):
        assert np.allclose(m3.on(k), 3 * m.on(k))


def test_mapping_input_and_errors(triangle):
    X, _ = triangle
    m = extend_top_weight(X, {(2, 1, 0): 2.5})
    assert m(()) == 15
    with pytest.raises(MissingFacet):
        extend_top_weight(X, {})
    with pytest.raises(MissingFacet):
        extend_top_weight(X, [1.0, 2.0])
    with pytest.raises(SimplexNotInComplex):
        extend_top_weight(X, {(0, 1, 2): 1.0, (0, 1, 3): 1.0})
    with pytest.raises(NonPositiveWeight):
        extend_top_weight(X, [0.0])
    with pytest.raises(NonPositiveWeight):
        extend_top_weight(X, [float("nan")])


def test_balanced_and_perturbed(octahedron):
    X, m, _ = octahedron
    assert verify_balanced(X, m) == []
    vals = {k: m.on(k).copy() for k in range(-1, 3)}
    vals[-1] = vals[-1] + 1
    bad = verify_balanced(X, WeightFunction(X, vals))
    assert len(bad) == 1 and bad[0].simplex == () and bad[0].weight == 49 and bad[0].cofacet_sum == 48


def test_probability_weight(octahedron):
    X, m, _ = octahedron
    w = to_probability_weight(X, m)
    assert np.allclose(w.on(2), 1 / 8)
    assert np.allclose(w.on(0), 1 / 6)
    for k in range(-1, 3):
        assert np.isclose(w.on(k).sum(), 1.0)
    dims = {len(v.simplex) - 1 for v in verify_balanced(X, w)}
    assert dims == {0, 1}


def test_weight_identity_examples(octahedron):
    X, m, _ = octahedron
    # edge weights at a vertex sum to m(vertex)/1!
    assert sum(m(e) for e in X.simplices(1) if 0 in e) == 8 == m((0,))
    # facet weights sum to m(empty)/n!
    assert m.on(2).sum() == 48 / factorial(2 + 1 - 0) * 1 == 8
    rep = verify_weight_identities(X, m)
    assert rep.ok and rep.checked > 0 and rep.max_residual < 1e-14


def test_link_weights(octahedron, triangle):
    X, m, _ = octahedron
    w = m.link((0,))
    assert np.all(w.on(1) == 1) and np.all(w.on(0) == 2) and w(()) == 8
    assert m.link(()) is m
    assert link_weight(X, m, (0,)) is w
    T, mt = triangle
    wt = mt.link((0,))
    assert wt.complex.facets == ((1, 2),)
    assert wt((1, 2)) == 1 and wt((1,)) == 1 and wt(()) == 2


def test_link_weight_is_balanced(octahedron):
    X, m, _ = octahedron
    for v in X.simplices(0):
        w = m.link(v)
        assert verify_balanced(w.complex, w) == []


@st.composite
def weighted_complexes(draw):
    n = draw(st.integers(1, 3))
    N = draw(st.integers(n + 1, 6))
    pool = list(combinations(range(N), n + 1))
    facets = draw(st.lists(st.sampled_from(pool), min_size=1, max_size=10, unique=True))
    X = build_complex(facets)
    top = draw(st.lists(st.floats(0.1, 10.0), min_size=X.count(X.dim), max_size=X.count(X.dim)))
    return X, top


@settings(max_examples=60, deadline=None)
@given(weighted_complexes())
def test_extension_matches_definition_and_is_balanced(data):
    X, top = data
    m = extend_top_weight(X, top)
    ref = brute_extension(X, top)
    for k in range(-1, X.dim + 1):
        assert np.allclose(m.on(k), ref[k], rtol=1e-12)
    assert verify_balanced(X, m) == []
    assert verify_weight_identities(X, m).ok
    for k in range(-1, X.dim):
        assert np.allclose(cofacet_sums(m, k), m.on(k), rtol=1e-12)


def test_probability_ratio(k4):
    X, m = k4
    w = to_probability_weight(X, m)
    for k in range(-1, 3):
        assert np.allclose(m.on(k) / w.on(k), factorial(3) / factorial(k + 1) * X.count(2))


@settings(max_examples=40, deadline=None)
@given(weighted_complexes())
def test_every_link_weight_is_balanced(data):
    X, top = data
    m = extend_top_weight(X, top)
    for k in range(-1, X.dim):
        for tau in X.simplices(k):
            w = m.link(tau)
            assert verify_balanced(w.complex, w) == []
