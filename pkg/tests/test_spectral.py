import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from hdxspec import SimplicialComplex, homogeneous_weight
from hdxspec.cochains import (
    LinearOperator,
    build_d,
    build_down_laplacian,
    build_full_laplacian,
    build_up_laplacian,
    identity,
)
from hdxspec.complex import betti_numbers
from hdxspec.errors import DegreeOutOfRange, DisconnectedLink, NotSelfAdjoint
from hdxspec.generators import complete_multipartite, cross_polytope, random_facet_weights, random_pure_complex
from hdxspec.spectral import (
    eig_selfadjoint,
    harmonic_dimension,
    jacobi_eigh,
    link_report,
    link_spectra,
    operator_norm,
    partite_top_value,
)
from hdxspec.weights import extend_top_weight


def test_jacobi_small_known():
    w, V = jacobi_eigh(np.array([[2.0, 1.0], [1.0, 2.0]]))
    assert np.allclose(w, [1, 3], atol=1e-14)
    assert np.allclose(V.T @ V, np.eye(2))


def test_jacobi_zero_and_trivial():
    w, V = jacobi_eigh(np.zeros((4, 4)))
    assert np.all(w == 0) and np.array_equal(V, np.eye(4))
    w, _ = jacobi_eigh(np.array([[5.0]]))
    assert w.tolist() == [5.0]
    with pytest.raises(ValueError):
        jacobi_eigh(np.zeros((2, 3)))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 24).flatmap(
    lambda n: arrays(np.float64, (n, n), elements=st.floats(-1e3, 1e3, allow_nan=False))))
def test_jacobi_matches_numpy_oracle(a):
    S = (a + a.T) / 2
    w, V = jacobi_eigh(S)
    ref = np.linalg.eigvalsh(S)
    scale = max(1.0, np.abs(S).max())
    assert np.allclose(w, ref, atol=1e-9 * scale)
    assert np.allclose(V.T @ V, np.eye(len(S)), atol=1e-9)
    assert np.allclose(S @ V, V * w, atol=1e-8 * scale)


def test_jacobi_larger_random():
    rng = np.random.default_rng(5)
    a = rng.standard_normal((80, 80))
    S = a + a.T
    w, V = jacobi_eigh(S)
    assert np.allclose(w, np.linalg.eigvalsh(S), atol=1e-10)
    assert np.abs(S @ V - V * w).max() < 1e-10


def test_closed_form_link_spectra(octahedron, triangle):
    X, m, _ = octahedron
    for v in X.simplices(0):
        r = link_report(X, m, v)
        assert np.allclose(r.eigenvalues, [0, 1, 1, 2], atol=1e-8)
    T, mt = triangle
    K3 = eig_selfadjoint(build_up_laplacian(T, mt, 0))
    assert np.allclose(K3.eigenvalues, [0, 1.5, 1.5], atol=1e-8)


def test_octahedron_and_k4_spectra(octahedron, k4):
    X, m, _ = octahedron
    r = eig_selfadjoint(build_up_laplacian(X, m, 0))
    assert np.allclose(r.eigenvalues, [0, 1, 1, 1, 1.5, 1.5], atol=1e-8)
    assert r.zero_multiplicity == 1
    K, mk = k4
    r = eig_selfadjoint(build_up_laplacian(K, mk, 0))
    assert np.allclose(r.eigenvalues, [0, 4 / 3, 4 / 3, 4 / 3], atol=1e-8)


def test_eigenvectors_are_weighted_orthonormal(octahedron):
    X, m, _ = octahedron
    for k in range(3):
        op = build_full_laplacian(X, m, k)
        r = eig_selfadjoint(op)
        V = r.eigenvectors
        assert np.allclose(V.T @ (m.on(k)[:, None] * V), np.eye(V.shape[1]), atol=1e-10)
        assert np.allclose(op.matrix @ V, V * r.eigenvalues, atol=1e-10)


def test_report_fields(octahedron):
    X, m, _ = octahedron
    r = eig_selfadjoint(build_up_laplacian(X, m, 0), partite_top_value(2))
    assert r.lambda_min_positive == pytest.approx(1)
    assert r.kappa_max == pytest.approx(1.5)
    assert r.lambda_nontrivial == pytest.approx(1) and r.kappa_nontrivial == pytest.approx(1)
    assert r.multiplicity(1.5) == 2
    assert r.eigenspace(1.5).shape == (6, 2)
    d = r.to_dict()
    assert d["top_value"] == 1.5 and len(d["eigenvalues"]) == 6


def test_non_self_adjoint_rejected(triangle):
    X, m = triangle
    bad = LinearOperator(np.array([[0, 1, 0], [0, 0, 0], [0, 0, 0]]), m, 0, 0, "shift")
    with pytest.raises(NotSelfAdjoint):
        eig_selfadjoint(bad)
    with pytest.raises(NotSelfAdjoint):
        eig_selfadjoint(build_d(X, m, 0))


def test_link_spectra(octahedron, k4):
    X, m, _ = octahedron
    ls = link_spectra(X, m, 0)
    assert len(ls.reports) == 6
    assert ls.lambda_min == pytest.approx(1) and ls.kappa_max == pytest.approx(2)
    K, mk = k4
    ls = link_spectra(K, mk, 0)
    assert ls.lambda_min == pytest.approx(1.5) and ls.kappa_max == pytest.approx(1.5)
    top = link_spectra(X, m, -1)
    assert list(top.reports) == [()]
    with pytest.raises(DegreeOutOfRange):
        link_spectra(X, m, 1)


def test_disconnected_link_raises():
    # two triangles sharing vertex 0: its link is two disjoint edges
    X = SimplicialComplex([(0, 1, 2), (0, 3, 4)])
    m = homogeneous_weight(X)
    with pytest.raises(DisconnectedLink):
        link_spectra(X, m, 0)
    ls = link_spectra(X, m, 0, allow_disconnected=True)
    assert (0,) in ls.disconnected


def test_operator_norm(octahedron):
    X, m, _ = octahedron
    assert operator_norm(build_up_laplacian(X, m, 0)) == pytest.approx(1.5)
    assert operator_norm(identity(X, m, 1)) == pytest.approx(1)


@pytest.mark.parametrize("seed", range(5))
def test_top_of_graph_laplacian_above_one(seed):
    X = random_pure_complex(8, 1, 0.5, seed) if seed else cross_polytope(1)[0]
    m = extend_top_weight(X, random_facet_weights(X, seed))
    top = operator_norm(build_up_laplacian(X, m, 0))
    assert 1 < top <= 2 + 1e-12


def test_harmonic_dimension_matches_betti(octahedron, triangle):
    X, m, _ = octahedron
    assert [harmonic_dimension(X, m, k) for k in range(3)] == [1, 0, 1]
    T, mt = triangle
    assert harmonic_dimension(T, mt, 1) == 0
    assert harmonic_dimension(X, m, 0, reduced=True) == 0
    with pytest.raises(DegreeOutOfRange):
        harmonic_dimension(X, m, 3)


def test_hodge_nonzero_spectra_agree():
    X, _ = complete_multipartite([2, 3, 2])
    m = extend_top_weight(X, random_facet_weights(X, 11))
    for k in range(1, 3):
        a = eig_selfadjoint(build_up_laplacian(X, m, k - 1)).eigenvalues
        b = eig_selfadjoint(build_down_laplacian(X, m, k)).eigenvalues
        assert np.allclose(a[a > 0], b[b > 0], atol=1e-8)
    assert [harmonic_dimension(X, m, k) for k in range(3)] == betti_numbers(X)
