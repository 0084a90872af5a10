from itertools import combinations
from pathlib import Path

import numpy as np
import pytest

from hdxspec import SimplicialComplex, homogeneous_weight
from hdxspec.generators import complete_complex, complete_multipartite, cross_polytope, single_simplex

FIXTURES = Path(__file__).parent / "fixtures"


def brute_canonical_inner(X, m, k, a, b):
    """Weighted inner product summed over every simplex, straight from the definition."""
    return sum(m(s) * a[i] * b[i] for i, s in enumerate(X.simplices(k)))


def dense_normalized_laplacian(adj: np.ndarray) -> np.ndarray:
    """I - D^{-1} A for a weighted adjacency matrix."""
    deg = adj.sum(axis=1)
    return np.eye(len(adj)) - adj / deg[:, None]


@pytest.fixture
def octahedron():
    X, P = cross_polytope(2)
    return X, homogeneous_weight(X), P


@pytest.fixture
def triangle():
    X = single_simplex(2)
    return X, homogeneous_weight(X)


@pytest.fixture
def k4():
    X = complete_complex(4, 2)
    return X, homogeneous_weight(X)


@pytest.fixture
def k333():
    X, P = complete_multipartite([3, 3, 3])
    return X, homogeneous_weight(X), P


@pytest.fixture
def path_graph():
    X = SimplicialComplex([(0, 1), (1, 2), (2, 3)])
    return X, homogeneous_weight(X)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def all_subsets(vertices, size):
    return list(combinations(sorted(vertices), size))


ACCEPTANCE_LINES: list[str] = []


def record_acceptance(number: int, ok: bool, detail: str) -> None:
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
