"""Test complexes: closed-form families and seeded random ones."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Sequence

import numpy as np

from .complex import Partition, SimplicialComplex, check_all_links_connected
from .errors import BadParams, Rejected

FAMILIES = ("single_simplex", "complete", "complete_multipartite", "cross_polytope", "random_pure",
            "random_partite")


def single_simplex(n: int) -> SimplicialComplex:
    if n < 1:
        raise BadParams(f"dimension must be >= 1, got {n}")
    return SimplicialComplex([range(n + 1)])


def complete_complex(N: int, n: int) -> SimplicialComplex:
    """All (n+1)-subsets of N vertices."""
    if n < 0 or N < n + 1:
        raise BadParams(f"need N >= n + 1 >= 1, got N={N}, n={n}")
    return SimplicialComplex(combinations(range(N), n + 1))


def _parts(sizes: Sequence[int]) -> list[range]:
    if len(sizes) < 2 or any(int(s) < 1 for s in sizes):
        raise BadParams(f"need at least two parts, all non-empty, got {list(sizes)}")
    parts, start = [], 0
    for s in sizes:
        parts.append(range(start, start + int(s)))
        start += int(s)
    return parts


def _partition_of(parts: Sequence[range]) -> Partition:
    return Partition({v: j for j, part in enumerate(parts) for v in part}, len(parts))


def complete_multipartite(sizes: Sequence[int]) -> tuple[SimplicialComplex, Partition]:
    """Every transversal of the parts is a facet; part j holds consecutive ids."""
    parts = _parts(sizes)
    return SimplicialComplex(product(*parts)), _partition_of(parts)


def cross_polytope(n: int) -> tuple[SimplicialComplex, Partition]:
    if n < 1:
        raise BadParams(f"dimension must be >= 1, got {n}")
    return complete_multipartite([2] * (n + 1))


def _relabel(facets: list[tuple[int, ...]]) -> tuple[list[tuple[int, ...]], dict[int, int]]:
    used = sorted({v for f in facets for v in f})
    new = {v: i for i, v in enumerate(used)}
    return [tuple(new[v] for v in f) for f in facets], new


def _accept(facets: list[tuple[int, ...]]) -> SimplicialComplex:
    if not facets:
        raise Rejected("no facet survived")
    X = SimplicialComplex(facets)
    conn = check_all_links_connected(X)
    if not conn:
        raise Rejected(f"disconnected link 1-skeletons at {conn.failures[:3]}")
    return X


def _check_p(p: float) -> None:
    if not 0 < p <= 1:
        raise BadParams(f"probability must lie in (0, 1], got {p}")


def random_pure_complex(N: int, n: int, p: float, seed: int) -> SimplicialComplex:
    """Keep each (n+1)-subset of N vertices independently with probability p.

    Subsets are visited in lexicographic order with one draw each, so a seed
    fixes the facet list.  Unused vertices are dropped and ids compacted.
    Raises :class:`Rejected` unless every link has a connected 1-skeleton.
    """
    _check_p(p)
    if n < 1 or N < n + 1:
        raise BadParams(f"need N >= n + 1 >= 2, got N={N}, n={n}")
    rng = np.random.default_rng(seed)
    kept = [f for f in combinations(range(N), n + 1) if rng.random() < p]
    facets, _ = _relabel(kept)
    return _accept(facets)


def random_partite_complex(sizes: Sequence[int], p: float, seed: int) -> tuple[SimplicialComplex, Partition]:
    """Keep each transversal of the parts independently with probability p."""
    _check_p(p)
    parts = _parts(sizes)
    rng = np.random.default_rng(seed)
    kept = [f for f in product(*parts) if rng.random() < p]
    facets, new = _relabel(kept)
    X = _accept(facets)
    sides = _partition_of(parts).sides
    return X, Partition({new[v]: sides[v] for v in new}, len(parts))


def random_facet_weights(X: SimplicialComplex, seed: int, low: float = 0.5, high: float = 2.0) -> np.ndarray:
    """Uniform positive facet weights aligned with ``X.facets``."""
    if not 0 < low <= high:
        raise BadParams(f"need 0 < low <= high, got {low}, {high}")
    return np.random.default_rng(seed).uniform(low, high, X.count(X.dim))


@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    n: int | None = None
    N: int | None = None
    sizes: tuple[int, ...] | None = None
    p: float | None = None
    seed: int = 0

    def _need(self, *names):
        missing = [k for k in names if getattr(self, k) is None]
        if missing:
            raise BadParams(f"family {self.family!r} needs {', '.join(missing)}")

    def build(self) -> tuple[SimplicialComplex, Partition | None]:
        f = self.family
        if f == "single_simplex":
            self._need("n")
            return single_simplex(self.n), None
        if f == "complete":
            self._need("N", "n")
            return complete_complex(self.N, self.n), None
        if f == "complete_multipartite":
            self._need("sizes")
            return complete_multipartite(self.sizes)
        if f == "cross_polytope":
            self._need("n")
            return cross_polytope(self.n)
        if f == "random_pure":
            self._need("N", "n", "p")
            return random_pure_complex(self.N, self.n, self.p, self.seed), None
        if f == "random_partite":
            self._need("sizes", "p")
            return random_partite_complex(self.sizes, self.p, self.seed)
        raise BadParams(f"unknown family {f!r}; choose from {', '.join(FAMILIES)}")

    def to_dict(self) -> dict:
        out = {"family": self.family}
        for k in ("n", "N", "sizes", "p"):
            v = getattr(self, k)
            if v is not None:
                out[k] = list(v) if k == "sizes" else v
        if self.family.startswith("random"):
            out["seed"] = self.seed
        return out


def generate(spec: GeneratorSpec) -> tuple[SimplicialComplex, Partition | None]:
    return spec.build()
