"""Finite pure simplicial complexes.

Simplices are plain tuples of vertex ids.  The canonical form of a simplex is
its strictly increasing tuple; an *ordered* simplex is any tuple of distinct
ids and carries the parity of the permutation that sorts it.  The empty
tuple is the unique (-1)-simplex.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    DegreeOutOfRange,
    EmptyInput,
    InvalidSimplex,
    MixedDimension,
    NotGalleryConnected,
    NotPartite,
    SimplexNotInComplex,
)

Simplex = tuple[int, ...]


def permutation_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq`` (distinct entries)."""
    sign = 1
    items = list(seq)
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if items[i] > items[j]:
                sign = -sign
    return sign


def canonical(vertices: Iterable[int]) -> tuple[Simplex, int]:
    """Return ``(sorted simplex, parity)`` for an ordered simplex."""
    seq = tuple(vertices)
    for v in seq:
        if isinstance(v, bool) or not isinstance(v, (int, np.integer)) or v < 0:
            raise InvalidSimplex(f"vertex ids must be non-negative integers, got {v!r}")
    if len(set(seq)) != len(seq):
        raise InvalidSimplex(f"repeated vertex in {seq}")
    return tuple(sorted(int(v) for v in seq)), permutation_sign(seq)


def as_simplex(vertices: Iterable[int]) -> Simplex:
    return canonical(vertices)[0]


class SimplicialComplex:
    """Downward closure of a list of equal-size facets.

    The complex is immutable.  ``simplices(k)`` lists the k-simplices in
    lexicographic order; positions in that list index cochain coordinates.
    """

    def __init__(self, facets: Iterable[Iterable[int]]):
        cleaned = {as_simplex(f) for f in facets}
        if not cleaned:
            raise EmptyInput("at least one facet is required")
        sizes = {len(f) for f in cleaned}
        if len(sizes) != 1:
            raise MixedDimension(f"facets have differing sizes {sorted(sizes)}")
        size = sizes.pop()
        if size < 1:
            raise EmptyInput("facets must contain at least one vertex")
        self.dim = size - 1

        levels: list[set[Simplex]] = [set() for _ in range(size + 1)]
        for f in cleaned:
            for r in range(size + 1):
                levels[r].update(combinations(f, r))
        self._simplices = {r - 1: tuple(sorted(levels[r])) for r in range(size + 1)}
        self._index = {k: {s: i for i, s in enumerate(ss)} for k, ss in self._simplices.items()}
        self._links: dict[Simplex, SimplicialComplex] = {}
        self._incidence: dict[int, np.ndarray] = {}
        # scratch space for index maps built by other modules
        self.memo: dict = {}

    # -- queries ---------------------------------------------------------
    @property
    def facets(self) -> tuple[Simplex, ...]:
        return self._simplices[self.dim]

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(s[0] for s in self._simplices[0])

    def simplices(self, k: int) -> tuple[Simplex, ...]:
        if k < -1 or k > self.dim:
            return ()
        return self._simplices[k]

    def count(self, k: int) -> int:
        return len(self.simplices(k))

    def f_vector(self) -> tuple[int, ...]:
        """Simplex counts for dimensions 0..n."""
        return tuple(self.count(k) for k in range(self.dim + 1))

    def index_of(self, simplex: Iterable[int]) -> int:
        s = as_simplex(simplex)
        try:
            return self._index[len(s) - 1][s]
        except KeyError:
            raise SimplexNotInComplex(f"{s} is not a simplex of the complex") from None

    def index(self, k: int) -> Mapping[Simplex, int]:
        return self._index.get(k, {})

    def __contains__(self, simplex) -> bool:
        try:
            s = as_simplex(simplex)
        except InvalidSimplex:
            return False
        return s in self._index.get(len(s) - 1, {})

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and self.facets == other.facets

    def __hash__(self):
        return hash(self.facets)

    def __repr__(self):
        return f"SimplicialComplex(dim={self.dim}, f_vector={self.f_vector()})"

    # -- derived complexes -----------------------------------------------
    def link(self, tau: Iterable[int]) -> SimplicialComplex:
        """Link of ``tau``; vertex ids are kept, so the embedding is the identity."""
        t = as_simplex(tau)
        if t not in self:
            raise SimplexNotInComplex(f"{t} is not a simplex of the complex")
        if len(t) - 1 >= self.dim:
            raise DegreeOutOfRange(f"the link of a facet {t} is empty")
        cached = self._links.get(t)
        if cached is None:
            if not t:
                cached = self
            else:
                ts = set(t)
                cached = SimplicialComplex(
                    tuple(v for v in f if v not in ts) for f in self.facets if ts.issubset(f)
                )
            self._links[t] = cached
        return cached

    def skeleton(self, k: int) -> SimplicialComplex:
        if not 0 <= k <= self.dim:
            raise DegreeOutOfRange(f"skeleton dimension {k} outside [0, {self.dim}]")
        if k == self.dim:
            return self
        return SimplicialComplex(self.simplices(k))

    def incidence(self, k: int) -> np.ndarray:
        """Integer matrix of the coboundary C^k -> C^{k+1} in canonical bases.

        Entry ``[sigma, sigma minus its i-th vertex]`` is ``(-1)**i``.
        """
        if not -1 <= k <= self.dim - 1:
            raise DegreeOutOfRange(f"coboundary degree {k} outside [-1, {self.dim - 1}]")
        mat = self._incidence.get(k)
        if mat is None:
            rows = self.simplices(k + 1)
            cols = self._index[k]
            mat = np.zeros((len(rows), len(cols)), dtype=np.int64)
            for r, sigma in enumerate(rows):
                for i in range(len(sigma)):
                    mat[r, cols[sigma[:i] + sigma[i + 1:]]] = -1 if i % 2 else 1
            mat.setflags(write=False)
            self._incidence[k] = mat
        return mat

    def neighbours(self) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {v: set() for v in self.vertices}
        for a, b in self.simplices(1):
            adj[a].add(b)
            adj[b].add(a)
        return adj


def build_complex(facets: Iterable[Iterable[int]]) -> SimplicialComplex:
    return SimplicialComplex(facets)


def link(X: SimplicialComplex, tau: Iterable[int]) -> SimplicialComplex:
    return X.link(tau)


def skeleton(X: SimplicialComplex, k: int) -> SimplicialComplex:
    return X.skeleton(k)


# -- connectivity ---------------------------------------------------------

def _bfs_components(nodes: Sequence, adjacency: Mapping) -> list[list]:
    seen = set()
    comps = []
    for start in nodes:
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in adjacency[u]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        comps.append(comp)
    return comps


def is_graph_connected(X: SimplicialComplex) -> bool:
    """Connectivity of the 1-skeleton."""
    return len(_bfs_components(X.vertices, X.neighbours())) == 1


@dataclass
class ConnectivityReport:
    links: dict[Simplex, bool] = field(default_factory=dict)

    @property
    def connected(self) -> bool:
        return all(self.links.values())

    @property
    def failures(self) -> list[Simplex]:
        return [t for t, ok in self.links.items() if not ok]

    def __bool__(self):
        return self.connected


def check_all_links_connected(X: SimplicialComplex) -> ConnectivityReport:
    """Connectivity of the 1-skeleton of every link of dimension >= 1, X itself included."""
    report = ConnectivityReport()
    for k in range(-1, X.dim - 1):
        for tau in X.simplices(k):
            report.links[tau] = is_graph_connected(X.link(tau))
    return report


def _facet_graph(X: SimplicialComplex) -> dict[Simplex, list[Simplex]]:
    by_ridge: dict[Simplex, list[Simplex]] = {}
    for f in X.facets:
        for i in range(len(f)):
            by_ridge.setdefault(f[:i] + f[i + 1:], []).append(f)
    adj: dict[Simplex, list[Simplex]] = {f: [] for f in X.facets}
    for group in by_ridge.values():
        for a in group:
            adj[a].extend(b for b in group if b != a)
    return adj


@dataclass
class GalleryReport:
    connected: bool
    components: list[list[Simplex]]

    def __bool__(self):
        return self.connected


def is_gallery_connected(X: SimplicialComplex) -> GalleryReport:
    """Every pair of vertices joined by facets meeting along codimension-1 faces.

    ``components`` holds the classes of the facet-adjacency graph, each in BFS
    order; :func:`find_gallery` extracts an explicit witness.
    """
    comps = _bfs_components(X.facets, _facet_graph(X))
    vertex_sets = [set().union(*c) for c in comps]
    ok = all(
        any(u in vs and v in vs for vs in vertex_sets)
        for u, v in combinations(X.vertices, 2)
    )
    return GalleryReport(ok, comps)


def find_gallery(X: SimplicialComplex, u: int, v: int) -> list[Simplex] | None:
    """Shortest gallery from a facet containing ``u`` to one containing ``v``."""
    adj = _facet_graph(X)
    starts = [f for f in X.facets if u in f]
    parent: dict[Simplex, Simplex | None] = {f: None for f in starts}
    queue = deque(starts)
    while queue:
        f = queue.popleft()
        if v in f:
            path = [f]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])
            return path[::-1]
        for g in adj[f]:
            if g not in parent:
                parent[g] = f
                queue.append(g)
    return None


# -- partite structure ----------------------------------------------------

@dataclass(frozen=True)
class Partition:
    """Assignment of vertices to sides ``0..num_sides-1``."""

    sides: Mapping[int, int]
    num_sides: int

    def side(self, v: int) -> int:
        return self.sides[v]

    def members(self, j: int) -> tuple[int, ...]:
        return tuple(sorted(v for v, s in self.sides.items() if s == j))

    def blocks(self) -> list[tuple[int, ...]]:
        return [self.members(j) for j in range(self.num_sides)]

    def restrict(self, vertices: Iterable[int]) -> Partition:
        return Partition({v: self.sides[v] for v in vertices}, self.num_sides)

    def occupied(self) -> set[int]:
        return set(self.sides.values())

    def normalized(self) -> frozenset[frozenset[int]]:
        """Label-free form, for comparing partitions up to relabeling."""
        return frozenset(frozenset(b) for b in self.blocks() if b)

    def validate(self, X: SimplicialComplex) -> None:
        missing = set(X.vertices) - set(self.sides)
        if missing:
            raise NotPartite(f"vertices without a side: {sorted(missing)}")
        for v, s in self.sides.items():
            if not 0 <= s < self.num_sides:
                raise NotPartite(f"side {s} of vertex {v} outside [0, {self.num_sides})")
        for f in X.facets:
            if len({self.sides[v] for v in f}) != len(f):
                raise NotPartite(f"facet {f} has two vertices on the same side")


def detect_partition(X: SimplicialComplex) -> Partition:
    """Find sides S_0..S_n by propagating a colouring across shared ridges."""
    adj = _facet_graph(X)
    first = X.facets[0]
    colour = {v: i for i, v in enumerate(first)}
    seen = {first}
    queue = deque([first])
    while queue:
        f = queue.popleft()
        for g in adj[f]:
            if g in seen:
                continue
            (new,) = set(g) - set(f)
            (old,) = set(f) - set(g)
            want = colour[old]
            if colour.setdefault(new, want) != want:
                raise NotPartite(f"vertex {new} needs sides {colour[new]} and {want}")
            seen.add(g)
            queue.append(g)
    if len(seen) != len(X.facets):
        raise NotGalleryConnected("facet-adjacency graph is disconnected; side propagation is ambiguous")
    partition = Partition(colour, X.dim + 1)
    partition.validate(X)
    return partition


# -- homology ranks (oracle for harmonic dimensions) ----------------------

def betti_numbers(X: SimplicialComplex, reduced: bool = False) -> list[int]:
    """Real Betti numbers b_0..b_n from ranks of the integer coboundaries."""
    ranks = {k: int(np.linalg.matrix_rank(X.incidence(k))) if X.count(k + 1) else 0
             for k in range(-1, X.dim)}
    ranks[X.dim] = 0
    if not reduced:
        ranks[-1] = 0
    return [X.count(k) - ranks[k] - ranks[k - 1] for k in range(X.dim + 1)]
