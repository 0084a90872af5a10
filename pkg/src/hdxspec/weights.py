"""Weight functions on simplicial complexes.

A weight is a strictly positive number on every simplex, the empty simplex
included.  It is *balanced* when every simplex weighs exactly as much as the
sum of its cofacets; any choice of facet weights extends uniquely to a
balanced weight, with ``m(tau) = (n-k)! * sum of facet weights over facets
containing tau`` for a k-simplex ``tau``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import factorial
from typing import Iterable, Mapping, Sequence

import numpy as np

from .complex import Simplex, SimplicialComplex, as_simplex
from .config import BALANCE_RTOL
from .errors import MissingFacet, NonPositiveWeight, SimplexNotInComplex


class WeightFunction:
    """Positive weights on all simplices of ``complex``, stored per dimension.

    ``on(k)`` is aligned with ``complex.simplices(k)``.
    """

    def __init__(self, complex: SimplicialComplex, values: Mapping[int, Sequence[float]]):
        self.complex = complex
        self._values: dict[int, np.ndarray] = {}
        for k in range(-1, complex.dim + 1):
            arr = np.array(values[k], dtype=float).reshape(-1)
            if arr.shape != (complex.count(k),):
                raise ValueError(f"expected {complex.count(k)} weights in dimension {k}, got {arr.size}")
            if not np.all(np.isfinite(arr)) or np.any(arr <= 0):
                raise NonPositiveWeight(f"weights in dimension {k} must be finite and > 0")
            arr.setflags(write=False)
            self._values[k] = arr
        self._links: dict[Simplex, WeightFunction] = {}

    def on(self, k: int) -> np.ndarray:
        return self._values[k]

    def __call__(self, simplex: Iterable[int]) -> float:
        s = as_simplex(simplex)
        return float(self._values[len(s) - 1][self.complex.index_of(s)])

    __getitem__ = __call__

    @property
    def facet_values(self) -> np.ndarray:
        return self._values[self.complex.dim]

    def link(self, tau: Iterable[int]) -> WeightFunction:
        """The induced weight ``sigma -> m(tau + sigma)`` on the link of ``tau``."""
        t = as_simplex(tau)
        cached = self._links.get(t)
        if cached is None:
            if not t:
                cached = self
            else:
                lk = self.complex.link(t)
                j = len(t) - 1
                vals = {}
                for k in range(-1, lk.dim + 1):
                    idx = self.complex.index(j + k + 1)
                    src = self._values[j + k + 1]
                    vals[k] = [src[idx[tuple(sorted(t + s))]] for s in lk.simplices(k)]
                cached = WeightFunction(lk, vals)
            self._links[t] = cached
        return cached

    def __repr__(self):
        return f"WeightFunction({self.complex!r}, total={self._values[-1][0]:.6g})"


def _facet_array(X: SimplicialComplex, top_values) -> np.ndarray:
    if isinstance(top_values, Mapping):
        given = {as_simplex(f): float(w) for f, w in top_values.items()}
        missing = [f for f in X.facets if f not in given]
        if missing:
            raise MissingFacet(f"no weight for facets {missing[:5]}")
        extra = set(given) - set(X.facets)
        if extra:
            raise SimplexNotInComplex(f"weights given for non-facets {sorted(extra)[:5]}")
        arr = np.array([given[f] for f in X.facets])
    else:
        arr = np.asarray(top_values, dtype=float).reshape(-1)
        if arr.size != X.count(X.dim):
            raise MissingFacet(f"expected {X.count(X.dim)} facet weights, got {arr.size}")
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0):
        raise NonPositiveWeight("facet weights must be finite and > 0")
    return arr


def extend_top_weight(X: SimplicialComplex, top_values) -> WeightFunction:
    """Balanced extension of facet weights (mapping or sequence aligned with ``X.facets``)."""
    top = _facet_array(X, top_values)
    n = X.dim
    sums = {k: np.zeros(X.count(k)) for k in range(-1, n + 1)}
    for f, w in zip(X.facets, top):
        for k in range(-1, n + 1):
            idx = X.index(k)
            for tau in combinations(f, k + 1):
                sums[k][idx[tau]] += w
    return WeightFunction(X, {k: factorial(n - k) * sums[k] for k in sums})


def homogeneous_weight(X: SimplicialComplex) -> WeightFunction:
    return extend_top_weight(X, np.ones(X.count(X.dim)))


@dataclass(frozen=True)
class BalanceViolation:
    simplex: Simplex
    weight: float
    cofacet_sum: float


def cofacet_sums(m: WeightFunction, k: int) -> np.ndarray:
    X = m.complex
    return np.abs(X.incidence(k)).T @ m.on(k + 1)


def verify_balanced(X: SimplicialComplex, m: WeightFunction, rtol: float = BALANCE_RTOL) -> list[BalanceViolation]:
    out = []
    for k in range(-1, X.dim):
        got = cofacet_sums(m, k)
        want = m.on(k)
        bad = np.abs(got - want) > rtol * np.maximum(np.abs(want), np.abs(got))
        out.extend(
            BalanceViolation(X.simplices(k)[i], float(want[i]), float(got[i]))
            for i in np.flatnonzero(bad)
        )
    return out


@dataclass
class WeightIdentityReport:
    checked: int = 0
    max_residual: float = 0.0
    failures: list[tuple[int, int, Simplex]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_weight_identities(X: SimplicialComplex, m: WeightFunction, rtol: float = BALANCE_RTOL) -> WeightIdentityReport:
    """Check ``m(tau) / (l-k)! == sum of m over l-simplices containing tau`` for all k < l.

    The case ``l = n`` is the facet-sum formula; ``l = k+1`` is balance itself.
    """
    report = WeightIdentityReport()
    for l in range(0, X.dim + 1):
        ml = m.on(l)
        for k in range(-1, l):
            idx = X.index(k)
            acc = np.zeros(X.count(k))
            for sigma, w in zip(X.simplices(l), ml):
                for tau in combinations(sigma, k + 1):
                    acc[idx[tau]] += w
            want = m.on(k) / factorial(l - k)
            res = np.abs(acc - want) / np.maximum(np.abs(want), np.abs(acc))
            report.checked += res.size
            report.max_residual = max(report.max_residual, float(res.max(initial=0.0)))
            report.failures.extend((k, l, X.simplices(k)[i]) for i in np.flatnonzero(res > rtol))
    return report


def link_weight(X: SimplicialComplex, m: WeightFunction, tau: Iterable[int]) -> WeightFunction:
    if m.complex is not X and m.complex != X:
        raise ValueError("weight belongs to a different complex")
    return m.link(tau)


def to_probability_weight(X: SimplicialComplex, m: WeightFunction) -> WeightFunction:
    """Per-dimension probability normalisation of the homogeneous weight.

    Returns ``w(tau) = m(tau) (k+1)! / ((n+1)! |X^(n)|)``, which sums to one
    over each dimension and is not balanced.
    """
    if not np.allclose(m.facet_values, 1.0, rtol=0, atol=0):
        raise ValueError("probability weights are defined from the homogeneous weight")
    n = X.dim
    total = factorial(n + 1) * X.count(n)
    return WeightFunction(X, {k: m.on(k) * factorial(k + 1) / total for k in range(-1, n + 1)})
