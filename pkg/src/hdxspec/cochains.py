"""Cochains, the weighted inner product, and the operators d, delta and the Laplacians.

A k-cochain is stored as one real per canonical (sorted) k-simplex.  With that
basis the weighted inner product is ``<phi, psi> = sum_tau m(tau) phi(tau) psi(tau)``
and the codifferential is ``delta = W_k^{-1} D^T W_{k+1}`` where ``D`` is the
integer incidence matrix and ``W_k`` is the diagonal of weights.
"""
from __future__ import annotations

from dataclasses import dataclass
from numbers import Real
from typing import Iterable

import numpy as np

from .complex import Partition, SimplicialComplex, canonical
from .errors import DegreeMismatch, DegreeOutOfRange, DegreeTooHigh, NotPartite
from .weights import WeightFunction


@dataclass
class Cochain:
    """Antisymmetric function on ordered ``degree``-simplices, stored on canonical ones."""

    weight: WeightFunction
    degree: int
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float).reshape(-1)
        expected = self.complex.count(self.degree)
        if self.values.shape != (expected,):
            raise DegreeMismatch(f"degree {self.degree} cochain needs {expected} values, got {self.values.size}")

    @property
    def complex(self) -> SimplicialComplex:
        return self.weight.complex

    @classmethod
    def zeros(cls, m: WeightFunction, k: int) -> Cochain:
        return cls(m, k, np.zeros(m.complex.count(k)))

    @classmethod
    def constant(cls, m: WeightFunction, k: int, c: float = 1.0) -> Cochain:
        return cls(m, k, np.full(m.complex.count(k), float(c)))

    @classmethod
    def indicator(cls, m: WeightFunction, simplex: Iterable[int]) -> Cochain:
        s, _ = canonical(simplex)
        out = cls.zeros(m, len(s) - 1)
        out.values[m.complex.index_of(s)] = 1.0
        return out

    @classmethod
    def random(cls, m: WeightFunction, k: int, rng: np.random.Generator) -> Cochain:
        return cls(m, k, rng.standard_normal(m.complex.count(k)))

    def evaluate(self, ordered: Iterable[int]) -> float:
        s, sign = canonical(ordered)
        if len(s) - 1 != self.degree:
            raise DegreeMismatch(f"cannot evaluate a degree {self.degree} cochain on {s}")
        return sign * float(self.values[self.complex.index_of(s)])

    __call__ = evaluate

    def inner(self, other: Cochain) -> float:
        return inner_product(self, other)

    def norm(self) -> float:
        return float(np.sqrt(inner_product(self, self)))

    def _like(self, values) -> Cochain:
        return Cochain(self.weight, self.degree, values)

    def __add__(self, other: Cochain) -> Cochain:
        _check_same(self, other)
        return self._like(self.values + other.values)

    def __sub__(self, other: Cochain) -> Cochain:
        _check_same(self, other)
        return self._like(self.values - other.values)

    def __mul__(self, c: float) -> Cochain:
        return self._like(float(c) * self.values)

    __rmul__ = __mul__

    def __neg__(self) -> Cochain:
        return self._like(-self.values)


def _check_same(a: Cochain, b: Cochain) -> None:
    if a.degree != b.degree:
        raise DegreeMismatch(f"degrees {a.degree} and {b.degree} differ")
    if a.weight is not b.weight:
        raise DegreeMismatch("cochains live on different weighted complexes")


def inner_product(phi: Cochain, psi: Cochain) -> float:
    _check_same(phi, psi)
    return float(np.dot(phi.weight.on(phi.degree) * phi.values, psi.values))


@dataclass
class LinearOperator:
    """Dense matrix between cochain spaces of one weighted complex."""

    matrix: np.ndarray
    weight: WeightFunction
    domain: int
    codomain: int
    name: str = ""

    def __post_init__(self):
        X = self.weight.complex
        shape = (X.count(self.codomain), X.count(self.domain))
        self.matrix = np.asarray(self.matrix, dtype=float)
        if self.matrix.shape != shape:
            raise DegreeMismatch(f"{self.name or 'operator'} has shape {self.matrix.shape}, expected {shape}")

    @property
    def complex(self) -> SimplicialComplex:
        return self.weight.complex

    def __call__(self, phi: Cochain) -> Cochain:
        if phi.degree != self.domain or phi.weight is not self.weight:
            raise DegreeMismatch(f"{self.name or 'operator'} acts on degree {self.domain}, got {phi.degree}")
        return Cochain(self.weight, self.codomain, self.matrix @ phi.values)

    def __matmul__(self, other):
        if isinstance(other, Cochain):
            return self(other)
        if isinstance(other, LinearOperator):
            if other.codomain != self.domain or other.weight is not self.weight:
                raise DegreeMismatch(f"cannot compose {self.name} after {other.name}")
            return LinearOperator(self.matrix @ other.matrix, self.weight, other.domain, self.codomain,
                                  f"{self.name}{other.name}")
        return NotImplemented

    def _combine(self, other: LinearOperator, sign: float) -> LinearOperator:
        if (other.domain, other.codomain) != (self.domain, self.codomain) or other.weight is not self.weight:
            raise DegreeMismatch(f"cannot add {self.name} and {other.name}")
        op = "+" if sign > 0 else "-"
        return LinearOperator(self.matrix + sign * other.matrix, self.weight, self.domain, self.codomain,
                              f"({self.name} {op} {other.name})")

    def __add__(self, other):
        return self._combine(other, 1.0)

    def __sub__(self, other):
        return self._combine(other, -1.0)

    def __mul__(self, c):
        if not isinstance(c, Real):
            return NotImplemented
        return LinearOperator(float(c) * self.matrix, self.weight, self.domain, self.codomain,
                              f"{float(c):.6g}*{self.name}")

    __rmul__ = __mul__

    def __neg__(self):
        return -1.0 * self

    def adjoint(self) -> LinearOperator:
        """Adjoint for the weighted inner products: ``W_dom^{-1} M^T W_cod``."""
        w_dom = self.weight.on(self.domain)
        w_cod = self.weight.on(self.codomain)
        return LinearOperator((self.matrix.T * w_cod) / w_dom[:, None], self.weight, self.codomain,
                              self.domain, f"{self.name}*")

    def self_adjoint_defect(self) -> float:
        """Largest entry of ``W M - (W M)^T`` relative to the largest entry of ``W M``."""
        if self.domain != self.codomain:
            return float("inf")
        wm = self.matrix * self.weight.on(self.domain)[:, None]
        scale = max(float(np.abs(wm).max(initial=0.0)), np.finfo(float).tiny)
        return float(np.abs(wm - wm.T).max(initial=0.0)) / scale


# -- assembly ---------------------------------------------------------------

def _check_weight(X: SimplicialComplex, m: WeightFunction) -> None:
    if m.complex is not X and m.complex != X:
        raise ValueError("weight belongs to a different complex")


def _coboundary_range(X: SimplicialComplex, k: int) -> None:
    if not -1 <= k <= X.dim - 1:
        raise DegreeOutOfRange(f"degree {k} outside [-1, {X.dim - 1}]")


def identity(X: SimplicialComplex, m: WeightFunction, k: int) -> LinearOperator:
    if not -1 <= k <= X.dim:
        raise DegreeOutOfRange(f"degree {k} outside [-1, {X.dim}]")
    return LinearOperator(np.eye(X.count(k)), m, k, k, "I")


def build_d(X: SimplicialComplex, m: WeightFunction, k: int) -> LinearOperator:
    _check_weight(X, m)
    _coboundary_range(X, k)
    return LinearOperator(X.incidence(k).astype(float), m, k, k + 1, f"d{k}")


def build_delta(X: SimplicialComplex, m: WeightFunction, k: int) -> LinearOperator:
    """Codifferential C^{k+1} -> C^k, the weighted adjoint of ``d_k``."""
    op = build_d(X, m, k).adjoint()
    op.name = f"delta{k}"
    return op


def build_up_laplacian(X: SimplicialComplex, m: WeightFunction, k: int) -> LinearOperator:
    op = build_delta(X, m, k) @ build_d(X, m, k)
    op.name = f"up{k}"
    return op


def build_down_laplacian(X: SimplicialComplex, m: WeightFunction, k: int) -> LinearOperator:
    if not 0 <= k <= X.dim:
        raise DegreeOutOfRange(f"down Laplacian degree {k} outside [0, {X.dim}]")
    op = build_d(X, m, k - 1) @ build_delta(X, m, k - 1)
    op.name = f"down{k}"
    return op


def build_full_laplacian(X: SimplicialComplex, m: WeightFunction, k: int) -> LinearOperator:
    """``up_k + down_k``; at k = n only the down part exists."""
    down = build_down_laplacian(X, m, k)
    op = down if k == X.dim else build_up_laplacian(X, m, k) + down
    op.name = f"full{k}"
    return op


def _side_mask(X: SimplicialComplex, partition: Partition, k: int, j: int) -> np.ndarray:
    key = ("side_mask", k, j, tuple(sorted(partition.sides.items())))
    mask = X.memo.get(key)
    if mask is None:
        mask = np.zeros((X.count(k + 1), X.count(k)))
        cols = X.index(k)
        for r, sigma in enumerate(X.simplices(k + 1)):
            for i, v in enumerate(sigma):
                if partition.side(v) == j:
                    mask[r, cols[sigma[:i] + sigma[i + 1:]]] = 1.0
        X.memo[key] = mask
    return mask


def _check_partition(X: SimplicialComplex, partition: Partition, j: int) -> None:
    if partition is None:
        raise NotPartite("a partition is required")
    partition.validate(X)
    if not 0 <= j < partition.num_sides:
        raise DegreeOutOfRange(f"side {j} outside [0, {partition.num_sides})")


def build_side_differential(X: SimplicialComplex, m: WeightFunction, partition: Partition,
                            k: int, j: int) -> LinearOperator:
    """The part of ``d_k`` that inserts a vertex of side ``j``."""
    _check_weight(X, m)
    _coboundary_range(X, k)
    _check_partition(X, partition, j)
    return LinearOperator(X.incidence(k) * _side_mask(X, partition, k, j), m, k, k + 1, f"d{k},{j}")


def build_side_codifferential(X, m, partition, k, j) -> LinearOperator:
    op = build_side_differential(X, m, partition, k, j).adjoint()
    op.name = f"delta{k},{j}"
    return op


def build_side_down_laplacian(X, m, partition, k, j) -> LinearOperator:
    if not 0 <= k <= X.dim:
        raise DegreeOutOfRange(f"down Laplacian degree {k} outside [0, {X.dim}]")
    op = build_side_differential(X, m, partition, k - 1, j) @ build_side_codifferential(X, m, partition, k - 1, j)
    op.name = f"down{k},{j}"
    return op


def side_down_sum(X, m, partition, k) -> LinearOperator:
    """``sum_j down_{(k,j)}`` over all sides."""
    mats = [build_side_down_laplacian(X, m, partition, k, j).matrix for j in range(partition.num_sides)]
    return LinearOperator(np.sum(mats, axis=0), m, k, k, f"sum_j down{k},j")


# -- links ------------------------------------------------------------------

def _localization_map(X: SimplicialComplex, tau: tuple[int, ...], k: int):
    """Positions in C^k(X) and signs realising sigma -> (tau sigma) on the link."""
    key = ("localize", tau, k)
    cached = X.memo.get(key)
    if cached is None:
        lk = X.link(tau)
        idx = X.index(k)
        pos, sign = [], []
        for sigma in lk.simplices(k - len(tau)):
            s, sg = canonical(tau + sigma)
            pos.append(idx[s])
            sign.append(sg)
        cached = (np.array(pos, dtype=np.int64), np.array(sign, dtype=float))
        X.memo[key] = cached
    return cached


def localize(phi: Cochain, tau: Iterable[int]) -> Cochain:
    """``phi_tau(sigma) = phi(tau sigma)`` as a cochain of degree ``k - |tau|`` on the link."""
    X = phi.complex
    ordered = tuple(tau)
    t, parity = canonical(ordered)
    X.index_of(t)
    if len(t) - 1 > phi.degree:
        raise DegreeOutOfRange(f"cannot localize degree {phi.degree} at a {len(t) - 1}-simplex")
    if len(t) - 1 == X.dim:
        raise DegreeOutOfRange("the link of a facet is empty")
    pos, sign = _localization_map(X, t, phi.degree)
    return Cochain(phi.weight.link(t), phi.degree - len(t), parity * sign * phi.values[pos])


def _restriction_map(X: SimplicialComplex, tau: tuple[int, ...], k: int) -> np.ndarray:
    key = ("restrict", tau, k)
    cached = X.memo.get(key)
    if cached is None:
        idx = X.index(k)
        cached = np.array([idx[s] for s in X.link(tau).simplices(k)], dtype=np.int64)
        X.memo[key] = cached
    return cached


def restrict(phi: Cochain, tau: Iterable[int]) -> Cochain:
    """Copy of ``phi`` on the simplices of the link of ``tau``, same degree."""
    X = phi.complex
    t, _ = canonical(tau)
    X.index_of(t)
    if phi.degree + len(t) > X.dim:
        raise DegreeTooHigh(f"degree {phi.degree} does not fit in the link of {t}")
    return Cochain(phi.weight.link(t), phi.degree, phi.values[_restriction_map(X, t, phi.degree)])


# -- partite 0-cochains -----------------------------------------------------

def side_indicator(m: WeightFunction, partition: Partition, j: int) -> Cochain:
    X = m.complex
    return Cochain(m, 0, [1.0 if partition.side(v) == j else 0.0 for v in X.vertices])


def nontrivial_projection(phi: Cochain, partition: Partition) -> Cochain:
    """Orthogonal projection of a 0-cochain onto the complement of the side indicators."""
    if phi.degree != 0:
        raise DegreeMismatch("nontrivial projection acts on 0-cochains")
    X = phi.complex
    total = side_down_sum(X, phi.weight, partition.restrict(X.vertices), 0)
    return phi - (X.dim + 1) * total(phi)


def side_flip(phi: Cochain, partition: Partition, i: int) -> Cochain:
    """Multiply the values on side ``i`` by ``-n`` and keep the rest."""
    if phi.degree != 0:
        raise DegreeMismatch("side flip acts on 0-cochains")
    X = phi.complex
    partition.restrict(X.vertices).validate(X)
    scale = np.array([-float(X.dim) if partition.side(v) == i else 1.0 for v in X.vertices])
    return phi._like(scale * phi.values)


__all__ = [
    "Cochain", "LinearOperator", "inner_product", "identity", "build_d", "build_delta",
    "build_up_laplacian", "build_down_laplacian", "build_full_laplacian",
    "build_side_differential", "build_side_codifferential", "build_side_down_laplacian",
    "side_down_sum", "localize", "restrict", "side_indicator", "nontrivial_projection",
    "side_flip",
]
