"""Eigensolving for operators that are self-adjoint in a weighted inner product.

An operator ``M`` self-adjoint for ``<x, y> = sum w x y`` becomes the symmetric
matrix ``S = W^{1/2} M W^{-1/2}``.  ``S`` is diagonalised with cyclic Jacobi
rotations and the eigenvectors are mapped back with ``W^{-1/2}``, so they come
out orthonormal in the weighted inner product.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .cochains import LinearOperator, build_full_laplacian, build_up_laplacian
from .complex import Simplex, SimplicialComplex
from .config import JACOBI_MAX_SWEEPS, JACOBI_TOL, SYMMETRY_TOL, ZERO_SNAP
from .errors import DegreeOutOfRange, DisconnectedLink, NotSelfAdjoint
from .weights import WeightFunction


def _round_robin(size: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Rounds of disjoint index pairs covering every pair exactly once."""
    players = list(range(size + (size % 2)))
    total = len(players)
    rounds = []
    for _ in range(total - 1):
        p, q = [], []
        for i in range(total // 2):
            a, b = players[i], players[total - 1 - i]
            if a < size and b < size:
                p.append(min(a, b))
                q.append(max(a, b))
        rounds.append((np.array(p, dtype=np.int64), np.array(q, dtype=np.int64)))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def jacobi_eigh(a: np.ndarray, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS):
    """Eigen-decomposition of a real symmetric matrix by cyclic Jacobi sweeps.

    Each sweep visits all index pairs in round-robin order; the pairs of a round
    are disjoint, so their rotations commute and are applied together.
    Returns ascending eigenvalues and orthonormal eigenvectors (columns).
    """
    A = np.array(a, dtype=float, copy=True)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("expected a square matrix")
    size = A.shape[0]
    V = np.eye(size)
    total = np.linalg.norm(A)
    if size < 2 or total == 0.0:
        return _sorted(np.diag(A).copy(), V)
    rounds = _round_robin(size)
    for _ in range(max_sweeps):
        off = np.linalg.norm(A - np.diag(np.diag(A)))
        if off <= tol * total:
            break
        for P, Q in rounds:
            apq = A[P, Q]
            active = np.abs(apq) > 0.0
            if not active.any():
                continue
            P, Q, apq = P[active], Q[active], apq[active]
            # a subnormal apq sends theta to inf, which correctly gives t = 0
            with np.errstate(over="ignore"):
                theta = (A[Q, Q] - A[P, P]) / (2.0 * apq)
                t = np.where(theta >= 0, 1.0, -1.0) / (np.abs(theta) + np.hypot(1.0, theta))
            c = 1.0 / np.sqrt(1.0 + t**2)
            s = t * c
            Ap, Aq = A[:, P].copy(), A[:, Q].copy()
            A[:, P] = Ap * c - Aq * s
            A[:, Q] = Ap * s + Aq * c
            Ap, Aq = A[P, :].copy(), A[Q, :].copy()
            A[P, :] = c[:, None] * Ap - s[:, None] * Aq
            A[Q, :] = s[:, None] * Ap + c[:, None] * Aq
            A[P, Q] = 0.0
            A[Q, P] = 0.0
            Vp, Vq = V[:, P].copy(), V[:, Q].copy()
            V[:, P] = Vp * c - Vq * s
            V[:, Q] = Vp * s + Vq * c
        total = np.linalg.norm(A)
    return _sorted(np.diag(A).copy(), V)


def _sorted(w: np.ndarray, V: np.ndarray):
    order = np.argsort(w, kind="stable")
    return w[order], V[:, order]


@dataclass
class SpectralReport:
    name: str
    degree: int
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray = field(repr=False)
    zero_multiplicity: int
    top_value: float | None = None

    @property
    def lambda_min_positive(self) -> float | None:
        pos = self.eigenvalues[self.eigenvalues > 0]
        return float(pos[0]) if pos.size else None

    @property
    def kappa_max(self) -> float:
        return float(self.eigenvalues[-1]) if self.eigenvalues.size else 0.0

    @property
    def nontrivial(self) -> np.ndarray:
        """Positive eigenvalues other than ``top_value`` (all positive ones if unset)."""
        pos = self.eigenvalues[self.eigenvalues > 0]
        if self.top_value is None:
            return pos
        return pos[np.abs(pos - self.top_value) > ZERO_SNAP]

    @property
    def lambda_nontrivial(self) -> float | None:
        nt = self.nontrivial
        return float(nt[0]) if nt.size else None

    @property
    def kappa_nontrivial(self) -> float | None:
        nt = self.nontrivial
        if self.top_value is not None:
            nt = nt[nt < self.top_value]
        return float(nt[-1]) if nt.size else None

    def multiplicity(self, value: float, tol: float = ZERO_SNAP) -> int:
        return int(np.sum(np.abs(self.eigenvalues - value) <= tol))

    def eigenspace(self, value: float, tol: float = ZERO_SNAP) -> np.ndarray:
        return self.eigenvectors[:, np.abs(self.eigenvalues - value) <= tol]

    def to_dict(self) -> dict:
        out = {
            "operator": self.name,
            "degree": self.degree,
            "eigenvalues": [float(x) for x in self.eigenvalues],
            "zero_multiplicity": self.zero_multiplicity,
            "lambda_min_positive": self.lambda_min_positive,
            "kappa_max": self.kappa_max,
        }
        if self.top_value is not None:
            out["top_value"] = self.top_value
            out["lambda_nontrivial"] = self.lambda_nontrivial
            out["kappa_nontrivial"] = self.kappa_nontrivial
        return out


def eig_selfadjoint(op: LinearOperator, top_value: float | None = None) -> SpectralReport:
    if op.domain != op.codomain:
        raise NotSelfAdjoint(f"{op.name} maps degree {op.domain} to {op.codomain}")
    w = op.weight.on(op.domain)
    root = np.sqrt(w)
    S = root[:, None] * op.matrix / root[None, :]
    scale = max(1.0, float(np.abs(S).max(initial=0.0)))
    asym = float(np.abs(S - S.T).max(initial=0.0))
    if asym > SYMMETRY_TOL * scale:
        raise NotSelfAdjoint(f"{op.name} is not self-adjoint (asymmetry {asym:.3g})")
    vals, vecs = jacobi_eigh(0.5 * (S + S.T))
    vals = np.where(np.abs(vals) < ZERO_SNAP, 0.0, vals)
    vecs = vecs / root[:, None]
    return SpectralReport(op.name, op.domain, vals, vecs, int(np.sum(vals == 0.0)), top_value)


def operator_norm(op: LinearOperator) -> float:
    vals = eig_selfadjoint(op).eigenvalues
    return float(np.abs(vals).max(initial=0.0))


def partite_top_value(dim: int) -> float:
    """Forced top eigenvalue ``(d+1)/d`` of the graph Laplacian of a (d+1)-partite d-complex."""
    return (dim + 1) / dim


@dataclass
class LinkSpectra:
    degree: int
    reports: dict[Simplex, SpectralReport]

    def _collect(self, attr: str):
        vals = [getattr(r, attr) for r in self.reports.values()]
        return [v for v in vals if v is not None]

    @property
    def lambda_min(self) -> float | None:
        vals = self._collect("lambda_min_positive")
        return min(vals) if vals else None

    @property
    def kappa_max(self) -> float | None:
        vals = self._collect("kappa_max")
        return max(vals) if vals else None

    @property
    def lambda_nontrivial(self) -> float | None:
        vals = self._collect("lambda_nontrivial")
        return min(vals) if vals else None

    @property
    def kappa_nontrivial(self) -> float | None:
        vals = self._collect("kappa_nontrivial")
        return max(vals) if vals else None

    @property
    def disconnected(self) -> list[Simplex]:
        return [t for t, r in self.reports.items() if r.zero_multiplicity != 1]


def link_report(X: SimplicialComplex, m: WeightFunction, tau: Iterable[int], partite: bool = False) -> SpectralReport:
    """Spectrum of the degree-0 upper Laplacian of the link of ``tau``."""
    tau = tuple(tau)
    lk = X.link(tau)
    if lk.dim < 1:
        raise DegreeOutOfRange(f"the link of {tau} has no edges")
    report = eig_selfadjoint(build_up_laplacian(lk, m.link(tau), 0),
                             partite_top_value(lk.dim) if partite else None)
    report.name = f"up0[link {tau}]"
    return report


def link_spectra(X: SimplicialComplex, m: WeightFunction, k: int, partite: bool = False,
                 allow_disconnected: bool = False) -> LinkSpectra:
    """Reports for every k-simplex link; ``k = -1`` gives X itself."""
    if not -1 <= k <= X.dim - 2:
        raise DegreeOutOfRange(f"links of {k}-simplices have no edges (need -1 <= k <= {X.dim - 2})")
    out = LinkSpectra(k, {tau: link_report(X, m, tau, partite) for tau in X.simplices(k)})
    if not allow_disconnected and out.disconnected:
        raise DisconnectedLink(out.disconnected[0])
    return out


def harmonic_dimension(X: SimplicialComplex, m: WeightFunction, k: int, reduced: bool = False) -> int:
    """``dim ker`` of the full Laplacian in degree k.

    With ``reduced=False`` the augmentation ``d_{-1}`` is left out in degree 0,
    so the result matches the ordinary Betti number.
    """
    if not 0 <= k <= X.dim:
        raise DegreeOutOfRange(f"degree {k} outside [0, {X.dim}]")
    if k == 0 and not reduced:
        if X.dim == 0:
            return X.count(0)
        op = build_up_laplacian(X, m, 0)
    else:
        op = build_full_laplacian(X, m, k)
    return eig_selfadjoint(op).zero_multiplicity
