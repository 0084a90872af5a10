"""Numerical checks of local-to-global spectral bounds.

Every ``verify_*`` function first checks the hypotheses of the bound it tests
and records them separately, then measures spectra and compares them with the
bound.  A report fails only when hypotheses hold and some measured value lies
outside its bound by more than the tolerance.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial

import numpy as np

from .cochains import (
    Cochain,
    build_d,
    build_delta,
    build_down_laplacian,
    build_side_differential,
    build_side_down_laplacian,
    build_up_laplacian,
    identity,
    localize,
    restrict,
    side_down_sum,
)
from .complex import Partition, SimplicialComplex, betti_numbers, check_all_links_connected, detect_partition
from .config import BOUND_TOL, DEFAULT_SAMPLES, DEFAULT_SEED, IDENTITY_RTOL
from .errors import NotGalleryConnected, NotPartite, PoleHit
from .spectral import (
    eig_selfadjoint,
    harmonic_dimension,
    link_report,
    link_spectra,
    operator_norm,
    partite_top_value,
)
from .weights import WeightFunction, verify_balanced, verify_weight_identities

PASS, FAIL, UNMET = "pass", "fail", "hypothesis_not_met"


def descent_f(x: float, l: int = 1) -> float:
    """l-fold iterate of ``f(x) = 2 - 1/x`` via ``((l+1)x - l) / (lx - (l-1))``."""
    if l < 0:
        raise ValueError("iteration count must be non-negative")
    if l == 0:
        return float(x)
    den = l * x - (l - 1)
    if den == 0:
        raise PoleHit(f"f^{l} has a pole at x = {x}")
    return ((l + 1) * x - l) / den


@dataclass
class Check:
    name: str
    value: float
    lower: float | None = None
    upper: float | None = None
    tol: float = BOUND_TOL
    context: str = ""

    @property
    def slack(self) -> float:
        gaps = []
        if self.lower is not None:
            gaps.append(self.value - self.lower)
        if self.upper is not None:
            gaps.append(self.upper - self.value)
        return min(gaps) if gaps else 0.0

    @property
    def passed(self) -> bool:
        return self.slack >= -self.tol

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "context": self.context,
            "value": self.value,
            "lower": self.lower,
            "upper": self.upper,
            "slack": self.slack,
            "passed": self.passed,
        }


@dataclass
class VerificationReport:
    theorem: str
    hypotheses_met: bool = True
    hypotheses: list[str] = field(default_factory=list)
    checks: list[Check] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    seed: int | None = None

    @property
    def status(self) -> str:
        if not self.hypotheses_met:
            return UNMET
        return PASS if all(c.passed for c in self.checks) else FAIL

    @property
    def passed(self) -> bool:
        return self.status == PASS

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    @property
    def min_slack(self) -> float | None:
        return min((c.slack for c in self.checks), default=None)

    def unmet(self, reason: str) -> VerificationReport:
        self.hypotheses_met = False
        self.hypotheses.append(reason)
        return self

    def add(self, *args, **kwargs) -> Check:
        c = Check(*args, **kwargs)
        self.checks.append(c)
        return c

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "status": self.status,
            "hypotheses_met": self.hypotheses_met,
            "hypotheses": list(self.hypotheses),
            "checks": [c.to_dict() for c in self.checks],
            "notes": list(self.notes),
            "seed": self.seed,
            "min_slack": self.min_slack,
        }


# -- shared hypothesis helpers --------------------------------------------------

def _connected(X: SimplicialComplex, report: VerificationReport) -> bool:
    conn = check_all_links_connected(X)
    if not conn:
        report.unmet(f"links with disconnected 1-skeleton: {conn.failures[:5]}")
        return False
    report.hypotheses.append("all link 1-skeletons connected")
    return True


def _partition(X: SimplicialComplex, partition: Partition | None) -> Partition:
    if partition is None:
        try:
            return detect_partition(X)
        except NotGalleryConnected as exc:
            raise NotPartite(str(exc)) from None
    partition.validate(X)
    return partition


def _positive(values: np.ndarray) -> np.ndarray:
    return values[values > 0]


@dataclass
class LocalExpansion:
    holds: bool
    reason: str = ""
    precondition_ok: bool = True

    def __bool__(self):
        return self.holds


def check_local_expansion(X: SimplicialComplex, m: WeightFunction, lam: float,
                          kappa: float | None = None) -> LocalExpansion:
    """Connectivity of all links plus codimension-2 link gaps ``>= lam`` (and ``<= kappa``)."""
    n = X.dim
    if n < 2:
        return LocalExpansion(False, "dimension must be at least 2", False)
    if lam <= (n - 1) / n:
        return LocalExpansion(False, f"lambda = {lam} must exceed (n-1)/n = {(n - 1) / n:.6g}", False)
    if kappa is not None and kappa >= 2:
        return LocalExpansion(False, f"kappa = {kappa} must be below 2", False)
    conn = check_all_links_connected(X)
    if not conn:
        return LocalExpansion(False, f"disconnected links {conn.failures[:5]}")
    ls = link_spectra(X, m, n - 2)
    for tau, r in ls.reports.items():
        if r.lambda_min_positive < lam - BOUND_TOL:
            return LocalExpansion(False, f"link of {tau} has gap {r.lambda_min_positive:.12g} < {lam}")
        if kappa is not None and r.kappa_max > kappa + BOUND_TOL:
            return LocalExpansion(False, f"link of {tau} has top {r.kappa_max:.12g} > {kappa}")
    return LocalExpansion(True)


# -- trickle-down and Garland -----------------------------------------------

def verify_trickledown(X: SimplicialComplex, m: WeightFunction, tol: float = BOUND_TOL) -> VerificationReport:
    rep = VerificationReport("trickledown")
    n = X.dim
    if n < 2:
        return rep.unmet("dimension must be at least 2")
    if not _connected(X, rep):
        return rep
    base = link_spectra(X, m, n - 2)
    lam, kap = base.lambda_min, base.kappa_max
    if lam <= (n - 1) / n:
        return rep.unmet(f"codimension-2 link gap {lam:.12g} <= (n-1)/n")
    rep.hypotheses.append(f"codimension-2 links: lambda = {lam:.12g}, kappa = {kap:.12g}")
    for k in range(-1, n - 2):
        l = n - k - 2
        lo, hi = descent_f(lam, l), descent_f(kap, l)
        low_tau = high_tau = None
        low = high = None
        for tau in X.simplices(k):
            pos = _positive(link_report(X, m, tau).eigenvalues)
            if low is None or pos[0] < low:
                low, low_tau = float(pos[0]), tau
            if high is None or pos[-1] > high:
                high, high_tau = float(pos[-1]), tau
        rep.add("link gap >= f^l(lambda)", low, lower=lo, tol=tol, context=f"k={k} tau={low_tau}")
        rep.add("link top <= f^l(kappa)", high, upper=hi, tol=tol, context=f"k={k} tau={high_tau}")
        rep.add("f^l(lambda) > (k+1)/(k+2)", lo, lower=(k + 1) / (k + 2), tol=tol, context=f"k={k}")
        rep.add("f^l(kappa) <= (n-k)/(n-k-1)", hi, upper=(n - k) / (n - k - 1), tol=tol, context=f"k={k}")
    return rep


def _interval_hypotheses(X, m, k, rep):
    n = X.dim
    if n < 2:
        rep.unmet("dimension must be at least 2")
        return None
    if not 0 <= k <= n - 1:
        rep.unmet(f"degree {k} outside [0, {n - 1}]")
        return None
    if not _connected(X, rep):
        return None
    ls = link_spectra(X, m, k - 1)
    lam, kap = ls.lambda_min, ls.kappa_max
    if lam <= k / (k + 1):
        rep.unmet(f"link gap {lam:.12g} <= k/(k+1)")
        return None
    rep.hypotheses.append(f"links of {k - 1}-simplices: lambda = {lam:.12g}, kappa = {kap:.12g}")
    return lam, kap


def _descended(X, m, k):
    """Bounds for links of (k-1)-simplices obtained from codimension-2 links, or None."""
    n = X.dim
    base = link_spectra(X, m, n - 2)
    if base.lambda_min <= (n - 1) / n:
        return None
    return descent_f(base.lambda_min, n - 1 - k), descent_f(base.kappa_max, n - 1 - k)


def verify_garland_interval(X: SimplicialComplex, m: WeightFunction, k: int,
                            tol: float = BOUND_TOL) -> VerificationReport:
    rep = VerificationReport(f"garland_interval[k={k}]")
    bounds = _interval_hypotheses(X, m, k, rep)
    if bounds is None:
        return rep
    up = eig_selfadjoint(build_up_laplacian(X, m, k))
    down_next = eig_selfadjoint(build_down_laplacian(X, m, k + 1))
    down = eig_selfadjoint(build_down_laplacian(X, m, k))
    rep.add("dim ker up_k + dim ker down_k == dim C^k", up.zero_multiplicity + down.zero_multiplicity,
            lower=X.count(k), upper=X.count(k), tol=0)

    def interval(lam, kap, label):
        lo, hi = (k + 1) * lam - k, (k + 1) * kap - k
        for name, spec in ((f"up_{k}", up), (f"down_{k + 1}", down_next)):
            pos = _positive(spec.eigenvalues)
            if pos.size == 0:
                rep.notes.append(f"{name} has no nonzero spectrum; {label} check is vacuous")
                continue
            rep.add(f"min nonzero spec {name} ({label})", float(pos[0]), lower=lo, tol=tol)
            rep.add(f"max nonzero spec {name} ({label})", float(pos[-1]), upper=hi, tol=tol)

    interval(*bounds, "local")
    descended = _descended(X, m, k)
    if descended is None:
        rep.notes.append("codimension-2 gap too small for the descended interval")
    else:
        interval(*descended, "descended")
    return rep


def garland_operator(X, m, k, lam, kap):
    """``up_k + mu down_k - (k+1)(mu - k/(k+1)) I`` with ``mu`` the midpoint of [lam, kap]."""
    mu = (lam + kap) / 2
    return (build_up_laplacian(X, m, k) + mu * build_down_laplacian(X, m, k)
            - ((k + 1) * (mu - k / (k + 1))) * identity(X, m, k))


def verify_garland_norm(X: SimplicialComplex, m: WeightFunction, k: int,
                        tol: float = BOUND_TOL) -> VerificationReport:
    rep = VerificationReport(f"garland_norm[k={k}]")
    bounds = _interval_hypotheses(X, m, k, rep)
    if bounds is None:
        return rep
    lam, kap = bounds
    rep.add("operator norm (local)", operator_norm(garland_operator(X, m, k, lam, kap)),
            upper=(k + 1) * (kap - lam) / 2, tol=tol)
    descended = _descended(X, m, k)
    if descended is None:
        rep.notes.append("codimension-2 gap too small for the descended bound")
    else:
        lam_k, kap_k = descended
        rep.add("operator norm (descended)", operator_norm(garland_operator(X, m, k, lam_k, kap_k)),
                upper=(k + 1) * (kap_k - lam_k) / 2, tol=tol)
    return rep


# -- partite complexes ------------------------------------------------------

def side_eigenfunction(m: WeightFunction, partition: Partition, i: int) -> Cochain:
    """``n`` on side ``i`` and ``-1`` elsewhere."""
    X = m.complex
    return Cochain(m, 0, [float(X.dim) if partition.side(v) == i else -1.0 for v in X.vertices])


def verify_partite_top_eigenspace(X: SimplicialComplex, m: WeightFunction, partition: Partition | None = None,
                                  tol: float = BOUND_TOL) -> VerificationReport:
    rep = VerificationReport("partite_top_eigenspace")
    partition = _partition(X, partition)
    n = X.dim
    if n < 1:
        return rep.unmet("dimension must be at least 1")
    if not _connected(X, rep):
        return rep
    top = partite_top_value(n)
    up = build_up_laplacian(X, m, 0)
    spec = eig_selfadjoint(up, top)
    for i in range(n + 1):
        phi = side_eigenfunction(m, partition, i)
        resid = float(np.abs(up(phi).values - top * phi.values).max())
        rep.add("eigen-residual of side function", resid, upper=0.0, tol=1e-10, context=f"side {i}")
        chi = np.array([1.0 if partition.side(v) == i else 0.0 for v in X.vertices])
        rep.add("indicator = (phi_i + 1)/(n+1)", float(np.abs(chi - (phi.values + 1) / (n + 1)).max()),
                upper=0.0, tol=1e-12, context=f"side {i}")
    rep.add("multiplicity of (n+1)/n", spec.multiplicity(top), lower=n, upper=n, tol=0)
    rep.add("spectrum <= (n+1)/n", spec.kappa_max, upper=top, tol=tol)
    return rep


def _symmetry_bounds(lam: float, dim: int) -> tuple[float, float]:
    return 1 + (1 - lam) / dim, 1 + dim * (1 - lam)


def verify_partite_symmetry(X: SimplicialComplex, m: WeightFunction, partition: Partition | None = None,
                            tol: float = BOUND_TOL) -> VerificationReport:
    rep = VerificationReport("partite_symmetry")
    _partition(X, partition)
    n = X.dim
    if n < 1:
        return rep.unmet("dimension must be at least 1")
    if X.count(n) < 2:
        return rep.unmet("complex is a single simplex")
    if not _connected(X, rep):
        return rep
    spec = eig_selfadjoint(build_up_laplacian(X, m, 0), partite_top_value(n))
    lam, kap = spec.lambda_min_positive, spec.kappa_nontrivial
    if kap is None:
        return rep.unmet("no eigenvalue strictly between 0 and (n+1)/n")
    lo, hi = _symmetry_bounds(lam, n)
    rep.add("kappa(X) in [1 + (1-lambda)/n, 1 + n(1-lambda)]", kap, lower=lo, upper=hi, tol=tol,
            context=f"lambda={lam:.12g}")
    s_lo, s_hi = 1 - (1 - lam) / n, 1 - n * (1 - lam)
    ok = s_lo - tol <= kap <= s_hi + tol
    rep.notes.append(f"minus-sign form [{s_lo:.12g}, {s_hi:.12g}] {'holds' if ok else 'does not hold'}")
    return rep


def verify_partite_descent(X: SimplicialComplex, m: WeightFunction, partition: Partition | None = None,
                           tol: float = BOUND_TOL) -> VerificationReport:
    rep = VerificationReport("partite_descent")
    _partition(X, partition)
    n = X.dim
    if n < 2:
        return rep.unmet("dimension must be at least 2")
    if not _connected(X, rep):
        return rep
    lam = link_spectra(X, m, n - 2).lambda_min
    if lam <= (n - 1) / n:
        return rep.unmet(f"codimension-2 link gap {lam:.12g} <= (n-1)/n")
    rep.hypotheses.append(f"codimension-2 links: lambda = {lam:.12g}")
    for k in range(-1, n - 2):
        fl = descent_f(lam, n - k - 2)
        lo, hi = fl, 1 + (n - k) * (1 - fl)
        alt = 1 - (n - k) * (1 - fl)
        top = (n - k) / (n - k - 1)
        low = high = None
        minus_ok = True
        for tau in X.simplices(k):
            r = link_report(X, m, tau, partite=True)
            rep.add("top value attained", r.multiplicity(top), lower=1, tol=0, context=f"tau={tau}")
            nt = r.nontrivial
            if nt.size == 0:
                continue
            low = float(nt[0]) if low is None else min(low, float(nt[0]))
            high = float(nt[-1]) if high is None else max(high, float(nt[-1]))
            minus_ok &= bool(nt[-1] <= alt + tol)
        if low is None:
            rep.notes.append(f"k={k}: every link is a single simplex; window check is vacuous")
            continue
        rep.add("nontrivial link spectrum >= f^l(lambda)", low, lower=lo, tol=tol, context=f"k={k}")
        rep.add("nontrivial link spectrum <= 1 + (n-k)(1 - f^l(lambda))", high, upper=hi, tol=tol,
                context=f"k={k}")
        rep.notes.append(f"k={k}: window [{lo:.12g}, {hi:.12g}]; minus-sign upper bound {alt:.12g} "
                         f"{'holds' if minus_ok else 'does not hold'}")
    return rep


def contraction_operator(X, m, partition, k, lam, kap, squared_side_coefficient: bool = False):
    """Partite analogue of the Garland operator built from the nontrivial link window [lam, kap].

    ``squared_side_coefficient=True`` uses ``(n+1-k)^2`` in place of ``(n+1-k)`` in front of
    ``mu`` in the side-sum coefficient; that variant is kept for comparison only.
    """
    n = X.dim
    N = n + 1 - k
    T = N / (N - 1)
    mu = (lam + kap) / 2
    coeff = N * T - (N * N if squared_side_coefficient else N) * mu
    return (build_up_laplacian(X, m, k) + T * build_down_laplacian(X, m, k)
            + (k - (k + 1) * mu) * identity(X, m, k) - coeff * side_down_sum(X, m, partition, k))


def verify_partite_contraction(X: SimplicialComplex, m: WeightFunction, partition: Partition | None = None,
                               k: int = 0, tol: float = BOUND_TOL) -> VerificationReport:
    rep = VerificationReport(f"partite_contraction[k={k}]")
    partition = _partition(X, partition)
    n = X.dim
    if not 0 <= k <= n - 1:
        return rep.unmet(f"degree {k} outside [0, {n - 1}]")
    if not _connected(X, rep):
        return rep
    ls = link_spectra(X, m, k - 1, partite=True)
    lam, kap = ls.lambda_nontrivial, ls.kappa_nontrivial
    if lam is None:
        lam = kap = 1.0
        rep.notes.append("links have no nontrivial spectrum; any window works, using [1, 1]")
    if lam <= k / (k + 1):
        return rep.unmet(f"nontrivial link gap {lam:.12g} <= k/(k+1)")
    rep.hypotheses.append(f"nontrivial link window [{lam:.12g}, {kap:.12g}]")
    rep.add("operator norm (local window)", operator_norm(contraction_operator(X, m, partition, k, lam, kap)),
            upper=(k + 1) * (kap - lam) / 2, tol=tol)
    variant = operator_norm(contraction_operator(X, m, partition, k, lam, kap, squared_side_coefficient=True))
    rep.notes.append(f"variant with squared side coefficient has norm {variant:.12g}")

    if n >= 2:
        base = link_spectra(X, m, n - 2).lambda_min
        if base > (n - 1) / n:
            lam_k = descent_f(base, n - 1 - k)
            kap_k = 1 + (n - k) * (1 - lam_k)
            if kap_k >= lam_k:
                rep.add("operator norm (descended window)",
                        operator_norm(contraction_operator(X, m, partition, k, lam_k, kap_k)),
                        upper=(k + 1) * (n + 1 - k) * (1 - lam_k) / 2, tol=tol)
            else:
                rep.notes.append("descended window is empty; only single-simplex links reach it")
        else:
            rep.notes.append("codimension-2 gap too small for the descended window")
    return rep


# -- top eigenfunctions restrict to top eigenfunctions ------------------------

def _propagate(rep, Y: SimplicialComplex, w: WeightFunction, phi: Cochain, mu: float, where: tuple, tol: float):
    scale = max(float(np.abs(phi.values).max()), 1e-300)
    for v in Y.vertices:
        sub = Y.link((v,))
        sw = w.link((v,))
        r = restrict(phi, (v,))
        mean = build_down_laplacian(sub, sw, 0)(r)
        expected_mean = (1 - mu) * phi.evaluate((v,))
        rep.add("restriction mean = (1 - mu) phi(v)", float(np.abs(mean.values - expected_mean).max()) / scale,
                upper=0.0, tol=tol, context=f"tau={where} v={v}")
        centred = r - mean
        nxt = partite_top_value(sub.dim)
        resid = build_up_laplacian(sub, sw, 0)(centred).values - nxt * centred.values
        rep.add("centred restriction is a top eigenfunction", float(np.abs(resid).max()) / scale,
                upper=0.0, tol=tol, context=f"tau={where} v={v} value={nxt:.6g}")
        if sub.dim > 1 and np.abs(centred.values).max() > 1e-9 * scale:
            _propagate(rep, sub, sw, centred, nxt, where + (v,), tol)


def verify_kappa_propagation(X: SimplicialComplex, m: WeightFunction, tol: float = IDENTITY_RTOL) -> VerificationReport:
    rep = VerificationReport("kappa_propagation")
    n = X.dim
    if n < 2:
        return rep.unmet("dimension must be at least 2")
    if not _connected(X, rep):
        return rep
    found = 0
    for k in range(-1, n - 2):
        top = (n - k) / (n - k - 1)
        for tau in X.simplices(k):
            r = link_report(X, m, tau)
            basis = r.eigenspace(top)
            if basis.shape[1] == 0:
                continue
            found += basis.shape[1]
            lk, lw = X.link(tau), m.link(tau)
            for col in basis.T:
                _propagate(rep, lk, lw, Cochain(lw, 0, col), top, tau, tol)
    if not found:
        rep.notes.append("no link attains its top value; nothing to propagate")
    return rep


# -- cochain identities -----------------------------------------------------

def _residual(lhs: float, rhs: float, magnitude: float) -> float:
    return abs(lhs - rhs) / max(magnitude, abs(lhs), abs(rhs), 1e-300)


def _ip(m: WeightFunction, k: int, a: np.ndarray, b: np.ndarray) -> float:
    return float(np.dot(m.on(k) * a, b))


def verify_structural_identities(X: SimplicialComplex, m: WeightFunction, samples: int = DEFAULT_SAMPLES,
                                 seed: int = DEFAULT_SEED, partition: Partition | None = None,
                                 rtol: float = IDENTITY_RTOL) -> VerificationReport:
    rep = VerificationReport("structural_identities", seed=seed)
    rng = np.random.default_rng(seed)
    n = X.dim
    worst: dict[str, float] = {}

    def note(name: str, r: float):
        worst[name] = max(worst.get(name, 0.0), r)

    for k in range(-1, n - 1):
        dd = X.incidence(k + 1) @ X.incidence(k)
        rep.add("d d = 0 (exact)", float(np.abs(dd).max(initial=0)), upper=0.0, tol=0, context=f"k={k}")

    balance = verify_balanced(X, m)
    rep.add("balance violations", len(balance), upper=0.0, tol=0)
    wid = verify_weight_identities(X, m)
    rep.add("weight identities", wid.max_residual, upper=0.0, tol=1e-10)

    d = {k: build_d(X, m, k) for k in range(-1, n)}
    delta = {k: build_delta(X, m, k) for k in range(-1, n)}

    for _ in range(samples):
        phi = {k: rng.standard_normal(X.count(k)) for k in range(-1, n + 1)}
        psi = {k: rng.standard_normal(X.count(k)) for k in range(-1, n + 1)}
        for k in range(-1, n):
            a = _ip(m, k + 1, d[k].matrix @ phi[k], psi[k + 1])
            b = _ip(m, k, phi[k], delta[k].matrix @ psi[k + 1])
            note("adjointness <d phi, psi> = <phi, delta psi>", _residual(a, b, 0))

        # localization to links of (k-1)-simplices
        for k in range(0, n + 1):
            P, Q = Cochain(m, k, phi[k]), Cochain(m, k, psi[k])
            s_loc = s_delta = s_d = s_loc_mag = 0.0
            s_d_mag = 0.0
            for tau in X.simplices(k - 1):
                lw = m.link(tau)
                lk = lw.complex
                pt, qt = localize(P, tau), localize(Q, tau)
                s_loc += pt.inner(qt)
                s_loc_mag += abs(pt.inner(qt))
                dl = build_delta(lk, lw, -1)
                s_delta += dl(pt).inner(dl(qt))
                if lk.dim >= 1:
                    dd_ = build_d(lk, lw, 0)
                    s_d += dd_(pt).inner(dd_(qt))
                    s_d_mag += abs(dd_(pt).inner(dd_(qt)))
            ip = P.inner(Q)
            note("localized inner products: (k+1)<phi,psi> = sum <phi_tau,psi_tau>",
                 _residual((k + 1) * ip, s_loc, s_loc_mag))
            if k >= 1:
                dp = delta[k - 1].matrix
                a = _ip(m, k - 1, dp @ phi[k], dp @ psi[k])
                note("localized codifferentials", _residual(a, s_delta, 0))
            if k <= n - 1:
                a = _ip(m, k + 1, d[k].matrix @ phi[k], d[k].matrix @ psi[k])
                rhs = s_d - k / (k + 1) * s_loc
                note("localized differentials", _residual(a, rhs, s_d_mag + k / (k + 1) * s_loc_mag))
                if k >= 1:
                    note("localized differentials plus k<phi,psi>", _residual(a + k * ip, s_d, s_d_mag))

        # restriction to links of l-simplices
        for k in range(0, n):
            P, Q = Cochain(m, k, phi[k]), Cochain(m, k, psi[k])
            ip = P.inner(Q)
            for l in range(0, n - k):
                s, mag = 0.0, 0.0
                for tau in X.simplices(l):
                    v = restrict(P, tau).inner(restrict(Q, tau))
                    s += v
                    mag += abs(v)
                note("restricted inner products", _residual(ip, factorial(l + 1) * s, factorial(l + 1) * mag))
        P, Q = Cochain(m, 0, phi[0]), Cochain(m, 0, psi[0])
        if n >= 1:
            dP, dQ = d[0](P), d[0](Q)
            for l in range(0, n - 1):
                s, mag = 0.0, 0.0
                for tau in X.simplices(l):
                    lw = m.link(tau)
                    dl = build_d(lw.complex, lw, 0)
                    a, b = dl(restrict(P, tau)), dl(restrict(Q, tau))
                    note("restriction commutes with d",
                         float(np.abs(a.values - restrict(dP, tau).values).max(initial=0))
                         / max(float(np.abs(dP.values).max()), 1e-300))
                    s += a.inner(b)
                    mag += abs(a.inner(b))
                note("restricted differentials", _residual(dP.inner(dQ), factorial(l + 1) * s,
                                                           factorial(l + 1) * mag))

        down0 = build_down_laplacian(X, m, 0)
        dn = down0(P)
        dl = delta[-1](P)
        a, b, c = dn.inner(P), dl.inner(dl), dn.inner(dn)
        note("<down0 phi, phi> = |delta phi|^2 = |down0 phi|^2", max(_residual(a, b, 0), _residual(b, c, 0)))
        one = Cochain.constant(m, 0)
        proj = (P.inner(one) / one.inner(one)) * one.values
        note("down0 is the projection on constants",
             float(np.abs(dn.values - proj).max()) / max(float(np.abs(P.values).max()), 1e-300))

    for name, r in worst.items():
        rep.add(name, r, upper=0.0, tol=rtol)

    for k in range(1, n + 1):
        a = _positive(eig_selfadjoint(build_up_laplacian(X, m, k - 1)).eigenvalues)
        b = _positive(eig_selfadjoint(build_down_laplacian(X, m, k)).eigenvalues)
        gap = float(np.abs(a - b).max(initial=0)) if a.size == b.size else float("inf")
        rep.add("nonzero spec up_{k-1} = nonzero spec down_k", gap, upper=0.0, tol=rtol, context=f"k={k}")

    betti = betti_numbers(X)
    for k in range(n + 1):
        rep.add("harmonic dimension = Betti number", harmonic_dimension(X, m, k), lower=betti[k],
                upper=betti[k], tol=0, context=f"k={k}")

    if partition is None:
        try:
            partition = detect_partition(X)
        except (NotPartite, NotGalleryConnected):
            rep.notes.append("complex is not partite; side-operator identities skipped")
    if partition is not None:
        _partite_identities(X, m, partition, rng, samples, rep, rtol)
    return rep


def _partite_identities(X, m, partition, rng, samples, rep, rtol):
    n = X.dim
    for k in range(-1, n):
        total = sum(build_side_differential(X, m, partition, k, j).matrix for j in range(n + 1))
        rep.add("sum of side differentials = d", float(np.abs(total - X.incidence(k)).max(initial=0)),
                upper=0.0, tol=0, context=f"k={k}")
    worst = 0.0
    for _ in range(samples):
        for k in range(0, n + 1):
            P = Cochain(m, k, rng.standard_normal(X.count(k)))
            for j in range(n + 1):
                lhs = build_side_down_laplacian(X, m, partition, k, j)(P).inner(P)
                rhs = 0.0
                for tau in X.simplices(k - 1):
                    lw = m.link(tau)
                    pt = localize(P, tau)
                    sub = partition.restrict(lw.complex.vertices)
                    rhs += build_side_down_laplacian(lw.complex, lw, sub, 0, j)(pt).inner(pt)
                worst = max(worst, _residual(lhs, rhs, P.inner(P)))
    rep.add("localized side down-Laplacians", worst, upper=0.0, tol=rtol)


# -- battery ----------------------------------------------------------------

THEOREMS = (
    "structural", "trickledown", "garland_interval", "garland_norm", "kappa_propagation",
    "partite_top", "partite_symmetry", "partite_descent", "partite_contraction",
)
PARTITE = {"partite_top", "partite_symmetry", "partite_descent", "partite_contraction"}


def run_battery(X: SimplicialComplex, m: WeightFunction, partition: Partition | None = None,
                theorems=None, seed: int = DEFAULT_SEED, samples: int = DEFAULT_SAMPLES,
                tol: float = BOUND_TOL) -> list[VerificationReport]:
    """Run the named checks (all by default); partite ones only when a partition exists."""
    chosen = list(theorems) if theorems else list(THEOREMS)
    unknown = set(chosen) - set(THEOREMS)
    if unknown:
        raise ValueError(f"unknown theorem ids {sorted(unknown)}")
    if partition is None and PARTITE & set(chosen):
        try:
            partition = detect_partition(X)
        except (NotPartite, NotGalleryConnected):
            if theorems is None:
                chosen = [t for t in chosen if t not in PARTITE]
    n = X.dim
    out = []
    for name in chosen:
        if name in PARTITE and partition is None:
            out.append(VerificationReport(name).unmet("complex is not partite"))
        elif name == "structural":
            out.append(verify_structural_identities(X, m, samples, seed, partition))
        elif name == "trickledown":
            out.append(verify_trickledown(X, m, tol))
        elif name == "garland_interval":
            out.extend(verify_garland_interval(X, m, k, tol) for k in range(max(n, 1)))
        elif name == "garland_norm":
            out.extend(verify_garland_norm(X, m, k, tol) for k in range(max(n, 1)))
        elif name == "kappa_propagation":
            out.append(verify_kappa_propagation(X, m))
        elif name == "partite_top":
            out.append(verify_partite_top_eigenspace(X, m, partition, tol))
        elif name == "partite_symmetry":
            out.append(verify_partite_symmetry(X, m, partition, tol))
        elif name == "partite_descent":
            out.append(verify_partite_descent(X, m, partition, tol))
        elif name == "partite_contraction":
            out.extend(verify_partite_contraction(X, m, partition, k, tol) for k in range(max(n, 1)))
    return out
