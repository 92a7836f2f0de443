"""Multi-component (truncated spectral) estimator for undirected networks."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import _kernels
from .model import BilinearModel, EmptyNetworkError, EstimatorFit, UcReport, fit_quality
from .network import Network, stats
from .spectral import SpectralBasis, symmetric_eigs

__all__ = [
    "McFit",
    "greedy_offdiag_order",
    "offdiag_gains",
    "fit_multicomponent",
    "uc_multicomponent",
    "mc_closed_form_uc",
    "uc_surface",
    "write_uc_surface_csv",
    "SELECTIONS",
]

SELECTIONS = ("fixed", "eigengap", "variance_threshold")
_TIE_RTOL = 1e-12


@dataclass(frozen=True, eq=False)
class McFit(EstimatorFit):
    basis: SpectralBasis = field(default=None, repr=False)
    selection: str = "fixed"


def greedy_offdiag_order(full_basis: SpectralBasis) -> SpectralBasis:
    """Reorder eigenpairs by greedy off-diagonal explained variance.

    At each step the unused pair maximizing
    ``g^2 (1 + sum_i x_i^4) + 2 g sum_i x_i^2 D_i`` is taken, where ``D_i``
    is the diagonal of the expansion built so far. Ties (relative 1e-12) go
    to the larger |g|, then to the earlier position in ``full_basis``.
    """
    gamma = full_basis.values
    X = full_basis.vectors
    X2 = X * X
    fourth = np.sum(X2 * X2, axis=0)
    m = len(gamma)
    remaining = np.ones(m, dtype=bool)
    diag = np.zeros(X.shape[0])
    order = []
    for _ in range(m):
        scores = _kernels.greedy_scores(gamma, X2, fourth, diag, remaining)
        best = scores[remaining].max()
        tol = _TIE_RTOL * max(abs(best), np.max(gamma * gamma), 1e-300)
        cand = np.flatnonzero(remaining & (scores >= best - tol))
        if len(cand) > 1:
            mags = np.abs(gamma[cand])
            cand = cand[mags >= mags.max() * (1.0 - _TIE_RTOL)]
        t = int(cand[0])
        order.append(t)
        remaining[t] = False
        diag += gamma[t] * X2[:, t]
    return SpectralBasis(tuple(full_basis.pairs[t] for t in order), "off_diagonal_greedy")


def offdiag_gains(basis: SpectralBasis) -> np.ndarray:
    """Off-diagonal gain credited to each pair, in the basis' own order."""
    gamma = basis.values
    X2 = basis.vectors ** 2
    diag = np.zeros(X2.shape[0])
    gains = np.empty(len(gamma))
    for t, g in enumerate(gamma):
        gains[t] = g * g * (1.0 + np.sum(X2[:, t] ** 2)) + 2.0 * g * np.dot(X2[:, t], diag)
        diag += g * X2[:, t]
    return gains


def _eigengap_s(abs_values: np.ndarray) -> int:
    mags = np.abs(abs_values)
    n = len(mags)
    best_s, best_gap = 1, -np.inf
    for t in range(n - 1):
        if mags[t] == 0.0:
            break
        gap = (mags[t] - mags[t + 1]) / mags[t]
        if gap > best_gap:
            best_s, best_gap = t + 1, gap
    return best_s


def fit_multicomponent(net: Network, s=2, selection="fixed", fraction=None) -> McFit:
    """Rank-``s`` spectral expansion in greedy off-diagonal order.

    ``selection`` picks ``s``: ``fixed`` uses the argument, ``eigengap`` the
    largest relative gap of the |eigenvalue| spectrum, ``variance_threshold``
    the smallest ``s`` whose cumulative squared eigenvalues reach
    ``fraction * sum(A**2)``.
    """
    if net.directed:
        raise ValueError("fit_multicomponent needs an undirected network")
    n = net.n
    if selection not in SELECTIONS:
        raise ValueError(f"selection must be one of {SELECTIONS}, got {selection!r}")
    if selection != "fixed" and n < 2:
        raise ValueError(f"{selection} selection needs N >= 2")
    st = stats(net)
    if st.k_tot == 0:
        raise EmptyNetworkError("multi-component fit is undefined on a network without edges")
    full = symmetric_eigs(net.matrix)
    ordered = greedy_offdiag_order(full)
    tss_raw = float(np.sum(net.matrix ** 2))
    if selection == "fixed":
        s = int(s)
        if not 1 <= s <= n:
            raise ValueError(f"s must be in [1, {n}], got {s}")
        desc = f"fixed({s})"
    elif selection == "eigengap":
        s = _eigengap_s(full.values)
        desc = "eigengap"
    else:
        if fraction is None or not 0 < fraction <= 1:
            raise ValueError(f"fraction must be in (0, 1], got {fraction!r}")
        energy = np.cumsum(ordered.values ** 2)
        hits = np.flatnonzero(energy >= fraction * tss_raw * (1.0 - 1e-12))
        s = int(hits[0]) + 1 if hits.size else n
        desc = f"variance_threshold({fraction})"

    basis = ordered.take(s)
    gamma = basis.values
    X = basis.vectors
    model = BilinearModel.lowrank(gamma, X, X, tied=True)
    q = fit_quality(net.matrix, model.predict(), s, st.tss)
    params = {"gamma": gamma.tolist(), "s": s, "tss_raw": tss_raw,
              "ordering": basis.ordering, "selection": desc}
    return McFit("mc", X, params, q, model, net.node_labels, frozenset(),
                 basis=basis, selection=desc)


def mc_closed_form_uc(fit: EstimatorFit) -> np.ndarray:
    gamma = np.asarray(fit.params["gamma"], float)
    X2 = np.atleast_2d(fit.x.T).T ** 2
    diag = X2 @ gamma
    return (diag**2 + 2.0 * (X2 @ gamma**2)) / fit.quality.tss


def uc_multicomponent(fit: McFit, net: Network, method="closed_form") -> UcReport:
    from .undirected import unique_contribution

    return unique_contribution(fit, net, method)


def _uc2(g1, g2, x1, x2, tss):
    d = g1 * x1**2 + g2 * x2**2
    return (d**2 + 2.0 * (g1**2 * x1**2 + g2**2 * x2**2)) / tss


def uc_surface(fit: McFit, x1_values, x2_values) -> list[dict]:
    """Two-component unique contribution over a grid plus the observed nodes.

    Rows are dicts with keys ``x1, x2, uc, observed`` and, for observed rows,
    ``label``.
    """
    if fit.s != 2:
        raise ValueError(f"uc_surface needs s=2, got s={fit.s}")
    g1, g2 = fit.params["gamma"]
    tss = fit.quality.tss
    rows = []
    for a in np.asarray(x1_values, float):
        for b in np.asarray(x2_values, float):
            rows.append({"x1": a, "x2": b, "uc": _uc2(g1, g2, a, b, tss),
                         "observed": 0, "label": ""})
    for lab, (a, b) in zip(fit.labels, fit.x):
        rows.append({"x1": a, "x2": b, "uc": _uc2(g1, g2, a, b, tss),
                     "observed": 1, "label": lab})
    return rows


def write_uc_surface_csv(rows, path) -> None:
    with Path(path).open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["x1", "x2", "uc", "observed", "label"])
        for r in rows:
            w.writerow([repr(float(r["x1"])), repr(float(r["x2"])), repr(float(r["uc"])),
                        r["observed"], r["label"]])
