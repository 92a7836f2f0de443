"""One-component estimators for undirected networks: degree, eigenvector, Katz."""

from __future__ import annotations

import numpy as np

from .model import (
    BilinearModel,
    EmptyNetworkError,
    EstimatorFit,
    UcReport,
    fit_quality,
    oracle_delta_ss,
)
from .network import Network, stats
from .spectral import katz_solve, spectral_radius, symmetric_eigs

__all__ = [
    "fit_degree",
    "fit_eigenvector",
    "fit_katz",
    "unique_contribution",
    "closed_form_uc",
    "default_katz_alpha",
]


def _require_undirected(net: Network):
    if net.directed:
        raise ValueError("undirected estimator applied to a directed network")


def _require_edges(net: Network, what: str):
    st = stats(net)
    if st.k_tot == 0:
        raise EmptyNetworkError(f"{what} fit is undefined on a network without edges")
    return st


def fit_degree(net: Network) -> EstimatorFit:
    """``Ahat = a*(x_i + x_j - 1/N)`` with ``x = k / K_tot`` and ``a = K_tot / N``."""
    _require_undirected(net)
    st = _require_edges(net, "degree")
    n = net.n
    k = net.matrix.sum(axis=1)
    x = k / st.k_tot
    a = st.k_tot / n
    model = BilinearModel.additive(a, x, x, offset=-a / n, tied=True)
    q = fit_quality(net.matrix, model.predict(), 1, st.tss)
    return EstimatorFit("degree", x, {"a": a}, q, model, net.node_labels)


def fit_eigenvector(net: Network) -> EstimatorFit:
    """``Ahat = gamma * x_i * x_j`` with the principal eigenpair."""
    _require_undirected(net)
    st = _require_edges(net, "eigenvector")
    basis = symmetric_eigs(net.matrix)
    top = max(basis.pairs, key=lambda p: p.value)
    gamma, x = top.value, np.array(top.vector)
    flags = set()
    # zero or negative entries: Perron vector not unique (disconnected graph)
    if x.min() <= 1e-12 * np.abs(x).max():
        flags.add("ambiguous_support")
    model = BilinearModel.lowrank(gamma, x, x, tied=True)
    q = fit_quality(net.matrix, model.predict(), 1, st.tss)
    return EstimatorFit("eigenvector", x, {"gamma": gamma}, q, model,
                        net.node_labels, frozenset(flags))


def default_katz_alpha(matrix, lambda1=None) -> float:
    lam = spectral_radius(matrix) if lambda1 is None else lambda1
    return 0.5 / lam


def fit_katz(net: Network, alpha=None, beta=1.0) -> EstimatorFit:
    """``Ahat = gamma * x_i * x_j - B`` around the Katz vector.

    ``gamma = 1/(alpha * sum x^2)`` and ``B = beta/(alpha * sum x)``: the
    constant that makes the Katz vector a stationary point of SS.
    """
    _require_undirected(net)
    st = _require_edges(net, "Katz")
    lam = spectral_radius(net.matrix)
    if alpha is None:
        alpha = 0.5 / lam
    if alpha <= 0:
        raise ValueError(f"Katz estimator needs alpha > 0, got {alpha!r}")
    x = katz_solve(net.matrix, alpha, beta, lambda1=lam)
    gamma = 1.0 / (alpha * np.dot(x, x))
    B = beta / (alpha * x.sum())
    model = BilinearModel.lowrank(gamma, x, x, offset=-B, tied=True)
    q = fit_quality(net.matrix, model.predict(), 1, st.tss)
    params = {"alpha": alpha, "beta": beta, "gamma": gamma, "B": B, "lambda1": lam}
    return EstimatorFit("katz", x, params, q, model, net.node_labels)


def closed_form_uc(fit: EstimatorFit, net: Network) -> np.ndarray:
    tss = fit.quality.tss
    n = net.n
    if fit.kind == "degree":
        k = net.matrix.sum(axis=1)
        return 2.0 * (n + 1) * k**2 / (n * n * tss)
    if fit.kind == "eigenvector":
        g, x2 = fit.params["gamma"], fit.x**2
        return g * x2 * (g * x2 + 2.0 * g) / tss
    if fit.kind == "katz":
        g, B, alpha = fit.params["gamma"], fit.params["B"], fit.params["alpha"]
        x2 = fit.x**2
        return g * x2 * (g * x2 - 2.0 * B + 2.0 / alpha) / tss
    if fit.kind == "mc":
        from .multicomponent import mc_closed_form_uc

        return mc_closed_form_uc(fit)
    raise ValueError(f"no closed form for estimator kind {fit.kind!r}")


def unique_contribution(fit: EstimatorFit, net: Network, method="closed_form") -> UcReport:
    """Per-node gain in R^2 from including the node's properties."""
    if method == "closed_form":
        uc = closed_form_uc(fit, net)
    elif method == "oracle":
        uc = oracle_delta_ss(fit.model, net.matrix, "tot") / fit.quality.tss
    else:
        raise ValueError(f"method must be 'closed_form' or 'oracle', got {method!r}")
    return UcReport.build(uc, net.node_labels, method)
