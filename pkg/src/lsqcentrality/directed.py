"""Directed estimators: out/in degree, hub-authority, and the SVD expansion.

Row ``i`` of the matrix holds the edges leaving ``i``; out-properties act on
rows and in-properties on columns. Each node carries two properties per
component, so R^2_adj uses ``s_eff = 2 * s``.
"""

from __future__ import annotations

from .model import (
    BilinearModel,
    DirectedFit,
    DirectedUcReport,
    EmptyNetworkError,
    fit_quality,
    oracle_delta_ss,
)
from .network import Network, stats
from .spectral import top_singular_triplets

__all__ = [
    "fit_degree_directed",
    "fit_hits",
    "fit_multicomponent_directed",
    "uc_directed",
    "closed_form_uc_directed",
]


def _require_edges(net: Network, what: str):
    st = stats(net)
    if st.k_tot == 0:
        raise EmptyNetworkError(f"{what} fit is undefined on a network without edges")
    return st


def fit_degree_directed(net: Network) -> DirectedFit:
    st = _require_edges(net, "directed degree")
    n = net.n
    x_out = net.out_degree() / st.k_tot
    x_in = net.in_degree() / st.k_tot
    a = st.k_tot / n
    model = BilinearModel.additive(a, x_out, x_in, offset=-a / n, tied=False)
    q = fit_quality(net.matrix, model.predict(), 2, st.tss)
    return DirectedFit("degree", x_out, x_in, {"a": a}, q, model, net.node_labels)


def _svd_fit(net: Network, s: int, kind: str) -> DirectedFit:
    st = _require_edges(net, kind)
    n = net.n
    if not 1 <= s <= n:
        raise ValueError(f"s must be in [1, {n}], got {s}")
    basis = top_singular_triplets(net.matrix, s)
    gamma = basis.values
    U, V = basis.vectors, basis.right_vectors
    model = BilinearModel.lowrank(gamma, U, V, tied=False)
    q = fit_quality(net.matrix, model.predict(), 2 * s, st.tss)
    if kind == "hits":
        return DirectedFit("hits", U[:, 0].copy(), V[:, 0].copy(), {"gamma": float(gamma[0])},
                           q, model, net.node_labels)
    return DirectedFit("mc", U, V, {"gamma": gamma.tolist(), "s": s}, q, model, net.node_labels)


def fit_hits(net: Network) -> DirectedFit:
    """``Ahat = gamma * x_out_i * x_in_j`` from the principal singular triplet."""
    return _svd_fit(net, 1, "hits")


def fit_multicomponent_directed(net: Network, s=2) -> DirectedFit:
    """Top-``s`` singular triplets, singular values descending."""
    return _svd_fit(net, int(s), "mc")


def closed_form_uc_directed(fit: DirectedFit, net: Network):
    """``(uc_out, uc_in, uc_tot)`` from the closed-form expressions."""
    tss = fit.quality.tss
    n = net.n
    if fit.kind == "degree":
        ko, ki = net.out_degree(), net.in_degree()
        uc_out = ko**2 / (n * tss)
        uc_in = ki**2 / (n * tss)
        uc_tot = ((ko**2 + ki**2) / n + 2.0 * ko * ki / n**2) / tss
        return uc_out, uc_in, uc_tot
    if fit.kind in ("hits", "mc"):
        m = fit.model
        g = m.gamma
        Uo2, Vi2 = m.U**2, m.V**2
        uc_out = (Uo2 @ g**2) / tss
        uc_in = (Vi2 @ g**2) / tss
        cross = (m.U * m.V) @ g
        uc_tot = uc_out + uc_in + cross**2 / tss
        return uc_out, uc_in, uc_tot
    raise ValueError(f"no closed form for directed estimator kind {fit.kind!r}")


def uc_directed(fit: DirectedFit, net: Network, method="closed_form") -> DirectedUcReport:
    """Out, in and total unique contributions of every node."""
    if method == "closed_form":
        uc_out, uc_in, uc_tot = closed_form_uc_directed(fit, net)
    elif method == "oracle":
        A, tss = net.matrix, fit.quality.tss
        uc_out = oracle_delta_ss(fit.model, A, "out") / tss
        uc_in = oracle_delta_ss(fit.model, A, "in") / tss
        uc_tot = oracle_delta_ss(fit.model, A, "tot") / tss
    else:
        raise ValueError(f"method must be 'closed_form' or 'oracle', got {method!r}")
    return DirectedUcReport.build(uc_out, uc_in, uc_tot, net.node_labels, method)
