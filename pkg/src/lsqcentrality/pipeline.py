"""Estimator lookup by name, shared by the harness and the CLI."""

from __future__ import annotations

from .directed import fit_degree_directed, fit_hits, fit_multicomponent_directed, uc_directed
from .multicomponent import fit_multicomponent
from .network import Network
from .undirected import fit_degree, fit_eigenvector, fit_katz, unique_contribution

__all__ = ["UNDIRECTED", "DIRECTED", "UnsupportedEstimator", "canonical_name", "fit_by_name", "uc_for"]

UNDIRECTED = ("degree", "eigenvector", "katz", "mc")
DIRECTED = ("degree", "hits", "mc")


class UnsupportedEstimator(ValueError):
    pass


def canonical_name(name: str, directed: bool) -> str:
    name = name.lower()
    if directed and name == "eigenvector":
        return "hits"
    if not directed and name == "hits":
        return "eigenvector"
    valid = DIRECTED if directed else UNDIRECTED
    if name not in valid:
        kind = "directed" if directed else "undirected"
        raise UnsupportedEstimator(f"estimator {name!r} is not available for {kind} networks")
    return name


def fit_by_name(net: Network, name: str, s=2, alpha=None, beta=1.0,
                selection="fixed", fraction=None):
    name = canonical_name(name, net.directed)
    if net.directed:
        if name == "degree":
            return fit_degree_directed(net)
        if name == "hits":
            return fit_hits(net)
        return fit_multicomponent_directed(net, s)
    if name == "degree":
        return fit_degree(net)
    if name == "eigenvector":
        return fit_eigenvector(net)
    if name == "katz":
        return fit_katz(net, alpha=alpha, beta=beta)
    return fit_multicomponent(net, s=s, selection=selection, fraction=fraction)


def uc_for(fit, net: Network, method="closed_form"):
    if net.directed:
        return uc_directed(fit, net, method)
    return unique_contribution(fit, net, method)
