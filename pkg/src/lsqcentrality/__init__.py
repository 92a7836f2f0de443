"""Node centrality as least-squares estimation of the adjacency matrix."""

from ._kernels import BACKEND
from .directed import fit_degree_directed, fit_hits, fit_multicomponent_directed, uc_directed
from .model import (
    DirectedFit,
    DirectedUcReport,
    EmptyNetworkError,
    EstimatorFit,
    FitQuality,
    UcReport,
    rank,
)
from .multicomponent import McFit, fit_multicomponent, greedy_offdiag_order, uc_multicomponent, uc_surface
from .network import (
    Network,
    NetworkFormatError,
    NetworkStats,
    florentine_fixture,
    from_matrix,
    gnp_random,
    load_edge_list,
    load_matrix_market,
    stats,
    write_matrix_market,
)
from .spectral import KatzParameterError, SpectralError, katz_solve, symmetric_eigs, top_singular_triplets
from .undirected import fit_degree, fit_eigenvector, fit_katz, unique_contribution

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "DirectedFit",
    "DirectedUcReport",
    "EmptyNetworkError",
    "EstimatorFit",
    "FitQuality",
    "KatzParameterError",
    "McFit",
    "Network",
    "NetworkFormatError",
    "NetworkStats",
    "SpectralError",
    "UcReport",
    "fit_degree",
    "fit_degree_directed",
    "fit_eigenvector",
    "fit_hits",
    "fit_katz",
    "fit_multicomponent",
    "fit_multicomponent_directed",
    "florentine_fixture",
    "from_matrix",
    "gnp_random",
    "greedy_offdiag_order",
    "katz_solve",
    "load_edge_list",
    "load_matrix_market",
    "rank",
    "stats",
    "symmetric_eigs",
    "top_singular_triplets",
    "uc_directed",
    "uc_multicomponent",
    "uc_surface",
    "unique_contribution",
    "write_matrix_market",
]
