"""Shared estimator machinery: the additive-plus-bilinear model, fit quality,
unique-contribution reports and rankings."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .network import Network, stats

__all__ = [
    "BilinearModel",
    "FitQuality",
    "EstimatorFit",
    "DirectedFit",
    "UcReport",
    "DirectedUcReport",
    "EmptyNetworkError",
    "fit_quality",
    "oracle_delta_ss",
    "rank_labels",
    "rank",
]


class EmptyNetworkError(ArithmeticError):
    """The estimator is undefined on a network without edges."""


@dataclass(frozen=True, eq=False)
class BilinearModel:
    """``Ahat[i, j] = offset + scale*(p[i] + q[j]) + sum_t gamma[t]*U[i,t]*V[j,t]``.

    ``tied`` marks undirected models where ``p is q`` and ``U is V`` describe
    one set of node properties rather than separate row/column ones.
    """

    offset: float
    scale: float
    p: np.ndarray
    q: np.ndarray
    gamma: np.ndarray
    U: np.ndarray
    V: np.ndarray
    tied: bool

    @classmethod
    def additive(cls, scale, p, q, offset, tied):
        n = len(p)
        empty = np.zeros((n, 0))
        return cls(float(offset), float(scale), np.asarray(p, float), np.asarray(q, float),
                   np.zeros(0), empty, empty, tied)

    @classmethod
    def lowrank(cls, gamma, U, V, offset=0.0, tied=False):
        U = np.atleast_2d(np.asarray(U, float).T).T
        V = np.atleast_2d(np.asarray(V, float).T).T
        n = U.shape[0]
        z = np.zeros(n)
        return cls(float(offset), 0.0, z, z, np.atleast_1d(np.asarray(gamma, float)), U, V, tied)

    def predict(self) -> np.ndarray:
        return _kernels.predict(self.offset, self.scale, self.p, self.q,
                                self.gamma, self.U, self.V)

    def ss_gradient(self, A) -> np.ndarray:
        """Gradient of SS with respect to every node property.

        Returns an N x m array; columns are the additive property (if any)
        then one column per rank-one component. For directed models the
        row-side and column-side gradients are stacked horizontally.
        """
        R = np.asarray(A, float) - self.predict()
        row_sum, col_sum = R.sum(axis=1), R.sum(axis=0)
        g_row, g_col = [], []
        if self.scale != 0.0:
            g_row.append(-2.0 * self.scale * row_sum)
            g_col.append(-2.0 * self.scale * col_sum)
        if self.gamma.size:
            g_row.append(-2.0 * (R @ self.V) * self.gamma)
            g_col.append(-2.0 * (R.T @ self.U) * self.gamma)
        g_row = np.column_stack(g_row) if g_row else np.zeros((len(R), 0))
        g_col = np.column_stack(g_col) if g_col else np.zeros((len(R), 0))
        if self.tied:
            return g_row + g_col
        return np.hstack([g_row, g_col])


@dataclass(frozen=True)
class FitQuality:
    """Goodness of fit.

    ``ss``/``r2``/``r2_adj`` use every entry of the matrix, diagonal included;
    unique contributions are differences of this ``r2``. The ``*_link``
    variants leave the (structurally zero) diagonal out of the residuals and
    are the link-level scores reported for networks and benchmarks.
    """

    ss: float
    tss: float
    r2: float
    r2_adj: float
    s_eff: int
    ss_link: float
    r2_link: float
    r2_adj_link: float


def _adjust(r2, n, s_eff):
    if n <= s_eff:
        return float("nan")
    return 1.0 - (1.0 - r2) * n / (n - s_eff)


def fit_quality(A, Ahat, s_eff, tss=None) -> FitQuality:
    A = np.asarray(A, float)
    n = A.shape[0]
    if tss is None:
        tss = float(np.sum((A - A.mean()) ** 2))
    R = A - Ahat
    ss = float(np.sum(R * R))
    ss_link = ss - float(np.sum(np.diag(R) ** 2))
    if tss > 0:
        r2, r2_link = 1.0 - ss / tss, 1.0 - ss_link / tss
    else:
        r2 = r2_link = float("nan")
    return FitQuality(
        ss=ss, tss=float(tss), r2=r2, r2_adj=_adjust(r2, n, s_eff), s_eff=int(s_eff),
        ss_link=ss_link, r2_link=r2_link, r2_adj_link=_adjust(r2_link, n, s_eff),
    )


@dataclass(frozen=True, eq=False)
class EstimatorFit:
    """Fitted undirected estimator.

    ``x`` is a length-N vector for one-component estimators and an N x s
    matrix for the multi-component one.
    """

    kind: str
    x: np.ndarray
    params: dict
    quality: FitQuality
    model: BilinearModel = field(repr=False)
    labels: tuple[str, ...] = field(repr=False)
    flags: frozenset = frozenset()

    @property
    def s(self) -> int:
        return 1 if self.x.ndim == 1 else self.x.shape[1]

    def estimate(self) -> np.ndarray:
        return self.model.predict()


@dataclass(frozen=True, eq=False)
class DirectedFit:
    kind: str
    x_out: np.ndarray
    x_in: np.ndarray
    params: dict
    quality: FitQuality
    model: BilinearModel = field(repr=False)
    labels: tuple[str, ...] = field(repr=False)

    @property
    def s(self) -> int:
        return 1 if self.x_out.ndim == 1 else self.x_out.shape[1]

    def estimate(self) -> np.ndarray:
        return self.model.predict()


def rank_labels(values, labels) -> tuple[str, ...]:
    """Labels by descending value; ties (relative 1e-12) by label ascending."""
    v = np.asarray(values, float)
    scale = np.max(np.abs(v)) if v.size else 0.0
    key = np.round(v / scale, 12) if scale > 0 else np.zeros_like(v)
    order = sorted(range(len(v)), key=lambda i: (-key[i], labels[i]))
    return tuple(labels[i] for i in order)


@dataclass(frozen=True, eq=False)
class UcReport:
    uc: np.ndarray
    ranks: tuple[str, ...]
    method: str
    labels: tuple[str, ...] = field(repr=False, default=())

    @classmethod
    def build(cls, uc, labels, method):
        uc = np.asarray(uc, float)
        return cls(uc, rank_labels(uc, labels), method, tuple(labels))

    def position(self, label) -> int:
        """1-based rank of ``label``."""
        return self.ranks.index(label) + 1


@dataclass(frozen=True, eq=False)
class DirectedUcReport:
    uc_out: np.ndarray
    uc_in: np.ndarray
    uc_tot: np.ndarray
    ranks_out: tuple[str, ...]
    ranks_in: tuple[str, ...]
    ranks_tot: tuple[str, ...]
    method: str
    labels: tuple[str, ...] = field(repr=False, default=())

    @classmethod
    def build(cls, uc_out, uc_in, uc_tot, labels, method):
        return cls(
            np.asarray(uc_out, float), np.asarray(uc_in, float), np.asarray(uc_tot, float),
            rank_labels(uc_out, labels), rank_labels(uc_in, labels),
            rank_labels(uc_tot, labels), method, tuple(labels),
        )

    def scope(self, name) -> UcReport:
        uc = {"out": self.uc_out, "in": self.uc_in, "tot": self.uc_tot}[name]
        return UcReport.build(uc, self.labels, self.method)


def rank(report) -> list[str]:
    """Ranked label list (most central first)."""
    if isinstance(report, DirectedUcReport):
        return list(report.ranks_tot)
    return list(report.ranks)


def oracle_delta_ss(model: BilinearModel, A, scope="tot") -> np.ndarray:
    """Leave-one-node-out increase in SS, with no refit.

    For every node ``k`` the node's properties in ``scope`` are set to zero
    (``out``: row side, ``in``: column side, ``tot``: both) and SS is summed
    again over all N^2 entries. No refit takes place.
    """
    A = np.asarray(A, float)
    if model.tied and scope != "tot":
        raise ValueError("undirected models only support scope='tot'")
    zero_row = scope in ("out", "tot")
    zero_col = scope in ("in", "tot")
    R = A - model.predict()
    base = float(np.sum(R * R))
    loo = _kernels.loo_ss(A, model.offset, model.scale, model.p, model.q,
                          model.gamma, model.U, model.V, zero_row, zero_col)
    return loo - base


def network_tss(net: Network) -> float:
    return stats(net).tss
