"""Dense numeric kernels.

Every kernel exists twice: a numba ``@njit`` version and a pure-numpy
version with identical semantics. The backend is chosen once at import time
from the ``LSQCENTRALITY_BACKEND`` environment variable (``numba`` or
``numpy``). When unset, numba is used if it imports, numpy otherwise.

The low-rank-plus-additive model shared by every estimator is

    Ahat[i, j] = offset + scale * (p[i] + q[j]) + sum_t gamma[t] * U[i, t] * V[j, t]

so the leave-one-node-out oracle only needs one kernel.
"""

from __future__ import annotations

import os

import numpy as np

__all__ = [
    "BACKEND",
    "predict",
    "loo_ss",
    "greedy_scores",
    "numpy_impl",
    "numba_impl",
]


# --------------------------------------------------------------------------
# numpy reference implementations
# --------------------------------------------------------------------------


def _predict_np(offset, scale, p, q, gamma, U, V):
    out = (U * gamma) @ V.T
    out += offset
    if scale != 0.0:
        out += scale * (p[:, None] + q[None, :])
    return out


def _loo_ss_np(A, offset, scale, p, q, gamma, U, V, zero_row, zero_col):
    n = A.shape[0]
    ss = np.empty(n)
    for k in range(n):
        pk, qk, Uk, Vk = p, q, U, V
        if zero_row:
            pk = p.copy()
            pk[k] = 0.0
            Uk = U.copy()
            Uk[k] = 0.0
        if zero_col:
            qk = q.copy()
            qk[k] = 0.0
            Vk = V.copy()
            Vk[k] = 0.0
        R = A - _predict_np(offset, scale, pk, qk, gamma, Uk, Vk)
        ss[k] = np.sum(R * R)
    return ss


def _greedy_scores_np(gamma, X2, fourth, diag_so_far, remaining):
    # gamma^2 (1 + sum_i x^4) + 2 gamma sum_i x^2 * diag_so_far
    cross = X2.T @ diag_so_far
    scores = gamma * gamma * (1.0 + fourth) + 2.0 * gamma * cross
    return np.where(remaining, scores, -np.inf)


numpy_impl = {
    "predict": _predict_np,
    "loo_ss": _loo_ss_np,
    "greedy_scores": _greedy_scores_np,
}


# --------------------------------------------------------------------------
# numba implementations
# --------------------------------------------------------------------------

numba_impl = None

try:  # pragma: no cover - exercised when numba is installed
    from numba import njit

    @njit(cache=True)
    def _predict_nb(offset, scale, p, q, gamma, U, V):
        n = U.shape[0]
        m = gamma.shape[0]
        out = np.empty((n, n))
        for i in range(n):
            for j in range(n):
                val = offset + scale * (p[i] + q[j])
                for t in range(m):
                    val += gamma[t] * U[i, t] * V[j, t]
                out[i, j] = val
        return out

    @njit(cache=True)
    def _loo_ss_nb(A, offset, scale, p, q, gamma, U, V, zero_row, zero_col):
        # Only row k and column k of the estimate change when node k is
        # zeroed, so each SS is patched from the full residual in O(N).
        n = A.shape[0]
        R = A - _predict_nb(offset, scale, p, q, gamma, U, V)
        base = 0.0
        for i in range(n):
            for j in range(n):
                base += R[i, j] * R[i, j]
        ss = np.empty(n)
        for k in range(n):
            acc = base
            for j in range(n):
                for side in range(2):
                    # side 0: entry (k, j); side 1: entry (j, k), skipping (k, k) twice
                    if side == 1 and j == k:
                        continue
                    i, c = (k, j) if side == 0 else (j, k)
                    zi = zero_row and i == k
                    zc = zero_col and c == k
                    if not (zi or zc):
                        continue
                    val = offset
                    if not zi:
                        val += scale * p[i]
                    if not zc:
                        val += scale * q[c]
                    r = A[i, c] - val
                    acc += r * r - R[i, c] * R[i, c]
            ss[k] = acc
        return ss

    @njit(cache=True)
    def _greedy_scores_nb(gamma, X2, fourth, diag_so_far, remaining):
        m = gamma.shape[0]
        n = X2.shape[0]
        out = np.empty(m)
        for t in range(m):
            if not remaining[t]:
                out[t] = -np.inf
                continue
            cross = 0.0
            for i in range(n):
                cross += X2[i, t] * diag_so_far[i]
            g = gamma[t]
            out[t] = g * g * (1.0 + fourth[t]) + 2.0 * g * cross
        return out

    numba_impl = {
        "predict": _predict_nb,
        "loo_ss": _loo_ss_nb,
        "greedy_scores": _greedy_scores_nb,
    }
except ImportError:
    pass


def _select_backend() -> str:
    requested = os.environ.get("LSQCENTRALITY_BACKEND", "").strip().lower()
    if requested not in ("", "numba", "numpy"):
        raise ValueError(
            f"LSQCENTRALITY_BACKEND must be 'numba' or 'numpy', got {requested!r}"
        )
    if requested == "numpy":
        return "numpy"
    if numba_impl is None:
        if requested == "numba":
            raise ImportError("LSQCENTRALITY_BACKEND=numba but numba is not installed")
        return "numpy"
    return "numba"


BACKEND = _select_backend()
_impl = numba_impl if BACKEND == "numba" else numpy_impl


def _f64(a):
    return np.ascontiguousarray(a, dtype=np.float64)


def predict(offset, scale, p, q, gamma, U, V):
    """Dense estimate of the bilinear-plus-additive model."""
    return _impl["predict"](
        float(offset), float(scale), _f64(p), _f64(q), _f64(gamma), _f64(U), _f64(V)
    )


def loo_ss(A, offset, scale, p, q, gamma, U, V, zero_row=True, zero_col=True):
    """Residual sum of squares over all N^2 entries, once per node with that
    node's properties set to zero.

    ``zero_row`` zeroes the node's row-side properties (``p[k]``, ``U[k]``),
    ``zero_col`` its column-side ones (``q[k]``, ``V[k]``).
    """
    return _impl["loo_ss"](
        _f64(A), float(offset), float(scale), _f64(p), _f64(q), _f64(gamma),
        _f64(U), _f64(V), bool(zero_row), bool(zero_col),
    )


def greedy_scores(gamma, X2, fourth, diag_so_far, remaining):
    """Off-diagonal gain of each remaining eigenpair; ``-inf`` for used ones."""
    return _impl["greedy_scores"](
        _f64(gamma), _f64(X2), _f64(fourth), _f64(diag_so_far),
        np.ascontiguousarray(remaining, dtype=np.bool_),
    )
