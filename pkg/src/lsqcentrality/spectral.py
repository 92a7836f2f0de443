"""Eigen/singular decompositions and the Katz linear solve.

Dense LAPACK routines do the factorizations; this module adds deterministic
ordering and signs, and checks the residual contracts before returning.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "SpectralError",
    "KatzParameterError",
    "EigenPair",
    "SingularTriplet",
    "SpectralBasis",
    "symmetric_eigs",
    "top_singular_triplets",
    "spectral_radius",
    "katz_solve",
    "fix_sign",
]

RESIDUAL_TOL = 1e-10
ORTHO_TOL = 1e-8


class SpectralError(ArithmeticError):
    """A decomposition or solve missed its residual contract."""

    def __init__(self, message, residual=float("nan")):
        super().__init__(f"{message} (best residual {residual:.3e})")
        self.residual = residual


class KatzParameterError(ValueError):
    """Attenuation factor outside the convergent range."""

    def __init__(self, alpha, lambda1):
        super().__init__(
            f"alpha={alpha!r} violates alpha*lambda1 < 1 with lambda1={lambda1!r}"
            f" (need alpha < {1.0 / lambda1 if lambda1 > 0 else float('inf')!r})"
        )
        self.alpha = alpha
        self.lambda1 = lambda1


@dataclass(frozen=True)
class EigenPair:
    value: float
    vector: np.ndarray


@dataclass(frozen=True)
class SingularTriplet:
    value: float
    left: np.ndarray
    right: np.ndarray


@dataclass(frozen=True)
class SpectralBasis:
    pairs: tuple
    ordering: str  # "abs_value_desc" | "sigma_desc" | "off_diagonal_greedy"

    def __len__(self):
        return len(self.pairs)

    @property
    def values(self) -> np.ndarray:
        return np.array([p.value for p in self.pairs], dtype=float)

    @property
    def vectors(self) -> np.ndarray:
        """N x k matrix of eigenvectors (or left singular vectors)."""
        if isinstance(self.pairs[0], SingularTriplet):
            return np.column_stack([p.left for p in self.pairs])
        return np.column_stack([p.vector for p in self.pairs])

    @property
    def right_vectors(self) -> np.ndarray:
        if isinstance(self.pairs[0], SingularTriplet):
            return np.column_stack([p.right for p in self.pairs])
        return self.vectors

    def take(self, s: int) -> "SpectralBasis":
        return SpectralBasis(self.pairs[:s], self.ordering)


def fix_sign(v: np.ndarray) -> float:
    """Sign that makes the largest-magnitude entry of ``v`` positive.

    Entries within 1e-12 of the maximum magnitude count as tied; the first one
    decides, so the result does not depend on last-bit noise.
    """
    mag = np.abs(v)
    top = mag.max()
    if top == 0.0:
        return 1.0
    first = int(np.argmax(mag >= top * (1.0 - 1e-12)))
    return 1.0 if v[first] > 0 else -1.0


def _check_symmetric(M):
    M = np.asarray(M, dtype=np.float64)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    scale = max(np.abs(M).max(), 1.0)
    if np.abs(M - M.T).max() > 1e-12 * scale:
        raise ValueError("matrix is not symmetric within 1e-12")
    return M


def symmetric_eigs(matrix, k=None, tol=RESIDUAL_TOL) -> SpectralBasis:
    """Top-``k`` eigenpairs of a symmetric matrix, ordered by |value| descending.

    Ties in |value| put the positive eigenvalue first. Raises ``SpectralError``
    if any pair misses ``||A v - g v|| <= tol * ||A||_F``.
    """
    A = _check_symmetric(matrix)
    n = A.shape[0]
    k = n if k is None else int(k)
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}], got {k}")
    w, V = np.linalg.eigh(A)
    order = np.lexsort((-w, -np.abs(w)))[:k]
    fro = np.linalg.norm(A)
    bound = tol * (fro if fro > 0 else 1.0)
    pairs = []
    worst = 0.0
    for t in order:
        v = V[:, t] * fix_sign(V[:, t])
        v = np.ascontiguousarray(v)
        v.setflags(write=False)
        res = float(np.linalg.norm(A @ v - w[t] * v))
        worst = max(worst, res)
        pairs.append(EigenPair(float(w[t]), v))
    if worst > bound:
        raise SpectralError("symmetric eigendecomposition missed residual tolerance", worst)
    return SpectralBasis(tuple(pairs), "abs_value_desc")


def top_singular_triplets(matrix, k=None, tol=RESIDUAL_TOL) -> SpectralBasis:
    """Top-``k`` singular triplets ordered by singular value descending.

    ``left`` pairs with rows (out-properties), ``right`` with columns.
    """
    A = np.asarray(matrix, dtype=np.float64)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    n = A.shape[0]
    k = n if k is None else int(k)
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}], got {k}")
    U, sig, Vt = np.linalg.svd(A)
    fro = np.linalg.norm(A)
    bound = tol * (fro if fro > 0 else 1.0)
    pairs = []
    worst = 0.0
    for t in range(k):
        sgn = fix_sign(U[:, t])
        u = np.ascontiguousarray(U[:, t] * sgn)
        v = np.ascontiguousarray(Vt[t] * sgn)
        u.setflags(write=False)
        v.setflags(write=False)
        r1 = np.linalg.norm(A @ v - sig[t] * u)
        r2 = np.linalg.norm(A.T @ u - sig[t] * v)
        worst = max(worst, float(r1), float(r2))
        pairs.append(SingularTriplet(float(sig[t]), u, v))
    if worst > bound:
        raise SpectralError("singular value decomposition missed residual tolerance", worst)
    return SpectralBasis(tuple(pairs), "sigma_desc")


def spectral_radius(matrix) -> float:
    """Largest eigenvalue magnitude; equals lambda_1 for nonnegative matrices."""
    A = np.asarray(matrix, dtype=np.float64)
    if np.array_equal(A, A.T):
        w = np.linalg.eigvalsh(A)
    else:
        w = np.linalg.eigvals(A)
    return float(np.max(np.abs(w))) if w.size else 0.0


def katz_solve(matrix, alpha, beta=1.0, lambda1=None, tol=RESIDUAL_TOL) -> np.ndarray:
    """Solve ``x = alpha * A^T x + beta * 1``.

    ``lambda1`` may be passed to skip recomputing the spectral radius.
    """
    A = np.asarray(matrix, dtype=np.float64)
    n = A.shape[0]
    if beta <= 0:
        raise ValueError(f"beta must be positive, got {beta!r}")
    if alpha < 0:
        raise KatzParameterError(alpha, spectral_radius(A) if lambda1 is None else lambda1)
    lam = spectral_radius(A) if lambda1 is None else float(lambda1)
    if alpha * lam >= 1.0:
        raise KatzParameterError(alpha, lam)
    rhs = np.full(n, float(beta))
    if alpha == 0.0:
        return rhs
    M = np.eye(n) - alpha * A.T
    x = np.linalg.solve(M, rhs)
    res = float(np.linalg.norm(x - alpha * (A.T @ x) - rhs))
    if res > tol * np.linalg.norm(x):
        # one round of iterative refinement before giving up
        x = x + np.linalg.solve(M, rhs - M @ x)
        res = float(np.linalg.norm(x - alpha * (A.T @ x) - rhs))
        if res > tol * np.linalg.norm(x):
            raise SpectralError("Katz linear solve missed residual tolerance", res)
    return x
