"""Network container, file loaders and derived statistics."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

__all__ = [
    "Network",
    "NetworkStats",
    "NetworkFormatError",
    "from_matrix",
    "load_matrix_market",
    "load_edge_list",
    "write_matrix_market",
    "stats",
    "florentine_fixture",
    "gnp_random",
]


class NetworkFormatError(ValueError):
    """Raised for malformed or inconsistent network input."""


@dataclass(frozen=True, eq=False)
class Network:
    """A labeled, loop-free graph stored as a dense matrix.

    ``matrix[i, j]`` is the weight of the edge from ``i`` to ``j``.
    """

    node_labels: tuple[str, ...]
    matrix: np.ndarray
    directed: bool = False
    weighted: bool = False
    self_loops_dropped: int = field(default=0, compare=False)

    def __post_init__(self):
        A = np.array(self.matrix, dtype=np.float64, copy=True)
        labels = tuple(str(s) for s in self.node_labels)
        n = len(labels)
        if n < 1:
            raise NetworkFormatError("a network needs at least one node")
        if len(set(labels)) != n:
            raise NetworkFormatError("node labels must be unique")
        if A.shape != (n, n):
            raise NetworkFormatError(f"matrix shape {A.shape} does not match {n} labels")
        if not np.all(np.isfinite(A)):
            raise NetworkFormatError("matrix entries must be finite")
        if np.any(np.diag(A) != 0.0):
            raise NetworkFormatError("self-loops are not allowed (diagonal must be zero)")
        if not self.directed and not np.array_equal(A, A.T):
            raise NetworkFormatError("undirected network requires a symmetric matrix")
        if not self.weighted and not np.all((A == 0.0) | (A == 1.0)):
            raise NetworkFormatError("unweighted network entries must be 0 or 1")
        A.setflags(write=False)
        object.__setattr__(self, "matrix", A)
        object.__setattr__(self, "node_labels", labels)

    @property
    def n(self) -> int:
        return len(self.node_labels)

    @property
    def binary(self) -> bool:
        return bool(np.all((self.matrix == 0.0) | (self.matrix == 1.0)))

    def index(self, label: str) -> int:
        return self.node_labels.index(label)

    def edges(self) -> list[tuple[int, int]]:
        """Edge index pairs; each undirected edge once with ``i < j``."""
        A = self.matrix
        if self.directed:
            rows, cols = np.nonzero(A)
        else:
            rows, cols = np.nonzero(np.triu(A, 1))
        return list(zip(rows.tolist(), cols.tolist()))

    def out_degree(self) -> np.ndarray:
        return self.matrix.sum(axis=1)

    def in_degree(self) -> np.ndarray:
        return self.matrix.sum(axis=0)


@dataclass(frozen=True)
class NetworkStats:
    n: int
    e: int
    k_tot: float
    a_bar: float
    tss: float


def from_matrix(matrix, labels=None, directed=None, weighted=None) -> Network:
    """Wrap a square matrix; flags default to what the entries imply."""
    A = np.asarray(matrix, dtype=np.float64)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise NetworkFormatError(f"expected a square matrix, got shape {A.shape}")
    if labels is None:
        labels = [str(i) for i in range(A.shape[0])]
    if directed is None:
        directed = not np.array_equal(A, A.T)
    if weighted is None:
        weighted = not bool(np.all((A == 0.0) | (A == 1.0)))
    return Network(tuple(labels), A, directed=directed, weighted=weighted)


def _finish(labels, entries, n, directed, weighted, source) -> Network:
    """Assemble a matrix from (i, j, w) triples: drop loops, merge duplicates."""
    A = np.zeros((n, n))
    loops = 0
    for i, j, w in entries:
        if i == j:
            loops += 1
            continue
        if w == 0.0:
            continue
        pairs = [(i, j)] if directed else [(i, j), (j, i)]
        for a, b in pairs:
            if weighted:
                A[a, b] += w
            else:
                A[a, b] = 1.0
    if loops:
        warnings.warn(f"{source}: dropped {loops} self-loop entr{'y' if loops == 1 else 'ies'}")
    return Network(tuple(labels), A, directed=directed, weighted=weighted,
                   self_loops_dropped=loops)


def load_matrix_market(path) -> Network:
    """Read a Matrix Market coordinate file.

    ``symmetric`` headers give undirected networks and ``pattern`` fields give
    unweighted ones. Node labels come from a ``% labels:`` comment when one
    is present, otherwise they are the 1-based indices as strings.
    """
    path = Path(path)
    with path.open() as fh:
        header = fh.readline()
        tokens = header.strip().split()
        if (
            len(tokens) != 5
            or tokens[0].lower() != "%%matrixmarket"
            or tokens[1].lower() != "matrix"
            or tokens[2].lower() != "coordinate"
        ):
            raise NetworkFormatError(f"{path}: unsupported or malformed header {header.strip()!r}")
        fieldname, symmetry = tokens[3].lower(), tokens[4].lower()
        if fieldname not in ("real", "integer", "pattern"):
            raise NetworkFormatError(f"{path}: unsupported field {fieldname!r}")
        if symmetry not in ("general", "symmetric"):
            raise NetworkFormatError(f"{path}: unsupported symmetry {symmetry!r}")

        size_line = None
        labels = None
        for line in fh:
            s = line.strip()
            if s.lower().startswith("% labels:"):
                labels = s.split(":", 1)[1].split()
            elif s and not s.startswith("%"):
                size_line = s
                break
        if size_line is None:
            raise NetworkFormatError(f"{path}: missing size line")
        try:
            nrows, ncols, nnz = (int(t) for t in size_line.split())
        except ValueError:
            raise NetworkFormatError(f"{path}: malformed size line {size_line!r}") from None
        if nrows != ncols:
            raise NetworkFormatError(f"{path}: matrix is {nrows}x{ncols}, not square")

        pattern = fieldname == "pattern"
        entries = []
        for lineno, line in enumerate(fh, start=3):
            s = line.strip()
            if not s or s.startswith("%"):
                continue
            parts = s.split()
            try:
                i, j = int(parts[0]) - 1, int(parts[1]) - 1
                w = float(parts[2]) if len(parts) > 2 else 1.0
            except (ValueError, IndexError):
                raise NetworkFormatError(f"{path}:{lineno}: malformed entry {s!r}") from None
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise NetworkFormatError(
                    f"{path}:{lineno}: index ({i + 1}, {j + 1}) outside {nrows}x{ncols}"
                )
            if pattern:
                if w < 0:
                    raise NetworkFormatError(f"{path}:{lineno}: negative weight in pattern file")
                w = 1.0
            elif len(parts) < 3:
                raise NetworkFormatError(f"{path}:{lineno}: missing value in {fieldname} file")
            entries.append((i, j, w))
        if len(entries) != nnz:
            warnings.warn(f"{path}: header declares {nnz} entries, found {len(entries)}")

    weighted = not pattern and any(w != 1.0 for _, _, w in entries if w != 0.0)
    if labels is None or len(labels) != nrows:
        labels = [str(i + 1) for i in range(nrows)]
    return _finish(labels, entries, nrows, symmetry == "general", weighted, path)


def load_edge_list(path, directed: bool = False, weighted: bool = False) -> Network:
    """Read ``src dst [weight]`` lines; nodes are indexed by first appearance."""
    path = Path(path)
    index: dict[str, int] = {}
    entries = []
    with path.open() as fh:
        for lineno, line in enumerate(fh, start=1):
            s = line.strip()
            if not s or s[0] in "#%":
                continue
            parts = s.split()
            if len(parts) not in (2, 3):
                raise NetworkFormatError(f"{path}:{lineno}: expected 'src dst [weight]', got {s!r}")
            if len(parts) == 3:
                if not weighted:
                    raise NetworkFormatError(
                        f"{path}:{lineno}: weight column present but weighted=False"
                    )
                try:
                    w = float(parts[2])
                except ValueError:
                    raise NetworkFormatError(f"{path}:{lineno}: non-numeric weight {parts[2]!r}") from None
            else:
                w = 1.0
            ids = []
            for lab in parts[:2]:
                if lab not in index:
                    index[lab] = len(index)
                ids.append(index[lab])
            entries.append((ids[0], ids[1], w))
    if not index:
        raise NetworkFormatError(f"{path}: no edges found")
    return _finish(list(index), entries, len(index), directed, weighted, path)


def write_matrix_market(net: Network, path) -> None:
    """Write ``net`` in coordinate format (lower triangle when undirected)."""
    A = net.matrix
    fieldname = "real" if net.weighted else "pattern"
    symmetry = "general" if net.directed else "symmetric"
    if net.directed:
        rows, cols = np.nonzero(A)
    else:
        rows, cols = np.nonzero(np.tril(A, -1))
    lines = [f"%%MatrixMarket matrix coordinate {fieldname} {symmetry}"]
    lines.append(f"% labels: {' '.join(net.node_labels)}")
    lines.append(f"{net.n} {net.n} {len(rows)}")
    for i, j in zip(rows.tolist(), cols.tolist()):
        if net.weighted:
            lines.append(f"{i + 1} {j + 1} {A[i, j]!r}")
        else:
            lines.append(f"{i + 1} {j + 1}")
    Path(path).write_text("\n".join(lines) + "\n")


def stats(net: Network) -> NetworkStats:
    """Counts, total degree and total sum of squares.

    TSS always comes from the direct definition; for binary networks it must
    agree with ``K_tot * (1 - K_tot / N^2)``.
    """
    A = net.matrix
    n = net.n
    k_tot = float(A.sum())
    a_bar = k_tot / (n * n)
    tss = float(np.sum((A - a_bar) ** 2))
    if net.directed:
        e = int(np.count_nonzero(A))
    else:
        e = int(np.count_nonzero(np.triu(A, 1)))
    return NetworkStats(n=n, e=e, k_tot=k_tot, a_bar=a_bar, tss=tss)


def tss_closed_form(k_tot: float, n: int) -> float:
    """TSS of a binary matrix with ``k_tot`` ones among ``n*n`` entries."""
    return k_tot * (1.0 - k_tot / (n * n))


# Padgett's Florentine marriage network, 15-family connected variant.
FLORENTINE_FAMILIES = (
    "Acciaiuoli", "Albizzi", "Barbadori", "Bischeri", "Castellani",
    "Ginori", "Guadagni", "Lamberteschi", "Medici", "Pazzi",
    "Peruzzi", "Ridolfi", "Salviati", "Strozzi", "Tornabuoni",
)
FLORENTINE_MARRIAGES = (
    ("Acciaiuoli", "Medici"),
    ("Albizzi", "Ginori"),
    ("Albizzi", "Guadagni"),
    ("Albizzi", "Medici"),
    ("Barbadori", "Castellani"),
    ("Barbadori", "Medici"),
    ("Bischeri", "Guadagni"),
    ("Bischeri", "Peruzzi"),
    ("Bischeri", "Strozzi"),
    ("Castellani", "Peruzzi"),
    ("Castellani", "Strozzi"),
    ("Guadagni", "Lamberteschi"),
    ("Guadagni", "Tornabuoni"),
    ("Medici", "Ridolfi"),
    ("Medici", "Salviati"),
    ("Medici", "Tornabuoni"),
    ("Pazzi", "Salviati"),
    ("Peruzzi", "Strozzi"),
    ("Ridolfi", "Strozzi"),
    ("Ridolfi", "Tornabuoni"),
)


def florentine_fixture() -> Network:
    idx = {name: i for i, name in enumerate(FLORENTINE_FAMILIES)}
    A = np.zeros((len(idx), len(idx)))
    for a, b in FLORENTINE_MARRIAGES:
        A[idx[a], idx[b]] = A[idx[b], idx[a]] = 1.0
    return Network(FLORENTINE_FAMILIES, A, directed=False, weighted=False)


def gnp_random(n: int, p: float, seed=None, directed: bool = False) -> Network:
    """Erdos-Renyi G(n, p) without self-loops."""
    rng = np.random.default_rng(seed)
    draws = rng.random((n, n)) < p
    if directed:
        A = draws.astype(float)
        np.fill_diagonal(A, 0.0)
    else:
        U = np.triu(draws, 1).astype(float)
        A = U + U.T
    return Network(tuple(str(i) for i in range(n)), A, directed=directed, weighted=False)
