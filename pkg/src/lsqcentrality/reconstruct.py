"""Top-E reconstruction of a network from an estimated matrix."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .network import Network

__all__ = ["Reconstruction", "reconstruct_topE", "export_dot", "write_edge_csv"]

_TIE_RTOL = 1e-12


@dataclass(frozen=True)
class Reconstruction:
    predicted_edges: frozenset
    classification: dict  # (i, j) -> "correct" | "spurious" | "missing"
    threshold_value: float
    tie_expanded: bool
    scores: dict  # (i, j) -> Ahat value for every classified pair
    directed: bool

    def edges_of(self, tag) -> list:
        return sorted(p for p, c in self.classification.items() if c == tag)

    def counts(self) -> dict:
        out = {"correct": 0, "spurious": 0, "missing": 0}
        for c in self.classification.values():
            out[c] += 1
        return out


def reconstruct_topE(fit_or_matrix, net: Network) -> Reconstruction:
    """Keep the off-diagonal entries of Ahat at or above the E-th largest.

    ``fit_or_matrix`` is any fit with ``estimate()`` or an N x N array.
    Undirected networks use the upper triangle only; in directed ones
    ``(i, j)`` and ``(j, i)`` are separate candidates. Ties at the threshold
    are all kept, so more than E edges may be predicted; ``tie_expanded``
    records that several candidates sat on the threshold (equality is judged
    to a relative 1e-12 of the largest candidate, so rounding noise cannot
    split a tie).
    """
    if hasattr(fit_or_matrix, "estimate"):
        Ahat = fit_or_matrix.estimate()
    else:
        Ahat = np.asarray(fit_or_matrix, float)
    n = net.n
    if Ahat.shape != (n, n):
        raise ValueError(f"estimate shape {Ahat.shape} does not match N={n}")
    true_edges = set(net.edges())
    e = len(true_edges)
    if e < 1:
        raise ValueError("reconstruction needs a network with at least one edge")
    if net.directed:
        rows, cols = np.nonzero(~np.eye(n, dtype=bool))
    else:
        rows, cols = np.triu_indices(n, 1)
    vals = Ahat[rows, cols]
    threshold = float(np.sort(vals)[::-1][e - 1])
    # entries equal up to rounding are ties, not a strict ordering
    tol = _TIE_RTOL * max(float(np.abs(vals).max()), np.finfo(float).tiny)
    keep = vals >= threshold - tol
    predicted = frozenset(zip(rows[keep].tolist(), cols[keep].tolist()))
    classification, scores = {}, {}
    for p in predicted:
        classification[p] = "correct" if p in true_edges else "spurious"
        scores[p] = float(Ahat[p])
    for p in true_edges - predicted:
        classification[p] = "missing"
        scores[p] = float(Ahat[p])
    tied = int(np.count_nonzero(np.abs(vals - threshold) <= tol)) > 1
    return Reconstruction(predicted, classification, threshold, tied, scores, net.directed)


def _dot_id(label: str) -> str:
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(rec: Reconstruction, net: Network, path, uc_report=None,
               include_missing=False) -> None:
    """GraphViz rendering: correct edges green, spurious red.

    With ``uc_report`` each node's ``width`` grows with its rank position
    counted from the least central node (least central = 1). Missing edges
    are drawn dashed grey only when ``include_missing`` is set.
    """
    kind, arrow = ("digraph", "->") if net.directed else ("graph", "--")
    lines = [f"{kind} reconstruction {{"]
    lines.append("  node [shape=circle, fixedsize=true];")
    n = net.n
    position = {}
    if uc_report is not None:
        ranked = list(uc_report.ranks)
        position = {lab: n - ranked.index(lab) for lab in net.node_labels}
    for lab in net.node_labels:
        if position:
            width = 0.3 + 0.7 * position[lab] / n
            lines.append(f"  {_dot_id(lab)} [width={width:.3f}, rank_position={position[lab]}];")
        else:
            lines.append(f"  {_dot_id(lab)};")
    colors = {"correct": "color=green", "spurious": "color=red",
              "missing": "color=gray, style=dashed"}
    labels = net.node_labels
    for (i, j), tag in sorted(rec.classification.items()):
        if tag == "missing" and not include_missing:
            continue
        lines.append(f"  {_dot_id(labels[i])} {arrow} {_dot_id(labels[j])} [{colors[tag]}];")
    lines.append("}")
    Path(path).write_text("\n".join(lines) + "\n")


def write_edge_csv(rec: Reconstruction, net: Network, path) -> None:
    labels = net.node_labels
    with Path(path).open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["src", "dst", "score", "class"])
        for (i, j), tag in sorted(rec.classification.items()):
            w.writerow([labels[i], labels[j], repr(rec.scores[(i, j)]), tag])
