"""CSV/JSON writers for fits, rankings and comparisons."""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .model import DirectedFit, DirectedUcReport, UcReport

__all__ = [
    "fit_header",
    "write_fit_csv",
    "write_directed_fit_csv",
    "quality_summary",
    "write_summary",
    "compare_table",
    "write_compare_csv",
]


def _num(v):
    return repr(float(v))


def fit_header(fit) -> list[str]:
    lines = [f"# estimator={fit.kind}", f"# s={fit.s}", f"# s_eff={fit.quality.s_eff}"]
    for key in sorted(fit.params):
        val = fit.params[key]
        if isinstance(val, (list, tuple, np.ndarray)):
            val = " ".join(_num(v) for v in val)
        elif isinstance(val, float):
            val = _num(val)
        lines.append(f"# {key}={val}")
    return lines


def write_fit_csv(fit, report: UcReport, path) -> None:
    """Columns ``label,x,uc,rank`` (``x_1..x_s`` for multi-component fits)."""
    x = np.atleast_2d(fit.x.T).T
    xcols = ["x"] if x.shape[1] == 1 else [f"x_{t + 1}" for t in range(x.shape[1])]
    position = {lab: i + 1 for i, lab in enumerate(report.ranks)}
    with Path(path).open("w", newline="") as fh:
        for line in fit_header(fit):
            fh.write(line + "\n")
        w = csv.writer(fh)
        w.writerow(["label", *xcols, "uc", "rank"])
        for i, lab in enumerate(report.labels):
            w.writerow([lab, *(_num(v) for v in x[i]), _num(report.uc[i]), position[lab]])


def write_directed_fit_csv(fit: DirectedFit, report: DirectedUcReport, path) -> None:
    """Columns ``label,x_out,x_in,uc_out,uc_in,uc_tot,rank_tot``.

    Multi-component fits report the first component's vectors in ``x_out``
    and ``x_in``.
    """
    xo = np.atleast_2d(fit.x_out.T).T[:, 0]
    xi = np.atleast_2d(fit.x_in.T).T[:, 0]
    position = {lab: i + 1 for i, lab in enumerate(report.ranks_tot)}
    with Path(path).open("w", newline="") as fh:
        for line in fit_header(fit):
            fh.write(line + "\n")
        w = csv.writer(fh)
        w.writerow(["label", "x_out", "x_in", "uc_out", "uc_in", "uc_tot", "rank_tot"])
        for i, lab in enumerate(report.labels):
            w.writerow([lab, _num(xo[i]), _num(xi[i]), _num(report.uc_out[i]),
                        _num(report.uc_in[i]), _num(report.uc_tot[i]), position[lab]])


def quality_summary(fit, extra=None) -> dict:
    q = fit.quality
    out = {
        "estimator": fit.kind,
        "s": fit.s,
        "s_eff": q.s_eff,
        "SS": q.ss,
        "TSS": q.tss,
        "R2": q.r2,
        "R2_adj": q.r2_adj,
        "SS_link": q.ss_link,
        "R2_link": q.r2_link,
        "R2_adj_link": q.r2_adj_link,
    }
    if extra:
        out.update(extra)
    return out


def write_summary(summary: dict, path) -> None:
    Path(path).write_text(json.dumps(summary, indent=2, sort_keys=True, allow_nan=True) + "\n")


def compare_table(columns: dict, r2_adj: dict) -> tuple[list, list]:
    """Side-by-side rank table.

    ``columns`` maps a column name to a ranked label tuple. Returns
    ``(header, rows)``; one row per label, a rank-difference column for every
    pair of estimators, and a final ``R2_adj`` row.
    """
    names = list(columns)
    pos = {nm: {lab: i + 1 for i, lab in enumerate(columns[nm])} for nm in names}
    pairs = [(a, b) for i, a in enumerate(names) for b in names[i + 1:]]
    header = ["label", *names, *(f"diff[{a}-{b}]" for a, b in pairs)]
    first = columns[names[0]]
    rows = []
    for lab in first:
        ranks = [pos[nm][lab] for nm in names]
        diffs = [pos[a][lab] - pos[b][lab] for a, b in pairs]
        rows.append([lab, *ranks, *diffs])
    rows.append(["R2_adj", *(_num(r2_adj[nm]) for nm in names), *([""] * len(pairs))])
    return header, rows


def write_compare_csv(header, rows, path) -> None:
    with Path(path).open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)
