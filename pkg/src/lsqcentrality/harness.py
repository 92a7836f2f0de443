"""Corpus benchmark: every estimator on every network in a directory."""

from __future__ import annotations

import csv
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from .network import load_matrix_market, stats
from .pipeline import canonical_name, fit_by_name

__all__ = [
    "SCHEMA_VERSION",
    "BenchRecord",
    "PowerLawFit",
    "InsufficientDataError",
    "run_network",
    "run_corpus",
    "write_results",
    "read_results",
    "fit_powerlaw",
    "cumulative_frequency",
]

SCHEMA_VERSION = 1
COLUMNS = ("network_id", "n", "e", "estimator", "s_eff", "r2", "r2_adj", "wall_time", "status")


class InsufficientDataError(ValueError):
    pass


@dataclass(frozen=True)
class BenchRecord:
    network_id: str
    n: int
    e: int
    estimator: str
    s_eff: int
    r2: float
    r2_adj: float
    wall_time: float
    status: str = "ok"


@dataclass(frozen=True)
class PowerLawFit:
    """``r2_adj ~ c * N**(-p)``."""

    c: float
    p: float
    points_used: int


def _label(name, directed, mc_s):
    try:
        name = canonical_name(name, directed)
    except ValueError:
        return name.lower()
    return f"mc({mc_s})" if name == "mc" else name


def run_network(net, network_id, estimators, mc_s=2, scoring="link") -> list[BenchRecord]:
    """One record per estimator; failures become ``status='error: ...'``."""
    if scoring not in ("link", "full"):
        raise ValueError(f"scoring must be 'link' or 'full', got {scoring!r}")
    st = stats(net)
    records = []
    for name in estimators:
        label = _label(name, net.directed, mc_s)
        t0 = time.perf_counter()
        try:
            fit = fit_by_name(net, name, s=mc_s)
        except Exception as exc:  # recorded, never fatal
            records.append(BenchRecord(network_id, st.n, st.e, label, 0, math.nan, math.nan,
                                       time.perf_counter() - t0,
                                       f"error: {type(exc).__name__}: {exc}"))
            continue
        wall = time.perf_counter() - t0
        q = fit.quality
        r2, r2_adj = (q.r2_link, q.r2_adj_link) if scoring == "link" else (q.r2, q.r2_adj)
        records.append(BenchRecord(network_id, st.n, st.e, label, q.s_eff, r2, r2_adj, wall))
    return records


def _load(path):
    try:
        return load_matrix_market(path), None
    except Exception as exc:
        return None, f"error: {type(exc).__name__}: {exc}"


def run_corpus(directory, estimators=("degree", "eigenvector", "katz", "mc"), mc_s=2,
               scoring="link", workers=1, results_dir=None) -> list[BenchRecord]:
    """Benchmark every ``*.mtx`` file in ``directory`` (sorted by name).

    Symmetric files go through the undirected estimators, general ones
    through the directed ones (``eigenvector`` maps to ``hits``). Networks
    may run on up to ``workers`` threads; records come back in file order.
    When ``results_dir`` is given, rows are appended to a new timestamped
    CSV as each network finishes.
    """
    directory = Path(directory)
    if not directory.is_dir():
        raise NotADirectoryError(f"{directory} is not a readable directory")
    files = sorted(directory.glob("*.mtx"))

    def job(path):
        net, err = _load(path)
        if net is None:
            return [BenchRecord(path.stem, 0, 0, "-", 0, math.nan, math.nan, 0.0, err)]
        return run_network(net, path.stem, estimators, mc_s, scoring)

    out_path = None
    if results_dir is not None:
        stamp = datetime.now(timezone.utc).strftime("%Y%m%dT%H%M%S%fZ")
        out_path = Path(results_dir) / f"results_{stamp}.csv"
        write_results([], out_path, scoring=scoring, mc_s=mc_s)

    records = []
    with ThreadPoolExecutor(max_workers=max(1, int(workers))) as pool:
        for batch in pool.map(job, files):
            records.extend(batch)
            if out_path is not None:
                _append_rows(batch, out_path)
    return records


def _row(r: BenchRecord):
    return [r.network_id, r.n, r.e, r.estimator, r.s_eff, repr(r.r2), repr(r.r2_adj),
            f"{r.wall_time:.6f}", r.status]


def _append_rows(records, path):
    with Path(path).open("a", newline="") as fh:
        w = csv.writer(fh)
        for r in records:
            w.writerow(_row(r))


def write_results(records, path, scoring="link", mc_s=2) -> Path:
    path = Path(path)
    with path.open("w", newline="") as fh:
        fh.write(f"# schema_version={SCHEMA_VERSION}\n")
        fh.write(f"# scoring={scoring}\n")
        fh.write(f"# mc_s={mc_s}\n")
        csv.writer(fh).writerow(COLUMNS)
    _append_rows(records, path)
    return path


def read_results(path) -> list[BenchRecord]:
    with Path(path).open() as fh:
        lines = [ln for ln in fh if not ln.startswith("#")]
    reader = csv.DictReader(lines)
    if tuple(reader.fieldnames or ()) != COLUMNS:
        raise ValueError(f"{path}: unexpected columns {reader.fieldnames}")
    types = {f.name: f.type for f in fields(BenchRecord)}
    conv = {"int": int, "float": float, "str": str}
    out = []
    for row in reader:
        out.append(BenchRecord(**{k: conv[types[k]](v) for k, v in row.items()}))
    return out


def _usable(records, estimator):
    vals = [(r.n, r.r2_adj) for r in records
            if r.estimator == estimator and r.status == "ok" and np.isfinite(r.r2_adj)]
    return vals


def fit_powerlaw(records, estimator) -> PowerLawFit:
    """Least-squares line through ``log(r2_adj)`` against ``log(N)``.

    Only records with positive ``r2_adj`` are used.
    """
    pts = [(n, v) for n, v in _usable(records, estimator) if v > 0]
    if len(pts) < 3:
        raise InsufficientDataError(
            f"{estimator}: need at least 3 records with r2_adj > 0, have {len(pts)}"
        )
    logn = np.log([p[0] for p in pts])
    logv = np.log([p[1] for p in pts])
    slope, intercept = np.polyfit(logn, logv, 1)
    return PowerLawFit(c=float(np.exp(intercept)), p=float(-slope), points_used=len(pts))


def cumulative_frequency(records, estimator, grid) -> list[tuple[float, float]]:
    """Fraction of the estimator's records with ``r2_adj <= v`` for each ``v``."""
    vals = np.array([v for _, v in _usable(records, estimator)])
    out = []
    for g in np.asarray(grid, float):
        frac = float(np.mean(vals <= g)) if vals.size else math.nan
        out.append((float(g), frac))
    return out
