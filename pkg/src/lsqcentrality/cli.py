"""Command-line front end: ``lsqcent {fit,rank,reconstruct,bench,compare}``.

Exit codes: 0 success, 1 input error, 2 numerical error, 3 config error.
"""

from __future__ import annotations

import argparse
import os
import re
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import harness
from .export import (
    compare_table,
    quality_summary,
    write_compare_csv,
    write_directed_fit_csv,
    write_fit_csv,
    write_summary,
)
from .model import EmptyNetworkError
from .network import NetworkFormatError, florentine_fixture, gnp_random, load_edge_list, load_matrix_market
from .pipeline import UnsupportedEstimator, canonical_name, fit_by_name, uc_for
from .reconstruct import export_dot, reconstruct_topE, write_edge_csv
from .spectral import KatzParameterError, SpectralError

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC, EXIT_CONFIG = 0, 1, 2, 3
OUTPUT_ENV = "LSQCENTRALITY_OUTPUT_DIR"
ORACLE_MAX_N = 200
ORACLE_RTOL = 1e-8
ORACLE_ZERO = 1e-12  # UCs below this are treated as exact zeros


class ConfigError(ValueError):
    pass


class InputError(ValueError):
    pass


@dataclass(frozen=True)
class CliConfig:
    subcommand: str
    input: str
    estimators: tuple
    s: int
    alpha: float | None
    beta: float
    selection: str
    fraction: float | None
    output_dir: Path
    fmt: str
    directed: bool
    weighted: bool
    seed: int | None
    oracle: bool
    workers: int
    scoring: str


_MC_PATTERN = re.compile(r"^mc\((\d+)\)$")


def _parse_estimator(token: str, default_s: int):
    """``'mc(3)'`` -> ``('mc', 3)``; anything else keeps ``default_s``."""
    token = token.strip().lower()
    m = _MC_PATTERN.match(token)
    if m:
        return "mc", int(m.group(1))
    return token, default_s


def _column_name(name, s):
    return f"mc({s})" if name == "mc" else name


def build_config(args) -> CliConfig:
    if args.estimators:
        raw = [t for t in args.estimators.split(",") if t.strip()]
    else:
        raw = [args.estimator]
    ests = tuple(_parse_estimator(t, args.s if args.s is not None else 2) for t in raw)
    if args.s is not None:
        if not any(name == "mc" for name, _ in ests):
            raise ConfigError("--s is only valid with the multi-component estimator (mc)")
        if args.s < 1:
            raise ConfigError(f"--s must be a positive integer, got {args.s}")
    if args.fraction is not None and args.selection != "variance_threshold":
        raise ConfigError("--fraction requires --selection variance_threshold")
    if args.selection == "variance_threshold" and args.fraction is None:
        raise ConfigError("--selection variance_threshold requires --fraction")
    if args.alpha is not None and not any(name == "katz" for name, _ in ests):
        raise ConfigError("--alpha is only valid with the katz estimator")
    if args.command == "compare" and len(ests) < 2:
        raise ConfigError("compare needs at least two estimators (--estimators a,b)")
    out = args.output_dir or os.environ.get(OUTPUT_ENV) or "."
    return CliConfig(
        subcommand=args.command,
        input=args.input,
        estimators=ests,
        s=args.s if args.s is not None else 2,
        alpha=args.alpha,
        beta=args.beta,
        selection=args.selection,
        fraction=args.fraction,
        output_dir=Path(out),
        fmt=args.format,
        directed=args.directed,
        weighted=args.weighted,
        seed=args.seed,
        oracle=not args.no_oracle,
        workers=args.workers,
        scoring=args.scoring,
    )


def load_input(cfg: CliConfig):
    """Resolve ``--input``: ``florentine``, ``gnp:N:P``, ``.mtx`` or edge list."""
    source = cfg.input
    if source == "florentine":
        return florentine_fixture()
    if source.startswith("gnp:"):
        try:
            _, n, p = source.split(":")
            return gnp_random(int(n), float(p), seed=cfg.seed, directed=cfg.directed)
        except ValueError as exc:
            raise InputError(f"bad random-graph input {source!r} (expected gnp:N:P): {exc}") from exc
    path = Path(source)
    if not path.is_file():
        raise InputError(f"input file not found: {source}")
    if path.suffix.lower() == ".mtx":
        return load_matrix_market(path)
    return load_edge_list(path, directed=cfg.directed, weighted=cfg.weighted)


def _fit(cfg, net, name, s):
    return fit_by_name(net, name, s=s, alpha=cfg.alpha, beta=cfg.beta,
                       selection=cfg.selection, fraction=cfg.fraction)


def _oracle_check(fit, net, closed):
    """Largest relative gap between closed-form and leave-one-out UCs."""
    oracle = uc_for(fit, net, method="oracle")
    if net.directed:
        pairs = [(closed.uc_out, oracle.uc_out), (closed.uc_in, oracle.uc_in),
                 (closed.uc_tot, oracle.uc_tot)]
    else:
        pairs = [(closed.uc, oracle.uc)]
    worst = 0.0
    for a, b in pairs:
        d = np.abs(a - b)
        big = np.abs(b) > ORACLE_ZERO
        if np.any(d[~big] > ORACLE_ZERO):
            return float("inf")
        worst = max(worst, float(np.max(d[big] / np.abs(b[big]), initial=0.0)))
    return worst


def fit_and_report(cfg, net, name, s):
    fit = _fit(cfg, net, name, s)
    report = uc_for(fit, net)
    extra = {"network_n": net.n, "directed": net.directed}
    if cfg.oracle and net.n <= ORACLE_MAX_N:
        worst = _oracle_check(fit, net, report)
        extra["oracle_max_rel_err"] = worst
        if worst > ORACLE_RTOL:
            raise ArithmeticError(
                f"closed-form UC disagrees with leave-one-out oracle (rel err {worst:.3e})"
            )
    return fit, report, extra


def _stem(name, s):
    return f"mc{s}" if name == "mc" else name


def _write_fit(fit, report, net, path):
    if net.directed:
        write_directed_fit_csv(fit, report, path)
    else:
        write_fit_csv(fit, report, path)


def _ranks(report, directed):
    return report.ranks_tot if directed else report.ranks


def cmd_fit(cfg: CliConfig, net) -> int:
    name, s = cfg.estimators[0]
    fit, report, extra = fit_and_report(cfg, net, name, s)
    stem = _stem(fit.kind, fit.s)
    _write_fit(fit, report, net, cfg.output_dir / f"fit_{stem}.csv")
    summary = quality_summary(fit, extra)
    write_summary(summary, cfg.output_dir / f"summary_{stem}.json")
    q = fit.quality
    print(f"estimator={fit.kind} s={fit.s} s_eff={q.s_eff} N={net.n}")
    print(f"SS={q.ss:.6g} TSS={q.tss:.6g} R2={q.r2:.4f} R2_adj={q.r2_adj:.4f}")
    print(f"link-level: SS={q.ss_link:.6g} R2={q.r2_link:.4f} R2_adj={q.r2_adj_link:.4f}")
    return EXIT_OK


def cmd_rank(cfg: CliConfig, net) -> int:
    name, s = cfg.estimators[0]
    fit, report, extra = fit_and_report(cfg, net, name, s)
    stem = _stem(fit.kind, fit.s)
    _write_fit(fit, report, net, cfg.output_dir / f"rank_{stem}.csv")
    uc = report.uc_tot if net.directed else report.uc
    index = {lab: i for i, lab in enumerate(net.node_labels)}
    for pos, lab in enumerate(_ranks(report, net.directed), start=1):
        print(f"{pos}\t{lab}\t{uc[index[lab]]:.6g}")
    return EXIT_OK


def cmd_reconstruct(cfg: CliConfig, net) -> int:
    name, s = cfg.estimators[0]
    fit, report, extra = fit_and_report(cfg, net, name, s)
    rec = reconstruct_topE(fit, net)
    stem = _stem(fit.kind, fit.s)
    if cfg.fmt == "dot":
        out = cfg.output_dir / f"reconstruct_{stem}.dot"
        scope = report.scope("tot") if net.directed else report
        export_dot(rec, net, out, uc_report=scope)
    else:
        out = cfg.output_dir / f"reconstruct_{stem}.csv"
        write_edge_csv(rec, net, out)
    c = rec.counts()
    print(f"correct={c['correct']} spurious={c['spurious']} missing={c['missing']}"
          f" threshold={rec.threshold_value:.6g} tie_expanded={rec.tie_expanded}")
    return EXIT_OK


def cmd_compare(cfg: CliConfig, net) -> int:
    columns, r2 = {}, {}
    for name, s in cfg.estimators:
        fit, report, _ = fit_and_report(cfg, net, name, s)
        col = _column_name(canonical_name(name, net.directed), s)
        if col in columns:
            col = f"{col}#{sum(1 for c in columns if c.split('#')[0] == col) + 1}"
        columns[col] = _ranks(report, net.directed)
        r2[col] = fit.quality.r2_adj_link
    header, rows = compare_table(columns, r2)
    write_compare_csv(header, rows, cfg.output_dir / "compare.csv")
    print("\t".join(header))
    for row in rows:
        print("\t".join(str(v) for v in row))
    return EXIT_OK


def cmd_bench(cfg: CliConfig) -> int:
    directory = Path(cfg.input)
    if not directory.is_dir():
        raise InputError(f"bench input must be a directory: {cfg.input}")
    names = tuple(name for name, _ in cfg.estimators)
    records = harness.run_corpus(directory, names, mc_s=cfg.s, scoring=cfg.scoring,
                                 workers=cfg.workers, results_dir=cfg.output_dir)
    failed = sum(r.status != "ok" for r in records)
    print(f"records={len(records)} failed={failed}")
    for label in sorted({r.estimator for r in records if r.status == "ok"}):
        try:
            pl = harness.fit_powerlaw(records, label)
            print(f"{label}: r2_adj ~ {pl.c:.4g} * N^-{pl.p:.4g} ({pl.points_used} points)")
        except harness.InsufficientDataError as exc:
            print(f"{label}: no power-law fit ({exc})")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", required=True,
                        help="network file (.mtx or edge list), 'florentine', or gnp:N:P")
    common.add_argument("--estimator", default="degree",
                        help="degree, eigenvector, katz, hits or mc (default: degree)")
    common.add_argument("--estimators", default=None,
                        help="comma-separated list, e.g. degree,eigenvector,mc(2)")
    common.add_argument("--s", type=int, default=None, help="components for mc (default 2)")
    common.add_argument("--selection", default="fixed",
                        choices=("fixed", "eigengap", "variance_threshold"))
    common.add_argument("--fraction", type=float, default=None)
    common.add_argument("--alpha", type=float, default=None,
                        help="Katz attenuation (default 0.5/lambda1)")
    common.add_argument("--beta", type=float, default=1.0)
    common.add_argument("--output-dir", default=None,
                        help=f"where to write results (default ${OUTPUT_ENV} or .)")
    common.add_argument("--format", default="csv", choices=("csv", "dot"))
    common.add_argument("--directed", action="store_true", help="edge lists / gnp are directed")
    common.add_argument("--weighted", action="store_true", help="edge lists carry weights")
    common.add_argument("--seed", type=int, default=None, help="seed for gnp:N:P inputs")
    common.add_argument("--no-oracle", action="store_true",
                        help="skip the leave-one-out cross-check (on for N <= 200)")
    common.add_argument("--workers", type=int, default=1, help="bench worker threads")
    common.add_argument("--scoring", default="link", choices=("link", "full"),
                        help="bench R2 convention: off-diagonal only or all entries")

    parser = argparse.ArgumentParser(prog="lsqcent", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in [("fit", "fit one estimator and write centralities + summary"),
                       ("rank", "print nodes ordered by unique contribution"),
                       ("reconstruct", "top-E reconstruction as edge CSV or DOT"),
                       ("bench", "run estimators over a directory of .mtx files"),
                       ("compare", "side-by-side rankings of several estimators")]:
        sub.add_parser(name, parents=[common], help=text)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code not in (0, None) else EXIT_OK
    try:
        cfg = build_config(args)
        cfg.output_dir.mkdir(parents=True, exist_ok=True)
        if cfg.subcommand == "bench":
            return cmd_bench(cfg)
        net = load_input(cfg)
        handler = {"fit": cmd_fit, "rank": cmd_rank, "reconstruct": cmd_reconstruct,
                   "compare": cmd_compare}[cfg.subcommand]
        return handler(cfg, net)
    except (InputError, NetworkFormatError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except KatzParameterError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (EmptyNetworkError, SpectralError, ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ConfigError, UnsupportedEstimator, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
