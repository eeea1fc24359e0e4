"""Command-line front end for the gcd-statistics experiments.

Exit codes: 0 success, 2 usage or validation problems, 3 range/overflow
guards, 4 I/O and cache problems.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from . import analytic, gcdstats, report
from .errors import (
    CacheError,
    DomainError,
    OverflowGuardError,
    ScaleError,
    TableRangeError,
)
from .sieve import SieveTables, build_tables, load_cache, peek_cache_xmax

DEFAULT_XMAX = 50000
DEFAULT_GRID_POINTS = 500
CACHE_PATTERN = "tables-x*.gglab"

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_RANGE = 3
EXIT_IO = 4


@dataclass
class RunConfig:
    command: str
    xmax: int
    n: int
    grid_points: int
    output_path: Path | None
    format: str
    cache_dir: Path
    threads: int
    no_cache: bool
    oracle: bool

    def validate(self) -> None:
        if self.xmax < 1:
            raise DomainError("--xmax must be >= 1")
        if self.threads < 1:
            raise DomainError("--threads must be >= 1")
        if self.grid_points < 1:
            raise DomainError("--grid-points must be >= 1")
        if self.command in ("moment", "expectation") and not 1 <= self.n <= 5:
            raise DomainError("--n must be in 1..5 for moment commands")
        if self.command == "fit":
            if not 2 <= self.n <= 5:
                raise DomainError("--n must be in 2..5 for fit")
            if self.grid_points < self.n + 1:
                raise DomainError("--grid-points must be at least n + 1 for fit")
        if self.command in ("reproduce-table1", "reproduce-figures"):
            if self.grid_points < 6:
                raise DomainError("--grid-points must be at least 6 here")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--xmax", type=int, default=DEFAULT_XMAX,
                        help="norm cutoff (default %(default)s)")
    common.add_argument("--n", type=int, default=2, help="moment order")
    common.add_argument("--grid-points", type=int, default=DEFAULT_GRID_POINTS,
                        help="sample count for series commands (default %(default)s)")
    common.add_argument("--output", type=Path, default=None,
                        help="write delimited output here instead of stdout")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--cache-dir", type=Path,
                        default=Path.home() / ".cache" / "gaussgcd")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--no-cache", action="store_true",
                        help="rebuild tables without touching the cache")
    common.add_argument("--oracle", action="store_true",
                        help="use the quadratic pairwise-gcd path (x <= 2000)")

    parser = argparse.ArgumentParser(
        prog="gaussgcd",
        description="Exact gcd statistics for random Gaussian integers",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("constants", parents=[common],
                   help="print the analytic constants")
    sub.add_parser("sieve", parents=[common],
                   help="build and cache the norm tables")
    sub.add_parser("distribution", parents=[common],
                   help="exact gcd-norm histogram at the cutoff")
    sub.add_parser("probability", parents=[common],
                   help="coprimality probability at the cutoff")
    sub.add_parser("expectation", parents=[common],
                   help="expected gcd norm over a grid, with log fit")
    sub.add_parser("moment", parents=[common],
                   help="n-th gcd-norm moment at the cutoff")
    sub.add_parser("fit", parents=[common],
                   help="fit the moment growth curve for one order")
    sub.add_parser("reproduce-table1", parents=[common],
                   help="fitted vs conjectured moment constants, orders 2..5")
    sub.add_parser("reproduce-figures", parents=[common],
                   help="moment curves and fitted figures, orders 2..5")
    return parser


def resolve_tables(cfg: RunConfig) -> SieveTables:
    """Return tables covering cfg.xmax, reusing the smallest adequate cache
    file; builds and caches on miss."""
    if cfg.no_cache:
        return build_tables(cfg.xmax)
    cfg.cache_dir.mkdir(parents=True, exist_ok=True)
    best: tuple[int, Path] | None = None
    for path in sorted(cfg.cache_dir.glob(CACHE_PATTERN)):
        covered = peek_cache_xmax(path)
        if covered >= cfg.xmax and (best is None or covered < best[0]):
            best = (covered, path)
    if best is not None:
        return load_cache(best[1])
    tables = build_tables(cfg.xmax)
    tables.save_cache(cfg.cache_dir / f"tables-x{cfg.xmax}.gglab")
    return tables


def _distribution(cfg: RunConfig) -> gcdstats.GcdDistribution:
    if cfg.oracle:
        return gcdstats.distribution_bruteforce(cfg.xmax)
    return gcdstats.distribution_fast(cfg.xmax, resolve_tables(cfg), cfg.threads)


def _emit(cfg: RunConfig, header: list[str], rows: list[list]) -> None:
    emit = report.emit_json if cfg.format == "json" else report.emit_csv
    text = emit(header, rows, cfg.output_path)
    if cfg.output_path is None:
        sys.stdout.write(text)
    else:
        print(f"wrote {cfg.output_path}")


def _fit_row(n: int, fit: gcdstats.FitResult, pad_degree: int) -> list:
    conjectured = analytic.conjectured_moment_constant(n)
    ascending: list[float | None] = list(fit.coefficients[::-1])
    ascending += [None] * (pad_degree - fit.degree)
    rel_err = abs(fit.leading() - conjectured) / conjectured
    return [n, *ascending, fit.residual, f"{conjectured:.5f}", rel_err]


def _fit_header(pad_degree: int) -> list[str]:
    return (
        ["n"]
        + [f"coeff_deg{d}" for d in range(pad_degree + 1)]
        + ["residual", "conjectured", "rel_err"]
    )


def cmd_constants(cfg: RunConfig) -> None:
    z2 = analytic.dedekind_zeta_qi(2.0).value
    rows = [
        ["dedekind_zeta_2", z2],
        ["coprimality_probability", 1 / z2],
        ["expected_norm_slope", analytic.expected_norm_slope()],
        ["sierpinski_constant", analytic.sierpinski_constant()],
    ]
    for n in range(2, 6):
        rows.append([f"moment_constant_n{n}", analytic.conjectured_moment_constant(n)])
    for name, value in rows:
        print(f"{name:<26} {value!r}")
    if cfg.output_path is not None:
        _emit(cfg, ["name", "value"], rows)


def cmd_sieve(cfg: RunConfig) -> None:
    tables = build_tables(cfg.xmax)
    path = cfg.cache_dir / f"tables-x{cfg.xmax}.gglab"
    if not cfg.no_cache:
        cfg.cache_dir.mkdir(parents=True, exist_ok=True)
        tables.save_cache(path)
        print(f"cached {path}")
    print(f"xmax {cfg.xmax}: {tables.ideal_count(cfg.xmax)} ideals, "
          f"circle sum {tables.circle_sum(cfg.xmax)}")


def cmd_distribution(cfg: RunConfig) -> None:
    dist = _distribution(cfg)
    rows = [[dist.x, k, count] for k, count in sorted(dist.counts.items())]
    _emit(cfg, ["x", "k", "count"], rows)


def cmd_probability(cfg: RunConfig) -> None:
    dist = _distribution(cfg)
    p = gcdstats.coprime_probability(dist)
    print(f"coprime probability at x={cfg.xmax}: {p!r}")
    print(f"limit 1/zeta_Qi(2): {analytic.gcd_probability_main(1)!r}")
    if cfg.output_path is not None:
        _emit(cfg, ["x", "probability"], [[cfg.xmax, p]])


def cmd_expectation(cfg: RunConfig) -> None:
    tables = resolve_tables(cfg)
    grid = gcdstats.sample_grid(cfg.xmax, cfg.grid_points,
                                start=max(2, cfg.xmax // 10))
    samples = [
        (x, gcdstats.expected_norm(gcdstats.distribution_fast(x, tables, cfg.threads)))
        for x in grid
    ]
    slope, intercept, rms = gcdstats.fit_log_linear(samples)
    theory = analytic.expected_norm_slope()
    print(f"fit a*log(x) + b over {len(samples)} points: "
          f"a={slope:.5f} b={intercept:.5f} rms={rms:.2e}")
    print(f"slope main term {theory:.5f}, relative error {abs(slope-theory)/theory:.3%}")
    _emit(cfg, ["x", "n", "moment"], [[x, 1, v] for x, v in samples])


def cmd_moment(cfg: RunConfig) -> None:
    dist = _distribution(cfg)
    value = gcdstats.moment(dist, cfg.n)
    print(f"moment n={cfg.n} at x={cfg.xmax}: {value!r}")
    if cfg.output_path is not None:
        _emit(cfg, ["x", "n", "moment"], [[cfg.xmax, cfg.n, value]])


def cmd_fit(cfg: RunConfig) -> None:
    tables = resolve_tables(cfg)
    fit = gcdstats.leading_coefficient_experiment(
        cfg.n, cfg.xmax, cfg.grid_points, tables, cfg.threads
    )
    conjectured = analytic.conjectured_moment_constant(cfg.n)
    print(f"n={cfg.n}: leading {fit.leading():.5f}, conjectured {conjectured:.5f}, "
          f"rel err {abs(fit.leading()-conjectured)/conjectured:.3%}")
    print(f"fit: {report.format_polynomial(fit.coefficients)}")
    _emit(cfg, _fit_header(cfg.n - 1), [_fit_row(cfg.n, fit, cfg.n - 1)])
    if cfg.output_path is not None:
        series = gcdstats.moment_series(
            cfg.n, gcdstats.sample_grid(cfg.xmax, cfg.grid_points), tables, cfg.threads
        )
        svg_path = cfg.output_path.with_suffix(".svg")
        report.emit_svg(series, fit, svg_path, conjectured)
        print(f"wrote {svg_path}")


def cmd_reproduce_table1(cfg: RunConfig) -> None:
    tables = resolve_tables(cfg)
    grid = gcdstats.sample_grid(cfg.xmax, cfg.grid_points)
    series = gcdstats.moment_series_multi([2, 3, 4, 5], grid, tables, cfg.threads)
    rows = []
    print(f"{'n':>2} {'fitted':>10} {'conjectured':>12} {'rel_err':>9}")
    for n in (2, 3, 4, 5):
        fit = gcdstats.fit_polynomial(
            [(float(x), v) for x, v in series[n].samples], n - 1
        )
        conjectured = analytic.conjectured_moment_constant(n)
        rel = abs(fit.leading() - conjectured) / conjectured
        print(f"{n:>2} {fit.leading():>10.5f} {conjectured:>12.5f} {rel:>9.3%}")
        rows.append(_fit_row(n, fit, 4))
    _emit(cfg, _fit_header(4), rows)


def cmd_reproduce_figures(cfg: RunConfig) -> None:
    tables = resolve_tables(cfg)
    out_dir = cfg.output_path if cfg.output_path is not None else Path("figures")
    out_dir.mkdir(parents=True, exist_ok=True)
    grid = gcdstats.sample_grid(cfg.xmax, cfg.grid_points)
    series = gcdstats.moment_series_multi([2, 3, 4, 5], grid, tables, cfg.threads)
    emit = report.emit_json if cfg.format == "json" else report.emit_csv
    suffix = cfg.format
    for n in (2, 3, 4, 5):
        fit = gcdstats.fit_polynomial(
            [(float(x), v) for x, v in series[n].samples], n - 1
        )
        data_path = out_dir / f"moment_n{n}.{suffix}"
        emit(["x", "n", "moment"],
             [[x, n, v] for x, v in series[n].samples], data_path)
        svg_path = out_dir / f"moment_n{n}.svg"
        report.emit_svg(series[n], fit, svg_path,
                        analytic.conjectured_moment_constant(n))
        print(f"wrote {data_path} and {svg_path}")


_DISPATCH = {
    "constants": cmd_constants,
    "sieve": cmd_sieve,
    "distribution": cmd_distribution,
    "probability": cmd_probability,
    "expectation": cmd_expectation,
    "moment": cmd_moment,
    "fit": cmd_fit,
    "reproduce-table1": cmd_reproduce_table1,
    "reproduce-figures": cmd_reproduce_figures,
}


def dispatch(cfg: RunConfig) -> int:
    cfg.validate()
    _DISPATCH[cfg.command](cfg)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    cfg = RunConfig(
        command=args.command,
        xmax=args.xmax,
        n=args.n,
        grid_points=args.grid_points,
        output_path=args.output,
        format=args.format,
        cache_dir=args.cache_dir,
        threads=args.threads,
        no_cache=args.no_cache,
        oracle=args.oracle,
    )
    try:
        return dispatch(cfg)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (TableRangeError, ScaleError, OverflowGuardError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RANGE
    except (CacheError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
