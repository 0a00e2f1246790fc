"""
Command-line front end.

    netextremes indicator prices.csv --out results/
    netextremes evaluate data/*.csv -S 262 -b 131 -a 45 --no-timestamp
    netextremes sweep --synthetic bubble --seed 1 --jobs 4

Exit status: 0 success, 1 usage error, 2 data or precondition error,
3 internal invariant breach.
"""

from __future__ import annotations

import argparse
import csv
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import io
from .evaluation import (
    SCOPE_GRID,
    WINDOW_GRID,
    EvaluationError,
    error_diagram,
    p_value,
    parameter_sweep,
    shuffled_p_values,
)
from .extremes import DEFAULT_AFTER, DEFAULT_BEFORE, detect_extremes
from .indicator import DEFAULT_SCOPE, ExtremeKind, indicator
from .series import PriceSeries, SeriesError, bubble_spec, gen_synthetic, load_csv, write_csv
from .visibility import DirectionFilter, LinkKind, build_network, degree_sequence

log = logging.getLogger("netextremes")

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class InvariantError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {value}")
    return value


def _nonneg(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative, got {value}")
    return value


def _threshold(text):
    value = float(text)
    if not 0 < value <= 1:
        raise argparse.ArgumentTypeError(f"threshold must lie in (0, 1], got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("inputs", nargs="*", help="CSV files with a header row")
    common.add_argument("--synthetic", choices=["bubble"], help="use a generated fixture instead of files")
    common.add_argument("--length", type=_positive, default=2000, help="synthetic series length")
    common.add_argument("--bubbles", type=_positive, default=4, help="planted bubbles in the synthetic series")
    common.add_argument("--noise", type=float, default=0.01, help="synthetic log-return noise std dev")
    common.add_argument("--price-column", help="price column header (default: close, else price)")
    common.add_argument("--date-column", default="date")
    common.add_argument("-S", "--scope", type=_positive, default=DEFAULT_SCOPE)
    common.add_argument("-b", "--before", type=_positive, default=DEFAULT_BEFORE)
    common.add_argument("-a", "--after", type=_positive, default=DEFAULT_AFTER)
    common.add_argument("--horizon", type=_nonneg, default=0, help="forward alarm reach in days")
    scale = common.add_mutually_exclusive_group()
    scale.add_argument("--log", dest="log", action="store_true", default=True, help="networks on log-prices (default)")
    scale.add_argument("--raw", dest="log", action="store_false", help="networks on raw prices")
    common.add_argument("--kind", choices=["peak", "trough", "both"], default="both")
    common.add_argument("--out", type=Path, default=Path("."), help="output directory")
    common.add_argument("--jobs", type=_positive, default=1)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--no-timestamp", dest="timestamp", action="store_false")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="netextremes", description=__doc__.split("\n\n")[0].strip())
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("indicator", parents=[common], help="peak/trough indicator series")
    p.add_argument("--network", action="store_true", help="also export the full networks and degree sequences")

    p = sub.add_parser("mark", parents=[common], help="days whose indicator exceeds a threshold")
    p.add_argument("--threshold", type=_threshold, required=True)

    sub.add_parser("extremes", parents=[common], help="realized peaks and troughs")

    p = sub.add_parser("evaluate", parents=[common], help="error diagrams and p-values")
    p.add_argument("--null-trials", type=_nonneg, default=0, help="shuffled-indicator trials for a null p-value")

    p = sub.add_parser("sweep", parents=[common], help="p-values over an (S, a, b) grid")
    p.add_argument("--grid-S", type=_positive, nargs="+", default=list(SCOPE_GRID))
    p.add_argument("--grid-a", type=_positive, nargs="+", default=list(WINDOW_GRID))
    p.add_argument("--grid-b", type=_positive, nargs="+", default=list(WINDOW_GRID))

    sub.add_parser("synth", parents=[common], help="write the synthetic fixture as CSV")
    return parser


def _kinds(args) -> list[ExtremeKind]:
    return [ExtremeKind.PEAK, ExtremeKind.TROUGH] if args.kind == "both" else [ExtremeKind(args.kind)]


def _load(args) -> list[PriceSeries]:
    if args.synthetic and args.inputs:
        raise UsageError("give either input files or --synthetic, not both")
    if args.synthetic:
        spec = bubble_spec(args.length, args.bubbles, args.noise, seed=args.seed)
        return [gen_synthetic(spec, name=f"synthetic-{args.synthetic}-seed{args.seed}")]
    if not args.inputs:
        raise UsageError("no input files (or use --synthetic bubble)")
    return [load_csv(p, args.price_column, args.date_column) for p in args.inputs]


def _check_diagram(diagram) -> None:
    x, u = diagram.curve()
    if np.any(np.diff(x) < 0) or np.any(np.diff(u) > 0) or not 0 < p_value(diagram) <= 1:
        raise InvariantError(f"error diagram for {diagram.kind.value} is not monotone or has area outside (0, 1]")


def _run_one(command: str, args, series: PriceSeries) -> list:
    """Process one series; returns summary rows for commands that have them."""
    out, ts, name = args.out, args.timestamp, series.name
    rows = []
    if command == "synth":
        write_csv(series, out / f"{name}.csv")
        return rows
    for kind in _kinds(args):
        if command == "indicator":
            ind = indicator(series, kind, args.scope, log=args.log)
            io.write_indicator(ind, out / f"{name}_{kind.value}_indicator.csv", ts)
            if args.network:
                link = LinkKind.VISIBILITY if kind is ExtremeKind.PEAK else LinkKind.ABSOLUTE_INVISIBILITY
                io.write_edge_list(build_network(series.heights(args.log), link, args.scope),
                                   out / f"{name}_{link.value}_edges.txt")
                direction = (DirectionFilter.REQUIRE_LOWER_LEFT if kind is ExtremeKind.PEAK
                             else DirectionFilter.REQUIRE_HIGHER_LEFT)
                io.write_degrees(degree_sequence(series.heights(args.log), args.scope, link, direction),
                                 out / f"{name}_{kind.value}_degrees.csv")
        elif command == "mark":
            ind = indicator(series, kind, args.scope, log=args.log)
            n = io.write_marks(ind, args.threshold, out / f"{name}_{kind.value}_marks.csv", ts)
            if n == 0:
                log.warning("%s: no day has a %s indicator above %g", name, kind.value, args.threshold)
        elif command == "extremes":
            io.write_extremes(detect_extremes(series, kind, args.before, args.after),
                              out / f"{name}_{kind.value}s.csv", ts)
        elif command == "evaluate":
            ind = indicator(series, kind, args.scope, log=args.log)
            ext = detect_extremes(series, kind, args.before, args.after)
            diagram = error_diagram(ind, ext, a=args.after, horizon=args.horizon)
            _check_diagram(diagram)
            io.write_error_diagram(diagram, out / f"{name}_{kind.value}_error_diagram.csv", ts)
            rows.append((kind, p_value(diagram)))
            if args.null_trials:
                null = shuffled_p_values(ind, ext, args.null_trials, args.seed, a=args.after, horizon=args.horizon)
                rows.append((f"{kind.value}_null", float(null.mean())))
        elif command == "sweep":
            result = parameter_sweep(series, args.grid_S, args.grid_a, args.grid_b, kind,
                                     horizon=args.horizon, log=args.log, jobs=args.jobs)
            if result.invalid:
                log.warning("%s: %d of %d %s triples excluded (first: %s)", name, len(result.invalid),
                            result.requested, kind.value, result.invalid[0][1])
            if not result.grid:
                raise EvaluationError(f"{name}: no valid (S, a, b) triple for {kind.value}s")
            io.write_sweep(result, out / f"{name}_{kind.value}_sweep.csv", ts)
            io.write_sweep_stats(result, out / f"{name}_{kind.value}_sweep_stats.json")
            rows.append((kind, result.stats.median))
    return rows


def _worker(payload):
    command, args, series = payload
    return _run_one(command, args, series)


def _write_summary(path: Path, header: list[str], rows: list[list]) -> None:
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(levelname)s: %(message)s")
    try:
        if args.before <= 0 or args.after <= 0:
            raise UsageError("windows must be positive")
        series_list = _load(args)
        args.out.mkdir(parents=True, exist_ok=True)
        if args.jobs > 1 and len(series_list) > 1:
            inner = argparse.Namespace(**{**vars(args), "jobs": 1})
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                results = list(pool.map(_worker, [(args.command, inner, s) for s in series_list]))
        else:
            results = [_run_one(args.command, args, s) for s in series_list]
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"netextremes: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantError as exc:
        print(f"netextremes: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (SeriesError, EvaluationError, ValueError, OSError) as exc:
        print(f"netextremes: {exc}", file=sys.stderr)
        return EXIT_DATA

    if args.command == "evaluate":
        header = ["ticker"] + [f"{k.value}_p" for k in _kinds(args)]
        if args.null_trials:
            header += [f"{k.value}_null_p" for k in _kinds(args)]
        table = []
        for s, rows in zip(series_list, results):
            vals = dict((k.value if isinstance(k, ExtremeKind) else k, p) for k, p in rows)
            table.append([s.name] + [repr(vals[h[:-2]]) for h in header[1:]])
        _write_summary(args.out / "summary.csv", header, table)
        for row in table:
            print(",".join(row))
    elif args.command == "sweep":
        medians = {k: [] for k in _kinds(args)}
        table = []
        for s, rows in zip(series_list, results):
            for kind, med in rows:
                medians[kind].append(med)
                table.append([s.name, kind.value, repr(med)])
        _write_summary(args.out / "sweep_medians.csv", ["ticker", "kind", "median_p"], table)
        for kind, meds in medians.items():
            print(f"mean of median {kind.value} p-values over {len(meds)} series: {np.mean(meds):.6f}")
    return EXIT_OK


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
