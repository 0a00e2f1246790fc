"""Plot-ready CSV/JSON writers and readers for every pipeline product.

Metadata travels in leading ``# key=value`` comment lines so the files stay
loadable with any CSV reader that skips comments.
"""

from __future__ import annotations

import csv
import datetime as dt
import json
from pathlib import Path

import numpy as np

from .evaluation import ErrorDiagram, SweepResult, p_value
from .extremes import ExtremeSet
from .indicator import IndicatorSeries
from .visibility import DegreeSequence


def _fmt(x: float) -> str:
    return repr(float(x))


def _header(fh, meta: dict, timestamp: bool) -> None:
    if timestamp:
        fh.write(f"# generated={dt.datetime.now(dt.timezone.utc).isoformat(timespec='seconds')}\n")
    if meta:
        fh.write("# " + " ".join(f"{k}={v}" for k, v in meta.items()) + "\n")


def _date(series, day: int) -> str:
    d = series.date_at(int(day))
    return "" if d is None else d.isoformat()


def read_meta(path) -> dict[str, str]:
    """Collect ``key=value`` pairs from leading comment lines."""
    meta = {}
    with Path(path).open() as fh:
        for line in fh:
            if not line.startswith("#"):
                break
            for tok in line[1:].split():
                key, _, val = tok.partition("=")
                meta[key] = val
    return meta


def read_rows(path) -> list[dict[str, str]]:
    with Path(path).open(newline="") as fh:
        return list(csv.DictReader(line for line in fh if not line.startswith("#")))


def write_indicator(ind: IndicatorSeries, path, timestamp: bool = False) -> None:
    """``day_index,date,indicator_value`` for days ``S+1..T``."""
    with Path(path).open("w", newline="") as fh:
        _header(fh, {"kind": ind.kind.value, "scope": ind.scope, "series": ind.source.name or "-"}, timestamp)
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["day_index", "date", "indicator_value"])
        for day, v in zip(ind.day_index, ind.values):
            w.writerow([int(day), _date(ind.source, day), _fmt(v)])


def write_marks(ind: IndicatorSeries, threshold: float, path, timestamp: bool = False) -> int:
    """Days whose indicator exceeds ``threshold``; returns the row count."""
    days = ind.above(threshold)
    with Path(path).open("w", newline="") as fh:
        _header(fh, {"kind": ind.kind.value, "scope": ind.scope, "threshold": _fmt(threshold)}, timestamp)
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["day_index", "date", "price", "indicator_value"])
        for day in days:
            w.writerow([int(day), _date(ind.source, day), _fmt(ind.source.prices[day - 1]), _fmt(ind.at(int(day)))])
    return int(days.size)


def write_extremes(extremes: ExtremeSet, path, timestamp: bool = False) -> None:
    """``day_index,date,price,kind`` rows."""
    with Path(path).open("w", newline="") as fh:
        _header(fh, {"b": extremes.before_window, "a": extremes.after_window}, timestamp)
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["day_index", "date", "price", "kind"])
        for day in extremes.indices:
            w.writerow([int(day), _date(extremes.source, day), _fmt(extremes.source.prices[day - 1]),
                        extremes.kind.value])


def write_error_diagram(diagram: ErrorDiagram, path, timestamp: bool = False) -> None:
    """``threshold,alarm_fraction,unpredicted_fraction`` rows plus run metadata."""
    meta = {
        "kind": diagram.kind.value, "S": diagram.scope, "a": diagram.after_window, "b": diagram.before_window,
        "T": diagram.T, "horizon": diagram.horizon, "prediction_days": diagram.prediction_days,
        "total_extremes": diagram.total_extremes, "p_value": _fmt(p_value(diagram)),
        "p_value_trapezoid": _fmt(p_value(diagram, "trapezoid")),
    }
    with Path(path).open("w", newline="") as fh:
        _header(fh, meta, timestamp)
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["threshold", "alarm_fraction", "unpredicted_fraction"])
        for pt in diagram.points:
            w.writerow([_fmt(pt.threshold), _fmt(pt.alarm_fraction), _fmt(pt.unpredicted_fraction)])


def write_sweep(result: SweepResult, path, timestamp: bool = False) -> None:
    """``S,a,b,p_value`` rows for the valid triples."""
    with Path(path).open("w", newline="") as fh:
        _header(fh, {"kind": result.kind.value, "requested": result.requested, "invalid": len(result.invalid)},
                timestamp)
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["S", "a", "b", "p_value"])
        for (S, a, b), p in zip(result.grid, result.p_values):
            w.writerow([S, a, b, _fmt(p)])


def write_sweep_stats(result: SweepResult, path) -> None:
    payload = result.stats.to_dict() if result.stats else {}
    payload.update(kind=result.kind.value, count=len(result.grid),
                   invalid=[{"S": t[0], "a": t[1], "b": t[2], "reason": why} for t, why in result.invalid])
    Path(path).write_text(json.dumps(payload, indent=2) + "\n")


def write_edge_list(edges, path) -> None:
    """Debug export: one ``i j`` pair per line."""
    with Path(path).open("w") as fh:
        fh.writelines(f"{i} {j}\n" for i, j in edges)


def write_degrees(degrees: DegreeSequence, path) -> None:
    with Path(path).open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["day_index", "degree"])
        w.writerows(zip(degrees.day_index.tolist(), np.asarray(degrees.degrees).tolist()))
