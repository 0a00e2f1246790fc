"""
Error diagrams, area-under-curve p-values and parameter sweeps.

An error diagram is traced by lowering an alarm threshold through the
distinct indicator values. Each time a new extreme becomes predicted we
record the fraction of prediction days under alarm and the fraction of
extremes still missed. Random alarms fall on the anti-diagonal
``missed = 1 - alarmed``, so the area under the curve serves as a p-value.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .extremes import ExtremeSet, detect_extremes
from .indicator import ExtremeKind, IndicatorSeries, indicator
from .series import PriceSeries

SCOPE_GRID = tuple(range(200, 471, 30))
WINDOW_GRID = tuple(range(30, 166, 15))
QUANTILE_METHOD = "linear"  # inclusive linear interpolation (Hyndman-Fan type 7)


class EvaluationError(ValueError):
    """Raised when an error diagram cannot be defined for the inputs."""


@dataclass(frozen=True)
class ErrorDiagramPoint:
    alarm_fraction: float
    unpredicted_fraction: float
    threshold: float


@dataclass(frozen=True)
class ErrorDiagram:
    kind: ExtremeKind
    points: tuple[ErrorDiagramPoint, ...]
    prediction_days: int
    total_extremes: int
    scope: int
    after_window: int
    before_window: int | None = None
    horizon: int = 0
    T: int | None = None

    @property
    def alarm_fractions(self) -> np.ndarray:
        return np.array([p.alarm_fraction for p in self.points])

    @property
    def unpredicted_fractions(self) -> np.ndarray:
        return np.array([p.unpredicted_fraction for p in self.points])

    def curve(self) -> tuple[np.ndarray, np.ndarray]:
        """Recorded points with ``(0, 1)`` prepended and ``(1, 0)`` appended."""
        x = np.concatenate(([0.0], self.alarm_fractions, [1.0]))
        u = np.concatenate(([1.0], self.unpredicted_fractions, [0.0]))
        return x, u


def error_diagram(ind: IndicatorSeries, extremes: ExtremeSet, a: int | None = None, horizon: int = 0) -> ErrorDiagram:
    """Trace the error diagram of ``ind`` against realized ``extremes``.

    Prediction days are ``S+1..T-a``. Extremes outside them are ignored. An
    alarm is raised on every prediction day whose indicator is at or above
    the current threshold. An extreme on day ``e`` counts as predicted once any
    alarm falls on a day in ``[e - horizon, e]``.

    Parameters
    ----------
    ind : IndicatorSeries
    extremes : ExtremeSet
        Must come from the same price series as ``ind``.
    a : int, optional
        Days at the end without a confirmable extreme. Defaults to the after
        window used to detect ``extremes``.
    horizon : int
        Forward reach of an alarm, in days. ``0`` means same-day only.
    """
    if ind.source is not extremes.source and ind.source != extremes.source:
        raise EvaluationError("indicator and extremes come from different series")
    if ind.kind is not extremes.kind:
        raise EvaluationError(f"cannot score a {ind.kind.value} indicator against {extremes.kind.value}s")
    if horizon < 0:
        raise EvaluationError("horizon must be nonnegative")
    a = extremes.after_window if a is None else a
    S, T = ind.scope, ind.source.T
    n_days = T - a - S
    if n_days < 1:
        raise EvaluationError(f"no prediction days: T={T}, S={S}, a={a}")
    vals = np.asarray(ind.values[:n_days], dtype=float)
    events = extremes.within(S + 1, T - a)
    k = events.size
    if k == 0:
        raise EvaluationError(f"no {extremes.kind.value}s on prediction days {S + 1}..{T - a}")

    # threshold at which each extreme first becomes predicted
    offsets = events - (S + 1)
    if horizon == 0:
        keys = vals[offsets]
    else:
        keys = np.array([vals[max(o - horizon, 0): o + 1].max() for o in offsets])

    thresholds = np.unique(vals)[::-1]
    sorted_vals = np.sort(vals)
    sorted_keys = np.sort(keys)
    alarms = n_days - np.searchsorted(sorted_vals, thresholds, side="left")
    predicted = k - np.searchsorted(sorted_keys, thresholds, side="left")
    new = np.flatnonzero(np.diff(np.concatenate(([0], predicted))) > 0)
    points = tuple(
        ErrorDiagramPoint(alarms[n] / n_days, (k - predicted[n]) / k, float(thresholds[n])) for n in new
    )
    return ErrorDiagram(ind.kind, points, n_days, k, S, a, extremes.before_window, horizon, T)


def p_value(diagram: ErrorDiagram, method: str = "staircase") -> float:
    """Area under the completed error-diagram curve.

    ``staircase`` holds each missed fraction until the next recorded alarm
    fraction, which is exact for the step function the descent produces.
    ``trapezoid`` joins consecutive points with straight lines and is kept
    for comparison.
    """
    x, u = diagram.curve()
    if method == "staircase":
        return float(np.sum(np.diff(x) * u[:-1]))
    if method == "trapezoid":
        return float(np.sum(np.diff(x) * (u[:-1] + u[1:]) / 2))
    raise ValueError(f"unknown integration method {method!r}")


def evaluate(series: PriceSeries, kind, scope: int, a: int, b: int, horizon: int = 0, log: bool = True) -> ErrorDiagram:
    """Indicator, extremes and error diagram for one parameter triple."""
    kind = ExtremeKind(kind)
    ind = indicator(series, kind, scope, log=log)
    ext = detect_extremes(series, kind, b=b, a=a)
    return error_diagram(ind, ext, a=a, horizon=horizon)


def with_values(ind: IndicatorSeries, values) -> IndicatorSeries:
    """Copy of ``ind`` carrying replacement ``values`` (e.g. a null model)."""
    values = np.asarray(values, dtype=float)
    if values.shape != ind.values.shape:
        raise ValueError(f"expected {ind.values.shape} values, got {values.shape}")
    return IndicatorSeries(ind.kind, ind.scope, values, ind.source)


def shuffled_p_values(ind: IndicatorSeries, extremes: ExtremeSet, trials: int = 100, seed: int = 0,
                      a: int | None = None, horizon: int = 0) -> np.ndarray:
    """p-values of ``trials`` random permutations of the indicator's prediction-day values."""
    rng = np.random.default_rng(seed)
    a = extremes.after_window if a is None else a
    n_days = ind.source.T - a - ind.scope
    out = np.empty(trials)
    for t in range(trials):
        vals = np.array(ind.values, dtype=float)
        vals[:n_days] = rng.permutation(vals[:n_days])
        out[t] = p_value(error_diagram(with_values(ind, vals), extremes, a=a, horizon=horizon))
    return out


# --- sweeps -------------------------------------------------------------------

@dataclass(frozen=True)
class SweepStats:
    q1: float
    median: float
    q3: float
    whisker_low: float
    whisker_high: float
    outliers: tuple[float, ...]
    quantile_method: str = QUANTILE_METHOD

    def to_dict(self) -> dict:
        return {
            "q1": self.q1, "median": self.median, "q3": self.q3,
            "whisker_low": self.whisker_low, "whisker_high": self.whisker_high,
            "outliers": list(self.outliers), "quantile_method": self.quantile_method,
        }


def sweep_stats(p_values) -> SweepStats:
    """Box-plot summary: quartiles, 1.5 IQR whiskers and outliers."""
    v = np.asarray(p_values, dtype=float)
    if v.size == 0:
        raise ValueError("cannot summarise an empty list of p-values")
    q1, med, q3 = np.percentile(v, [25, 50, 75], method=QUANTILE_METHOD)
    iqr = q3 - q1
    lo_fence, hi_fence = q1 - 1.5 * iqr, q3 + 1.5 * iqr
    inside = v[(v >= lo_fence) & (v <= hi_fence)]
    outliers = np.sort(v[(v < lo_fence) | (v > hi_fence)])
    return SweepStats(float(q1), float(med), float(q3), float(inside.min()), float(inside.max()),
                      tuple(float(x) for x in outliers))


@dataclass(frozen=True)
class SweepResult:
    kind: ExtremeKind
    grid: tuple[tuple[int, int, int], ...]  # valid (S, a, b) triples in grid order
    p_values: np.ndarray
    invalid: tuple[tuple[tuple[int, int, int], str], ...] = ()
    stats: SweepStats | None = field(default=None)

    @property
    def requested(self) -> int:
        return len(self.grid) + len(self.invalid)

    def lookup(self, S: int, a: int, b: int) -> float:
        return float(self.p_values[self.grid.index((S, a, b))])


def _sweep_scope(args):
    series, kind, S, ab_pairs, extremes, horizon, log = args
    rows = []
    if series.T <= S:
        return [((S, a, b), None, f"series length {series.T} <= S") for a, b in ab_pairs]
    ind = indicator(series, kind, S, log=log)
    for a, b in ab_pairs:
        triple = (S, a, b)
        ext = extremes.get((a, b))
        if isinstance(ext, str):
            rows.append((triple, None, ext))
            continue
        if series.T <= S + a:
            rows.append((triple, None, f"T={series.T} <= S + a"))
            continue
        try:
            rows.append((triple, p_value(error_diagram(ind, ext, a=a, horizon=horizon)), None))
        except EvaluationError as exc:
            rows.append((triple, None, str(exc)))
    return rows


def parameter_sweep(series: PriceSeries, S_choices=SCOPE_GRID, a_choices=WINDOW_GRID, b_choices=WINDOW_GRID,
                    kind=ExtremeKind.PEAK, horizon: int = 0, log: bool = True, jobs: int = 1) -> SweepResult:
    """p-value for every ``(S, a, b)`` in the grid, in ``S, a, b`` nesting order.

    Triples that cannot be evaluated (series too short, no extremes on the
    prediction days) are reported in ``invalid`` rather than raised. Results
    do not depend on ``jobs``.
    """
    kind = ExtremeKind(kind)
    ab_pairs = list(itertools.product(a_choices, b_choices))
    extremes: dict[tuple[int, int], ExtremeSet | str] = {}
    for a, b in ab_pairs:
        try:
            extremes[(a, b)] = detect_extremes(series, kind, b=b, a=a)
        except ValueError as exc:
            extremes[(a, b)] = str(exc)
    tasks = [(series, kind, S, ab_pairs, extremes, horizon, log) for S in S_choices]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_sweep_scope, tasks))
    else:
        chunks = [_sweep_scope(t) for t in tasks]
    rows = [r for chunk in chunks for r in chunk]
    grid = tuple(t for t, p, _ in rows if p is not None)
    pv = np.array([p for _, p, _ in rows if p is not None])
    invalid = tuple((t, why) for t, p, why in rows if p is None)
    return SweepResult(kind, grid, pv, invalid, sweep_stats(pv) if pv.size else None)
