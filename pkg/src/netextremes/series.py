"""
Daily price series on a trading-day axis, CSV ingestion and synthetic fixtures.

Days are numbered 1..T after non-trading days have been dropped, so every
window length used downstream (look-back scope, before/after windows) is a
plain count of rows.
"""

from __future__ import annotations

import csv
import datetime as dt
from dataclasses import dataclass, field
from pathlib import Path
from typing import NamedTuple

import numpy as np

REGIMES = ("super-exponential-up", "super-exponential-down", "exponential", "flat-noise")


class SeriesError(ValueError):
    """Raised when price data violates the series contract."""


class PricePoint(NamedTuple):
    day_index: int
    date: dt.date | None
    price: float


@dataclass(frozen=True, eq=False)
class PriceSeries:
    """Immutable trading-day price series.

    Parameters
    ----------
    prices : array_like
        Strictly positive prices, one per trading day, oldest first.
    dates : sequence of datetime.date, optional
        Calendar dates matching ``prices``. Informational only.
    name : str
        Label used in reports (usually the ticker or file stem).
    """

    prices: np.ndarray
    dates: tuple[dt.date, ...] | None = None
    name: str = ""
    log_values: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        prices = np.array(self.prices, dtype=float)
        if prices.ndim != 1:
            raise SeriesError("prices must be one-dimensional")
        if prices.size < 2:
            raise SeriesError(f"series needs at least 2 points, got {prices.size}")
        bad = np.flatnonzero(~(prices > 0) | ~np.isfinite(prices))
        if bad.size:
            raise SeriesError(f"price at day {bad[0] + 1} is not a positive finite number: {prices[bad[0]]}")
        if self.dates is not None:
            dates = tuple(self.dates)
            if len(dates) != prices.size:
                raise SeriesError("dates and prices differ in length")
            object.__setattr__(self, "dates", dates)
        prices.setflags(write=False)
        logs = np.log(prices)
        logs.setflags(write=False)
        object.__setattr__(self, "prices", prices)
        object.__setattr__(self, "log_values", logs)

    @classmethod
    def from_log_values(cls, log_values, dates=None, name: str = "") -> "PriceSeries":
        """Build a series whose log-prices are ``log_values``.

        The stored ``log_values`` are the given array itself rather than
        ``log(exp(y))``, so hand-written test inputs survive exactly.
        """
        logs = np.array(log_values, dtype=float)
        out = cls(np.exp(logs), dates=dates, name=name)
        logs.setflags(write=False)
        object.__setattr__(out, "log_values", logs)
        return out

    def __len__(self) -> int:
        return self.prices.size

    @property
    def T(self) -> int:
        return self.prices.size

    @property
    def day_index(self) -> np.ndarray:
        return np.arange(1, self.T + 1)

    @property
    def points(self) -> list[PricePoint]:
        dates = self.dates or (None,) * self.T
        return [PricePoint(i + 1, d, float(p)) for i, (d, p) in enumerate(zip(dates, self.prices))]

    def heights(self, log: bool = True) -> np.ndarray:
        """Wall heights fed to the network builders: log-prices by default."""
        return self.log_values if log else self.prices

    def negated(self) -> "PriceSeries":
        """Series with log-values ``-y``; maps peaks onto troughs."""
        return PriceSeries.from_log_values(-self.log_values, dates=self.dates, name=self.name)

    def date_at(self, day: int) -> dt.date | None:
        return None if self.dates is None else self.dates[day - 1]

    def __eq__(self, other):
        if not isinstance(other, PriceSeries):
            return NotImplemented
        return (
            np.array_equal(self.prices, other.prices)
            and np.array_equal(self.log_values, other.log_values)
            and self.dates == other.dates
        )

    __hash__ = None


def _parse_date(text: str, row: int) -> dt.date:
    try:
        return dt.date.fromisoformat(text.strip())
    except ValueError:
        raise SeriesError(f"row {row}: cannot parse date {text!r} (expected ISO-8601)") from None


PRICE_COLUMNS = ("close", "price")


def load_csv(path, price_column: str | None = None, date_column: str | None = "date", name: str | None = None) -> PriceSeries:
    """Read a daily close series from a CSV file with a header row.

    Rows are taken in file order and numbered 1..T. Row numbers in error
    messages count data rows, starting at 1.

    Parameters
    ----------
    path : str or Path
    price_column : str, optional
        Header of the price column. By default the first of ``close`` and
        ``price`` present in the header (the latter reads back series dumps).
    date_column : str or None
        Header of the ISO-8601 date column. ``None`` skips dates entirely.
    name : str, optional
        Series label; defaults to the file stem.

    Raises
    ------
    SeriesError
        Missing column, unparsable or nonpositive price, or dates that are not
        strictly increasing.
    """
    path = Path(path)
    with path.open(newline="") as fh:
        reader = csv.DictReader(row for row in fh if not row.startswith("#"))
        fields = reader.fieldnames or []
        if price_column is None:
            price_column = next((c for c in PRICE_COLUMNS if c in fields), PRICE_COLUMNS[0])
        for col in (price_column, date_column):
            if col is not None and col not in fields:
                raise SeriesError(f"{path}: missing column {col!r} (have {fields})")
        prices, dates = [], []
        for row_no, row in enumerate(reader, start=1):
            raw = row[price_column]
            try:
                price = float(raw)
            except (TypeError, ValueError):
                raise SeriesError(f"row {row_no}: cannot parse price {raw!r}") from None
            if not (price > 0 and np.isfinite(price)):
                raise SeriesError(f"row {row_no}: price must be positive, got {raw!r}")
            if date_column is not None:
                text = (row[date_column] or "").strip()
                if not text and (row_no == 1 or dates[-1] is None):
                    dates.append(None)  # dumps of undated series leave the column blank
                else:
                    date = _parse_date(text, row_no)
                    if dates and (dates[-1] is None or date <= dates[-1]):
                        raise SeriesError(f"row {row_no}: date {date} is not after previous date {dates[-1]}")
                    dates.append(date)
            prices.append(price)
    undated = date_column is None or not dates or dates[-1] is None
    return PriceSeries(np.array(prices), dates=None if undated else tuple(dates),
                       name=path.stem if name is None else name)


def write_csv(series: PriceSeries, path) -> None:
    """Dump ``day_index,date,price,log_price`` rows."""
    with Path(path).open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["day_index", "date", "price", "log_price"])
        for (day, date, price), y in zip(series.points, series.log_values):
            w.writerow([day, "" if date is None else date.isoformat(), repr(price), repr(float(y))])


# --- synthetic fixtures -------------------------------------------------------

@dataclass(frozen=True)
class Segment:
    """One regime on days ``start..end`` (inclusive, 1-based).

    ``size`` is the total log-price change over the segment: a rise for the
    up regime, a drop for the down regime, signed for the exponential regime
    and ignored for flat noise. ``exponent`` is the power ``m`` of the
    ``-(t_c - t)**m`` bubble shape.
    """

    start: int
    end: int
    regime: str
    size: float = 0.5
    exponent: float = 0.5


@dataclass(frozen=True)
class SyntheticSpec:
    length: int
    segments: tuple[Segment, ...] = ()
    noise_scale: float = 0.0
    seed: int = 0
    start_price: float = 100.0

    def __post_init__(self):
        segs = tuple(s if isinstance(s, Segment) else Segment(*s) for s in self.segments)
        object.__setattr__(self, "segments", segs)
        if self.length < 2:
            raise SeriesError("synthetic series needs length >= 2")
        if self.noise_scale < 0:
            raise SeriesError("noise_scale must be nonnegative")
        ordered = sorted(segs, key=lambda s: s.start)
        for s in ordered:
            if s.regime not in REGIMES:
                raise SeriesError(f"unknown regime {s.regime!r}; choose from {REGIMES}")
            if not 1 <= s.start < s.end <= self.length:
                raise SeriesError(f"segment {s.start}..{s.end} outside [1, {self.length}] or empty")
            if not 0 < s.exponent < 1:
                raise SeriesError("bubble exponent must lie in (0, 1)")
        for prev, nxt in zip(ordered, ordered[1:]):
            if nxt.start < prev.end:
                raise SeriesError(f"segments {prev.start}..{prev.end} and {nxt.start}..{nxt.end} overlap")


def _segment_path(seg: Segment) -> np.ndarray:
    """Log-price offsets for days start..end, zero at ``start``."""
    n = seg.end - seg.start
    t = np.arange(n + 1, dtype=float)
    if seg.regime in ("super-exponential-up", "super-exponential-down"):
        tc = n + 1.0  # singularity one day past the segment end
        shape = tc ** seg.exponent - (tc - t) ** seg.exponent
        shape /= shape[-1]
        return seg.size * shape if seg.regime == "super-exponential-up" else -seg.size * shape
    if seg.regime == "exponential":
        return seg.size * t / n
    return np.zeros(n + 1)


def gen_synthetic(spec: SyntheticSpec, name: str = "synthetic") -> PriceSeries:
    """Generate a price series from piecewise regimes plus Gaussian log-returns.

    Days not covered by any segment follow the flat-noise regime. Segments may
    share a boundary day. The same ``spec`` always yields the same series.
    """
    drift = np.zeros(spec.length)  # drift[d] = deterministic log change from day d to d+1 (0-based)
    for seg in spec.segments:
        drift[seg.start - 1: seg.end - 1] = np.diff(_segment_path(seg))
    rng = np.random.default_rng(spec.seed)
    noise = rng.normal(0.0, spec.noise_scale, spec.length - 1) if spec.noise_scale > 0 else 0.0
    steps = drift[:-1] + noise
    logs = np.log(spec.start_price) + np.concatenate(([0.0], np.cumsum(steps)))
    days = np.busday_offset("2000-01-03", np.arange(spec.length), roll="forward")
    dates = tuple(days.astype(object))
    return PriceSeries.from_log_values(logs, dates=dates, name=name)


def bubble_spec(length: int = 2000, n_bubbles: int = 4, noise_scale: float = 0.01, seed: int = 0,
                bubble_size: float = 0.6, exponent: float = 0.3) -> SyntheticSpec:
    """Fixture with ``n_bubbles`` planted bubbles and as many negative bubbles.

    Each cycle is a super-exponential rise (45% of the cycle) ending in a peak,
    a short steep crash, a super-exponential fall ending in a trough, then a
    short rebound and a flat stretch.
    """
    cycle = length // n_bubbles
    if cycle < 40:
        raise SeriesError("series too short for the requested number of bubbles")
    plan = (
        (0.45, "super-exponential-up", bubble_size),
        (0.05, "exponential", -0.4 * bubble_size),
        (0.35, "super-exponential-down", 2 / 3 * bubble_size),
        (0.05, "exponential", bubble_size / 3),
    )
    segments = []
    for k in range(n_bubbles):
        start = k * cycle + 1
        for frac, regime, size in plan:
            end = min(start + max(2, int(cycle * frac)), length)
            segments.append(Segment(start, end, regime, size, exponent))
            start = end
    return SyntheticSpec(length, tuple(segments), noise_scale=noise_scale, seed=seed)
