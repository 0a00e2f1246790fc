"""Realized peaks and troughs under a fixed before/after window."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .indicator import ExtremeKind
from .series import PriceSeries

DEFAULT_BEFORE = 131
DEFAULT_AFTER = 45


@dataclass(frozen=True, eq=False)
class ExtremeSet:
    kind: ExtremeKind
    before_window: int
    after_window: int
    indices: np.ndarray  # sorted 1-based days
    source: PriceSeries

    def __len__(self) -> int:
        return self.indices.size

    def within(self, first: int, last: int) -> np.ndarray:
        return self.indices[(self.indices >= first) & (self.indices <= last)]


def detect_extremes(series: PriceSeries, kind, b: int = DEFAULT_BEFORE, a: int = DEFAULT_AFTER) -> ExtremeSet:
    """Days whose price is the maximum (peak) or minimum (trough) over the
    ``b`` days before and ``a`` days after.

    Only days with a complete window qualify, i.e. ``b + 1 <= i <= T - a``.
    On a plateau of equal extreme values only the earliest day is kept: the
    candidate must beat its before-window strictly and its after-window
    weakly.
    """
    kind = ExtremeKind(kind)
    if b < 1 or a < 1:
        raise ValueError(f"windows must be positive, got b={b}, a={a}")
    if series.T <= a + b:
        raise ValueError(f"series length {series.T} too short for windows b={b}, a={a}")
    y = series.log_values if kind is ExtremeKind.PEAK else -series.log_values
    windows = np.lib.stride_tricks.sliding_window_view(y, a + b + 1)
    centre = windows[:, b]
    before_ok = centre > windows[:, :b].max(axis=1)
    after_ok = centre >= windows[:, b + 1:].max(axis=1)
    days = np.flatnonzero(before_ok & after_ok) + b + 1
    days.setflags(write=False)
    return ExtremeSet(kind, b, a, days, series)


def detect_peaks(series: PriceSeries, b: int = DEFAULT_BEFORE, a: int = DEFAULT_AFTER) -> ExtremeSet:
    return detect_extremes(series, ExtremeKind.PEAK, b, a)


def detect_troughs(series: PriceSeries, b: int = DEFAULT_BEFORE, a: int = DEFAULT_AFTER) -> ExtremeSet:
    return detect_extremes(series, ExtremeKind.TROUGH, b, a)
