"""Peak and trough indicators from constrained left-looking network degrees."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .series import PriceSeries
from .visibility import DirectionFilter, LinkKind, degree_sequence

DEFAULT_SCOPE = 262


class ExtremeKind(enum.Enum):
    PEAK = "peak"
    TROUGH = "trough"


@dataclass(frozen=True, eq=False)
class IndicatorSeries:
    """Indicator values for days ``scope+1..T``.

    ``values[n]`` belongs to day ``scope + 1 + n``; earlier days carry no
    value at all.
    """

    kind: ExtremeKind
    scope: int
    values: np.ndarray
    source: PriceSeries

    @property
    def first_day(self) -> int:
        return self.scope + 1

    @property
    def day_index(self) -> np.ndarray:
        return np.arange(self.first_day, self.first_day + self.values.size)

    @property
    def degrees(self) -> np.ndarray:
        return np.rint(self.values * self.scope).astype(np.int64)

    def at(self, day: int) -> float:
        if day <= self.scope or day > self.source.T:
            raise IndexError(f"indicator undefined on day {day} (defined for {self.first_day}..{self.source.T})")
        return float(self.values[day - self.first_day])

    def above(self, threshold: float) -> np.ndarray:
        """Days whose indicator strictly exceeds ``threshold``."""
        return self.day_index[self.values > threshold]


def _indicator(series: PriceSeries, scope: int, kind: ExtremeKind, log: bool) -> IndicatorSeries:
    if scope < 2:
        raise ValueError(f"scope must be at least 2, got {scope}")
    if series.T <= scope:
        raise ValueError(f"series length {series.T} must exceed scope {scope}")
    if kind is ExtremeKind.PEAK:
        link, direction = LinkKind.VISIBILITY, DirectionFilter.REQUIRE_LOWER_LEFT
    else:
        link, direction = LinkKind.ABSOLUTE_INVISIBILITY, DirectionFilter.REQUIRE_HIGHER_LEFT
    deg = degree_sequence(series.heights(log), scope, link, direction)
    values = deg.degrees / scope
    values.setflags(write=False)
    return IndicatorSeries(kind, scope, values, series)


def peak_indicator(series: PriceSeries, scope: int = DEFAULT_SCOPE, log: bool = True) -> IndicatorSeries:
    """Share of the previous ``scope`` days that are lower than today and
    visible from it. Close to 1 during a super-exponential (convex) rise.

    ``log=False`` builds the network on raw prices instead of log-prices.
    """
    return _indicator(series, scope, ExtremeKind.PEAK, log)


def trough_indicator(series: PriceSeries, scope: int = DEFAULT_SCOPE, log: bool = True) -> IndicatorSeries:
    """Mirror of :func:`peak_indicator`: higher left days linked by absolute
    invisibility, close to 1 during a super-exponential (concave) fall."""
    return _indicator(series, scope, ExtremeKind.TROUGH, log)


def indicator(series: PriceSeries, kind, scope: int = DEFAULT_SCOPE, log: bool = True) -> IndicatorSeries:
    return _indicator(series, scope, ExtremeKind(kind), log)
