"""
Visibility and absolute-invisibility links between points of a series.

A pair of days ``j < i`` is *visible* when every intermediate point lies
strictly below the straight chord joining them, and *absolutely invisible*
when every intermediate point lies strictly above it. Adjacent days are
always linked under both rules.

All day arguments are 1-based trading-day ordinals, matching
``PriceSeries.day_index``. Heights are log-prices unless a raw array is
passed in.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .series import PriceSeries

_BLOCK_ROWS = 2048


class LinkKind(enum.Enum):
    VISIBILITY = "visibility"
    ABSOLUTE_INVISIBILITY = "absolute-invisibility"


class DirectionFilter(enum.Enum):
    REQUIRE_LOWER_LEFT = "require_lower_left"    # y_i > y_j
    REQUIRE_HIGHER_LEFT = "require_higher_left"  # y_i < y_j
    NONE = "none"


@dataclass(frozen=True, eq=False)
class DegreeSequence:
    """Left-looking degrees for days ``first_day..T``.

    ``degrees[n]`` belongs to day ``first_day + n``; with the default
    ``first_day = scope + 1`` every entry sees a full window.
    """

    kind: LinkKind
    direction: DirectionFilter
    scope: int
    first_day: int
    degrees: np.ndarray

    @property
    def day_index(self) -> np.ndarray:
        return np.arange(self.first_day, self.first_day + self.degrees.size)


def _heights(series) -> np.ndarray:
    if isinstance(series, PriceSeries):
        return series.log_values
    y = np.asarray(series, dtype=float)
    if y.ndim != 1:
        raise ValueError("heights must be one-dimensional")
    return y


def _pair(y: np.ndarray, i: int, j: int) -> tuple[int, int]:
    if i == j:
        raise ValueError("a point cannot link to itself")
    lo, hi = min(i, j), max(i, j)
    if lo < 1 or hi > y.size:
        raise IndexError(f"days {i}, {j} outside 1..{y.size}")
    return lo, hi


def _chord_excess(y: np.ndarray, lo: int, hi: int) -> np.ndarray:
    """Sign-exact ``(y_k - chord_k) * (hi - lo)`` for lo < k < hi (1-based)."""
    k = np.arange(lo + 1, hi)
    y0, y1 = y[lo - 1], y[hi - 1]
    return (y[k - 1] - y0) * (hi - lo) - (y1 - y0) * (k - lo)


def visible(series, i: int, j: int) -> bool:
    """True iff every point strictly between days ``i`` and ``j`` is below their chord."""
    y = _heights(series)
    lo, hi = _pair(y, i, j)
    return bool(np.all(_chord_excess(y, lo, hi) < 0))


def invisible(series, i: int, j: int) -> bool:
    """True iff every point strictly between days ``i`` and ``j`` is above their chord."""
    y = _heights(series)
    lo, hi = _pair(y, i, j)
    return bool(np.all(_chord_excess(y, lo, hi) > 0))


# --- fast scan ----------------------------------------------------------------

def _scan_rows(y: np.ndarray, left: np.ndarray, kind: LinkKind, direction: DirectionFilter) -> np.ndarray:
    """Link masks for a block of target days.

    ``left[r, d-1]`` is the height ``d`` days left of the target whose own
    height is ``y[r]``. Looking leftwards, a point is linked iff its slope
    towards the target beats every slope seen closer in.
    """
    dist = np.arange(1, left.shape[1] + 1, dtype=float)
    slopes = (left - y[:, None]) / dist
    linked = np.ones(slopes.shape, dtype=bool)
    if kind is LinkKind.VISIBILITY:
        best = np.maximum.accumulate(slopes, axis=1)
        np.greater(slopes[:, 1:], best[:, :-1], out=linked[:, 1:])
    else:
        best = np.minimum.accumulate(slopes, axis=1)
        np.less(slopes[:, 1:], best[:, :-1], out=linked[:, 1:])
    if direction is DirectionFilter.REQUIRE_LOWER_LEFT:
        linked &= y[:, None] > left
    elif direction is DirectionFilter.REQUIRE_HIGHER_LEFT:
        linked &= y[:, None] < left
    return linked


def _check(y: np.ndarray, i: int, scope: int) -> int:
    if scope < 1:
        raise ValueError(f"scope must be positive, got {scope}")
    if not 1 <= i <= y.size:
        raise IndexError(f"day {i} outside 1..{y.size}")
    return min(scope, i - 1)


def left_degree_scan(series, i: int, scope: int, kind: LinkKind = LinkKind.VISIBILITY,
                     direction_filter: DirectionFilter = DirectionFilter.NONE) -> int:
    """Number of days ``j`` in ``[i - scope, i - 1]`` linked to day ``i``.

    The window is truncated at day 1 when ``i <= scope``. One leftward pass,
    O(scope).
    """
    y = _heights(series)
    width = _check(y, i, scope)
    if width == 0:
        return 0
    left = y[i - 2::-1][:width]
    return int(_scan_rows(y[i - 1:i], left[None, :], LinkKind(kind), DirectionFilter(direction_filter)).sum())


def degree_sequence(series, scope: int, kind: LinkKind = LinkKind.VISIBILITY,
                    direction_filter: DirectionFilter = DirectionFilter.NONE) -> DegreeSequence:
    """Left-looking degrees of every day ``i > scope``, O(T * scope) overall."""
    y = _heights(series)
    kind, direction_filter = LinkKind(kind), DirectionFilter(direction_filter)
    if scope < 1:
        raise ValueError(f"scope must be positive, got {scope}")
    if y.size <= scope:
        raise ValueError(f"series of length {y.size} has no day beyond scope {scope}")
    windows = np.lib.stride_tricks.sliding_window_view(y, scope + 1)
    out = np.empty(windows.shape[0], dtype=np.int64)
    for start in range(0, windows.shape[0], _BLOCK_ROWS):
        w = windows[start:start + _BLOCK_ROWS]
        out[start:start + w.shape[0]] = _scan_rows(w[:, -1], w[:, -2::-1], kind, direction_filter).sum(axis=1)
    return DegreeSequence(kind, direction_filter, scope, scope + 1, out)


# --- oracle -------------------------------------------------------------------

def brute_force_links(series, i: int, scope: int) -> dict[str, np.ndarray]:
    """Direct pairwise evaluation of both link rules for the window of day ``i``.

    Returns boolean arrays over ``j = i-1, i-2, ..., i-width`` under keys
    ``"visible"``, ``"invisible"``, ``"lower_left"``, ``"higher_left"``. Every
    intermediate point of every pair is checked against the chord, O(scope**2).
    """
    y = _heights(series)
    width = _check(y, i, scope)
    js = np.arange(i - 1, i - 1 - width, -1)
    yi = y[i - 1]
    vis = np.ones(width, dtype=bool)
    inv = np.ones(width, dtype=bool)
    if width > 1:
        # excess[a, b] compares point k = i-1-b against chord (j = i-1-a, i); valid for b < a
        k = js[None, :]
        j = js[:, None]
        yj, yk = y[j - 1], y[k - 1]
        excess = (yk - yj) * (i - j) - (yi - yj) * (k - j)
        between = k > j
        vis = np.all(~between | (excess < 0), axis=1)
        inv = np.all(~between | (excess > 0), axis=1)
    yj = y[js - 1]
    return {"visible": vis, "invisible": inv, "lower_left": yi > yj, "higher_left": yi < yj}


def brute_force_link_masks(series, scope: int) -> dict[str, np.ndarray]:
    """Batched :func:`brute_force_links` for every day ``i > scope``.

    Arrays have shape ``(T - scope, scope)``; row ``r`` is day ``scope + 1 + r``
    and column ``d - 1`` is the day ``d`` steps to its left. O(T * scope**2).
    """
    y = _heights(series)
    if scope < 1 or y.size <= scope:
        raise ValueError(f"need 1 <= scope < {y.size}, got {scope}")
    windows = np.lib.stride_tricks.sliding_window_view(y, scope + 1)
    dist = np.arange(1, scope + 1)
    # pair (j at distance dj, k at distance dk), interior iff dk < dj
    dj, dk = dist[:, None], dist[None, :]
    exterior = ~(dk < dj)
    n = windows.shape[0]
    vis = np.empty((n, scope), dtype=bool)
    inv = np.empty((n, scope), dtype=bool)
    rows = max(1, _BLOCK_ROWS * 8 // (scope * scope))
    for start in range(0, n, rows):
        w = windows[start:start + rows]
        yi = w[:, -1][:, None, None]
        left = w[:, -2::-1]
        yj, yk = left[:, :, None], left[:, None, :]
        excess = (yk - yj) * dj - (yi - yj) * (dj - dk)
        vis[start:start + w.shape[0]] = np.all(exterior | (excess < 0), axis=2)
        inv[start:start + w.shape[0]] = np.all(exterior | (excess > 0), axis=2)
    target, left = windows[:, -1:], windows[:, -2::-1]
    return {"visible": vis, "invisible": inv, "lower_left": target > left, "higher_left": target < left}


def _select(links: dict, kind: LinkKind, direction_filter: DirectionFilter) -> np.ndarray:
    mask = links["visible"] if LinkKind(kind) is LinkKind.VISIBILITY else links["invisible"]
    direction_filter = DirectionFilter(direction_filter)
    if direction_filter is DirectionFilter.REQUIRE_LOWER_LEFT:
        mask = mask & links["lower_left"]
    elif direction_filter is DirectionFilter.REQUIRE_HIGHER_LEFT:
        mask = mask & links["higher_left"]
    return mask


def brute_force_degrees(series, scope: int, kind: LinkKind = LinkKind.VISIBILITY,
                        direction_filter: DirectionFilter = DirectionFilter.NONE,
                        links: dict | None = None) -> DegreeSequence:
    """Oracle counterpart of :func:`degree_sequence`.

    Pass ``links`` from :func:`brute_force_link_masks` to reuse one pairwise
    evaluation across kinds and filters.
    """
    links = brute_force_link_masks(series, scope) if links is None else links
    degrees = _select(links, kind, direction_filter).sum(axis=1)
    return DegreeSequence(LinkKind(kind), DirectionFilter(direction_filter), scope, scope + 1, degrees)


def brute_force_degree(series, i: int, scope: int, kind: LinkKind = LinkKind.VISIBILITY,
                       direction_filter: DirectionFilter = DirectionFilter.NONE) -> int:
    """Testing oracle for :func:`left_degree_scan`."""
    return int(_select(brute_force_links(series, i, scope), kind, direction_filter).sum())


# --- full network (debug/export only) -----------------------------------------

def build_network(series, kind: LinkKind = LinkKind.VISIBILITY, scope: int | None = None) -> list[tuple[int, int]]:
    """All links ``(j, i)`` with ``j < i`` and ``i - j <= scope`` (unbounded by default)."""
    y = _heights(series)
    kind = LinkKind(kind)
    scope = y.size - 1 if scope is None else scope
    edges = []
    for i in range(2, y.size + 1):
        width = min(scope, i - 1)
        mask = _scan_rows(y[i - 1:i], y[i - 2::-1][None, :width], kind, DirectionFilter.NONE)[0]
        edges.extend((int(i - 1 - d), i) for d in np.flatnonzero(mask)[::-1])
    return edges
