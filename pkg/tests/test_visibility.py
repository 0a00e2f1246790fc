import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from netextremes import (
    DirectionFilter,
    LinkKind,
    PriceSeries,
    brute_force_degree,
    build_network,
    degree_sequence,
    invisible,
    left_degree_scan,
    visible,
)

import oracles

KINDS = list(LinkKind)
FILTERS = list(DirectionFilter)
RULE = {LinkKind.VISIBILITY: "visibility", LinkKind.ABSOLUTE_INVISIBILITY: "invisibility"}


def test_adjacent_always_linked():
    y = [0.0, 5.0, -1.0]
    assert visible(y, 1, 2) and invisible(y, 1, 2)
    assert visible(y, 3, 2) and invisible(y, 3, 2)


def test_spike_blocks_sight():
    y = [0.0, 10.0, 0.0]
    assert not visible(y, 1, 3)
    assert invisible(y, 1, 3)


def test_dip_under_chord():
    y = [3.0, 1.0, 2.0]
    assert visible(y, 1, 3)
    assert not invisible(y, 1, 3)


def test_accepts_price_series_and_either_order():
    s = PriceSeries.from_log_values([3.0, 1.0, 2.0])
    assert visible(s, 3, 1)


def test_same_point_rejected():
    with pytest.raises(ValueError):
        visible([1.0, 2.0], 2, 2)
    with pytest.raises(IndexError):
        invisible([1.0, 2.0], 1, 3)


def test_tie_on_chord_breaks_both():
    y = [0.0, 1.0, 2.0]
    assert not visible(y, 1, 3)
    assert not invisible(y, 1, 3)


def test_worked_degree_example():
    y = [0.0, 3.0, 1.0, 2.0]
    args = (4, 3, LinkKind.VISIBILITY, DirectionFilter.REQUIRE_LOWER_LEFT)
    assert left_degree_scan(y, *args) == 1
    assert brute_force_degree(y, *args) == 1


def test_convex_series_sees_whole_scope():
    S = 40
    y = 0.001 * np.arange(S + 5) ** 2
    assert left_degree_scan(y, S + 1, S, LinkKind.VISIBILITY, DirectionFilter.REQUIRE_LOWER_LEFT) == S


def test_decreasing_series_has_no_lower_left():
    y = -np.arange(30.0)
    seq = degree_sequence(y, 10, LinkKind.VISIBILITY, DirectionFilter.REQUIRE_LOWER_LEFT)
    assert not seq.degrees.any()


def test_scope_truncates_at_start():
    y = 0.01 * np.arange(10.0) ** 2
    assert left_degree_scan(y, 4, 50, LinkKind.VISIBILITY) == 3
    assert left_degree_scan(y, 1, 50, LinkKind.VISIBILITY) == 0


def test_degree_sequence_layout():
    y = np.random.default_rng(1).normal(size=40)
    seq = degree_sequence(y, 7, LinkKind.ABSOLUTE_INVISIBILITY)
    assert seq.first_day == 8
    assert seq.day_index.tolist() == list(range(8, 41))
    assert np.all((seq.degrees >= 0) & (seq.degrees <= 7))
    for day, d in zip(seq.day_index, seq.degrees):
        assert d == left_degree_scan(y, int(day), 7, LinkKind.ABSOLUTE_INVISIBILITY)


def test_random_probes_against_brute_force():
    rng = np.random.default_rng(300)
    y = np.cumsum(rng.normal(0, 0.01, 300))
    mismatches = 0
    for _ in range(1000):
        scope = int(rng.integers(1, 120))
        i = int(rng.integers(2, 301))
        kind = KINDS[rng.integers(2)]
        filt = FILTERS[rng.integers(3)]
        mismatches += left_degree_scan(y, i, scope, kind, filt) != brute_force_degree(y, i, scope, kind, filt)
    assert mismatches == 0


small_ints = st.lists(st.integers(-4, 4), min_size=2, max_size=25)


@settings(max_examples=300, deadline=None)
@given(small_ints, st.data())
def test_scan_matches_exact_oracle_with_ties(values, data):
    # small integers produce many exact ties on chords
    y = np.array(values, dtype=float)
    i = data.draw(st.integers(2, y.size))
    scope = data.draw(st.integers(1, y.size))
    kind = data.draw(st.sampled_from(KINDS))
    filt = data.draw(st.sampled_from(FILTERS))
    expected = oracles.degree(values, i, scope, RULE[kind], filt.value)
    assert left_degree_scan(y, i, scope, kind, filt) == expected
    assert brute_force_degree(y, i, scope, kind, filt) == expected


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(-50, 50), min_size=3, max_size=30), st.integers(-1000, 1000), st.integers(1, 5))
def test_affine_invariance(values, shift, stretch):
    y = np.array(values, dtype=float)
    n = y.size
    for j in range(1, n):
        for i in range(j + 1, n + 1):
            assert visible(y + shift, j, i) == visible(y, j, i)
            assert invisible(y + shift, j, i) == invisible(y, j, i)
    # stretching time by c is the same geometry as shrinking heights by c
    for kind in KINDS:
        base = [left_degree_scan(y, i, n, kind) for i in range(1, n + 1)]
        assert [left_degree_scan(y * stretch, i, n, kind) for i in range(1, n + 1)] == base


@settings(max_examples=200, deadline=None)
@given(st.lists(st.floats(-5, 5, allow_nan=False), min_size=3, max_size=30))
def test_interior_pairs_not_both_linked(values):
    y = np.array(values)
    for j in range(1, y.size - 1):
        for i in range(j + 2, y.size + 1):
            assert not (visible(y, j, i) and invisible(y, j, i))


def test_build_network_matches_pairwise_rule():
    y = np.random.default_rng(9).normal(size=25)
    for kind, rule in ((LinkKind.VISIBILITY, visible), (LinkKind.ABSOLUTE_INVISIBILITY, invisible)):
        edges = set(build_network(y, kind))
        expected = {(j, i) for i in range(2, 26) for j in range(1, i) if rule(y, j, i)}
        assert edges == expected
        scoped = set(build_network(y, kind, scope=4))
        assert scoped == {(j, i) for j, i in expected if i - j <= 4}


def test_batched_oracle_matches_per_day_oracle():
    from netextremes.visibility import brute_force_degrees, brute_force_link_masks
    rng = np.random.default_rng(4)
    for scope in (1, 2, 17, 60):
        y = np.cumsum(rng.normal(0, 0.01, 150))
        links = brute_force_link_masks(y, scope)
        for kind in KINDS:
            for filt in FILTERS:
                batched = brute_force_degrees(y, scope, kind, filt, links=links)
                per_day = [brute_force_degree(y, i, scope, kind, filt) for i in range(scope + 1, 151)]
                assert batched.degrees.tolist() == per_day
                assert batched.day_index[0] == scope + 1
