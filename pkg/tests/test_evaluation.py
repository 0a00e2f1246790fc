import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from netextremes import (
    EvaluationError,
    ExtremeKind,
    ExtremeSet,
    IndicatorSeries,
    PriceSeries,
    bubble_spec,
    detect_extremes,
    error_diagram,
    evaluate,
    gen_synthetic,
    p_value,
    parameter_sweep,
    peak_indicator,
    sweep_stats,
)

import oracles
from conftest import random_walk


def _setup(T, S, a, values, events, kind=ExtremeKind.PEAK):
    """Indicator with prediction-day ``values`` and hand-placed extremes."""
    series = PriceSeries.from_log_values(np.zeros(T))
    full = np.zeros(T - S)
    full[: len(values)] = values
    ind = IndicatorSeries(kind, S, full, series)
    ext = ExtremeSet(kind, 3, a, np.array(sorted(events)), series)
    return ind, ext


def test_perfect_indicator():
    T, S, a = 60, 10, 5
    N = T - a - S
    events = [15, 22, 40]
    vals = np.zeros(N)
    vals[np.array(events) - (S + 1)] = 1.0
    d = error_diagram(*_setup(T, S, a, vals, events))
    assert [(p.alarm_fraction, p.unpredicted_fraction) for p in d.points] == [(3 / N, 0.0)]
    assert p_value(d) == pytest.approx(3 / N)


def test_constant_indicator():
    T, S, a = 60, 10, 5
    d = error_diagram(*_setup(T, S, a, np.full(T - a - S, 0.3), [20, 30]))
    assert [(p.alarm_fraction, p.unpredicted_fraction) for p in d.points] == [(1.0, 0.0)]
    assert p_value(d) == 1.0


def test_worked_descent():
    # prediction days 11..20, extremes on 12 and 18
    vals = [0.1, 0.9, 0.5, 0.5, 0.2, 0.0, 0.3, 0.4, 0.2, 0.1]
    d = error_diagram(*_setup(25, 10, 5, vals, [12, 18]))
    got = [(p.threshold, p.alarm_fraction, p.unpredicted_fraction) for p in d.points]
    assert got == [(0.9, 0.1, 0.5), (0.4, 0.4, 0.0)]
    assert p_value(d) == pytest.approx(0.1 * 1 + 0.3 * 0.5)
    assert p_value(d, "trapezoid") == pytest.approx(0.1 * 0.75 + 0.3 * 0.25)


def test_extremes_outside_domain_dropped():
    vals = np.linspace(1, 0, 10)
    d = error_diagram(*_setup(25, 10, 5, vals, [5, 12, 22]))
    assert d.total_extremes == 1
    assert d.prediction_days == 10


def test_no_extremes_rejected():
    with pytest.raises(EvaluationError, match="no peaks"):
        error_diagram(*_setup(25, 10, 5, np.ones(10), [3, 23]))


def test_mismatched_inputs_rejected():
    ind, ext = _setup(25, 10, 5, np.ones(10), [12])
    other = PriceSeries.from_log_values(np.ones(25))
    with pytest.raises(EvaluationError):
        error_diagram(ind, ExtremeSet(ExtremeKind.PEAK, 3, 5, ext.indices, other))
    with pytest.raises(EvaluationError):
        error_diagram(ind, ExtremeSet(ExtremeKind.TROUGH, 3, 5, ext.indices, ind.source))


def test_horizon_extends_alarm_reach():
    vals = np.zeros(10)
    vals[3] = 1.0  # day 14 alarms; extreme on day 16
    same_day = error_diagram(*_setup(25, 10, 5, vals, [16]))
    ahead = error_diagram(*_setup(25, 10, 5, vals, [16]), horizon=2)
    assert same_day.points[0].alarm_fraction == 1.0
    assert ahead.points[0].alarm_fraction == 0.1


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_descent_matches_from_scratch_oracle(data):
    T = data.draw(st.integers(30, 120))
    S = data.draw(st.integers(2, 10))
    a = data.draw(st.integers(1, 8))
    N = T - a - S
    levels = data.draw(st.integers(1, 12))
    vals = data.draw(st.lists(st.integers(0, levels), min_size=N, max_size=N))
    vals = [v / levels for v in vals]
    events = data.draw(st.sets(st.integers(S + 1, T - a), min_size=1, max_size=8))
    horizon = data.draw(st.integers(0, 4))
    d = error_diagram(*_setup(T, S, a, vals, events), horizon=horizon)
    expected = oracles.descent(vals, S + 1, sorted(events), horizon)
    got = [(p.threshold, p.alarm_fraction, p.unpredicted_fraction) for p in d.points]
    assert got == expected
    assert p_value(d) == pytest.approx(oracles.staircase_area(expected), abs=1e-12)


def test_descent_oracle_on_real_indicator():
    rng = np.random.default_rng(5)
    s = random_walk(rng, 480, 0.02)
    ind = peak_indicator(s, 40)
    ext = detect_extremes(s, "peak", b=20, a=10)
    d = error_diagram(ind, ext)
    expected = oracles.descent(list(ind.values[: s.T - 10 - 40]), 41, ext.indices.tolist())
    assert [(p.threshold, p.alarm_fraction, p.unpredicted_fraction) for p in d.points] == expected


def test_scale_invariance():
    s = gen_synthetic(bubble_spec(1200, 3, 0.01, seed=2))
    scaled = PriceSeries(s.prices * 4.0)
    base = PriceSeries(s.prices)
    for kind in ExtremeKind:
        assert evaluate(base, kind, 150, 30, 60).points == evaluate(scaled, kind, 150, 30, 60).points


def test_unknown_integration_method():
    d = error_diagram(*_setup(25, 10, 5, np.linspace(1, 0, 10), [12]))
    with pytest.raises(ValueError):
        p_value(d, "simpson")


# --- stats and sweeps ---------------------------------------------------------

def test_stats_even_median():
    assert sweep_stats([0.1, 0.2, 0.3, 0.4]).median == pytest.approx(0.25)


def test_stats_quartiles_inclusive_linear():
    st_ = sweep_stats([1, 2, 3, 4, 5, 6, 7, 8, 9])
    assert (st_.q1, st_.median, st_.q3) == (3.0, 5.0, 7.0)


def test_stats_all_equal():
    s = sweep_stats([0.05] * 7)
    assert s.q1 == s.median == s.q3 == 0.05
    assert s.outliers == ()
    assert s.whisker_low == s.whisker_high == 0.05


def test_stats_single_outlier():
    vals = [0.1, 0.2, 0.3, 0.4, 0.5]
    q3, iqr = 0.4, 0.2
    outlier = q3 + 10 * iqr
    s = sweep_stats(vals + [outlier])
    assert s.outliers == (outlier,)
    assert s.whisker_high == 0.5 and s.whisker_low == 0.1


def test_stats_empty():
    with pytest.raises(ValueError):
        sweep_stats([])


def test_singleton_sweep():
    s = gen_synthetic(bubble_spec(1200, 3, 0.01, seed=4))
    res = parameter_sweep(s, [150], [30], [60], "peak")
    assert res.grid == ((150, 30, 60),)
    p = res.p_values[0]
    assert p == p_value(evaluate(s, "peak", 150, 30, 60))
    assert res.stats.q1 == res.stats.median == res.stats.q3 == p


def test_sweep_reports_invalid_triples():
    s = gen_synthetic(bubble_spec(600, 2, 0.01, seed=4))
    res = parameter_sweep(s, [100, 560, 700], [30, 45], [30], "trough")
    assert res.requested == 6
    bad = {t for t, _ in res.invalid}
    assert {(560, 45, 30), (700, 30, 30), (700, 45, 30)} <= bad
    assert all(t not in bad for t in res.grid)


def test_sweep_independent_of_jobs():
    s = gen_synthetic(bubble_spec(1500, 3, 0.01, seed=8))
    grid = ([150, 200, 260], [30, 45], [60, 90])
    one = parameter_sweep(s, *grid, kind="peak", jobs=1)
    many = parameter_sweep(s, *grid, kind="peak", jobs=3)
    assert one.grid == many.grid
    assert one.p_values.tobytes() == many.p_values.tobytes()
