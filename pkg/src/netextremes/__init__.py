"""Network-degree indicators of super-exponential growth and their evaluation
with error diagrams."""

from .evaluation import (
    ErrorDiagram,
    ErrorDiagramPoint,
    EvaluationError,
    SweepResult,
    SweepStats,
    error_diagram,
    evaluate,
    p_value,
    parameter_sweep,
    shuffled_p_values,
    sweep_stats,
    with_values,
)
from .extremes import ExtremeSet, detect_extremes, detect_peaks, detect_troughs
from .indicator import ExtremeKind, IndicatorSeries, indicator, peak_indicator, trough_indicator
from .series import (
    PricePoint,
    PriceSeries,
    Segment,
    SeriesError,
    SyntheticSpec,
    bubble_spec,
    gen_synthetic,
    load_csv,
    write_csv,
)
from .visibility import (
    DegreeSequence,
    DirectionFilter,
    LinkKind,
    brute_force_degree,
    brute_force_degrees,
    build_network,
    degree_sequence,
    invisible,
    left_degree_scan,
    visible,
)

__version__ = "0.1.0"
