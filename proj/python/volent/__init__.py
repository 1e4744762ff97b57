"""Volume entropy of hyperbolic buildings and metric graphs."""

from ._volent import (
    CoxeterPolygon,
    EntropyEstimate,
    HPoint,
    MetricGraph,
    VolentError,
    __version__,
    affine_deviation,
    build_cross_section,
    cutting_sequence,
    dist,
    enumerate_chambers,
    geodesic_lengths,
    graph_entropy,
    graph_from_json,
    graph_to_json,
    growth_slope,
    lower_bound_2d,
    lower_bound_plugin,
    lower_bound_plugin_derived,
    nb_spectral_radius,
    pressure_log_radius,
    regular_polygon,
    santalo_closed_form,
    santalo_monte_carlo,
    scale_lengths,
    solve_entropy,
    strictness_report,
    weighted_ball_growth,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
