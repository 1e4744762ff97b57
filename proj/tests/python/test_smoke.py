import math

import pytest

import volent


def test_polygon_geometry():
    P = volent.regular_polygon(5, 2, [1] * 5)
    assert P.area == pytest.approx(math.pi / 2)
    assert P.edge_length == pytest.approx(1.0613, abs=1e-4)
    with pytest.raises(volent.VolentError, match="NonHyperbolic"):
        volent.regular_polygon(4, 2, [1] * 4)


def test_dist():
    assert volent.dist(volent.HPoint(0, 1), volent.HPoint(0, math.e)) == pytest.approx(1.0)
    with pytest.raises(volent.VolentError):
        volent.HPoint(0, -1)


def test_chambers_and_growth():
    P = volent.regular_polygon(5, 2, [1] * 5)
    assert len(volent.enumerate_chambers(P, 3)) == 61
    table = volent.weighted_ball_growth(P, [2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0], 10)
    est = volent.growth_slope(table, (2.0, 5.0))
    assert est.method == "ball_growth"
    assert abs(est.value - 1.0) <= est.err


def test_pressure_solver():
    P = volent.regular_polygon(5, 2, [1] * 5)
    model = volent.build_cross_section(P, 8, 8, 2, seed=3)
    assert abs(volent.pressure_log_radius(model, 1.0)) < 1e-9
    est = volent.solve_entropy(model, refine=False, tol=1e-3)
    assert abs(est.value - 1.0) < 0.05
    assert "bracket_used" in est.diagnostics


def test_santalo_and_bounds():
    P = volent.regular_polygon(5, 2, [2] * 5)
    r = volent.santalo_monte_carlo(P, 50000, 5)
    assert r.closed_form == pytest.approx(volent.santalo_closed_form(P))
    assert abs(r.monte_carlo - r.closed_form) < 5 * r.mc_stderr
    b = volent.lower_bound_2d(P)
    assert b.paper_literal_bound == pytest.approx(3.3416, abs=1e-3)
    assert b.derived_constant_bound == pytest.approx(1.7453, abs=1e-3)


def test_graph():
    theta = volent.MetricGraph(2, [(0, 1, 1.0)] * 3)
    assert volent.graph_entropy(theta).value == pytest.approx(math.log(2), abs=1e-9)
    back = volent.graph_from_json(volent.graph_to_json(theta))
    assert back.edges == theta.edges
    scaled = volent.scale_lengths(theta, 4.0)
    assert volent.graph_entropy(scaled).value == pytest.approx(math.log(2) / 2, abs=1e-9)


def test_orbits():
    fam = volent.geodesic_lengths(2.0, [1, 1, 1, 2], 30)
    assert fam.rows[1].length == pytest.approx(math.acosh(4.625))
    second, max_abs = volent.affine_deviation(fam)
    assert max_abs > 1e-9
    assert fam.rows[-1].deviation < 1e-12


def test_cutting_sequence():
    P = volent.regular_polygon(5, 2, [2] * 5)
    seq = volent.cutting_sequence(volent.HPoint(0.1, 1.05), 0.4, (0.0, 10.0), P)
    assert len(seq) > 5
    assert all(c.thickness_q == 2 for c in seq)
