import numpy as np
import pytest

from conftest import read_csv

from serieslab.figures import (
    lv_orbit_period,
    polyline_self_intersects,
    reproduce_figure,
)
from serieslab.integrators import reference_integrate, sample_series
from serieslab.models import make_model
from serieslab.series import generate_taylor_solution


def lv_case_v():
    return make_model("lotka_volterra", dict(a=1.0, b=1.0, c=1.0, d=1.0), [3.0, 2.0])


def test_self_intersection_detects_a_crossing():
    bowtie = np.array([[0.0, 0.0], [1.0, 1.0], [1.0, 0.0], [0.0, 1.0]])
    assert polyline_self_intersects(bowtie)


def test_self_intersection_negative_cases():
    line = np.column_stack([np.linspace(0, 1, 50), np.linspace(0, 2, 50)])
    assert not polyline_self_intersects(line)
    theta = np.linspace(0.0, 2 * np.pi, 200)
    almost_closed_circle = np.column_stack([np.cos(theta[:-1]), np.sin(theta[:-1])])
    assert not polyline_self_intersects(almost_closed_circle)
    square = np.array([[0, 0], [1, 0], [1, 1], [0, 1], [0, 0]], dtype=float)
    assert not polyline_self_intersects(square)


def test_self_intersection_input_validation():
    with pytest.raises(ValueError):
        polyline_self_intersects(np.zeros((4, 3)))


def test_orbit_period():
    period = lv_orbit_period(lv_case_v())
    assert abs(period - 7.6030203) < 1e-3


def test_orbit_period_requires_lv():
    with pytest.raises(ValueError):
        lv_orbit_period(make_model("sir", dict(beta=1.0, gamma=1.0), [20, 4, 10]))


def test_series_phase_curve_crosses_itself():
    model = lv_case_v()
    grid = np.linspace(0.0, 6.0, 601)
    tr = sample_series(generate_taylor_solution(model, 5), grid)
    assert polyline_self_intersects(tr.states)


def test_exact_orbit_does_not_cross_itself():
    model = lv_case_v()
    period = lv_orbit_period(model)
    grid = np.linspace(0.0, 0.999 * period, 1200)
    orbit = reference_integrate(model, grid[-1], 1e-10, grid=grid)
    assert not polyline_self_intersects(orbit.states)


def test_reproduce_fig1(tmp_path):
    files = reproduce_figure("fig1", tmp_path, fmt="both")
    names = sorted(f.name for f in files)
    assert names == ["fig1_populations.csv", "fig1_populations.svg"]
    data = read_csv(tmp_path / "fig1_populations.csv")
    # the series prey count goes negative inside the window, truth never does
    assert np.min(data["x_series"]) < 0
    assert np.min(data["x_exact"]) > 0
    assert np.min(data["y_exact"]) > 0


def test_reproduce_fig2(tmp_path):
    files = reproduce_figure("fig2", tmp_path, fmt="csv")
    names = sorted(f.name for f in files)
    assert names == ["fig2_orbit_exact.csv", "fig2_orbit_series.csv"]
    orbit = read_csv(tmp_path / "fig2_orbit_exact.csv")
    series = read_csv(tmp_path / "fig2_orbit_series.csv")
    assert not polyline_self_intersects(np.column_stack([orbit["x"], orbit["y"]]))
    assert polyline_self_intersects(np.column_stack([series["x"], series["y"]]))


def test_reproduce_epidemic_figures(tmp_path):
    for fig, stem in (("fig3", "fig3"), ("fig4", "fig4")):
        files = reproduce_figure(fig, tmp_path, fmt="both")
        names = sorted(f.name for f in files)
        assert names == [f"{stem}_curves.svg", f"{stem}_exact_curves.csv",
                         f"{stem}_series_vs_exact.csv"]
        exact = read_csv(tmp_path / f"{stem}_exact_curves.csv")
        # exact curves stay inside the population simplex
        total = exact["x"] + exact["y_exact"] + exact["z_exact"]
        assert np.max(np.abs(total - total[0])) < 1e-9


def test_reproduce_figure_rejects_unknown():
    with pytest.raises(ValueError):
        reproduce_figure("fig9", ".")
    with pytest.raises(ValueError):
        reproduce_figure("fig1", ".", fmt="png")
