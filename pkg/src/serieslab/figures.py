"""The four demonstration figures, plus the geometry behind them.

Each figure contrasts a truncated power-series solution with ground truth
on a window wide enough to expose the series failure: populations that go
negative, a phase-plane curve that crosses itself (impossible for a true
orbit), and epidemic curves that never reach the endpoint region.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .csvout import write_csv
from .exact import sir_endpoints, sir_y_of_x, sir_z_of_x
from .integrators import reference_integrate, sample_series
from .models import ModelInstance, make_model
from .series import eval_series, generate_taylor_solution
from .svgplot import LinePlot

FIGURE_IDS = ("fig1", "fig2", "fig3", "fig4")

#: effectively exact absolute floor: populations can decay through dozens
#: of orders of magnitude, which only relative error control can track
DEEP_DECAY_ATOL = 1e-140


def polyline_self_intersects(points) -> bool:
    """True if any two non-adjacent segments of the polyline cross properly.

    Shared endpoints and tangential touches do not count, so a closed or
    almost-closed simple curve stays negative.  Quadratic in the number of
    points but fully vectorised; thousands of points are fine.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError("points must be an (n, 2) array")
    n = pts.shape[0] - 1
    if n < 3:
        return False
    p = pts[:-1]
    q = pts[1:]
    d = q - p

    def cross(v, w):
        return v[..., 0] * w[..., 1] - v[..., 1] * w[..., 0]

    for i in range(0, n, 64):
        block = slice(i, min(i + 64, n))
        pi = p[block, None, :]
        di = d[block, None, :]
        # candidate partners: strictly later, non-adjacent segments
        d1 = cross(d[None, :, :], pi - p[None, :, :])
        d2 = cross(d[None, :, :], pi + di - p[None, :, :])
        d3 = cross(di, p[None, :, :] - pi)
        d4 = cross(di, q[None, :, :] - pi)
        hits = (d1 * d2 < 0) & (d3 * d4 < 0)
        idx_i = np.arange(i, min(i + 64, n))[:, None]
        idx_j = np.arange(n)[None, :]
        hits &= idx_j >= idx_i + 2
        if np.any(hits):
            return True
    return False


def lv_orbit_period(model: ModelInstance, t_max: float = 200.0) -> float:
    """Orbital period of a predator-prey solution, from successive upward
    crossings of the predator mid-level."""
    if model.label != "lotka_volterra":
        raise ValueError("expected a lotka_volterra model instance")
    from scipy.integrate import solve_ivp

    probe_end = min(t_max, 80.0)
    probe = reference_integrate(
        model, probe_end, 1e-10, grid=np.linspace(0.0, probe_end, 3201)
    )
    y = probe.states[:, 1]
    mid = 0.5 * (float(y.min()) + float(y.max()))

    def crossing(t, u):
        return u[1] - mid

    crossing.direction = 1.0
    sol = solve_ivp(
        lambda t, u: model.field.evaluate(u),
        (0.0, t_max),
        model.initial_state,
        method="DOP853",
        rtol=1e-12,
        atol=1e-12,
        events=crossing,
        dense_output=False,
    )
    events = sol.t_events[0]
    if len(events) < 2:
        raise RuntimeError("could not detect an orbital period")
    return float(events[1] - events[0])


def _case_crash():
    return make_model("lotka_volterra", {"a": 1.0, "b": 1.0, "c": 0.1, "d": 1.0}, [14.0, 18.0])


def _case_orbit():
    return make_model("lotka_volterra", {"a": 1.0, "b": 1.0, "c": 1.0, "d": 1.0}, [3.0, 2.0])


def _epidemic_slow():
    return make_model("sir", {"beta": 0.01, "gamma": 0.02}, [20.0, 15.0, 10.0])


def _epidemic_fast():
    return make_model("sir", {"beta": 1.0, "gamma": 1.0}, [20.0, 4.0, 10.0])


def _fig1(out_dir: Path, fmt: str) -> list[Path]:
    # prey-predator populations against time; the order-5 series sends the
    # prey count negative within the window while the true count stays > 0
    model = _case_crash()
    grid = np.linspace(0.0, 5.0, 501)
    ref = reference_integrate(model, 5.0, 1e-10, grid=grid, atol=DEEP_DECAY_ATOL)
    ser = sample_series(generate_taylor_solution(model, 5), grid)
    files = []
    if fmt in ("csv", "both"):
        files.append(write_csv(
            out_dir / "fig1_populations.csv",
            ["t", "x_exact", "y_exact", "x_series", "y_series"],
            np.column_stack([grid, ref.states, ser.states]),
            meta={
                "figure": "prey and predator populations against time",
                "params": "a=1 b=1 c=0.1 d=1, start (14, 18)",
                "series_order": 5,
            },
        ))
    if fmt in ("svg", "both"):
        plot = LinePlot("Populations: truth against order-5 series", "t", "population")
        plot.add_curve(grid, ref.states[:, 0], "prey (exact)", "#1f77b4")
        plot.add_curve(grid, ref.states[:, 1], "predator (exact)", "#2ca02c")
        plot.add_curve(grid, ser.states[:, 0], "prey (series)", "#d62728", dash="6,3")
        plot.add_curve(grid, ser.states[:, 1], "predator (series)", "#ff7f0e", dash="6,3")
        plot.set_xlim(0.0, 5.0)
        plot.set_ylim(-12.0, 40.0)
        files.append(plot.write(out_dir / "fig1_populations.svg"))
    return files


def _fig2(out_dir: Path, fmt: str) -> list[Path]:
    # phase plane: the true orbit is a closed curve; the series polyline
    # crosses itself, which no autonomous planar trajectory can do
    model = _case_orbit()
    period = lv_orbit_period(model)
    orbit_grid = np.linspace(0.0, 0.999 * period, 1200)
    orbit = reference_integrate(model, orbit_grid[-1], 1e-10, grid=orbit_grid)
    series_grid = np.linspace(0.0, 6.0, 601)
    ser = sample_series(generate_taylor_solution(model, 5), series_grid)
    files = []
    if fmt in ("csv", "both"):
        files.append(write_csv(
            out_dir / "fig2_orbit_exact.csv",
            ["t", "x", "y"],
            np.column_stack([orbit_grid, orbit.states]),
            meta={"figure": "closed phase-plane orbit (one period)",
                  "params": "a=b=c=d=1, start (3, 2)", "period": f"{period:.12g}"},
        ))
        files.append(write_csv(
            out_dir / "fig2_orbit_series.csv",
            ["t", "x", "y"],
            np.column_stack([series_grid, ser.states]),
            meta={"figure": "order-5 series curve in the phase plane",
                  "params": "a=b=c=d=1, start (3, 2)", "series_order": 5},
        ))
    if fmt in ("svg", "both"):
        plot = LinePlot("Phase plane: closed orbit against series curve", "prey x", "predator y")
        plot.add_curve(orbit.states[:, 0], orbit.states[:, 1], "exact orbit", "#1f77b4")
        plot.add_curve(ser.states[:, 0], ser.states[:, 1], "order-5 series", "#d62728", dash="6,3")
        plot.set_xlim(-0.5, 6.0)
        plot.set_ylim(-0.5, 7.0)
        files.append(plot.write(out_dir / "fig2_phase_plane.svg"))
    return files


def _epidemic_figure(model: ModelInstance, stem: str, title: str, t_end: float,
                     out_dir: Path, fmt: str) -> list[Path]:
    ends = sir_endpoints(model)
    x0 = float(model.initial_state[0])
    # dense exact curves down to just above the infective die-out point
    x_dense = np.geomspace(ends.x_limit * 1.0001, x0, 800)
    y_exact = np.array([sir_y_of_x(x, model) for x in x_dense])
    z_exact = np.array([sir_z_of_x(x, model) for x in x_dense])
    grid = np.linspace(0.0, t_end, 601)
    sol = generate_taylor_solution(model, 5)
    xs = np.atleast_1d(eval_series(sol.components[0], grid))
    ys = np.atleast_1d(eval_series(sol.components[1], grid))
    zs = np.atleast_1d(eval_series(sol.components[2], grid))
    # exact curves re-evaluated at the series' own susceptible coordinate,
    # where that coordinate is still meaningful
    y_at = np.array([sir_y_of_x(x, model) if 0 < x <= x0 else np.nan for x in xs])
    z_at = np.array([sir_z_of_x(x, model) if 0 < x <= x0 else np.nan for x in xs])
    params = f"beta={model.params['beta']:g} gamma={model.params['gamma']:g}"
    files = []
    if fmt in ("csv", "both"):
        files.append(write_csv(
            out_dir / f"{stem}_series_vs_exact.csv",
            ["x", "y_exact", "z_exact", "y_series", "z_series"],
            np.column_stack([xs, y_at, z_at, ys, zs]),
            meta={"figure": title, "params": params, "series_order": 5,
                  "note": "rows follow the series time grid; x is the series "
                          "susceptible count, exact columns are evaluated at "
                          "that x when it lies in (0, x0]"},
        ))
        files.append(write_csv(
            out_dir / f"{stem}_exact_curves.csv",
            ["x", "y_exact", "z_exact"],
            np.column_stack([x_dense, y_exact, z_exact]),
            meta={"figure": title + " (dense exact curves)", "params": params,
                  "x_limit": f"{ends.x_limit:.9g}"},
        ))
    if fmt in ("svg", "both"):
        plot = LinePlot(title, "susceptibles x", "count")
        plot.add_curve(x_dense, y_exact, "infectives (exact)", "#1f77b4")
        plot.add_curve(x_dense, z_exact, "removed (exact)", "#2ca02c")
        plot.add_curve(xs, ys, "infectives (series)", "#d62728", dash="6,3")
        plot.add_curve(xs, zs, "removed (series)", "#ff7f0e", dash="6,3")
        top = max(float(np.max(y_exact)), float(np.max(z_exact)))
        plot.set_xlim(0.0, 1.05 * x0)
        plot.set_ylim(0.0, 1.25 * top)
        files.append(plot.write(out_dir / f"{stem}_curves.svg"))
    return files


def _fig3(out_dir: Path, fmt: str) -> list[Path]:
    return _epidemic_figure(
        _epidemic_slow(), "fig3",
        "Epidemic curves, slow spread: truth against order-5 series",
        9.0, out_dir, fmt,
    )


def _fig4(out_dir: Path, fmt: str) -> list[Path]:
    return _epidemic_figure(
        _epidemic_fast(), "fig4",
        "Epidemic curves, fast spread: truth against order-5 series",
        0.6, out_dir, fmt,
    )


def reproduce_figure(fig_id: str, out_dir=".", fmt: str = "both") -> list[Path]:
    """Write the CSV data and SVG plot of one demonstration figure.

    ``fig1``: prey-predator populations against time (series goes negative).
    ``fig2``: phase plane, closed orbit against a self-crossing series curve.
    ``fig3``/``fig4``: epidemic curves for slow and fast parameter sets.
    """
    builders = {"fig1": _fig1, "fig2": _fig2, "fig3": _fig3, "fig4": _fig4}
    if fig_id not in builders:
        raise ValueError(f"unknown figure id {fig_id!r}; expected one of {FIGURE_IDS}")
    if fmt not in ("csv", "svg", "both"):
        raise ValueError("fmt must be csv, svg or both")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    return builders[fig_id](out_dir, fmt)
