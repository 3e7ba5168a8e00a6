"""Time integration: piecewise series stepping and a reference integrator.

Re-expanding the Taylor series about the current state every ``step``
units of time turns the local series into a perfectly good fixed-step
integrator, provided the step stays below the local convergence radius.
The step is deliberately user-chosen, not adaptive: the point of this lab
is to make the radius constraint visible, not to hide it.

Ground truth comes from an embedded adaptive Runge-Kutta pair (DOP853)
with mixed absolute/relative error control.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from .models import ModelInstance
from .series import SeriesSolution, eval_series, taylor_coefficients

PROVENANCES = ("series", "multistage", "reference", "exact")

#: any state beyond this magnitude is treated as divergence, not data
DIVERGENCE_LIMIT = 1e12


class DivergenceError(ArithmeticError):
    """A multistage step produced a non-finite or absurdly large state."""

    def __init__(self, message: str, step_index: int):
        super().__init__(message)
        self.step_index = step_index


class IntegrationError(ArithmeticError):
    """The reference integrator could not continue (blow-up, stiffness)."""

    def __init__(self, message: str, last_time: float):
        super().__init__(message)
        self.last_time = last_time


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Sampled states over time with a provenance tag.

    ``states`` has one row per entry of ``times``; ``meta`` records how
    the trajectory was produced (order, step, tolerance, ...).
    """

    times: np.ndarray
    states: np.ndarray
    provenance: str
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        states = np.asarray(self.states, dtype=float)
        if states.ndim == 1:
            states = states[:, np.newaxis]
        times.flags.writeable = False
        states.flags.writeable = False
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "states", states)
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")
        if times.ndim != 1 or times.size < 1:
            raise ValueError("times must be a non-empty 1-D vector")
        if np.any(np.diff(times) <= 0):
            raise ValueError("times must be strictly increasing")
        if states.shape[0] != times.size:
            raise ValueError("states must have one row per sample time")


def multistage_taylor(
    model: ModelInstance, order: int, step: float, t_end: float
) -> Trajectory:
    """Advance by repeated series re-expansion with a fixed step.

    Each stage generates the order-``order`` series about the current
    state and evaluates it at the step (the final stage shrinks to land
    exactly on ``t_end``).  Local error per stage is O(step**(order+1))
    while the step stays inside the local convergence radius; beyond it
    the iteration degrades fast and usually trips the divergence guard.
    """
    if order < 2:
        raise ValueError("order must be at least 2")
    if not step > 0:
        raise ValueError("step must be positive")
    if not t_end > 0:
        raise ValueError("t_end must be positive")
    times = [0.0]
    states = [np.array(model.initial_state, dtype=float)]
    t = 0.0
    state = states[0]
    index = 0
    while t < t_end:
        dt = min(step, t_end - t)
        coef = taylor_coefficients(model.field, state, order)
        nxt = np.zeros(model.field.dimension)
        for k in range(order, -1, -1):
            nxt = nxt * dt + coef[:, k]
        if not np.all(np.isfinite(nxt)) or np.max(np.abs(nxt)) > DIVERGENCE_LIMIT:
            raise DivergenceError(
                f"state diverged at stage {index} (t={t + dt:.6g}); "
                "the step likely exceeds the local convergence radius",
                step_index=index,
            )
        t = t + dt
        state = nxt
        times.append(t)
        states.append(state)
        index += 1
    return Trajectory(
        np.array(times),
        np.vstack(states),
        "multistage",
        meta={"order": order, "step": step, "t_end": t_end},
    )


def reference_integrate(
    model: ModelInstance,
    t_end: float,
    tol: float = 1e-10,
    grid=None,
    atol: float | None = None,
) -> Trajectory:
    """Ground-truth trajectory from an embedded adaptive Runge-Kutta pair.

    ``tol`` is the relative tolerance; the absolute floor defaults to
    three orders below it, scaled by the initial state.  Pass an explicit
    tiny ``atol`` when a component decays through many orders of magnitude
    and must stay relatively accurate all the way down.  The trajectory is
    sampled on ``grid`` (defaults to 401 uniform points).
    """
    if not (1e-13 <= tol <= 1e-3):
        raise ValueError("tol must lie in [1e-13, 1e-3]")
    if not t_end > 0:
        raise ValueError("t_end must be positive")
    u0 = np.asarray(model.initial_state, dtype=float)
    if grid is None:
        grid = np.linspace(0.0, t_end, 401)
    else:
        grid = np.asarray(grid, dtype=float)
        if grid.ndim != 1 or grid.size < 1 or grid[0] != 0.0:
            raise ValueError("grid must be 1-D and start at 0")
        if np.any(np.diff(grid) <= 0) or grid[-1] > t_end:
            raise ValueError("grid must increase strictly and stay within t_end")
    if atol is None:
        atol = tol * 1e-3 * max(1.0, float(np.max(np.abs(u0))))

    def blow_up(t, u):
        return DIVERGENCE_LIMIT - np.max(np.abs(u))

    blow_up.terminal = True

    sol = solve_ivp(
        lambda t, u: model.field.evaluate(u),
        (0.0, float(t_end)),
        u0,
        method="DOP853",
        rtol=tol,
        atol=atol,
        t_eval=grid,
        events=blow_up,
    )
    if sol.status == 1:
        last = float(sol.t[-1]) if sol.t.size else 0.0
        raise IntegrationError(
            f"solution escaped the divergence limit near t={last:.6g}", last_time=last
        )
    if not sol.success:
        last = float(sol.t[-1]) if sol.t.size else 0.0
        raise IntegrationError(
            f"integrator stopped at t={last:.6g}: {sol.message}", last_time=last
        )
    return Trajectory(
        sol.t,
        sol.y.T,
        "reference",
        meta={"tol": tol, "atol": atol, "method": "DOP853"},
    )


def sample_series(solution: SeriesSolution, grid) -> Trajectory:
    """Evaluate a series solution on an increasing grid starting at 0."""
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 1 or grid[0] != 0.0:
        raise ValueError("grid must be 1-D and start at 0")
    if np.any(np.diff(grid) <= 0):
        raise ValueError("grid must be strictly increasing")
    states = np.column_stack(
        [np.atleast_1d(eval_series(comp, grid)) for comp in solution.components]
    )
    return Trajectory(grid, states, "series", meta={"order": solution.order})
