"""Closed-form solutions, conserved quantities, and epidemic endpoint
analysis for the three benchmark models.

The scalar quadratic model is solved in closed form for any initial
value.  The predator-prey system has no closed form in time but conserves
a logarithmic first integral along every orbit.  The epidemic system can
be solved exactly for the infective and removed counts as functions of
the susceptible count, which turns questions about how an epidemic peaks
and ends into scalar root-finding problems; recovering time itself needs
one numerical quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

from .models import SQRT2, RICCATI_STATIONARY, ModelInstance


class BlowUpError(ArithmeticError):
    """Evaluation past a real-time pole of the exact solution."""

    def __init__(self, message: str, pole_time: float):
        super().__init__(message)
        self.pole_time = pole_time


class BracketError(ValueError):
    """The supplied interval does not bracket a sign change."""


class NearSingularError(ValueError):
    """Requested point is too close to the integrable singularity."""


class QuadratureError(ArithmeticError):
    """Adaptive quadrature failed to reach the requested accuracy."""


def riccati_exact(y0: float, t: float) -> float:
    """Exact solution of dY/dt = 1 + 2Y - Y^2 with Y(0) = y0.

    Solutions started below the repelling state 1 - sqrt(2) reach a real
    pole in finite forward time, and solutions started above the
    attracting state 1 + sqrt(2) have one in finite backward time;
    evaluation at or past a pole raises BlowUpError carrying its location.
    """
    y0 = float(y0)
    t = float(t)
    if not (math.isfinite(y0) and math.isfinite(t)):
        raise ValueError("y0 and t must be finite")
    # ratio of distances to the two stationary states; it evolves as a pure
    # exponential, which is what makes the pole location explicit
    num0 = y0 + SQRT2 - 1.0
    if num0 != 0.0 and y0 != RICCATI_STATIONARY:
        z = (y0 - RICCATI_STATIONARY) / num0
        if z > 0.0:
            pole = math.log(z) / (2.0 * SQRT2)
            if (pole > 0.0 and t >= pole) or (pole < 0.0 and t <= pole):
                raise BlowUpError(
                    f"solution from y0={y0:.6g} has a real pole at t={pole:.6g}",
                    pole_time=pole,
                )
    if t == 0.0:
        return y0
    if t > 0.0:
        # divide through by exp(2*sqrt(2)*t) so large times cannot overflow
        decay = math.exp(-2.0 * SQRT2 * t)
        num = (SQRT2 + 1.0) * num0 + (y0 * (SQRT2 - 1.0) - 1.0) * decay
        den = num0 + (SQRT2 + 1.0 - y0) * decay
    else:
        grow = math.exp(2.0 * SQRT2 * t)
        num = (SQRT2 + 1.0) * num0 * grow + y0 * (SQRT2 - 1.0) - 1.0
        den = num0 * grow - y0 + SQRT2 + 1.0
    return num / den


def lv_conserved(x: float, y: float, a: float, b: float, c: float, d: float) -> float:
    """First integral c*ln(x) + a*ln(y) - d*x - b*y of the predator-prey
    system; constant along every true orbit in the open positive quadrant."""
    if not (x > 0 and y > 0):
        raise ValueError("conserved quantity is defined for positive populations only")
    return c * math.log(x) + a * math.log(y) - d * x - b * y


def _sir_data(model: ModelInstance):
    if model.label != "sir" or set(model.params) != {"beta", "gamma"}:
        raise ValueError("expected an sir model instance")
    x0, y0, z0 = (float(v) for v in model.initial_state)
    return model.params["beta"], model.params["gamma"], x0, y0, z0


def sir_y_of_x(x: float, model: ModelInstance) -> float:
    """Infectives as a function of susceptibles:
    y = y0 + x0 - x + (gamma/beta) * ln(x/x0)."""
    beta, gamma, x0, y0, _ = _sir_data(model)
    if x <= 0:
        raise ValueError("x must be positive")
    return y0 + x0 - x + (gamma / beta) * math.log(x / x0)


def sir_z_of_x(x: float, model: ModelInstance) -> float:
    """Removed as a function of susceptibles:
    z = z0 - (gamma/beta) * ln(x/x0)."""
    beta, gamma, x0, _, z0 = _sir_data(model)
    if x <= 0:
        raise ValueError("x must be positive")
    return z0 - (gamma / beta) * math.log(x / x0)


@dataclass(frozen=True)
class SirEndpoints:
    """Landmark susceptible counts of an epidemic.

    x_limit is where the infectives die out (t -> infinity), x_over where
    they have fallen back to their initial count, and (x_peak, y_peak) the
    epidemic maximum at x = gamma/beta.  The peak and x_over fields are
    populated only when an epidemic actually occurs (x0 > gamma/beta);
    otherwise the infective count just decreases and neither is defined.
    """

    x_limit: float
    x_over: float | None
    x_peak: float | None
    y_peak: float | None
    epidemic_occurs: bool


def find_root_bracketed(f, lo: float, hi: float, tol: float = 1e-12) -> float:
    """Root of f on [lo, hi] given a sign change, to within roughly
    tol * max(1, |root|) of bracket width.

    Thin wrapper over Brent's method (bisection with inverse-quadratic /
    secant acceleration); the bracket is checked up front so that a
    missing sign change raises BracketError instead of leaking through.
    """
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise ValueError("need finite lo < hi")
    if not (math.isfinite(tol) and tol > 0):
        raise ValueError("tol must be positive")
    flo = f(lo)
    fhi = f(hi)
    if flo == 0.0:
        return float(lo)
    if fhi == 0.0:
        return float(hi)
    if (flo > 0) == (fhi > 0):
        raise BracketError(
            f"no sign change on [{lo:.6g}, {hi:.6g}]: f(lo)={flo:.6g}, f(hi)={fhi:.6g}"
        )
    return float(
        brentq(f, lo, hi, xtol=tol, rtol=4.0 * np.finfo(float).eps, maxiter=200)
    )


def sir_endpoints(model: ModelInstance, tol: float = 1e-12) -> SirEndpoints:
    """Solve the endpoint equations of the epidemic.

    x_limit is the unique root of y(x) = 0 below the peak; x_over the
    nontrivial root of y(x) = y0 (x = x0 always satisfies it, so the
    bracket deliberately stops short of x0).
    """
    beta, gamma, x0, y0, _ = _sir_data(model)
    if not (x0 > 0 and y0 > 0):
        raise ValueError("need positive initial susceptibles and infectives")
    rho = gamma / beta
    epidemic = x0 > rho

    def infectives(x):
        return y0 + x0 - x + rho * math.log(x / x0)

    # infectives(lo) = -lo by construction, so lo sits just below the root;
    # the max() guards exotic parameters against underflow to zero
    lo = max(x0 * math.exp(-(y0 + x0) / rho), 5e-324)
    hi = min(x0, rho)
    tries = 0
    while infectives(lo) >= 0.0 and tries < 80:
        lo *= 0.5
        tries += 1
    x_limit = find_root_bracketed(infectives, lo, hi, tol)

    if not epidemic:
        return SirEndpoints(x_limit, None, None, None, False)

    def excess(x):
        return x0 - x + rho * math.log(x / x0)

    # excess(x_limit) = -y0 < 0; the upper end stops short of the trivial
    # root at x0, falling back to the peak location if rounding spoils it
    hi2 = x0 * (1.0 - 1e-6)
    if excess(hi2) <= 0.0:
        hi2 = rho
    x_over = find_root_bracketed(excess, x_limit, hi2, tol)
    return SirEndpoints(x_limit, x_over, rho, sir_y_of_x(rho, model), True)


def sir_t_of_x(x: float, model: ModelInstance, tol: float = 1e-9) -> float:
    """Time at which the susceptible count first reaches x, by adaptive
    quadrature of 1 / (beta * x' * y(x')) from x up to x0.

    The integrand has an integrable singularity at x_limit (the epidemic
    takes infinite time to die out completely), so requests closer than a
    small relative guard above x_limit are refused.
    """
    beta, gamma, x0, y0, _ = _sir_data(model)
    x = float(x)
    if x > x0:
        raise ValueError("x must not exceed the initial susceptible count")
    guard = sir_endpoints(model).x_limit * (1.0 + 1e-3)
    if x <= guard:
        raise NearSingularError(
            f"x={x:.6g} is at or below the near-singular guard {guard:.6g}"
        )
    if x == x0:
        return 0.0
    rho = gamma / beta

    def integrand(u):
        return 1.0 / (beta * u * (y0 + x0 - u + rho * math.log(u / x0)))

    value, abserr = quad(integrand, x, x0, epsabs=tol, epsrel=1e-11, limit=400)
    if abserr > max(10.0 * tol, 1e-7 * abs(value)):
        raise QuadratureError(
            f"quadrature error estimate {abserr:.3g} exceeds the requested {tol:.3g}"
        )
    return float(value)
