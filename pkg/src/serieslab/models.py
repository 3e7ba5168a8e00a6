"""Autonomous polynomial ODE systems and the three benchmark models.

Every right-hand side handled by this package is a vector of multivariate
polynomials, stored explicitly as monomial lists.  That representation is
what makes exact power-series recursion possible: products of truncated
series are again truncated series, with no approximation beyond the
truncation itself.

Three concrete systems are provided as builders:

* a scalar quadratic equation dY/dt = 1 + 2Y - Y^2 with an attracting
  state at 1 + sqrt(2),
* the classic two-species predator-prey system,
* the three-compartment susceptible/infective/removed epidemic system.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

SQRT2 = math.sqrt(2.0)

#: attracting zero of 1 + 2y - y^2; solutions approach it as t -> infinity
RICCATI_STATIONARY = 1.0 + SQRT2

#: repelling zero of 1 + 2y - y^2; solutions started below it blow up
RICCATI_UNSTABLE = 1.0 - SQRT2


@dataclass(frozen=True)
class Monomial:
    """A single term ``coefficient * prod_j state[j]**exponents[j]``."""

    coefficient: float
    exponents: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coefficient", float(self.coefficient))
        object.__setattr__(self, "exponents", tuple(int(e) for e in self.exponents))
        if not math.isfinite(self.coefficient):
            raise ValueError("monomial coefficient must be finite")
        if any(e < 0 for e in self.exponents):
            raise ValueError("monomial exponents must be non-negative")


@dataclass(frozen=True)
class PolynomialVectorField:
    """An autonomous system u' = P(u) with polynomial components.

    ``equations[i]`` is the monomial list of the i-th component of P.
    Instances are immutable and safe to share between threads.
    """

    dimension: int
    equations: tuple[tuple[Monomial, ...], ...]

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError("dimension must be at least 1")
        object.__setattr__(
            self, "equations", tuple(tuple(eq) for eq in self.equations)
        )
        if len(self.equations) != self.dimension:
            raise ValueError("need one equation per dimension")
        for eq in self.equations:
            for mono in eq:
                if len(mono.exponents) != self.dimension:
                    raise ValueError(
                        "monomial exponent vector length must equal the dimension"
                    )

    @cached_property
    def _packed(self):
        # flat (coefficients, exponent matrix, equation index) arrays so a
        # single vectorised pass evaluates the whole field
        coeffs, expo, eq_idx = [], [], []
        for i, eq in enumerate(self.equations):
            for mono in eq:
                coeffs.append(mono.coefficient)
                expo.append(mono.exponents)
                eq_idx.append(i)
        return (
            np.asarray(coeffs, dtype=float),
            np.asarray(expo, dtype=np.int64).reshape(len(coeffs), self.dimension),
            np.asarray(eq_idx, dtype=np.intp),
        )

    def evaluate(self, state) -> np.ndarray:
        """Evaluate P(state) componentwise.

        Accepts any real vector of the right length; no sign constraint is
        imposed, since trajectories produced by truncated series can and do
        leave the physically meaningful region.
        """
        state = np.asarray(state, dtype=float)
        if state.shape != (self.dimension,):
            raise ValueError(
                f"state has shape {state.shape}, expected ({self.dimension},)"
            )
        coeffs, expo, eq_idx = self._packed
        terms = coeffs * np.prod(state[np.newaxis, :] ** expo, axis=1)
        return np.bincount(eq_idx, weights=terms, minlength=self.dimension)


@dataclass(frozen=True)
class ModelInstance:
    """A vector field bundled with named parameters and an initial state."""

    field: PolynomialVectorField
    params: dict[str, float]
    initial_state: np.ndarray
    label: str

    def __post_init__(self):
        state = np.asarray(self.initial_state, dtype=float)
        state.flags.writeable = False
        object.__setattr__(self, "initial_state", state)
        object.__setattr__(self, "params", dict(self.params))
        if state.shape != (self.field.dimension,):
            raise ValueError("initial state length must equal the field dimension")
        if not np.all(np.isfinite(state)):
            raise ValueError("initial state must be finite")
        for name, value in self.params.items():
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"parameter {name} must be strictly positive")
        # populations start non-negative; the scalar quadratic model has no
        # such restriction
        if self.label in ("lotka_volterra", "sir") and np.any(state < 0):
            raise ValueError(f"{self.label} initial state must be non-negative")


def build_riccati(y0: float) -> ModelInstance:
    """Scalar model dY/dt = 1 + 2Y - Y^2 started at Y(0) = y0."""
    y0 = float(y0)
    if not math.isfinite(y0):
        raise ValueError("y0 must be finite")
    field = PolynomialVectorField(
        dimension=1,
        equations=(
            (
                Monomial(1.0, (0,)),
                Monomial(2.0, (1,)),
                Monomial(-1.0, (2,)),
            ),
        ),
    )
    return ModelInstance(field, {}, np.array([y0]), "riccati")


def build_lotka_volterra(a: float, b: float, c: float, d: float) -> PolynomialVectorField:
    """Predator-prey field dx/dt = ax - bxy, dy/dt = -cy + dxy.

    x is the prey population, y the predator population; all four rates
    must be strictly positive.
    """
    for name, value in (("a", a), ("b", b), ("c", c), ("d", d)):
        if not (math.isfinite(value) and value > 0):
            raise ValueError(f"parameter {name} must be strictly positive")
    return PolynomialVectorField(
        dimension=2,
        equations=(
            (Monomial(a, (1, 0)), Monomial(-b, (1, 1))),
            (Monomial(-c, (0, 1)), Monomial(d, (1, 1))),
        ),
    )


def build_sir(beta: float, gamma: float) -> PolynomialVectorField:
    """Epidemic field dx/dt = -bxy, dy/dt = bxy - gy, dz/dt = gy.

    x, y, z are susceptible, infective and removed counts.  The three
    right-hand sides sum to zero, so the total population is conserved.
    """
    for name, value in (("beta", beta), ("gamma", gamma)):
        if not (math.isfinite(value) and value > 0):
            raise ValueError(f"parameter {name} must be strictly positive")
    return PolynomialVectorField(
        dimension=3,
        equations=(
            (Monomial(-beta, (1, 1, 0)),),
            (Monomial(beta, (1, 1, 0)), Monomial(-gamma, (0, 1, 0))),
            (Monomial(gamma, (0, 1, 0)),),
        ),
    )


def lv_fixed_points(a: float, b: float, c: float, d: float) -> dict[str, tuple[float, float]]:
    """Fixed points of the predator-prey field: the saddle at the origin
    and the center at (c/d, a/b)."""
    for name, value in (("a", a), ("b", b), ("c", c), ("d", d)):
        if not (math.isfinite(value) and value > 0):
            raise ValueError(f"parameter {name} must be strictly positive")
    return {"saddle": (0.0, 0.0), "center": (c / d, a / b)}


def make_model(name: str, params: dict[str, float], initial_state) -> ModelInstance:
    """Build a named ModelInstance from a parameter map and initial state.

    This is the constructor used by scenario configs; ``name`` must be one
    of ``riccati``, ``lotka_volterra`` or ``sir``.
    """
    initial_state = np.asarray(initial_state, dtype=float)
    if name == "riccati":
        if params:
            raise ValueError("riccati takes no parameters")
        if initial_state.shape != (1,):
            raise ValueError("riccati needs a single initial value")
        return build_riccati(initial_state[0])
    if name == "lotka_volterra":
        missing = {"a", "b", "c", "d"} - set(params)
        if missing or set(params) != {"a", "b", "c", "d"}:
            raise ValueError("lotka_volterra needs exactly parameters a, b, c, d")
        field = build_lotka_volterra(params["a"], params["b"], params["c"], params["d"])
        return ModelInstance(field, params, initial_state, "lotka_volterra")
    if name == "sir":
        if set(params) != {"beta", "gamma"}:
            raise ValueError("sir needs exactly parameters beta, gamma")
        field = build_sir(params["beta"], params["gamma"])
        return ModelInstance(field, params, initial_state, "sir")
    raise ValueError(f"unknown model name: {name!r}")
