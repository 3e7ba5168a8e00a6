"""Truncated power series in time and the Taylor recursion for
polynomial ODE systems.

For a polynomial field u' = P(u) the Taylor coefficients of the solution
about t = 0 satisfy

    (k+1) * c[k+1] = k-th coefficient of P(series state),

which closes because products of truncated series need only coefficients
already known.  The coefficients produced here are the true Taylor
coefficients of the solution, not an approximation: this is the series
that perturbation-style iteration schemes reproduce term by term.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .models import ModelInstance, PolynomialVectorField


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    """Coefficients c_0..c_N of a series in t, truncated at order N."""

    coefficients: np.ndarray

    def __post_init__(self):
        coeffs = np.asarray(self.coefficients, dtype=float)
        if coeffs.ndim != 1 or coeffs.size < 1:
            raise ValueError("coefficients must be a non-empty 1-D vector")
        if not np.all(np.isfinite(coeffs)):
            raise ValueError("coefficients must be finite")
        coeffs = coeffs.copy()
        coeffs.flags.writeable = False
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def order(self) -> int:
        return self.coefficients.size - 1


def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Coefficientwise sum of two series of equal order."""
    if a.order != b.order:
        raise ValueError("series orders differ")
    return TruncatedSeries(a.coefficients + b.coefficients)


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated back to the common order."""
    if a.order != b.order:
        raise ValueError("series orders differ")
    full = np.convolve(a.coefficients, b.coefficients)
    return TruncatedSeries(full[: a.order + 1])


def eval_series(s: TruncatedSeries, t):
    """Evaluate the series at t (scalar or array) in Horner form."""
    t = np.asarray(t, dtype=float)
    if not np.all(np.isfinite(t)):
        raise ValueError("evaluation point must be finite")
    result = np.zeros_like(t)
    for c in s.coefficients[::-1]:
        result = result * t + c
    if result.ndim == 0:
        return float(result)
    return result


@dataclass(frozen=True, eq=False)
class SeriesSolution:
    """Per-component series solution of a model, all of the same order."""

    components: tuple[TruncatedSeries, ...]
    model: ModelInstance

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if len(self.components) != self.model.field.dimension:
            raise ValueError("need one component series per dimension")
        orders = {comp.order for comp in self.components}
        if len(orders) != 1:
            raise ValueError("component series must share one order")
        for comp, u0 in zip(self.components, self.model.initial_state):
            if comp.coefficients[0] != u0:
                raise ValueError("constant term must equal the initial condition")

    @property
    def order(self) -> int:
        return self.components[0].order


def taylor_coefficients(field: PolynomialVectorField, state, order: int) -> np.ndarray:
    """Taylor coefficients, shape (dimension, order+1), of the solution of
    u' = P(u) started at ``state``.

    Row i holds c_{i,0}..c_{i,N} with c_{i,0} = state[i].  Coefficient
    k+1 only consumes coefficients 0..k, so every returned value is the
    exact Taylor coefficient up to floating-point rounding.
    """
    if order < 1:
        raise ValueError("order must be at least 1")
    state = np.asarray(state, dtype=float)
    if state.shape != (field.dimension,):
        raise ValueError("state length must equal the field dimension")
    coef = np.zeros((field.dimension, order + 1))
    coef[:, 0] = state
    for k in range(order):
        for i, equation in enumerate(field.equations):
            acc = 0.0
            for mono in equation:
                prod = None
                for j, e in enumerate(mono.exponents):
                    for _ in range(e):
                        if prod is None:
                            prod = coef[j, : k + 1]
                        else:
                            prod = np.convolve(prod, coef[j, : k + 1])[: k + 1]
                if prod is None:
                    # constant monomial: contributes to the k = 0 term only
                    acc += mono.coefficient if k == 0 else 0.0
                else:
                    acc += mono.coefficient * prod[k]
            coef[i, k + 1] = acc / (k + 1)
    return coef


def generate_taylor_solution(model: ModelInstance, order: int) -> SeriesSolution:
    """Series solution of ``model`` about t = 0, truncated at ``order``."""
    coef = taylor_coefficients(model.field, model.initial_state, order)
    return SeriesSolution(tuple(TruncatedSeries(row) for row in coef), model)
