import math

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from serieslab.convergence import estimate_radius
from serieslab.exact import riccati_exact
from serieslab.integrators import reference_integrate
from serieslab.models import build_riccati, make_model
from serieslab.series import (
    TruncatedSeries,
    eval_series,
    generate_taylor_solution,
    series_add,
    series_mul,
    taylor_coefficients,
)


def lv_case_v():
    return make_model("lotka_volterra", dict(a=1.0, b=1.0, c=1.0, d=1.0), [3.0, 2.0])


def lv_case_i():
    return make_model("lotka_volterra", dict(a=1.0, b=1.0, c=0.1, d=1.0), [14.0, 18.0])


def sir_slow():
    return make_model("sir", dict(beta=0.01, gamma=0.02), [20.0, 15.0, 10.0])


def sir_fast():
    return make_model("sir", dict(beta=1.0, gamma=1.0), [20.0, 4.0, 10.0])


# -- arithmetic --------------------------------------------------------------

def test_mul_identity():
    one = TruncatedSeries([1.0, 0.0, 0.0])
    assert np.array_equal(series_mul(one, one).coefficients, [1.0, 0.0, 0.0])


def test_mul_t_times_t():
    t = TruncatedSeries([0.0, 1.0, 0.0, 0.0])
    assert np.array_equal(series_mul(t, t).coefficients, [0.0, 0.0, 1.0, 0.0])


def test_mul_truncates():
    s = TruncatedSeries([1.0, 1.0])
    assert np.array_equal(series_mul(s, s).coefficients, [1.0, 2.0])


def test_order_mismatch_rejected():
    a = TruncatedSeries([1.0, 2.0])
    b = TruncatedSeries([1.0, 2.0, 3.0])
    with pytest.raises(ValueError):
        series_add(a, b)
    with pytest.raises(ValueError):
        series_mul(a, b)


def test_series_validation():
    with pytest.raises(ValueError):
        TruncatedSeries([])
    with pytest.raises(ValueError):
        TruncatedSeries([1.0, float("nan")])


finite_lists = st.lists(
    st.floats(min_value=-1e6, max_value=1e6, allow_nan=False), min_size=1, max_size=9
)


@given(finite_lists, finite_lists)
@settings(max_examples=60, deadline=None)
def test_mul_matches_direct_cauchy_product(xs, ys):
    n = min(len(xs), len(ys))
    a = TruncatedSeries(xs[:n])
    b = TruncatedSeries(ys[:n])
    got = series_mul(a, b).coefficients
    want = np.zeros(n)
    slack = np.zeros(n)
    for k in range(n):
        want[k] = math.fsum(xs[i] * ys[k - i] for i in range(k + 1))
        slack[k] = math.fsum(abs(xs[i] * ys[k - i]) for i in range(k + 1))
    assert np.all(np.abs(got - want) <= 1e-13 * (1.0 + slack))
    flipped = series_mul(b, a).coefficients
    assert np.all(np.abs(got - flipped) <= 1e-13 * (1.0 + slack))


@given(finite_lists)
@settings(max_examples=60, deadline=None)
def test_add_and_eval_basics(xs):
    s = TruncatedSeries(xs)
    doubled = series_add(s, s)
    assert np.array_equal(doubled.coefficients, 2 * np.asarray(xs))
    assert eval_series(s, 0.0) == xs[0]


def test_eval_series_horner():
    assert eval_series(TruncatedSeries([1.0, 2.0, 3.0]), 2.0) == 17.0
    grid = np.array([0.0, 1.0, 2.0])
    out = eval_series(TruncatedSeries([1.0, 2.0, 3.0]), grid)
    assert np.array_equal(out, [1.0, 6.0, 17.0])
    with pytest.raises(ValueError):
        eval_series(TruncatedSeries([1.0]), float("inf"))


# -- the Taylor recursion ----------------------------------------------------

def test_riccati_series_low_order_coefficients():
    sol = generate_taylor_solution(build_riccati(0.0), 4)
    assert np.allclose(
        sol.components[0].coefficients,
        [0.0, 1.0, 1.0, 1.0 / 3.0, -1.0 / 3.0],
        rtol=0, atol=1e-15,
    )


def test_riccati_series_partial_sum_near_exact():
    sol = generate_taylor_solution(build_riccati(0.0), 4)
    approx = eval_series(sol.components[0], 0.1)
    assert abs(approx - 0.1103) < 1e-15
    # agreement with the closed form is limited by the first dropped term
    assert abs(approx - riccati_exact(0.0, 0.1)) < 1e-5


def test_lv_first_order_coefficients_match_closed_form():
    rng = np.random.default_rng(3)
    for _ in range(20):
        # dyadic rationals make every product and sum exact in binary, so
        # the recursion and the closed form must agree bitwise
        a, b, c, d = (float(v) / 8.0 for v in rng.integers(1, 33, size=4))
        x0, y0 = (float(v) / 16.0 for v in rng.integers(1, 257, size=2))
        model = make_model("lotka_volterra", dict(a=a, b=b, c=c, d=d), [x0, y0])
        sol = generate_taylor_solution(model, 1)
        assert sol.components[0].coefficients[1] == x0 * (a - b * y0)
        assert sol.components[1].coefficients[1] == y0 * (d * x0 - c)


def test_sir_first_order_coefficients():
    model = sir_slow()
    sol = generate_taylor_solution(model, 1)
    beta, gamma = 0.01, 0.02
    x0, y0, z0 = 20.0, 15.0, 10.0
    assert sol.components[0].coefficients[1] == -(beta * (x0 * y0))
    assert sol.components[1].coefficients[1] == beta * (x0 * y0) - gamma * y0
    assert sol.components[2].coefficients[1] == gamma * y0
    assert sol.components[0].coefficients[0] == x0


def test_generate_requires_positive_order():
    with pytest.raises(ValueError):
        generate_taylor_solution(build_riccati(0.0), 0)


def _sympy_taylor(field, state, order):
    """Independent oracle: iterated symbolic differentiation of the ODE."""
    syms = sp.symbols(f"u0:{field.dimension}")
    exprs = []
    for eq in field.equations:
        total = sp.Integer(0)
        for mono in eq:
            term = sp.nsimplify(mono.coefficient, rational=True)
            for s, e in zip(syms, mono.exponents):
                term *= s**e
            total += term
        exprs.append(sp.expand(total))
    rhs = sp.Matrix(exprs)
    derivs = [rhs]
    for _ in range(order - 1):
        derivs.append(sp.expand(derivs[-1].jacobian(syms) * rhs))
    subs = {s: sp.nsimplify(v, rational=True) for s, v in zip(syms, state)}
    coeffs = [sp.Matrix([sp.nsimplify(v, rational=True) for v in state])]
    for n, deriv in enumerate(derivs, start=1):
        coeffs.append(deriv.subs(subs) / sp.factorial(n))
    return np.array(
        [[float(coeffs[k][j]) for k in range(order + 1)]
         for j in range(field.dimension)]
    )


@pytest.mark.parametrize("model_fn", [
    lambda: build_riccati(0.0),
    lambda: build_riccati(5.0),
    lv_case_v,
    lv_case_i,
    sir_slow,
    sir_fast,
], ids=["riccati0", "riccati5", "lv_case_v", "lv_case_i", "sir_slow", "sir_fast"])
def test_coefficients_match_symbolic_oracle(model_fn):
    model = model_fn()
    order = 10
    sol = generate_taylor_solution(model, order)
    oracle = _sympy_taylor(model.field, model.initial_state, order)
    for j, comp in enumerate(sol.components):
        scale = np.maximum(np.abs(oracle[j]), 1e-30)
        assert np.max(np.abs(comp.coefficients - oracle[j]) / scale) < 1e-8


@pytest.mark.parametrize("model_fn", [
    lambda: build_riccati(0.0), lv_case_v, sir_slow,
], ids=["riccati0", "lv_case_v", "sir_slow"])
def test_series_satisfies_ode_order_by_order(model_fn):
    model = model_fn()
    order = 8
    coef = taylor_coefficients(model.field, model.initial_state, order)
    # derivative series: shift and scale
    deriv = coef[:, 1:] * np.arange(1, order + 1)
    # right-hand side series via direct convolution, independent of the
    # recursion's internal loop
    rhs = np.zeros_like(coef)
    for i, eq in enumerate(model.field.equations):
        for mono in eq:
            prod = np.zeros(order + 1)
            prod[0] = 1.0
            for j, e in enumerate(mono.exponents):
                for _ in range(e):
                    prod = np.convolve(prod, coef[j])[: order + 1]
            rhs[i] += mono.coefficient * prod
    scale = np.maximum(np.abs(rhs[:, :order]), 1.0)
    assert np.max(np.abs(deriv - rhs[:, :order]) / scale) < 1e-12


@pytest.mark.parametrize("model_fn, t_factor", [
    (lambda: build_riccati(0.0), 0.25),
    (lv_case_v, 0.3),
    (sir_slow, 0.3),
], ids=["riccati0", "lv_case_v", "sir_slow"])
def test_error_decreases_with_order_inside_radius(model_fn, t_factor):
    model = model_fn()
    big = generate_taylor_solution(model, 30)
    radius = min(estimate_radius(comp).radius for comp in big.components)
    t = t_factor * radius
    ref = reference_integrate(model, t, 1e-12, grid=np.array([0.0, t]))
    target = ref.states[-1]
    errs = []
    for order in range(2, 11):
        sol = generate_taylor_solution(model, order)
        vals = np.array([eval_series(comp, t) for comp in sol.components])
        errs.append(float(np.max(np.abs(vals - target))))
    # coefficients come in sign-alternating pairs, so compare two orders
    # apart; the improvement is monotone up to the rounding floor
    for lo in range(len(errs) - 2):
        assert errs[lo + 2] <= errs[lo] + 1e-14
    assert errs[-1] < 1e-2 * errs[0]


def test_sir_series_conserves_population_per_order():
    sol = generate_taylor_solution(sir_slow(), 10)
    coeffs = np.vstack([comp.coefficients for comp in sol.components])
    sums = coeffs[:, 1:].sum(axis=0)
    assert np.max(np.abs(sums)) < 1e-12
