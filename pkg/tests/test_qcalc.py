import math

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from qstar.qcalc import (
    CLASSICAL,
    QContext,
    QContextError,
    d_eta,
    jackson_integral_log,
    lambda_q,
    q_derivative,
    q_number,
    xi_coeffs,
    xi_derivative_eval,
    xi_eval,
)
from qstar.series import Series


@pytest.mark.parametrize("bad", [0.0, 1.0, -0.2, 1.5, float("nan")])
def test_q_outside_open_interval_rejected(bad):
    with pytest.raises(QContextError):
        QContext(bad)


def test_q_numbers():
    assert q_number(3, QContext(0.5)) == pytest.approx(1.75, abs=1e-15)
    assert q_number(5, CLASSICAL) == 5.0
    with pytest.raises(ValueError):
        q_number(0, CLASSICAL)


def test_q_number_tends_to_n():
    for n in (2, 5, 9):
        assert abs(q_number(n, QContext(1 - 1e-9)) - n) < 1e-6


def test_lambda_q():
    assert lambda_q(CLASSICAL) == 1.0
    assert lambda_q(QContext(0.5)) == pytest.approx(2 * math.log(2), rel=1e-15)
    assert lambda_q(QContext(1 - 1e-8)) == pytest.approx(1.0, abs=1e-7)


def test_jackson_derivative_matches_difference_quotient():
    ctx = QContext(0.6)
    f = Series([0.0, 1.0, 0.3, -0.2, 0.1])
    z = 0.4 + 0.1j
    direct = (f(z) - f(ctx.q * z)) / ((1 - ctx.q) * z)
    assert abs(q_derivative(f, ctx)(z) - direct) < 1e-14


@settings(max_examples=40, deadline=None)
@given(st.floats(0.05, 0.95), st.lists(st.floats(-2, 2), min_size=6, max_size=6))
def test_d_eta_at_real_q_is_jackson_derivative(q, c):
    f = Series([0.0] + c)
    ctx = QContext(q)
    assert d_eta(f, q).allclose(q_derivative(f, ctx), atol=1e-12)


def test_d_eta_at_one_is_ordinary_derivative():
    f = Series([0.0, 1.0, 2.0, 3.0])
    assert d_eta(f, 1.0).allclose(Series([1.0, 4.0, 9.0]))
    with pytest.raises(ValueError):
        d_eta(f, 1.5)


def test_jackson_integral_log_inverts_q_derivative():
    ctx = QContext(0.7)
    g = Series([5.0, 1.0, -2.0, 0.5])
    h = jackson_integral_log(g, ctx)
    # z D h = g - g(0)
    back = Series(np.concatenate(([0.0], q_derivative(h, ctx).coeffs)))
    assert back.truncate(3).allclose(g - g[0])


@pytest.mark.parametrize("q", [0.3, 0.5, 0.8])
def test_xi_coefficients_against_sympy(q):
    z = sp.symbols("z")
    qq = sp.Rational(str(q))
    expr = 1 + sp.sin(qq * z) / (qq * (1 - qq * z))
    poly = sp.series(expr, z, 0, 9).removeO()
    exact = [float(poly.coeff(z, k)) for k in range(9)]
    assert np.allclose(xi_coeffs(QContext(q), 8).coeffs.real, exact, rtol=0, atol=1e-14)


def test_xi_series_agrees_with_closed_form():
    for ctx in (CLASSICAL, QContext(0.5)):
        z = 0.3 * np.exp(0.7j)
        assert abs(xi_coeffs(ctx, 40)(z) - xi_eval(ctx, z)) < 1e-14


def test_xi_pole_and_derivative():
    with pytest.raises(ZeroDivisionError):
        xi_eval(CLASSICAL, 1.0)
    for ctx in (CLASSICAL, QContext(0.8)):
        assert xi_derivative_eval(ctx, 0.0) == pytest.approx(1.0)
        z, h = 0.2 + 0.1j, 1e-6
        fd = (xi_eval(ctx, z + h) - xi_eval(ctx, z - h)) / (2 * h)
        assert abs(fd - xi_derivative_eval(ctx, z)) < 1e-8


def test_xi_q_tends_to_xi():
    prev = math.inf
    for q in (0.9, 0.99, 0.999):
        gap = float(np.max(np.abs(xi_coeffs(QContext(q), 10).coeffs - xi_coeffs(CLASSICAL, 10).coeffs)))
        assert gap < prev
        prev = gap
    assert prev < 1e-2
