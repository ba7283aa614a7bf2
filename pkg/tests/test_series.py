import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qstar.series import (
    Series,
    SeriesOrderError,
    add,
    compose,
    derivative,
    div,
    exp,
    geometric,
    hadamard,
    log,
    mul,
    sine,
)

ORDER = 8
coef = st.complex_numbers(max_magnitude=2.0, allow_nan=False, allow_infinity=False)


def series_st(order=ORDER, const=None):
    def build(c):
        c = list(c)
        if const is not None:
            c[0] = const
        return Series(c)

    return st.lists(coef, min_size=order + 1, max_size=order + 1).map(build)


def test_construction_rejects_nonfinite():
    with pytest.raises(ValueError):
        Series([0.0, np.nan])
    with pytest.raises(ValueError):
        Series([])


def test_coefficients_are_read_only():
    s = Series([1.0, 2.0])
    with pytest.raises(ValueError):
        s.coeffs[0] = 3.0


def test_geometric_times_one_minus_z():
    g = geometric(10, 0.5)
    one_minus = Series.from_coeffs([1.0, -0.5], 10)
    assert mul(g, one_minus).allclose(Series.constant(1.0, 10))


def test_sine_matches_numpy_inside_disk():
    s = sine(30, 0.8)
    z = 0.3 + 0.4j
    assert abs(s(z) - np.sin(0.8 * z)) < 1e-14


def test_sine_high_order_does_not_overflow():
    s = sine(400, 1.0)
    assert np.all(np.isfinite(s.coeffs))
    assert abs(s(0.9) - np.sin(0.9)) < 1e-14


def test_strict_mode_rejects_order_mismatch():
    with pytest.raises(SeriesOrderError):
        add(Series.zero(3), Series.zero(4))


def test_lenient_mode_truncates_and_flags():
    out = mul(Series.identity(3), Series.identity(5), strict=False)
    assert out.order == 3 and out.truncated


def test_compose_needs_zero_constant():
    with pytest.raises(ValueError):
        compose(Series.identity(3), Series.constant(1.0, 3))


def test_div_by_zero_constant():
    with pytest.raises(ZeroDivisionError):
        div(Series.identity(3), Series.identity(3))


@settings(max_examples=60, deadline=None)
@given(series_st(), series_st(const=1.0))
def test_mul_div_round_trip(a, b):
    assert div(mul(a, b), b).allclose(a, atol=1e-8)


@settings(max_examples=40, deadline=None)
@given(series_st(), series_st(const=0.0), series_st(const=0.0))
def test_compose_associative(f, g, h):
    left = compose(compose(f, g), h)
    right = compose(f, compose(g, h))
    assert left.allclose(right, atol=1e-7)


@settings(max_examples=60, deadline=None)
@given(series_st(const=0.0))
def test_exp_satisfies_its_differential_equation(a):
    e = exp(a)
    lhs = derivative(e).coeffs[: ORDER]
    rhs = mul(derivative(a), e).coeffs[: ORDER]
    assert np.allclose(lhs, rhs, atol=1e-9)


@settings(max_examples=60, deadline=None)
@given(series_st(const=0.0))
def test_log_inverts_exp(a):
    assert log(exp(a)).allclose(a, atol=1e-9)


@settings(max_examples=60, deadline=None)
@given(series_st())
def test_hadamard_with_geometric_is_identity(a):
    assert hadamard(a, geometric(ORDER, 1.0)).allclose(a)


def test_evaluate_vectorises():
    s = Series([1.0, 2.0, 3.0])
    z = np.array([0.0, 1.0, 1j])
    assert np.allclose(s(z), 1 + 2 * z + 3 * z * z)
