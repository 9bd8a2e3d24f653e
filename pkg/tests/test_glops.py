import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fracspec import (
    NoiseSpec,
    Series,
    arfima_residuals,
    fractional_integrate,
    gl_coefficients,
    gl_derivative_approx,
    gl_difference,
    white_noise,
)


def _random_series(n, seed):
    return white_noise(NoiseSpec(sigma=1.0, seed=seed), n)


def test_series_validation():
    with pytest.raises(ValueError):
        Series(np.array([]))
    with pytest.raises(ValueError):
        Series([1.0, np.nan])
    with pytest.raises(ValueError):
        Series([1.0], step=0.0)
    s = Series([1.0, 2.0], step=0.5, start=3.0)
    assert np.allclose(s.times, [3.0, 3.5])
    assert not s.values.flags.writeable


def test_coefficients_integer_orders_exact():
    assert gl_coefficients(1.0, 3).coefficients.tolist() == [1.0, -1.0, 0.0, 0.0]
    assert gl_coefficients(2.0, 3).coefficients.tolist() == [1.0, -2.0, 1.0, 0.0]
    assert gl_coefficients(3.0, 5).coefficients.tolist() == [1.0, -3.0, 3.0, -1.0, 0.0, 0.0]


def test_coefficients_half_order():
    c = gl_coefficients(0.5, 3).coefficients
    assert c.tolist() == [1.0, -0.5, -0.125, -0.0625]


def test_coefficients_structure():
    c = gl_coefficients(0.37, 64)
    assert c.coefficients[0] == 1.0
    assert c.coefficients[1] == -0.37
    assert c.truncation == 64


@pytest.mark.parametrize("pair", [(0.3, 0.7), (-0.5, 1.2), (0.3, -0.5), (1.2, 0.7)])
def test_coefficient_semigroup(pair):
    a, b = pair
    ca = gl_coefficients(a, 64).coefficients
    cb = gl_coefficients(b, 64).coefficients
    cab = gl_coefficients(a + b, 64).coefficients
    conv = np.convolve(ca, cb)[:65]
    assert np.abs(conv - cab).max() <= 1e-12


def test_coefficient_sum_decay():
    # partial sums equal (-1)^M C(alpha-1, M), decaying like M^-alpha
    for M in (64, 256, 1024):
        total = gl_coefficients(0.5, M).coefficients.sum()
        assert abs(total) <= 2.0 * M**-0.5


def test_first_difference_and_identity():
    y = _random_series(64, seed=11)
    z = gl_difference(y, 1.0, 8)
    assert z.values[0] == y.values[0]
    assert np.allclose(z.values[1:], y.values[1:] - y.values[:-1], rtol=0, atol=1e-15)
    z0 = gl_difference(y, 0.0, 8)
    assert np.array_equal(z0.values, y.values)
    assert z.step == y.step and z.start == y.start and len(z) == len(y)


def test_integer_reduction_matches_direct_differences():
    y = _random_series(256, seed=3).values
    direct2 = np.zeros_like(y)
    direct2[0] = y[0]
    direct2[1] = y[1] - 2.0 * y[0]
    direct2[2:] = y[2:] - 2.0 * y[1:-1] + y[:-2]
    got = gl_difference(Series(y), 2.0, 16).values
    assert np.abs(got - direct2).max() <= 4.0 * np.spacing(4.0 * np.abs(y).max())


def test_composition_equals_summed_order():
    y = _random_series(256, seed=5)
    M = 256
    once = gl_difference(gl_difference(y, 0.3, M), 0.7, M)
    direct = gl_difference(y, 1.0, M)
    assert np.abs(once.values - direct.values).max() <= 1e-10


@settings(max_examples=50, deadline=None)
@given(
    a=st.floats(min_value=-4.0, max_value=4.0, allow_nan=False),
    b=st.floats(min_value=-4.0, max_value=4.0, allow_nan=False),
    order=st.floats(min_value=-1.5, max_value=1.5, allow_nan=False),
)
def test_gl_difference_linearity(a, b, order):
    y = _random_series(48, seed=1)
    z = _random_series(48, seed=2)
    combo = Series(a * y.values + b * z.values)
    lhs = gl_difference(combo, order, 32).values
    rhs = a * gl_difference(y, order, 32).values + b * gl_difference(z, order, 32).values
    scale = max(1.0, np.abs(lhs).max())
    assert np.abs(lhs - rhs).max() <= 1e-12 * scale * (abs(a) + abs(b) + 1.0)


def test_fractional_integrate_impulse():
    impulse = Series(np.array([1.0, 0.0, 0.0, 0.0]))
    got = fractional_integrate(impulse, 0.5, 3)
    assert got.values.tolist() == [1.0, 0.5, 0.375, 0.3125]


def test_fractional_integrate_requires_positive_order():
    y = _random_series(8, seed=9)
    with pytest.raises(ValueError):
        fractional_integrate(y, 0.0, 4)
    with pytest.raises(ValueError):
        fractional_integrate(y, -0.3, 4)


@pytest.mark.parametrize("d", [0.1, 0.45, 0.9])
def test_inversion_identity(d):
    y = _random_series(512, seed=21)
    M = 512
    back = gl_difference(fractional_integrate(y, d, M), d, M)
    assert np.abs(back.values - y.values).max() <= 1e-10


def test_arfima_residuals_basics():
    y = _random_series(128, seed=4)
    assert np.array_equal(arfima_residuals(y, 0.0, 16).values, y.values)
    const = Series(np.ones(16))
    eps = arfima_residuals(const, 1.0, 16)
    assert eps.values[0] == 1.0
    assert np.abs(eps.values[1:]).max() == 0.0


def test_truncation_validation():
    y = _random_series(8, seed=1)
    with pytest.raises(ValueError):
        gl_difference(y, 0.5, -1)
    with pytest.raises(ValueError):
        gl_difference(y, 0.5, 10**6 + 1)


def test_derivative_approx_affine_and_constant():
    assert gl_derivative_approx(lambda t: 5.0, 1.0, 0.3, 0.1, 16) == pytest.approx(0.0, abs=1e-12)
    assert gl_derivative_approx(lambda t: t, 1.0, 0.3, 0.1, 16) == pytest.approx(1.0, abs=1e-12)


def test_derivative_approx_exponential_closed_form():
    # Delta_T^alpha e^{t} = (1 - e^{-T})^alpha e^{t}, so the quotient equals
    # ((1 - e^{-T}) / T)^alpha e^{t} once the truncation tail is dead
    for T in (0.1, 0.05, 0.025):
        got = gl_derivative_approx(math.exp, 0.5, 0.0, T, 4000)
        want = ((1.0 - math.exp(-T)) / T) ** 0.5
        assert got == pytest.approx(want, abs=1e-10)


def test_derivative_approx_rejects_bad_provider():
    with pytest.raises(ValueError):
        gl_derivative_approx(lambda t: math.inf, 0.5, 0.0, 0.1, 4)
