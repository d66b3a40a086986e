import numpy as np

from sloccsim.integrate import rk4_integrate, rk4_linear, rk4_propagator, rk4_step


def test_rk4_step_exponential_decay():
    y = rk4_step(lambda t, y: -y, 0.0, np.array([1.0]), 0.1)
    assert abs(y[0] - np.exp(-0.1)) < 1e-7


def test_rk4_integrate_matches_closed_form():
    y = rk4_integrate(lambda t, y: -2.0 * y, [1.0], 0.0, 1.0, 200)
    assert abs(y[0] - np.exp(-2.0)) < 1e-9


def test_rk4_linear_reproduces_stepping():
    a = np.array([[-1.0, 0.5], [1.0, -0.5]])
    y_step = rk4_integrate(lambda t, y: a @ y, [0.3, 0.7], 0.0, 2.0, 37)
    y_power = rk4_linear(a, [0.3, 0.7], 2.0, 37)
    np.testing.assert_allclose(y_power, y_step, atol=1e-13)


def test_rk4_propagator_zero_step_is_identity():
    np.testing.assert_array_equal(rk4_propagator(np.ones((3, 3)), 0.0), np.eye(3))


def test_rk4_linear_zero_time_returns_copy():
    y0 = np.array([0.2, 0.8])
    out = rk4_linear(np.eye(2), y0, 0.0, 10)
    np.testing.assert_array_equal(out, y0)
    assert out is not y0
