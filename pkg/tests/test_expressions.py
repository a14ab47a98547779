import math

import numpy as np
import pytest

from bjorling.errors import ExpressionError
from bjorling.expressions import evaluate_jet, evaluate_series
from bjorling.series import USeries


def test_polynomial_with_parameters():
    jet = evaluate_jet("4*c*u", 5, 0.0, {"c": 1.5})
    assert np.allclose(jet.coeffs, [0, 6, 0, 0, 0, 0], atol=1e-15)


def test_generators_at_shifted_center():
    jet = evaluate_jet("cos(u)", 6, math.pi / 2, {})
    want = USeries.variable(6, math.pi / 2).cos()
    assert np.allclose(jet.coeffs, want.coeffs, atol=1e-15)


def test_composite_expression():
    jet = evaluate_jet("-(c/2)*cosh(u) + sinh(u)", 8, 0.0, {"c": 1.0})
    u = USeries.variable(8, 0.0)
    want = -0.5 * u.cosh() + u.sinh()
    assert np.allclose(jet.coeffs, want.coeffs, atol=1e-15)


def test_division_by_series():
    jet = evaluate_jet("sinh(u)/cosh(u)", 7, 0.0, {})
    u = USeries.variable(7, 0.0)
    want = u.sinh() / u.cosh()
    assert np.allclose(jet.coeffs, want.coeffs, atol=1e-15)


def test_integer_powers_of_series():
    jet = evaluate_jet("(1 + u)**3", 5, 0.0, {})
    assert np.allclose(jet.coeffs, [1, 3, 3, 1, 0, 0], atol=1e-15)
    jet = evaluate_jet("(1 + u)**-1", 5, 0.0, {})
    assert np.allclose(jet.coeffs, [1, -1, 1, -1, 1, -1], atol=1e-14)


def test_nested_function_argument():
    jet = evaluate_jet("exp(2*u)", 5, 0.0, {})
    assert np.allclose(jet.coeffs, [2**k / math.factorial(k) for k in range(6)], atol=1e-14)


def test_constant_expression_becomes_constant_jet():
    jet = evaluate_jet("cos(0) + 1", 4, 0.0, {})
    assert np.allclose(jet.coeffs, [2, 0, 0, 0, 0], atol=1e-15)


def test_pointwise_environment():
    assert evaluate_series("x1*x2 - x3", {"x1": 2.0, "x2": 3.0, "x3": 1.0}) == 5.0


def test_unknown_name_rejected():
    with pytest.raises(ExpressionError, match="unknown name"):
        evaluate_jet("q + u", 4, 0.0, {})


def test_call_injection_rejected():
    with pytest.raises(ExpressionError):
        evaluate_jet("__import__('os').system('true')", 4, 0.0, {})


def test_disallowed_function_rejected():
    with pytest.raises(ExpressionError):
        evaluate_jet("tan(u)", 4, 0.0, {})


def test_non_integer_power_rejected():
    with pytest.raises(ExpressionError, match="integer"):
        evaluate_jet("u**0.5", 4, 0.0, {})


def test_syntax_error_reported():
    with pytest.raises(ExpressionError, match="cannot parse"):
        evaluate_jet("1 +", 4, 0.0, {})


def test_attribute_access_rejected():
    with pytest.raises(ExpressionError):
        evaluate_series("u.coeffs", {"u": USeries.variable(3)})
