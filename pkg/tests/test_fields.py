import numpy as np
import pytest

from jacobiflow import NumericError, ScalarField, constant_field, coordinate_field, product_field
from jacobiflow.fields import fd_gradient, fd_jacobian


def test_fd_gradient_quadratic():
    f = lambda x: float(x[0] ** 2 + 3.0 * x[0] * x[1])
    x = np.array([1.2, -0.7])
    grad = fd_gradient(f, x)
    assert np.allclose(grad, [2 * 1.2 + 3 * (-0.7), 3 * 1.2], atol=1e-8)


def test_fd_jacobian_shape_and_values():
    f = lambda x: np.array([x[0] * x[1], x[1] ** 2])
    x = np.array([2.0, 3.0])
    jac = fd_jacobian(f, x)
    assert jac.shape == (2, 2)
    assert np.allclose(jac, [[3.0, 2.0], [0.0, 6.0]], atol=1e-8)


def test_scalar_field_fd_fallback_matches_analytic():
    f_analytic = ScalarField(2, lambda x: float(x[0] * x[1]), grad=lambda x: np.array([x[1], x[0]]))
    f_fd = ScalarField(2, lambda x: float(x[0] * x[1]))
    x = np.array([0.4, -1.3])
    assert np.allclose(f_analytic.gradient(x), f_fd.gradient(x), atol=1e-8)


def test_scalar_field_nonfinite_gradient_raises():
    f = ScalarField(1, lambda x: float(np.log(x[0])) if x[0] > 0 else float("nan"))
    with pytest.raises(NumericError):
        f.gradient(np.array([0.0]))


def test_field_constructors():
    x = np.array([1.0, 2.0, 3.0])
    assert constant_field(3, 5.0)(x) == 5.0
    assert np.all(constant_field(3, 5.0).gradient(x) == 0.0)
    assert coordinate_field(3, 1)(x) == 2.0
    assert np.allclose(coordinate_field(3, 1).gradient(x), [0, 1, 0])
    assert product_field(3, 0, 2)(x) == 3.0
    assert np.allclose(product_field(3, 0, 2).gradient(x), [3, 0, 1])
    assert product_field(3, 1, 1)(x) == 4.0
    assert np.allclose(product_field(3, 1, 1).gradient(x), [0, 4, 0])
