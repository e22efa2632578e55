import numpy as np

# Gradient check lib.
from mirrorphase.lib.gradcheck import central_difference, gradient_error, relative_error


# Test the checker accepts a correct gradient and rejects a wrong one.
def gradient_error_test() -> None:
    x: np.ndarray = np.array([0.5, -2.0, 3.0])
    assert np.allclose(central_difference(lambda point: float(np.sum(point ** 2)), x), 2 * x)
    assert gradient_error(lambda point: float(np.sum(np.sin(point))), np.cos, x) < 1e-8
    assert gradient_error(lambda point: float(np.sum(np.sin(point))), lambda point: -np.cos(point), x) > 1


def relative_error_test() -> None:
    assert relative_error(np.zeros(3), np.zeros(3)) == 0
    assert relative_error(np.array([1.0, 0.0]), np.array([0.0, 1.0])) == np.sqrt(2)
