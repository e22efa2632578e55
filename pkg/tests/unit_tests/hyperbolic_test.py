# math standard lib.
import math

# pytest lib.
import pytest

import numpy as np

# Errors.
from mirrorphase.lib.errors import NumericDomainError, NumericOverflowError

# Hyperbolic lib.
from mirrorphase.lib.hyperbolic import arcsinh_scaled, hypot_beta, require_finite, sinh_scaled


# Test arcsinh(x / beta) against numpy where numpy is accurate.
def arcsinh_scaled_test() -> None:
    x: np.ndarray = np.linspace(-5, 5, 101)
    assert np.allclose(arcsinh_scaled(x, 0.5), np.arcsinh(x / 0.5), rtol=1e-14, atol=0)

    # x / beta overflows for the naive formula.
    huge: np.ndarray = arcsinh_scaled(np.array([1e300, -1e300]), 1e-300)
    expected: float = math.log(2.0) + math.log(1e300) - math.log(1e-300)
    assert huge[0] == pytest.approx(expected, rel=1e-14)
    assert huge[1] == -huge[0]

    # Tiny arguments keep full relative precision.
    assert arcsinh_scaled(np.array([1e-30]), 1.0)[0] == pytest.approx(1e-30, rel=1e-14)


# Test beta * sinh(u) and its overflow guard.
def sinh_scaled_test() -> None:
    u: np.ndarray = np.linspace(-30, 30, 61)
    assert np.allclose(sinh_scaled(u, 1e-3), 1e-3 * np.sinh(u), rtol=1e-13, atol=0)
    assert sinh_scaled(np.array([700.0]), 1e-20)[0] == pytest.approx(1e-20 * math.sinh(700), rel=1e-12)

    with pytest.raises(NumericOverflowError) as error:
        sinh_scaled(np.array([0.0, 1.0, 800.0]), 1.0)
    assert error.value.coordinate == 2


def hypot_beta_test() -> None:
    assert hypot_beta(np.array([3.0]), 4.0)[0] == 5.0
    assert np.isfinite(hypot_beta(np.array([1e300]), 1e300)[0])


def require_finite_test() -> None:
    require_finite(np.array([1.0, 2.0]), "x")
    with pytest.raises(NumericDomainError):
        require_finite(np.array([1.0, np.nan]), "x")
