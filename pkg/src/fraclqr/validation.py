"""Small input-validation helpers shared across the package."""

from __future__ import annotations

import numbers

import numpy as np

from .exceptions import ConfigurationError

__all__ = [
    "check_scalar",
    "check_positive",
    "check_nonnegative",
    "as_square_matrix",
    "as_real_output",
]


def check_scalar(name: str, value) -> float:
    """Coerce ``value`` to a finite float or raise ``ConfigurationError``."""
    if not isinstance(value, numbers.Real):
        raise ConfigurationError(f"{name} must be a real number, got {value!r}")
    value = float(value)
    if not np.isfinite(value):
        raise ConfigurationError(f"{name} must be finite, got {value!r}")
    return value


def check_positive(name: str, value) -> float:
    value = check_scalar(name, value)
    if value <= 0:
        raise ConfigurationError(f"{name} must be > 0, got {value!r}")
    return value


def check_nonnegative(name: str, value) -> float:
    value = check_scalar(name, value)
    if value < 0:
        raise ConfigurationError(f"{name} must be >= 0, got {value!r}")
    return value


def as_square_matrix(name: str, a, n: int | None = None) -> np.ndarray:
    """Coerce to an (n, n) float array, checking shape."""
    a = np.atleast_2d(np.asarray(a, dtype=float))
    if a.shape[0] != a.shape[1]:
        raise ConfigurationError(f"{name} must be square, got shape {a.shape}")
    if n is not None and a.shape[0] != n:
        raise ConfigurationError(f"{name} must be {n}x{n}, got shape {a.shape}")
    return a


def as_real_output(value: complex, rel_tol: float = 1e-8) -> float:
    """Strip a numerically negligible imaginary part.

    Results assembled from conjugate mode pairs are real up to rounding;
    anything larger signals a bug upstream and is surfaced as an error.
    """
    value = complex(value)
    if abs(value.imag) > rel_tol * max(1.0, abs(value)):
        raise ArithmeticError(
            f"expected a real result, imaginary residue {value.imag:.3e} "
            f"on magnitude {abs(value):.3e}"
        )
    return value.real
