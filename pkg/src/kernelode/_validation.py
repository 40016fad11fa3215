"""Small input-checking helpers shared across modules."""

import numbers

import numpy as np

from .exceptions import DimensionMismatch, NonFiniteValue, NonPositiveBandwidth


def check_state(x, dim=None, name="x"):
    """Return ``x`` as a finite 1-d float array, optionally of length ``dim``."""
    try:
        arr = np.asarray(x, dtype=float)
    except (TypeError, ValueError) as exc:
        raise DimensionMismatch(f"{name} is not a numeric vector: {exc}") from None
    if arr.ndim == 0:
        arr = arr.reshape(1)
    if arr.ndim != 1 or arr.size == 0:
        raise DimensionMismatch(f"{name} must be a non-empty vector, got shape {arr.shape}")
    if dim is not None and arr.shape[0] != dim:
        raise DimensionMismatch(f"{name} has dimension {arr.shape[0]}, expected {dim}")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteValue(f"{name} contains NaN or Inf")
    return arr


def check_states(X, dim=None, name="X"):
    """Return ``X`` as a finite ``(n, d)`` float array.

    A 1-d input is read as ``n`` scalar states, matching how a univariate
    series is usually written down.
    """
    try:
        arr = np.asarray(X, dtype=float)
    except (TypeError, ValueError):
        raise DimensionMismatch(f"{name} rows do not share one dimension") from None
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2 or arr.shape[1] == 0:
        raise DimensionMismatch(f"{name} must be 2-d (n, d), got shape {arr.shape}")
    if dim is not None and arr.shape[1] != dim:
        raise DimensionMismatch(f"{name} has dimension {arr.shape[1]}, expected {dim}")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteValue(f"{name} contains NaN or Inf")
    return arr


def check_bandwidth(s):
    if not isinstance(s, numbers.Real) or not np.isfinite(s) or s <= 0:
        raise NonPositiveBandwidth(f"bandwidth must be a positive finite real, got {s!r}")
    return float(s)


def check_positive(value, name, allow_zero=False):
    if not isinstance(value, numbers.Real) or not np.isfinite(value):
        raise ValueError(f"{name} must be a finite real, got {value!r}")
    if value < 0 or (value == 0 and not allow_zero):
        bound = "nonnegative" if allow_zero else "positive"
        raise ValueError(f"{name} must be {bound}, got {value!r}")
    return float(value)
