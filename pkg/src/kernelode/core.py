"""Shared domain types: time series, increments and the standardizer."""

from dataclasses import dataclass

import numpy as np

from ._validation import check_states
from .exceptions import (
    DimensionMismatch,
    NonFiniteValue,
    NonMonotonicTime,
    TooShort,
    ZeroVariance,
)

__all__ = [
    "TimeSeries",
    "IncrementSet",
    "StandardScaler",
    "validate_timeseries",
    "extract_increments",
]


def _readonly(arr):
    arr = np.array(arr, dtype=float)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """Sampled states ``states[i]`` observed at ``times[i]``.

    Construction only coerces shapes; call :func:`validate_timeseries` to
    enforce ordering, finiteness and length. ``names`` optionally labels
    the state coordinates and is ignored by equality.
    """

    times: np.ndarray
    states: np.ndarray
    names: tuple = None

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float).reshape(-1)
        try:
            states = np.asarray(self.states, dtype=float)
        except (TypeError, ValueError):
            raise DimensionMismatch("states do not share one dimension") from None
        if states.ndim == 1:
            states = states.reshape(-1, 1)
        if states.ndim != 2:
            raise DimensionMismatch(f"states must be (N, d), got shape {states.shape}")
        if states.shape[0] != times.shape[0]:
            raise DimensionMismatch(
                f"{times.shape[0]} time stamps but {states.shape[0]} states"
            )
        if self.names is not None:
            names = tuple(str(n) for n in self.names)
            if len(names) != states.shape[1]:
                raise DimensionMismatch(f"{len(names)} names for {states.shape[1]} coordinates")
            object.__setattr__(self, "names", names)
        object.__setattr__(self, "times", _readonly(times))
        object.__setattr__(self, "states", _readonly(states))

    @property
    def column_names(self):
        return self.names or tuple(f"x{k + 1}" for k in range(self.dim))

    @property
    def dim(self):
        return self.states.shape[1]

    def __len__(self):
        return self.times.shape[0]

    def __eq__(self, other):
        if not isinstance(other, TimeSeries):
            return NotImplemented
        return np.array_equal(self.times, other.times) and np.array_equal(
            self.states, other.states
        )


def validate_timeseries(ts):
    """Return ``ts`` unchanged if it is usable for fitting, else raise."""
    if not isinstance(ts, TimeSeries):
        raise TypeError(f"expected TimeSeries, got {type(ts).__name__}")
    if len(ts) < 2:
        raise TooShort(f"need at least 2 samples, got {len(ts)}")
    if not np.all(np.isfinite(ts.times)):
        raise NonFiniteValue("times contain NaN or Inf")
    if not np.all(np.isfinite(ts.states)):
        raise NonFiniteValue("states contain NaN or Inf")
    dt = np.diff(ts.times)
    bad = np.flatnonzero(dt <= 0)
    if bad.size:
        i = int(bad[0])
        raise NonMonotonicTime(
            f"times must be strictly increasing: t[{i}]={ts.times[i]!r}, "
            f"t[{i + 1}]={ts.times[i + 1]!r}"
        )
    return ts


@dataclass(frozen=True, eq=False)
class IncrementSet:
    """Finite differences of a series, one row per consecutive pair."""

    base_points: np.ndarray
    deltas_x: np.ndarray
    deltas_t: np.ndarray
    velocity_targets: np.ndarray

    def __len__(self):
        return self.deltas_t.shape[0]


def extract_increments(ts):
    """Differences ``x[i+1] - x[i]``, ``t[i+1] - t[i]`` and their ratio."""
    validate_timeseries(ts)
    X = ts.states
    dx = X[1:] - X[:-1]
    dt = ts.times[1:] - ts.times[:-1]
    return IncrementSet(
        base_points=_readonly(X[:-1]),
        deltas_x=_readonly(dx),
        deltas_t=_readonly(dt),
        velocity_targets=_readonly(dx / dt[:, None]),
    )


@dataclass(frozen=True, eq=False)
class StandardScaler:
    """Per-coordinate z-scoring with population statistics.

    Unlike :class:`sklearn.preprocessing.StandardScaler`, a constant
    coordinate is an error instead of being silently left unscaled.
    """

    means: np.ndarray
    stds: np.ndarray

    def __post_init__(self):
        means = np.asarray(self.means, dtype=float).reshape(-1)
        stds = np.asarray(self.stds, dtype=float).reshape(-1)
        if means.shape != stds.shape:
            raise DimensionMismatch("means and stds differ in length")
        if not (np.all(np.isfinite(means)) and np.all(np.isfinite(stds))):
            raise NonFiniteValue("scaler statistics must be finite")
        if np.any(stds <= 0):
            raise ZeroVariance(f"standard deviations must be positive, got {stds}")
        object.__setattr__(self, "means", _readonly(means))
        object.__setattr__(self, "stds", _readonly(stds))

    @classmethod
    def fit(cls, X):
        X = check_states(X)
        stds = X.std(axis=0)
        flat = np.flatnonzero(stds == 0)
        if flat.size:
            raise ZeroVariance(f"coordinate(s) {flat.tolist()} are constant")
        return cls(X.mean(axis=0), stds)

    @property
    def dim(self):
        return self.means.shape[0]

    def apply(self, X):
        return (np.asarray(X, dtype=float) - self.means) / self.stds

    def invert(self, Z):
        return np.asarray(Z, dtype=float) * self.stds + self.means

    def scale_velocity(self, V):
        """Map a standardized time derivative back to data units."""
        return np.asarray(V, dtype=float) * self.stds

    def __eq__(self, other):
        if not isinstance(other, StandardScaler):
            return NotImplemented
        return np.array_equal(self.means, other.means) and np.array_equal(
            self.stds, other.stds
        )
