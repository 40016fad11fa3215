"""Error metrics for fitted models and phase-portrait generation.

Every metric is reported in the model's standardized coordinates, so
numbers are comparable across systems with different units.
"""

import itertools
import numbers
from dataclasses import asdict, dataclass

import numpy as np

from ._validation import check_positive
from .core import validate_timeseries
from .dynamics import DEFAULT_BOUND, integrate, integrate_at
from .exceptions import DimensionMismatch, Diverged, UnsupportedDimension

__all__ = [
    "EvalReport",
    "one_step_errors",
    "trajectory_rmse",
    "evaluate",
    "phase_portrait",
]


@dataclass(frozen=True)
class EvalReport:
    one_step_rmse: float
    one_step_max: float
    trajectory_rmse: float
    horizon: float
    n_points: int

    def as_dict(self):
        return asdict(self)


def _check_dims(model, ts):
    validate_timeseries(ts)
    if ts.dim != model.dim:
        raise DimensionMismatch(f"data has dimension {ts.dim}, model has {model.dim}")


def one_step_errors(model, ts):
    """RMS and max Euclidean norm of ``z_{i+1} - z_i - dt_i f(z_i)``.

    Returns
    -------
    (float, float)
        ``(rmse, max)`` over all increments of ``ts``.
    """
    _check_dims(model, ts)
    Z = model.scaler.apply(ts.states)
    dt = np.diff(ts.times)
    e = Z[1:] - Z[:-1] - dt[:, None] * model.standardized_field(Z[:-1])
    norms = np.linalg.norm(e, axis=1)
    return float(np.sqrt(np.mean(norms**2))), float(norms.max())


def trajectory_rmse(model, ts, solver="rk4", dt=None, bound=DEFAULT_BOUND):
    """RMS distance between the data and the model orbit from ``ts.states[0]``.

    The orbit is integrated with internal step ``dt`` (default: the
    smallest sampling gap), split so it lands exactly on every
    observation time.
    """
    _check_dims(model, ts)
    if dt is None:
        dt = float(np.min(np.diff(ts.times)))
    dt = check_positive(dt, "dt")
    pred = integrate_at(model.field, ts.states[0], ts.times, dt, solver, bound)
    diff = model.scaler.apply(pred) - model.scaler.apply(ts.states)
    return float(np.sqrt(np.mean(np.sum(diff**2, axis=1))))


def evaluate(model, ts, solver="rk4", dt=None, bound=DEFAULT_BOUND):
    rmse, worst = one_step_errors(model, ts)
    return EvalReport(
        one_step_rmse=rmse,
        one_step_max=worst,
        trajectory_rmse=trajectory_rmse(model, ts, solver, dt, bound),
        horizon=float(ts.times[-1] - ts.times[0]),
        n_points=len(ts),
    )


def lattice(bounds, grid):
    """Regular grid of initial conditions, first coordinate varying slowest."""
    bounds = np.asarray(bounds, dtype=float)
    if bounds.shape != (2, 2):
        raise UnsupportedDimension(f"bounds must be ((xmin, xmax), (ymin, ymax)), got shape {bounds.shape}")
    counts = (grid, grid) if isinstance(grid, numbers.Integral) else tuple(grid)
    if len(counts) != 2 or min(counts) < 2:
        raise ValueError(f"grid needs at least 2 points per dimension, got {grid!r}")
    axes = [np.linspace(lo, hi, n) for (lo, hi), n in zip(bounds, counts)]
    return np.array(list(itertools.product(*axes)))


def phase_portrait(model, bounds, grid, horizon, dt, solver="rk4", bound=DEFAULT_BOUND):
    """Integrate the learned 2-d flow from every point of a lattice.

    Parameters
    ----------
    model : KernelModel
        Must be two-dimensional.
    bounds : ((xmin, xmax), (ymin, ymax))
        Lattice extent, in data units.
    grid : int or (int, int)
        Points per dimension.
    horizon, dt : float
        Integration length and step for each trajectory.

    Returns
    -------
    list of Trajectory
        In lattice order. A trajectory that trips the divergence guard is
        kept up to that point with ``diverged=True``.
    """
    if model.dim != 2:
        raise UnsupportedDimension(f"phase portraits need a 2-d model, got dim={model.dim}")
    horizon = check_positive(horizon, "horizon")
    out = []
    for x0 in lattice(bounds, grid):
        try:
            out.append(integrate(model.field, x0, 0.0, horizon, dt, solver, bound))
        except Diverged as exc:
            out.append(exc.trajectory)
    return out
