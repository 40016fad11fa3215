"""Kernel ridge regression of a vector field from sampled increments.

All fitting happens on the standardized series. The learned field in
standardized coordinates is ``f(z) = C^T k(z)`` with ``k_i(z) = K(c_i, z)``
over the centers ``c_i`` (the standardized base points); callers get it
back in data units through :func:`evaluate_field`.
"""

import logging
import numbers
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from ._validation import check_bandwidth, check_positive, check_state, check_states
from .core import StandardScaler, TimeSeries, extract_increments, validate_timeseries
from .exceptions import DimensionMismatch, Diverged, SingularSystem
from .kernel import gram_matrix, kernel_matrix, median_heuristic_bandwidth

__all__ = [
    "FitConfig",
    "KernelModel",
    "fit_batch",
    "fit_online",
    "evaluate_field",
    "solve_ridge",
    "online_weights",
]

logger = logging.getLogger(__name__)

RESIDUAL_RTOL = 1e-8
WEIGHTINGS = ("velocity", "increment")


@dataclass(frozen=True)
class FitConfig:
    """Hyperparameters for :func:`fit_batch` and :func:`fit_online`.

    ``residual_weighting="velocity"`` regresses the finite-difference
    velocities ``dx_i / dt_i``; ``"increment"`` regresses the raw increments
    ``dx_i`` against ``dt_i f(x_i)``, which down-weights short intervals.
    """

    bandwidth: object = "auto"
    ridge: float = 1e-6
    residual_weighting: str = "velocity"
    n_passes: int = 200
    learning_rate: float = 0.1
    tol: float = 0.0

    def __post_init__(self):
        if isinstance(self.bandwidth, str):
            if self.bandwidth != "auto":
                raise ValueError(f"bandwidth must be 'auto' or a positive real, got {self.bandwidth!r}")
        else:
            check_bandwidth(self.bandwidth)
        check_positive(self.ridge, "ridge", allow_zero=True)
        if self.residual_weighting not in WEIGHTINGS:
            raise ValueError(f"residual_weighting must be one of {WEIGHTINGS}")
        if not isinstance(self.n_passes, numbers.Integral) or self.n_passes < 1:
            raise ValueError(f"n_passes must be an integer >= 1, got {self.n_passes!r}")
        check_positive(self.learning_rate, "learning_rate")
        check_positive(self.tol, "tol", allow_zero=True)


@dataclass(frozen=True, eq=False)
class KernelModel:
    """A fitted kernel vector field."""

    bandwidth: float
    ridge: float
    centers: np.ndarray
    weights: np.ndarray
    scaler: StandardScaler

    def __post_init__(self):
        check_bandwidth(self.bandwidth)
        check_positive(self.ridge, "ridge", allow_zero=True)
        centers = check_states(self.centers, name="centers")
        weights = np.array(self.weights, dtype=float)
        if weights.ndim == 1:
            weights = weights.reshape(-1, 1)
        if weights.shape != centers.shape:
            raise DimensionMismatch(
                f"weights shape {weights.shape} does not match centers {centers.shape}"
            )
        if self.scaler.dim != centers.shape[1]:
            raise DimensionMismatch("scaler dimension does not match centers")
        if not np.all(np.isfinite(weights)):
            raise Diverged("model weights are not finite")
        for name, arr in (("centers", np.array(centers)), ("weights", weights)):
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)
        object.__setattr__(self, "bandwidth", float(self.bandwidth))
        object.__setattr__(self, "ridge", float(self.ridge))

    @property
    def dim(self):
        return self.centers.shape[1]

    @property
    def n_centers(self):
        return self.centers.shape[0]

    def standardized_field(self, Z):
        """Field in standardized coordinates for an ``(n, d)`` batch."""
        return kernel_matrix(Z, self.centers, self.bandwidth) @ self.weights

    def field(self, t, x):
        """``field(t, x)`` callable for the integrators, in data units."""
        return evaluate_field(self, x)

    def with_weights(self, weights):
        return KernelModel(self.bandwidth, self.ridge, self.centers, weights, self.scaler)


def evaluate_field(model, x):
    """Learned time derivative at ``x`` (one state or an ``(n, d)`` batch).

    Parameters
    ----------
    model : KernelModel
    x : array-like of shape (d,) or (n, d)
        State(s) in data units.

    Returns
    -------
    ndarray
        Same shape as ``x``, in data units per time unit. Only the scale
        of each coordinate is restored; the mean shift does not apply to a
        derivative.
    """
    single = np.ndim(x) <= 1
    if single:
        X = check_state(x, dim=model.dim)[None, :]
    else:
        X = check_states(x, dim=model.dim)
    out = model.scaler.scale_velocity(model.standardized_field(model.scaler.apply(X)))
    return out[0] if single else out


def solve_ridge(G, ridge, B):
    """Solve ``(G + ridge I) C = B`` for symmetric PSD ``G``.

    Cholesky first; if it fails or leaves a relative residual above
    ``RESIDUAL_RTOL``, a least-squares solve is tried before giving up with
    :class:`SingularSystem`.
    """
    A = np.array(G, dtype=float)
    A[np.diag_indices_from(A)] += ridge
    B = np.asarray(B, dtype=float)
    scale = np.linalg.norm(B)
    if scale == 0.0:
        return np.zeros_like(B)

    def residual(C):
        return np.linalg.norm(A @ C - B) / scale

    C = None
    try:
        C = scipy.linalg.cho_solve(scipy.linalg.cho_factor(A, lower=True), B)
        if not np.all(np.isfinite(C)) or residual(C) > RESIDUAL_RTOL:
            C = None
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError):
        pass
    if C is None:
        logger.debug("Cholesky solve failed, falling back to least squares")
        C = scipy.linalg.lstsq(A, B)[0]
        res = residual(C)
        if not np.all(np.isfinite(C)) or res > RESIDUAL_RTOL:
            raise SingularSystem(
                f"ridge system is singular (lambda={ridge:g}); best relative residual {res:.3g}"
            )
    return C


def _prepare(ts, cfg):
    validate_timeseries(ts)
    scaler = StandardScaler.fit(ts.states)
    inc = extract_increments(TimeSeries(ts.times, scaler.apply(ts.states)))
    if cfg.bandwidth == "auto":
        # A single increment has one center and no pairwise distance; use
        # both standardized states instead.
        pts = inc.base_points if len(inc) > 1 else scaler.apply(ts.states)
        s = median_heuristic_bandwidth(pts)
    else:
        s = float(cfg.bandwidth)
    return scaler, inc, s


def fit_batch(ts, cfg=None):
    """Closed-form kernel ridge fit of the vector field behind ``ts``.

    Parameters
    ----------
    ts : TimeSeries
        At least two samples; time gaps may vary.
    cfg : FitConfig, optional

    Returns
    -------
    KernelModel
        One center per increment.
    """
    cfg = cfg or FitConfig()
    scaler, inc, s = _prepare(ts, cfg)
    G = gram_matrix(inc.base_points, s).entries
    if cfg.residual_weighting == "velocity":
        C = solve_ridge(G, cfg.ridge, inc.velocity_targets)
    else:
        # Minimizer of |dX - D G C|^2 + ridge tr(C^T G C), D = diag(dt):
        # (D G D + ridge I) C' = dX, then C = D C'.
        dt = inc.deltas_t
        C = dt[:, None] * solve_ridge(dt[:, None] * G * dt[None, :], cfg.ridge, inc.deltas_x)
    return KernelModel(s, cfg.ridge, inc.base_points, C, scaler)


def fit_online(ts, cfg=None):
    """Predict-then-correct fit, one increment at a time.

    Starting from zero weights, each pass walks the increments in order,
    makes an Euler prediction of the next standardized state, and moves
    only that increment's weight row toward the observed velocity::

        e_n = z_{n+1} - z_n - dt_n f(z_n)
        C[n] += learning_rate * (e_n / dt_n - ridge * C[n])

    Passes stop early once every one-step error of a pass is within
    ``cfg.tol``.
    """
    cfg = cfg or FitConfig()
    scaler, inc, s = _prepare(ts, cfg)
    G = gram_matrix(inc.base_points, s).entries
    C = online_weights(G, inc.deltas_x, inc.deltas_t, cfg)
    return KernelModel(s, cfg.ridge, inc.base_points, C, scaler)


def online_weights(G, dx, dt, cfg):
    """Run the online passes on a precomputed Gram matrix; returns the weights."""
    C = np.zeros_like(dx, dtype=float)
    eta, lam = cfg.learning_rate, cfg.ridge
    for p in range(cfg.n_passes):
        worst = 0.0
        for n in range(dt.shape[0]):
            e = dx[n] - dt[n] * (G[n] @ C)
            worst = max(worst, float(np.linalg.norm(e)))
            C[n] += eta * (e / dt[n] - lam * C[n])
            if not np.all(np.isfinite(C[n])):
                raise Diverged(f"online weights became non-finite at pass {p + 1}, sample {n}")
        if worst <= cfg.tol:
            logger.debug("online fit converged after %d passes", p + 1)
            break
    return C
