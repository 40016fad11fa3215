"""Scikit-learn compatible front end to the kernel vector-field fitters."""

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from ._validation import check_state, check_states
from .core import TimeSeries
from .dynamics import DEFAULT_BOUND, integrate
from .evaluation import one_step_errors
from .regression import FitConfig, evaluate_field, fit_batch, fit_online


class KernelODE(BaseEstimator):
    """Learn ``dx/dt = f(x)`` from samples of one trajectory.

    Parameters
    ----------
    bandwidth : float or "auto", default="auto"
        Gaussian kernel length scale in standardized units. ``"auto"`` uses
        the median pairwise distance of the training states.
    ridge : float, default=1e-6
        Ridge penalty.
    residual_weighting : {"velocity", "increment"}, default="velocity"
    method : {"batch", "online"}, default="batch"
    n_passes, learning_rate, tol
        Online fitter settings; ignored by the batch fitter.

    Attributes
    ----------
    model_ : KernelModel
    bandwidth_ : float
    n_features_in_ : int

    Examples
    --------
    >>> import numpy as np
    >>> t = np.linspace(0, 1, 20)
    >>> X = np.c_[np.cos(t), np.sin(t)]
    >>> est = KernelODE().fit(X, t)
    >>> est.predict(X[:1]).shape
    (1, 2)
    """

    def __init__(
        self,
        bandwidth="auto",
        ridge=1e-6,
        residual_weighting="velocity",
        method="batch",
        n_passes=200,
        learning_rate=0.1,
        tol=0.0,
    ):
        self.bandwidth = bandwidth
        self.ridge = ridge
        self.residual_weighting = residual_weighting
        self.method = method
        self.n_passes = n_passes
        self.learning_rate = learning_rate
        self.tol = tol

    def _config(self):
        return FitConfig(
            bandwidth=self.bandwidth,
            ridge=self.ridge,
            residual_weighting=self.residual_weighting,
            n_passes=self.n_passes,
            learning_rate=self.learning_rate,
            tol=self.tol,
        )

    def _series(self, X, t):
        X = check_states(X)
        t = np.arange(X.shape[0], dtype=float) if t is None else np.asarray(t, dtype=float)
        return TimeSeries(t, X)

    def fit(self, X, t=None):
        """Fit on states ``X`` of shape (n_samples, n_dims) observed at ``t``.

        ``t`` defaults to ``0, 1, ..., n_samples - 1``.
        """
        fitters = {"batch": fit_batch, "online": fit_online}
        if self.method not in fitters:
            raise ValueError(f"method must be 'batch' or 'online', got {self.method!r}")
        self.model_ = fitters[self.method](self._series(X, t), self._config())
        self.bandwidth_ = self.model_.bandwidth
        self.n_features_in_ = self.model_.dim
        return self

    def predict(self, X):
        """Learned time derivative at each row of ``X``."""
        check_is_fitted(self, "model_")
        return evaluate_field(self.model_, check_states(X, dim=self.n_features_in_))

    def forecast(self, x0, t0, t1, dt, solver="rk4", bound=DEFAULT_BOUND):
        """Integrate the learned field from ``x0``; returns a Trajectory."""
        check_is_fitted(self, "model_")
        x0 = check_state(x0, dim=self.n_features_in_, name="x0")
        return integrate(self.model_.field, x0, t0, t1, dt, solver, bound)

    def score(self, X, t=None):
        """Negative RMS one-step Euler error in standardized units."""
        check_is_fitted(self, "model_")
        return -one_step_errors(self.model_, self._series(X, t))[0]
