"""Continuous-time models of dynamical systems learned by kernel ridge regression."""

from .core import IncrementSet, StandardScaler, TimeSeries, extract_increments, validate_timeseries
from .dynamics import (
    Chua,
    LotkaVolterra,
    PlanarLinear,
    Sir,
    Trajectory,
    euler_step,
    integrate,
    integrate_at,
    reference_field,
    rk4_step,
    simulate,
)
from .estimator import KernelODE
from .evaluation import EvalReport, evaluate, one_step_errors, phase_portrait, trajectory_rmse
from .kernel import gaussian_kernel, gram_matrix, kernel_row, median_heuristic_bandwidth
from .regression import FitConfig, KernelModel, evaluate_field, fit_batch, fit_online

__version__ = "0.1.0"

__all__ = [
    "Chua",
    "EvalReport",
    "FitConfig",
    "IncrementSet",
    "KernelModel",
    "KernelODE",
    "LotkaVolterra",
    "PlanarLinear",
    "Sir",
    "StandardScaler",
    "TimeSeries",
    "Trajectory",
    "euler_step",
    "evaluate",
    "evaluate_field",
    "extract_increments",
    "fit_batch",
    "fit_online",
    "gaussian_kernel",
    "gram_matrix",
    "integrate",
    "integrate_at",
    "kernel_row",
    "median_heuristic_bandwidth",
    "one_step_errors",
    "phase_portrait",
    "reference_field",
    "rk4_step",
    "simulate",
    "trajectory_rmse",
    "validate_timeseries",
]
