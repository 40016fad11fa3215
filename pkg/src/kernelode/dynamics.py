"""Fixed-step integrators and the benchmark vector fields.

Vector fields are callables ``field(t, x) -> dx/dt`` taking and returning
1-d arrays, the same convention as :func:`scipy.integrate.solve_ivp`.
"""

import math
from dataclasses import dataclass

import numpy as np

from ._validation import check_positive, check_state
from .core import TimeSeries
from .exceptions import BadCount, Diverged, NonFiniteValue

__all__ = [
    "Trajectory",
    "PlanarLinear",
    "LotkaVolterra",
    "Sir",
    "Chua",
    "SYSTEMS",
    "euler_step",
    "rk4_step",
    "integrate",
    "integrate_at",
    "reference_field",
    "simulate",
]

DEFAULT_BOUND = 1e12


@dataclass(frozen=True, eq=False)
class Trajectory:
    times: np.ndarray
    states: np.ndarray
    solver: str
    step: float
    diverged: bool = False

    def __len__(self):
        return self.times.shape[0]

    def to_timeseries(self):
        return TimeSeries(self.times, self.states)


# Benchmark systems -----------------------------------------------------------
@dataclass(frozen=True)
class PlanarLinear:
    """``x' = alpha x + beta y``, ``y' = gamma x + delta y``."""

    alpha: float = 1.0
    beta: float = 4.0
    gamma: float = -2.0
    delta: float = 2.0

    names = ("x", "y")

    def __call__(self, t, s):
        x, y = s
        return np.array([self.alpha * x + self.beta * y, self.gamma * x + self.delta * y])


@dataclass(frozen=True)
class LotkaVolterra:
    """Predator-prey field; coexistence equilibrium at (gamma/delta, alpha/beta)."""

    alpha: float = 0.1
    beta: float = 0.02
    delta: float = 0.01
    gamma: float = 0.3

    names = ("x", "y")

    def __call__(self, t, s):
        x, y = s
        return np.array(
            [self.alpha * x - self.beta * x * y, self.delta * x * y - self.gamma * y]
        )

    @property
    def fixed_point(self):
        return np.array([self.gamma / self.delta, self.alpha / self.beta])


@dataclass(frozen=True)
class Sir:
    """SIR compartments with an extra removal term ``-gamma I`` in ``R'``.

    ``gamma = 0`` gives the textbook model, which conserves ``S + I + R``.
    """

    alpha: float = 0.3
    beta: float = 0.1
    gamma: float = 0.0

    names = ("S", "I", "R")

    def __call__(self, t, s):
        S, I, R = s
        infection = self.alpha * S * I
        return np.array(
            [-infection, infection - self.beta * I, self.beta * I - self.gamma * I]
        )


@dataclass(frozen=True)
class Chua:
    """Chua's circuit with a piecewise-linear diode characteristic."""

    alpha: float = 9.35159085
    beta: float = 14.790319805
    gamma: float = 0.016073965
    m0: float = -1.138411196
    m1: float = -0.722451121

    names = ("x", "y", "z")

    def nonlinearity(self, x):
        return 0.5 * (abs(x + 1.0) - abs(x - 1.0)) * (self.m0 - self.m1) + self.m1 * x

    def __call__(self, t, s):
        x, y, z = s
        # -beta*y: with +beta*y every orbit from near the origin escapes to
        # infinity, so no attractor exists for these parameter values.
        return np.array(
            [
                self.alpha * (y - x - self.nonlinearity(x)),
                x - y + z,
                -self.beta * y - self.gamma * z,
            ]
        )


SYSTEMS = {
    "linear": PlanarLinear,
    "lotka": LotkaVolterra,
    "sir": Sir,
    "chua": Chua,
}


def reference_field(system):
    """Return the vector field ``field(t, x)`` of a benchmark parameter record."""
    if not isinstance(system, tuple(SYSTEMS.values())):
        raise TypeError(f"unknown system parameters {system!r}")
    for name, value in vars(system).items():
        if not math.isfinite(value):
            raise ValueError(f"parameter {name} is not finite")
    return system


# Steppers --------------------------------------------------------------------
def _finite(x, what):
    if not np.all(np.isfinite(x)):
        raise NonFiniteValue(f"{what} produced a non-finite state")
    return x


def euler_step(field, x, t, dt):
    """One explicit Euler step ``x + dt * field(t, x)``."""
    x = np.asarray(x, dtype=float)
    return _finite(x + dt * np.asarray(field(t, x), dtype=float), "euler step")


def rk4_step(field, x, t, dt):
    """One classical fourth-order Runge-Kutta step."""
    x = np.asarray(x, dtype=float)
    k1 = np.asarray(field(t, x), dtype=float)
    k2 = np.asarray(field(t + dt / 2, x + dt / 2 * k1), dtype=float)
    k3 = np.asarray(field(t + dt / 2, x + dt / 2 * k2), dtype=float)
    k4 = np.asarray(field(t + dt, x + dt * k3), dtype=float)
    return _finite(x + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4), "rk4 step")


_STEPPERS = {"euler": euler_step, "rk4": rk4_step}


def _stepper(solver):
    try:
        return _STEPPERS[solver]
    except KeyError:
        raise ValueError(f"solver must be one of {sorted(_STEPPERS)}, got {solver!r}") from None


def _step_times(t0, t1, dt):
    ratio = (t1 - t0) / dt
    n = round(ratio)
    # A ratio within round-off of an integer must not spawn a sliver step.
    if n < 1 or abs(ratio - n) > 1e-9 * max(1.0, ratio):
        n = math.ceil(ratio)
    times = t0 + dt * np.arange(n + 1, dtype=float)
    times[-1] = t1
    return times


def integrate(field, x0, t0, t1, dt, solver="rk4", bound=DEFAULT_BOUND):
    """Integrate ``field`` from ``(t0, x0)`` to ``t1`` with fixed steps ``dt``.

    The last step is shortened so the trajectory ends exactly at ``t1``.
    Raises :class:`Diverged` (carrying the partial trajectory) once the
    state norm exceeds ``bound`` or stops being finite.
    """
    if not t1 > t0:
        raise ValueError(f"need t1 > t0, got t0={t0!r}, t1={t1!r}")
    dt = check_positive(dt, "dt")
    step = _stepper(solver)
    x = check_state(x0, name="x0")
    times = _step_times(float(t0), float(t1), dt)
    states = np.empty((times.shape[0], x.shape[0]))
    states[0] = x
    for k in range(times.shape[0] - 1):
        try:
            with np.errstate(over="ignore", invalid="ignore"):
                x = step(field, x, times[k], times[k + 1] - times[k])
        except NonFiniteValue:
            x = None
        if x is None or np.linalg.norm(x) > bound:
            partial = Trajectory(times[: k + 1], states[: k + 1], solver, dt, diverged=True)
            raise Diverged(
                f"state left the bound {bound:g} at t={times[k + 1]:g}", trajectory=partial
            )
        states[k + 1] = x
    return Trajectory(times, states, solver, dt)


def integrate_at(field, x0, times, dt, solver="rk4", bound=DEFAULT_BOUND):
    """Integrate through the increasing ``times`` and return the state at each.

    Steps are split so every requested time is landed on exactly.
    """
    times = np.asarray(times, dtype=float)
    x = check_state(x0, name="x0")
    out = np.empty((times.shape[0], x.shape[0]))
    out[0] = x
    for i in range(times.shape[0] - 1):
        try:
            seg = integrate(field, x, times[i], times[i + 1], dt, solver, bound)
        except Diverged as exc:
            partial = Trajectory(times[: i + 1], out[: i + 1], solver, dt, diverged=True)
            raise Diverged(str(exc), trajectory=partial) from None
        x = seg.states[-1]
        out[i + 1] = x
    return out


def simulate(system, x0, t0, M, dt, bound=DEFAULT_BOUND):
    """Sample ``M`` RK4 states of a benchmark system at uniform spacing ``dt``."""
    if M < 2:
        raise BadCount(f"need at least 2 samples, got {M}")
    field = reference_field(system)
    traj = integrate(field, x0, t0, t0 + (M - 1) * dt, dt, "rk4", bound)
    return TimeSeries(traj.times, traj.states)
