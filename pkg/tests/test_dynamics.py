import math

import numpy as np
import pytest
from scipy.integrate import solve_ivp

from kernelode import (
    Chua,
    LotkaVolterra,
    PlanarLinear,
    Sir,
    euler_step,
    integrate,
    integrate_at,
    reference_field,
    rk4_step,
    simulate,
)
from kernelode.exceptions import BadCount, Diverged, NonFiniteValue

zero = lambda t, x: np.zeros_like(x)
identity = lambda t, x: x


def test_euler_step_examples():
    np.testing.assert_array_equal(euler_step(zero, [1.0, 2.0], 0.0, 0.1), [1.0, 2.0])
    np.testing.assert_array_equal(
        euler_step(lambda t, x: np.array([1.0, 0.0]), [0.0, 0.0], 0.0, 0.5), [0.5, 0.0]
    )
    np.testing.assert_array_equal(euler_step(identity, [1.0], 0.0, 1.0), [2.0])


def test_rk4_step_examples():
    np.testing.assert_array_equal(rk4_step(zero, [3.0], 0.0, 0.1), [3.0])
    assert rk4_step(identity, [1.0], 0.0, 1.0)[0] == pytest.approx(1 + 1 + 1 / 2 + 1 / 6 + 1 / 24, rel=1e-15)
    c = np.array([0.5, -1.0])
    np.testing.assert_allclose(rk4_step(lambda t, x: c, [1.0, 1.0], 0.0, 0.2), [1.1, 0.8], rtol=1e-15)


def test_non_finite_step_raises():
    with pytest.raises(NonFiniteValue):
        euler_step(lambda t, x: np.array([np.inf]), [0.0], 0.0, 1.0)


def test_integrate_step_count_and_endpoints():
    traj = integrate(zero, [1.0, 2.0], 0.0, 1.0, 0.25)
    assert len(traj) == 5
    np.testing.assert_array_equal(traj.states, [[1.0, 2.0]] * 5)
    np.testing.assert_array_equal(traj.times, [0, 0.25, 0.5, 0.75, 1.0])


def test_integrate_shortens_final_step():
    traj = integrate(zero, [0.0], 0.0, 1.0, 0.3)
    assert len(traj) == math.ceil(1.0 / 0.3) + 1
    assert traj.times[-1] == 1.0
    assert traj.times[-2] == pytest.approx(0.9)


def test_integrate_no_sliver_step_from_round_off():
    traj = integrate(zero, [0.0], 0.0, 0.3, 0.1)  # 0.3 / 0.1 = 2.9999999999999996
    assert len(traj) == 4


def test_single_euler_step_over_unit_interval():
    traj = integrate(identity, [1.0], 0.0, 1.0, 1.0, solver="euler")
    assert len(traj) == 2 and traj.states[-1, 0] == 2.0


def observed_orders(solver):
    steps = [0.1, 0.05, 0.025, 0.0125]
    errs = [abs(integrate(identity, [1.0], 0.0, 1.0, h, solver).states[-1, 0] - math.e) for h in steps]
    return [math.log2(a / b) for a, b in zip(errs, errs[1:])]


def test_convergence_orders():
    assert all(abs(p - 1.0) <= 0.3 for p in observed_orders("euler"))
    assert all(abs(p - 4.0) <= 0.5 for p in observed_orders("rk4"))


def test_divergence_guard_keeps_partial_trajectory():
    with pytest.raises(Diverged) as info:
        integrate(identity, [1.0], 0.0, 100.0, 0.5, bound=1e6)
    partial = info.value.trajectory
    assert partial.diverged
    assert np.all(np.abs(partial.states) <= 1e6)
    assert len(partial) > 1


def test_integrate_at_lands_on_observation_times():
    times = np.array([0.0, 0.13, 0.5, 0.51, 1.0])
    out = integrate_at(identity, [1.0], times, 0.1)
    np.testing.assert_allclose(out[:, 0], np.exp(times), rtol=1e-6)


def test_invalid_arguments():
    with pytest.raises(ValueError):
        integrate(zero, [0.0], 1.0, 1.0, 0.1)
    with pytest.raises(ValueError):
        integrate(zero, [0.0], 0.0, 1.0, -0.1)
    with pytest.raises(ValueError):
        integrate(zero, [0.0], 0.0, 1.0, 0.1, solver="midpoint")


class TestReferenceFields:
    def test_paper_parameter_defaults(self):
        assert vars(PlanarLinear()) == {"alpha": 1.0, "beta": 4.0, "gamma": -2.0, "delta": 2.0}
        assert vars(LotkaVolterra()) == {"alpha": 0.1, "beta": 0.02, "delta": 0.01, "gamma": 0.3}
        assert vars(Chua()) == {
            "alpha": 9.35159085, "beta": 14.790319805, "gamma": 0.016073965,
            "m0": -1.138411196, "m1": -0.722451121,
        }

    def test_fixed_points(self):
        lv = reference_field(LotkaVolterra())
        np.testing.assert_allclose(lv(0, [30.0, 5.0]), [0.0, 0.0], atol=1e-15)
        np.testing.assert_array_equal(reference_field(PlanarLinear())(0, [0.0, 0.0]), [0.0, 0.0])

    def test_planar_linear_right_hand_side(self):
        f = reference_field(PlanarLinear())
        np.testing.assert_array_equal(f(0, [1.0, 2.0]), [1 + 8, -2 + 4])

    def test_chua_nonlinearity(self):
        c = Chua()
        assert c.nonlinearity(0.0) == 0.0
        assert c.nonlinearity(1.0) == pytest.approx(c.m0, rel=1e-15)
        assert abs(c.nonlinearity(1 + 1e-9) - c.nonlinearity(1.0)) <= 1e-8
        assert abs(c.nonlinearity(1 - 1e-9) - c.nonlinearity(1.0)) <= 1e-8
        assert c.nonlinearity(3.0) == pytest.approx(c.m0 + c.m1 * 2, rel=1e-14)

    def test_deterministic(self):
        f = reference_field(Chua())
        x = np.array([0.3, -0.2, 0.1])
        assert f(0, x).tobytes() == f(0, x).tobytes()

    def test_rejects_non_finite_parameters(self):
        with pytest.raises(ValueError):
            reference_field(Sir(alpha=math.nan))

    def test_sir_total_rate(self):
        s = Sir(gamma=0.05)
        f = reference_field(s)
        for x in ([0.9, 0.1, 0.0], [0.5, 0.3, 0.2]):
            h = 1e-4
            x = np.array(x)
            total = lambda y: y.sum()
            fd = (total(rk4_step(f, x, 0, h)) - total(x)) / h
            assert fd == pytest.approx(-s.gamma * x[1], abs=1e-4)


class TestSimulate:
    def test_sir_conserves_population(self):
        ts = simulate(Sir(), [0.99, 0.01, 0.0], 0.0, 1000, 0.1)
        total = ts.states.sum(axis=1)
        assert np.max(np.abs(total / total[0] - 1)) <= 1e-8

    def test_lotka_fixed_point_is_constant(self):
        ts = simulate(LotkaVolterra(), [30.0, 5.0], 0.0, 50, 0.5)
        np.testing.assert_allclose(ts.states, np.tile([30.0, 5.0], (50, 1)), atol=1e-12)

    def test_uniform_sampling(self):
        ts = simulate(PlanarLinear(), [1.0, 0.0], 2.0, 100, 0.02)
        assert len(ts) == 100
        np.testing.assert_allclose(np.diff(ts.times), 0.02, rtol=1e-9)
        assert ts.times[0] == 2.0

    def test_chua_bounded_and_not_settling(self):
        ts = simulate(Chua(), [0.1, 0.0, 0.0], 0.0, 5000, 0.01)
        norms = np.linalg.norm(ts.states, axis=1)
        assert norms.max() < 20
        tail = ts.states[-500:]
        assert np.linalg.norm(np.diff(tail, axis=0), axis=1).max() > 1e-3

        # Independent oracle: adaptive high-accuracy integration of a
        # separately written right-hand side.
        a, b, g, m0, m1 = 9.35159085, 14.790319805, 0.016073965, -1.138411196, -0.722451121

        def rhs(t, s):
            x, y, z = s
            fx = m1 * x + 0.5 * (m0 - m1) * (abs(x + 1) - abs(x - 1))
            return [a * (y - x - fx), x - y + z, -b * y - g * z]

        sol = solve_ivp(rhs, (0, 49.99), [0.1, 0, 0], t_eval=ts.times, rtol=1e-10, atol=1e-12)
        ref_norms = np.linalg.norm(sol.y, axis=0)
        assert ref_norms.max() < 20
        assert np.linalg.norm(np.diff(sol.y[:, -500:], axis=1), axis=0).max() > 1e-3
        # short-horizon agreement before chaos amplifies the step error
        np.testing.assert_allclose(ts.states[:300], sol.y.T[:300], atol=1e-4)

    def test_too_few_samples(self):
        with pytest.raises(BadCount):
            simulate(Sir(), [0.9, 0.1, 0.0], 0.0, 1, 0.1)
