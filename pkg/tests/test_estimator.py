import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from kernelode import FitConfig, KernelODE, LotkaVolterra, evaluate_field, fit_batch, fit_online, simulate


@pytest.fixture(scope="module")
def lotka():
    return simulate(LotkaVolterra(), [20.0, 10.0], 0.0, 200, 0.5)


def test_params_round_trip():
    est = KernelODE(bandwidth=0.7, ridge=1e-3, method="online")
    assert est.get_params()["bandwidth"] == 0.7
    twin = clone(est)
    assert twin.get_params() == est.get_params()
    est.set_params(ridge=0.5)
    assert est.ridge == 0.5


def test_fit_matches_functional_api(lotka):
    est = KernelODE().fit(lotka.states, lotka.times)
    model = fit_batch(lotka, FitConfig())
    np.testing.assert_array_equal(est.model_.weights, model.weights)
    np.testing.assert_array_equal(est.predict(lotka.states), evaluate_field(model, lotka.states))
    assert est.n_features_in_ == 2 and est.bandwidth_ == model.bandwidth


def test_online_method(lotka):
    est = KernelODE(method="online", n_passes=3).fit(lotka.states, lotka.times)
    np.testing.assert_array_equal(
        est.model_.weights, fit_online(lotka, FitConfig(n_passes=3)).weights
    )


def test_default_times_are_sample_indices():
    X = np.c_[np.linspace(0, 1, 10), np.linspace(1, 3, 10) ** 2]
    a = KernelODE().fit(X)
    b = KernelODE().fit(X, np.arange(10.0))
    np.testing.assert_array_equal(a.model_.weights, b.model_.weights)


def test_unfitted_and_bad_method():
    with pytest.raises(NotFittedError):
        KernelODE().predict([[0.0, 0.0]])
    with pytest.raises(ValueError):
        KernelODE(method="sgd").fit(np.arange(5.0), np.arange(5.0))


def test_forecast_and_score(lotka):
    est = KernelODE().fit(lotka.states, lotka.times)
    traj = est.forecast(lotka.states[0], 0.0, 10.0, 0.5)
    assert len(traj) == 21 and traj.times[-1] == 10.0
    assert -1e-4 < est.score(lotka.states, lotka.times) <= 0
