import numpy as np
import pytest

from kernelode import TimeSeries


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def circle_series():
    t = np.linspace(0.0, 3.0, 25)
    return TimeSeries(t, np.c_[np.cos(t), np.sin(t)])


def random_series(rng, n, d, uniform=False):
    gaps = np.full(n - 1, 0.1) if uniform else rng.uniform(0.05, 0.5, n - 1)
    t = np.concatenate([[0.0], np.cumsum(gaps)])
    return TimeSeries(t, rng.normal(size=(n, d)))


ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_RESULTS, key=lambda s: int(s.split()[1].rstrip(":"))):
        terminalreporter.write_line(line)
