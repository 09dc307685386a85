import numpy as np
import pytest

from weberquartic.characteristics import Characteristic
from weberquartic.siegel import random_tau
from weberquartic.theta import theta_table


def C(text: str) -> Characteristic:
    return Characteristic.parse(text)


@pytest.fixture(scope="session")
def taus():
    return [random_tau(seed) for seed in (11, 12, 13)]


@pytest.fixture(scope="session")
def tau(taus):
    return taus[0]


@pytest.fixture(scope="session")
def table(tau):
    return theta_table(tau, order=1)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for result in sorted(RESULTS, key=lambda r: r.number):
        terminalreporter.write_line(result.line())
    passed = sum(r.passed for r in RESULTS)
    terminalreporter.write_line(f"{passed}/{len(RESULTS)} criteria passed")
