import os
import sys

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

import oracles  # noqa: E402
from cvol.coloring import solve_colorings  # noqa: E402
from cvol.diagram import build_diagram, parse_pd  # noqa: E402
from cvol.pipeline import complex_volume  # noqa: E402

settings.register_profile("default", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

_ACCEPTANCE: list[tuple[str, bool, str]] = []


@pytest.fixture(scope="session")
def acceptance_log():
    return _ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def d41():
    return build_diagram(parse_pd(oracles.PD_41))


@pytest.fixture(scope="session")
def d52():
    return build_diagram(parse_pd(oracles.PD_52))


@pytest.fixture(scope="session")
def r41(d41):
    return complex_volume(d41)


@pytest.fixture(scope="session")
def r52(d52):
    return complex_volume(d52)


@pytest.fixture(scope="session")
def sols41(d41):
    return solve_colorings(d41)


@pytest.fixture(scope="session")
def sols52(d52):
    return solve_colorings(d52)


@pytest.fixture(scope="session")
def A41(sols41):
    return sols41[0].coloring


@pytest.fixture(scope="session")
def A52(sols52):
    return sols52[0].coloring
