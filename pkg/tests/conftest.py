import sys

import numpy as np
import pytest
from hypothesis import settings

from semiorbit import catalog

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def fixtures():
    return {name: catalog.build(name) for name in catalog.FIXTURE_NAMES}


@pytest.fixture(params=catalog.FIXTURE_NAMES, scope="session")
def fixture(request, fixtures):
    return fixtures[request.param]


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(module.RESULTS):
        terminalreporter.write_line(module.line(number))
