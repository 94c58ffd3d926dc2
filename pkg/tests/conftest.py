import sys

import numpy as np
import pytest

from exotic_landau import kernels
from exotic_landau.model import ModelParams

AVAILABLE_BACKENDS = sorted(kernels.BACKENDS)


@pytest.fixture(params=AVAILABLE_BACKENDS)
def backend(request):
    """Run the test once per importable kernel backend."""
    saved = kernels.BACKEND
    kernels.BACKEND = request.param
    try:
        yield request.param
    finally:
        kernels.BACKEND = saved


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def params():
    return ModelParams(theta=0.3)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(module.RESULTS):
        terminalreporter.write_line(module.format_line(key))
