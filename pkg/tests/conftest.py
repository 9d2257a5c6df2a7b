import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


KET0 = np.array([[1, 0], [0, 0]], dtype=complex)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for name in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[name])
