import numpy as np
import pytest

from dephasing_sdc.config import TABLE1, table1_pair
from dephasing_sdc.spectra import DoublePeakSpectrum, default_grid

SIGMA = 1.8e12
SEPARATION = SIGMA / 0.125

ACCEPTANCE_RESULTS = {}


def spectrum(amp, time_scale=1.0):
    return DoublePeakSpectrum(0.0, SEPARATION, SIGMA, amp, time_scale=time_scale)


@pytest.fixture(scope="session")
def combos():
    return {row.combination: table1_pair(row) for row in TABLE1}


@pytest.fixture(scope="session")
def full_grid():
    """Calibrated default grid (2**17 points)."""
    return default_grid(spectrum(0.0))


@pytest.fixture(scope="session")
def small_grid():
    return default_grid(spectrum(0.0), n_points=4097)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_density(gen, dim=4, rank=None):
    rank = rank or dim
    x = gen.normal(size=(dim, rank)) + 1j * gen.normal(size=(dim, rank))
    rho = x @ x.conj().T
    return rho / np.trace(rho).real


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {key}: {detail}")
