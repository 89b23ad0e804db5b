import numpy as np
import pytest

from psm_ras import SystemConfig, build_constellation, distance_spectrum


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def desk_cfg():
    return SystemConfig(Na=6, Nb=5, Nt=4, Ne=2, M=4, rho1=0.5).with_snr_db(3.0)


@pytest.fixture
def qpsk():
    return build_constellation(4, "psk")


@pytest.fixture
def qpsk_spec4(qpsk):
    return distance_spectrum(qpsk, 4)


def random_matrix(rng, rows, cols):
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
