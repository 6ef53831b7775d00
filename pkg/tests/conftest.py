import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import settings

from invsl.direct import forward
from invsl.fourier import GridFunction
from invsl.spectral_data import TwoSpectra

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=30, deadline=None)
settings.load_profile("default")


def sine_sigma(P=256, amp=0.5):
    return GridFunction.sample(lambda x: amp * np.sin(2 * np.pi * x), P)


def step_sigma(P=256):
    return GridFunction.sample(lambda x: (x > 0.5).astype(float), P)


@pytest.fixture(scope="session")
def sine_forward():
    """Forward data of 0.5 sin 2 pi x at N = 32 on a fine grid."""
    return forward(sine_sigma(4096), 32)


@pytest.fixture(scope="session")
def sine_spectra(sine_forward):
    return TwoSpectra(sine_forward.lam, sine_forward.mu)


@pytest.fixture(scope="session")
def step_forward():
    return forward(step_sigma(4096), 48)


# -- acceptance summary ----------------------------------------------------------------

ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
