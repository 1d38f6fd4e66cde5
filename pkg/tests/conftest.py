import numpy as np
import pytest

import segrent as sg


@pytest.fixture
def bell():
    return sg.named_state("bell", (2, 2))


@pytest.fixture
def ghz3():
    return sg.named_state("ghz", (2, 2, 2))


@pytest.fixture
def w3():
    return sg.named_state("w", (2, 2, 2))


def werner_state(p: float) -> sg.DensityMatrix:
    """p * Bell projector + (1 - p) I/4 on two qubits."""
    bell = sg.named_state("bell", (2, 2))
    mat = p * np.outer(bell.amps, bell.amps.conj()) + (1.0 - p) / 4.0 * np.eye(4)
    return sg.DensityMatrix((2, 2), mat)
