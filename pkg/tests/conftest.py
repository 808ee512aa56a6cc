import numpy as np
import pytest

from relmetro.linalg_core import projector

BELL = projector(np.array([1, 0, 0, 1]) / np.sqrt(2))
KET0 = np.array([1, 0], dtype=complex)
KET1 = np.array([0, 1], dtype=complex)
PLUS = np.array([1, 1], dtype=complex) / np.sqrt(2)
MINUS = np.array([1, -1], dtype=complex) / np.sqrt(2)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
