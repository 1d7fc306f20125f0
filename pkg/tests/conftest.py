import numpy as np
import pytest

from framelift import Frame, random_frame


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture
def small_frame(rng) -> Frame:
    return random_frame(rng, 12, 6)


@pytest.fixture
def tight_frame(rng) -> Frame:
    return random_frame(rng, 6, 3, kind="tight")


def random_vector(rng, d: int) -> np.ndarray:
    return rng.standard_normal(d) + 1j * rng.standard_normal(d)
