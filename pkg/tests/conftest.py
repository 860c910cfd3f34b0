import numpy as np
import pytest

from framelab import DEFAULT_TOL


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def tol():
    return DEFAULT_TOL
