import numpy as np
import pytest

from rkforge.errors import FamilyError
from rkforge.tableau import FamilyParams, builtin, construct_family


@pytest.fixture(scope="session")
def dopri():
    return builtin("dormand_prince")


@pytest.fixture(scope="session")
def table46():
    return builtin("table46")


def random_params(rng) -> FamilyParams:
    """A draw from the optimizer box (nodes sorted)."""
    nodes = np.sort(rng.uniform(0.1, 1.0, 5))
    return FamilyParams(rng.uniform(0.02, 0.2), *nodes, *rng.uniform(-3.0, 3.0, 5))


def random_pairs(n: int, seed: int = 0):
    """``n`` successfully constructed family pairs."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < n:
        try:
            out.append(construct_family(random_params(rng)))
        except FamilyError:
            pass
    return out


@pytest.fixture(scope="session")
def family_pairs():
    return random_pairs(10, seed=11)
