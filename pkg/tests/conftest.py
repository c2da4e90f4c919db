import pytest

from qbialg.double import su2_standard
from qbialg.quantize import quantize


@pytest.fixture(scope="session")
def su2():
    return su2_standard()


@pytest.fixture(scope="session")
def su2_q6(su2):
    return quantize(su2, K=6)
