import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from prufer_dirac.model import PhysicalParams  # noqa: E402


@pytest.fixture
def hydrogen():
    """Z = 1, eps = 1.2, kappa = -1."""
    return PhysicalParams(Z=1, epsilon=1.2, kappa=-1)


def params(z=1, kappa=-1, eps=1.2):
    return PhysicalParams(Z=z, epsilon=eps, kappa=kappa)
