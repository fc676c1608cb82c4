import os
import random

import pytest

# Histórico e log isolados antes de qualquer import de src
os.environ.setdefault("FORCA_DATABASE_URL", "sqlite:///:memory:")

from src.algebra.fields import CoefficientField
from src.algebra.rings import RingPresentation


@pytest.fixture
def qq():
    return CoefficientField.rationals()


@pytest.fixture
def f5():
    return CoefficientField.prime(5)


@pytest.fixture
def f7():
    return CoefficientField.prime(7)


@pytest.fixture
def plane_qq(qq):
    return RingPresentation(("x", "y"), qq)


@pytest.fixture
def rng():
    return random.Random(20240611)


