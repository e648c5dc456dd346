import mpmath
import pytest
from hypothesis import settings

import ladderlattice
from ladderlattice.field import DEFAULT_PRECISION

settings.register_profile("lattice", max_examples=40, deadline=None)
settings.load_profile("lattice")


@pytest.fixture(autouse=True)
def default_precision():
    """Every test starts and ends at the default working precision."""
    ladderlattice.set_precision(DEFAULT_PRECISION)
    yield
    if mpmath.mp.dps != DEFAULT_PRECISION:
        ladderlattice.set_precision(DEFAULT_PRECISION)
        ladderlattice.clear_caches()
