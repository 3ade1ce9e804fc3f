import pytest

from curvesing.polyring import Polynomial


@pytest.fixture
def P():
    """Parse a polynomial in x,y (or the given variables)."""
    def parse(text, variables="x,y"):
        return Polynomial.parse(text, variables)
    return parse
