import pytest

from contactcones import Hypersurface, parse_poly


def make_X(text: str, n: int, q: int = 10007) -> Hypersurface:
    return Hypersurface(parse_poly(text, n + 2, q))


@pytest.fixture
def quadric():
    """Smooth quadric surface, the canonical worked example."""
    return make_X("x0*x3 - x1*x2", 2)


@pytest.fixture
def fermat_cubic():
    return make_X("x0^3 + x1^3 + x2^3 + x3^3", 2)


@pytest.fixture
def deep_quintic():
    # multiplicity 3 at (1,0,0,0): G_2 = 8*x0*x3 lies in (x3), G_3 does not
    return make_X("x0^4*x3 + x0^2*x1^3 + x1^5 + x2^5 + x3^5", 2)


@pytest.fixture
def ruled_quartic():
    # contains the line x2 = x3 = 0, so contact order INFINITE along it
    return make_X("x0^3*x3 + x3^4", 2)


@pytest.fixture
def singular_quintic():
    # gradient vanishes at (0,1,0,0)
    return make_X("x0^4*x3 + x3^5", 2)
