import os

import pytest

from gl11.linkdiag import Crossing, LinkDiagram

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


def torus_2braid(k, framings=(0, 0)) -> LinkDiagram:
    """Closure of the 2-braid sigma_1^(2k): the (2, 2k) torus link."""
    crossings = []
    for s in range(k):
        xprev = (s - 1) % k
        crossings.append(Crossing(1, xprev, k + xprev, k + s))
        crossings.append(Crossing(1, k + s, xprev, s))
    arcs = tuple([0] * k + [1] * k)
    return LinkDiagram(2, tuple(framings), arcs, tuple(crossings))


def trefoil() -> LinkDiagram:
    """Closure of sigma_1^3: positive trefoil."""
    crossings = [Crossing(1, k, (k + 2) % 3, (k + 1) % 3) for k in range(3)]
    return LinkDiagram(1, (0,), (0, 0, 0), tuple(crossings))


@pytest.fixture
def fixture_path():
    return lambda name: os.path.join(FIXTURES, name)
