from itertools import permutations, product

import numpy as np
import pytest
from hypothesis import strategies as st

from vlink.diagram import Diagram, from_partner


@pytest.fixture
def rng():
    return np.random.default_rng(20261019)


@st.composite
def diagrams(draw, max_crossings=3, max_circles=2):
    c = draw(st.integers(0, max_crossings))
    order = draw(st.permutations(range(4 * c)))
    partner = [0] * (4 * c)
    for a, b in zip(order[::2], order[1::2]):
        partner[a], partner[b] = b, a
    return from_partner(partner, draw(st.integers(0, max_circles)))


def brute_isomorphic(d1: Diagram, d2: Diagram) -> bool:
    """Search all crossing bijections and per-crossing 2-rotations."""
    if (d1.crossings, d1.circles, len(d1.edges)) != (d2.crossings, d2.circles, len(d2.edges)):
        return False
    target = set(d2.edges)
    c = d1.crossings
    for perm in permutations(range(1, c + 1)):
        for rots in product((0, 2), repeat=c):
            def move(s):
                v, p = s
                return (perm[v - 1], (p - 1 + rots[v - 1]) % 4 + 1)
            mapped = {tuple(sorted((move(a), move(b)))) for a, b in d1.edges}
            if mapped == target:
                return True
    return False
