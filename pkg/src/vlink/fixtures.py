"""Closed diagrams whose partition functions expand the three R-matrix residuals.

Squaring each defect and summing over the free indices gives a polynomial
in R whose monomials are closed tensor networks, i.e. diagrams:

    r1 = f(D2) - 2 f(D1) + n
    r2 = f(D4) - 2 f(D3) + n^2
    r3 = f(D5L) - 2 f(D5R) + f(D5RR)

D5RR (the square of the right-hand side of the Yang-Baxter equation) is
isomorphic to D5L, so r3 = 2 (f(D5L) - f(D5R)).
"""

from __future__ import annotations

from typing import NamedTuple

from .diagram import Diagram, from_monomial
from .model import VertexModel
from .partition import eval as evaluate

# index names per R factor, slot order 1..4
_YB_LEFT = [("i", "a", "b", "h"), ("j", "k", "c", "a"), ("b", "c", "l", "m")]
_YB_RIGHT = [("i", "j", "b", "c"), ("b", "k", "l", "a"), ("c", "a", "m", "h")]


def _fresh(factors, rename):
    return [tuple(rename.get(x, x) for x in f) for f in factors]


_LEFT2 = _fresh(_YB_LEFT, {"a": "d", "b": "e", "c": "f"})
_RIGHT2 = _fresh(_YB_RIGHT, {"a": "d", "b": "e", "c": "f"})


def build_fixtures() -> dict[str, Diagram]:
    return {
        # sum_{i,a} R_iaai
        "D1": from_monomial(("i", "a", "a", "i")),
        # sum_{i,j} (sum_a R_iaaj)^2
        "D2": from_monomial(("i", "a", "a", "j"), ("i", "b", "b", "j")),
        # sum_{i,j,a,b} R_ijab R_ajib
        "D3": from_monomial(("i", "j", "a", "b"), ("a", "j", "i", "b")),
        # sum_{ijkl} (sum_{ab} R_ijab R_alkb)^2
        "D4": from_monomial(("i", "j", "a", "b"), ("a", "l", "k", "b"),
                            ("i", "j", "c", "d"), ("c", "l", "k", "d")),
        "D5L": from_monomial(*_YB_LEFT, *_LEFT2),
        "D5R": from_monomial(*_YB_LEFT, *_RIGHT2),
        "D5RR": from_monomial(*_YB_RIGHT, *_RIGHT2),
    }


FIXTURES = build_fixtures()


class Gaps(NamedTuple):
    g1: float
    g2: float
    g3: float


def fixture_values(r: VertexModel) -> dict[str, float]:
    return {name: evaluate(r, d) for name, d in FIXTURES.items()}


def check_theorem_conditions(r: VertexModel) -> Gaps:
    """|f(D2)+f(O)-2f(D1)|, |f(D4)+f(O)^2-2f(D3)|, |f(D5L)-f(D5R)| for f = f_R."""
    f = fixture_values(r)
    n = r.n
    return Gaps(abs(f["D2"] + n - 2 * f["D1"]),
                abs(f["D4"] + n * n - 2 * f["D3"]),
                abs(f["D5L"] - f["D5R"]))


def reconstructed_residuals(r: VertexModel) -> tuple:
    """The residual triple recomputed from fixture values alone."""
    f = fixture_values(r)
    n = r.n
    return (f["D2"] - 2 * f["D1"] + n,
            f["D4"] - 2 * f["D3"] + n * n,
            f["D5L"] - 2 * f["D5R"] + f["D5RR"])
