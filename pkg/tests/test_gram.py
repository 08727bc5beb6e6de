import json
from fractions import Fraction

import numpy as np
import pytest

from vlink.brauer import enumerate_matchings, matching_diagram
from vlink.diagram import EMPTY, UNKNOT, circles, curl, enumerate_diagrams, relabel, rotate
from vlink.gram import (circle_power, derivative_identity_gap, from_model, gram_matrix, join_value)
from vlink.model import make_model, random_model


def test_k0_is_rank_one(rng):
    f = from_model(random_model(2, rng))
    fam = enumerate_diagrams(1, max_circles=1)
    rep = gram_matrix(f, fam, 0)
    vals = np.array([f(d) for d in rep.family])
    assert np.allclose(rep.matrix, np.outer(vals, vals), rtol=1e-10)
    assert rep.min_eigenvalue >= -1e-12 * rep.norm
    assert np.array_equal(rep.matrix, rep.matrix.T)


def test_circle_power_rank_one():
    fam = [EMPTY, UNKNOT, circles(2)]
    rep = gram_matrix(circle_power(-2), fam, 0)
    s = np.array([1.0, -2.0, 4.0])
    assert np.array_equal(rep.matrix, np.outer(s, s))
    assert rep.is_psd()


def test_family_deduplicated():
    g = curl()
    rep = gram_matrix(circle_power(3), [g, relabel(rotate(g, 1), [1]), UNKNOT], 0)
    assert len(rep.family) == 2


def test_zero_when_k_exceeds_crossings(rng):
    f = from_model(random_model(2, rng))
    assert join_value(f, curl(), curl(), 2) == 0.0


@pytest.mark.parametrize("k", [0, 1, 2])
def test_model_gram_is_psd(rng, k):
    f = from_model(random_model(2, rng))
    rep = gram_matrix(f, enumerate_diagrams(2, max_circles=1), k)
    assert rep.min_eigenvalue >= -1e-8 * rep.norm


def test_derivative_identity_trivial_cases():
    one = make_model(1, [(1, 1, 1, 1, 1)])
    assert derivative_identity_gap(one, UNKNOT, UNKNOT) == 0
    assert derivative_identity_gap(one, curl(), curl()) <= 1e-10


def test_derivative_identity_hand_value():
    # n = 1, R = (r): f(curl) = r, gradient is 1; curl join curl is two circles with value 1
    r = make_model(1, [(1, 1, 1, 1, 0.7)])
    assert join_value(from_model(r), curl(), curl(), 1) == 1.0
    assert derivative_identity_gap(r, curl(), curl()) <= 1e-12


def test_derivative_identity_random(rng):
    fam = enumerate_diagrams(2)
    for _ in range(3):
        r = random_model(2, rng)
        for g in fam[1:]:
            for h in fam[1:]:
                assert derivative_identity_gap(r, g, h) <= 1e-6


@pytest.mark.parametrize("base", [-2, -4])
def test_negative_circle_values_matching_family(base):
    fam = [matching_diagram(m) for m in enumerate_matchings(8)]
    rep = gram_matrix(circle_power(base), fam, 2)
    assert rep.min_eigenvalue >= -1e-8 * rep.norm


def test_negative_circle_value_fails_at_odd():
    fam = [matching_diagram(m) for m in enumerate_matchings(8)]
    rep = gram_matrix(circle_power(-3), fam, 2)
    assert rep.min_eigenvalue < -1e-6 * rep.norm


def test_circle_power_exact():
    from vlink.join import k_join

    f = circle_power(Fraction(-2))
    g = matching_diagram(enumerate_matchings(8)[0])
    assert f.exact(k_join(g, g, 2)) == Fraction(f.on_quantum(k_join(g, g, 2)))


def test_report_json(rng):
    rep = gram_matrix(circle_power(2), [EMPTY, UNKNOT], 0)
    data = json.loads(rep.to_json())
    assert data["matrix"] == [[1.0, 2.0], [2.0, 4.0]]
    assert data["psd"] is True
    assert data["family"][1].startswith("diagram v1")
