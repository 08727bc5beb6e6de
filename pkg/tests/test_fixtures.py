import numpy as np
import pytest

from vlink import partition
from vlink.diagram import is_isomorphic
from vlink.fixtures import FIXTURES, check_theorem_conditions, fixture_values, reconstructed_residuals
from vlink.model import identity_model, make_model, random_model, residuals


def test_fixture_sizes():
    sizes = {name: d.crossings for name, d in FIXTURES.items()}
    assert sizes == {"D1": 1, "D2": 2, "D3": 2, "D4": 4, "D5L": 6, "D5R": 6, "D5RR": 6}
    for d in FIXTURES.values():
        assert d.circles == 0


def test_yang_baxter_squares_coincide():
    assert is_isomorphic(FIXTURES["D5L"], FIXTURES["D5RR"])
    assert not is_isomorphic(FIXTURES["D5L"], FIXTURES["D5R"])


@pytest.mark.parametrize("n", [1, 2, 3])
def test_identity_gaps_vanish(n):
    assert max(check_theorem_conditions(identity_model(n))) <= 1e-9


@pytest.mark.parametrize("n", [1, 2])
def test_residuals_reconstructed(rng, n):
    for _ in range(3):
        r = random_model(n, rng)
        assert reconstructed_residuals(r) == pytest.approx(residuals(r), rel=1e-8, abs=1e-9)


def test_gap3_is_half_r3(rng):
    r = random_model(2, rng)
    assert check_theorem_conditions(r).g3 == pytest.approx(residuals(r)[2] / 2, rel=1e-8)


def test_scalar_hand_values():
    # n = 1, R = (r): f(D_j) = r^crossings
    r = make_model(1, [(1, 1, 1, 1, 0.5)])
    vals = fixture_values(r)
    assert vals["D1"] == pytest.approx(0.5)
    assert vals["D4"] == pytest.approx(0.0625)
    g = check_theorem_conditions(r)
    assert g.g1 == pytest.approx(0.25) and g.g3 == 0


def test_fixtures_bruteforce_agree(rng):
    r = random_model(2, rng)
    for name in ("D1", "D2", "D3", "D4"):
        d = FIXTURES[name]
        assert partition.eval(r, d) == pytest.approx(partition.eval_bruteforce(r, d), rel=1e-10)
    assert np.isfinite(list(fixture_values(r).values())).all()
