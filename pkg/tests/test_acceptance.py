"""Acceptance criteria AC-1 .. AC-13.

Each test prints one ``AC-n PASS|FAIL`` line straight to the terminal,
whether or not output capture is on.
"""

import time
from fractions import Fraction

import numpy as np
import pytest

from vlink import partition
from vlink.brauer import (a_matrix, aq_matrix, check_eigenvector, enumerate_matchings, join_formula_check,
                          matching_diagram, mu, predicted_spectrum, q_group, single_row_tableau,
                          symmetrized_u, tableau_eigenvector, two_row_tableau, u_f_coefficient)
from vlink.diagram import (EMPTY, UNKNOT, QuantumDiagram, curl, diagrams_with_crossings, disjoint_union,
                           enumerate_diagrams, fixture_beta, strand_count)
from vlink.fixtures import check_theorem_conditions
from vlink.gram import circle_power, derivative_identity_gap, from_model, gram_matrix
from vlink.join import k_join
from vlink.model import (basis_size, from_coords, identity_model, is_rmatrix, random_model, residuals,
                         to_coords)
from vlink.solver import SolverConfig, objective, objective_gradient, solve

SEED = 20261019


@pytest.fixture
def report(capsys):
    def emit(tag, ok, detail=""):
        with capsys.disabled():
            print(f"\n{tag} {'PASS' if ok else 'FAIL'}: {detail}")
        assert ok, f"{tag}: {detail}"

    return emit


def test_ac01_partition_basics(report):
    rng = np.random.default_rng(SEED)
    t0 = time.perf_counter()
    ok = all(partition.eval(random_model(n, rng), UNKNOT) == n and partition.eval(random_model(n, rng), EMPTY) == 1
             for n in (1, 2, 3))
    fam = enumerate_diagrams(3, max_circles=1)
    worst = 0.0
    for _ in range(50):
        r = random_model(int(rng.integers(1, 4)), rng)
        g, h = (fam[int(i)] for i in rng.integers(0, len(fam), size=2))
        a, b = partition.eval(r, disjoint_union(g, h)), partition.eval(r, g) * partition.eval(r, h)
        worst = max(worst, abs(a - b) / max(1.0, abs(b)))
    dt = time.perf_counter() - t0
    report("AC-1", ok and worst <= 1e-9 and dt < 60,
           f"circle/empty exact={ok}, worst multiplicativity gap {worst:.1e} over 50 triples, {dt:.1f}s")


@pytest.mark.slow
def test_ac02_contraction_vs_bruteforce(report):
    rng = np.random.default_rng(SEED + 2)
    fam = enumerate_diagrams(4)
    t0 = time.perf_counter()
    worst, count = 0.0, 0
    for n in (1, 2, 3):
        for _ in range(10):
            r = random_model(n, rng)
            for d in fam:
                a, b = partition.eval(r, d), partition.eval_bruteforce(r, d)
                worst = max(worst, abs(a - b) / max(abs(b), 1e-300) if b else abs(a))
                count += 1
    dt = time.perf_counter() - t0
    report("AC-2", worst <= 1e-9 and dt < 300,
           f"{len(fam)} diagrams x 30 models = {count} evaluations, worst relative gap {worst:.1e}, {dt:.0f}s")


def test_ac03_join_calibration(report):
    beta = fixture_beta()
    family = [curl(), beta] + diagrams_with_crossings(2)
    bad = [g for g in family if k_join(g, beta, 1) != QuantumDiagram.single(g, 2 * g.crossings)]
    report("AC-3", not bad, f"G join_1 beta == 2|V(G)| G exactly for {len(family) - len(bad)}/{len(family)} diagrams")


def test_ac04_identity_certificate(report):
    res_ok = all(residuals(identity_model(n, exact=True)) == (0, 0, 0) for n in (1, 2, 3, 4))
    fam = enumerate_diagrams(3, max_circles=1)
    bad = 0
    for n in (1, 2, 3, 4):
        r = identity_model(n, exact=True)
        bad += sum(partition.eval(r, d) != n ** strand_count(d) for d in fam)
    report("AC-4", res_ok and bad == 0,
           f"residuals exactly zero for n=1..4: {res_ok}; f = n^strands fails on {bad} of {4 * len(fam)}")


def test_ac05_brauer_spectra(report):
    t0 = time.perf_counter()
    worst = 0.0
    for size in (4, 6, 8):
        for x in (-2, -1, 0.5, 2, 3):
            eig = np.linalg.eigvalsh(a_matrix(float(x), size))
            allowed = np.unique(np.array(predicted_spectrum(float(x), size), dtype=float))
            worst = max(worst, float(np.max(np.min(np.abs(eig[:, None] - allowed[None, :]), axis=1))))
    closed = True
    for x in (-2, -1, Fraction(1, 2), 2, 3):
        want = sorted([x * x + 2 * x, x * x - x, x * x - x])
        got = np.sort(np.linalg.eigvalsh(a_matrix(float(x), 4)))
        closed &= bool(np.allclose(got, np.array(want, dtype=float), atol=1e-8))
    dt = time.perf_counter() - t0
    report("AC-5", worst <= 1e-8 and closed and dt < 60,
           f"max distance to predicted eigenvalues {worst:.1e}; [4] closed forms {closed}; {dt:.1f}s")


def test_ac06_derivative_identity(report):
    rng = np.random.default_rng(SEED + 6)
    fam = enumerate_diagrams(2)
    worst = 0.0
    for _ in range(30):
        r = random_model(2, rng)
        g, h = (fam[int(i)] for i in rng.integers(0, len(fam), size=2))
        worst = max(worst, derivative_identity_gap(r, g, h))
    report("AC-6", worst <= 1e-6, f"worst gap {worst:.1e} over 30 random (R, G, H)")


@pytest.mark.slow
def test_ac07_matching_join_formula(report):
    ms = enumerate_matchings(8)
    t0 = time.perf_counter()
    failures = sum(not join_formula_check(a, b) for a in ms for b in ms)
    dt = time.perf_counter() - t0
    report("AC-7", failures == 0 and dt < 600,
           f"exhaustive {len(ms) ** 2} pairs, {failures} failures, {dt:.0f}s")


def test_ac08_eigenvector_identities(report):
    qsize = len(q_group(1))
    lines, ok = [], True
    for t in (single_row_tableau(1), two_row_tableau(1)):
        v = tableau_eigenvector(t)
        u = symmetrized_u(v, 1)
        uf = u_f_coefficient(t)
        for x in (Fraction(2), Fraction(-3)):
            m = mu(t.shape, x)
            ok &= check_eigenvector(a_matrix(x, 8), v, m)
            ok &= check_eigenvector(aq_matrix(x, 1), u, qsize * m)
        ok &= uf > 0
        lines.append(f"{t.shape}: u_F={uf}")
    report("AC-8", ok, "exact eigen identities at x=2,-3; " + ", ".join(lines))


def test_ac09_symmetrized_matrix_signs(report):
    t0 = time.perf_counter()
    ok, parts = True, []
    for x, negative in [(-5, True), (-3, True), (-1, True), (0.5, True),
                        (-4, False), (-2, False), (0, False), (1, False), (2, False), (3, False)]:
        eig = np.linalg.eigvalsh(aq_matrix(float(x)))
        norm = float(np.max(np.abs(eig)))
        ok &= bool(eig[0] < -1e-6 * norm) if negative else bool(eig[0] >= -1e-8 * norm)
        parts.append(f"x={x}:{eig[0]:.3g}")
    dt = time.perf_counter() - t0
    report("AC-9", ok and dt < 120, "min eigenvalues " + " ".join(parts) + f"; {dt:.1f}s")


def test_ac10_reflection_positivity(report):
    rng = np.random.default_rng(SEED + 10)
    fam = enumerate_diagrams(2)
    worst = np.inf
    for _ in range(3):
        f = from_model(random_model(2, rng))
        for k in (0, 1, 2):
            rep = gram_matrix(f, fam, k)
            worst = min(worst, rep.min_eigenvalue / rep.norm)
    report("AC-10", worst >= -1e-8, f"smallest min_eig/norm {worst:.1e} over 3 models, k=0,1,2, {len(fam)} diagrams")


def test_ac11_negative_circle_values(report):
    fam = [matching_diagram(m) for m in enumerate_matchings(8)]
    ratios = {}
    for base in (-2, -4):
        rep = gram_matrix(circle_power(base), fam, 2)
        ratios[base] = rep.min_eigenvalue / rep.norm
    ok = all(v >= -1e-8 for v in ratios.values())
    report("AC-11", ok, ", ".join(f"circle_power({b}): min_eig/norm {v:.1e}" for b, v in ratios.items())
           + f" on {len(rep.family)} distinct diagrams")


def test_ac12_solver(report):
    t0 = time.perf_counter()
    scalar_ok = True
    for seed in range(10):
        res = solve(SolverConfig(n=1, seed=seed))
        scalar_ok &= res.objective < 1e-10 and abs(float(res.model[0, 0, 0, 0]) - 1) < 1e-4
    good = []
    for seed in range(20):
        res = solve(SolverConfig(n=2, seed=seed))
        if res.objective < 1e-6 and is_rmatrix(res.model, 1e-3) and max(check_theorem_conditions(res.model)) < 1e-4:
            good.append(seed)
    rng = np.random.default_rng(SEED + 12)
    r = random_model(2, rng, scale=0.5)
    x = to_coords(r.entries)
    g = objective_gradient(r)
    fd = np.array([(objective(from_coords(x + e, 2)) - objective(from_coords(x - e, 2))) / 2e-6
                   for e in np.eye(basis_size(2)) * 1e-6])
    fd_gap = float(np.max(np.abs(g - fd)) / max(1.0, np.max(np.abs(g))))
    dt = time.perf_counter() - t0
    report("AC-12", scalar_ok and good and fd_gap <= 1e-5 and dt < 300,
           f"n=1 all seeds ok={scalar_ok}; n=2 {len(good)}/20 seeds certified; FD gap {fd_gap:.1e}; {dt:.0f}s")


def test_ac13_fixture_identities(report):
    rng = np.random.default_rng(SEED + 13)
    worst = 0.0
    for i in range(30):
        r = random_model(1 + i % 3, rng)
        r1, r2, r3 = residuals(r)
        g = check_theorem_conditions(r)
        worst = max(worst,
                    abs(g.g1 - abs(r1)) / max(1.0, abs(r1)),
                    abs(g.g2 - abs(r2)) / max(1.0, abs(r2)),
                    abs(g.g3 - abs(r3) / 2) / max(1.0, abs(r3)))
    report("AC-13", worst <= 1e-9, f"worst relative gap between fixture gaps and residuals {worst:.1e} over 30 models")
