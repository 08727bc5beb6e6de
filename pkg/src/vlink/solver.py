"""Gradient descent search for real R-matrices.

The objective is r1 + r2 + r3, the summed squared defects of the trace,
inverse and Yang-Baxter conditions.  Iterates live in orthonormal
coordinates of the S2-symmetric subspace, so every iterate is symmetric.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .model import VertexModel, basis_size, defects, from_coords, residuals, to_coords

log = logging.getLogger(__name__)


def objective(r: VertexModel) -> float:
    return float(sum(residuals(r.as_float())))


def objective_gradient_full(r: VertexModel) -> np.ndarray:
    """Gradient with respect to the 4-index entries taken as independent."""
    R = r.as_float().entries
    n = r.n
    e1, e2, e3 = defects(r.as_float())
    g = np.zeros_like(R)
    # r1: sum_a R_iaaj
    g += 2 * np.einsum("ij,ab->iabj", e1, np.eye(n))
    # r2: R_ijab R_alkb
    g += 2 * np.einsum("ijkl,alkb->ijab", e2, R)
    g += 2 * np.einsum("ijkl,ijab->alkb", e2, R)
    # r3: left side R_iabh R_jkca R_bclm, right side R_ijbc R_bkla R_camh
    opt = {"optimize": True}
    g += 2 * np.einsum("ijklmh,jkca,bclm->iabh", e3, R, R, **opt)
    g += 2 * np.einsum("ijklmh,iabh,bclm->jkca", e3, R, R, **opt)
    g += 2 * np.einsum("ijklmh,iabh,jkca->bclm", e3, R, R, **opt)
    g -= 2 * np.einsum("ijklmh,bkla,camh->ijbc", e3, R, R, **opt)
    g -= 2 * np.einsum("ijklmh,ijbc,camh->bkla", e3, R, R, **opt)
    g -= 2 * np.einsum("ijklmh,ijbc,bkla->camh", e3, R, R, **opt)
    return g


def objective_gradient(r: VertexModel) -> np.ndarray:
    """Gradient in the orthonormal coordinates of the symmetric subspace."""
    return to_coords(objective_gradient_full(r))


@dataclass
class SolverConfig:
    n: int
    seed: int = 0
    max_iterations: int = 20000
    tol: float = 1e-12
    scale: float = 1.0
    initial_step: float = 1.0
    armijo: float = 1e-4
    shrink: float = 0.5
    max_backtracks: int = 60
    start: VertexModel | None = None

    def __post_init__(self):
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.max_iterations < 0:
            raise ValueError("max_iterations must be nonnegative")
        if self.n < 1:
            raise ValueError("n must be positive")


@dataclass
class SolveResult:
    model: VertexModel
    objective: float
    converged: bool
    accepted_steps: int
    status: str
    log: list[dict] = field(default_factory=list, repr=False)


def solve(config: SolverConfig) -> SolveResult:
    """Backtracking gradient descent from a seeded random symmetric start.

    The step length starts each iteration at twice the last accepted step
    (capped at ``initial_step``) and is multiplied by ``shrink`` until the
    Armijo condition holds.  Stops once the objective is below ``tol``.
    """
    n = config.n
    if config.start is not None:
        x = to_coords(config.start.as_float().entries)
    else:
        rng = np.random.default_rng(config.seed)
        x = rng.uniform(-config.scale, config.scale, size=basis_size(n))
    model = from_coords(x, n)
    value = objective(model)
    history = [{"iteration": 0, "objective": value, "step": 0.0}]
    step = config.initial_step
    accepted = 0
    status = "converged"
    it = 0
    while value > config.tol:
        if it >= config.max_iterations:
            status = "max_iterations_reached"
            break
        it += 1
        grad = objective_gradient(model)
        gg = float(grad @ grad)
        if gg == 0.0:
            status = "stationary"
            break
        step = min(2 * step, config.initial_step)
        for _ in range(config.max_backtracks):
            trial = from_coords(x - step * grad, n)
            trial_value = objective(trial)
            if trial_value <= value - config.armijo * step * gg:
                break
            step *= config.shrink
        else:
            status = "line_search_failed"
            break
        x = x - step * grad
        model, value = trial, trial_value
        accepted += 1
        history.append({"iteration": it, "objective": value, "step": step})
    log.debug("solve n=%d seed=%d: %s after %d steps, objective %.3e",
              n, config.seed, status, accepted, value)
    return SolveResult(model, value, value <= config.tol, accepted, status, history)
