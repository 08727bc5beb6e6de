"""Join matrices M_{f,k} = (f(G join_k H)) over finite diagram families."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import partition
from .diagram import Diagram, QuantumDiagram, canonical_form
from .formats import serialize_diagram
from .join import k_join
from .model import VertexModel

EIG_REL_TOL = 1e-10


class InvariantFunction:
    """A real function on diagrams, extended linearly to quantum diagrams."""

    def __call__(self, d: Diagram) -> float:
        raise NotImplementedError

    def on_quantum(self, q: QuantumDiagram) -> float:
        return sum((float(c) * self(d) for d, c in q), 0.0)


@dataclass(frozen=True, eq=False)
class ModelInvariant(InvariantFunction):
    model: VertexModel

    def __call__(self, d):
        return float(partition.eval(self.model, d))


@dataclass(frozen=True)
class CirclePower(InvariantFunction):
    """0 on diagrams with a crossing, base**t on t disjoint circles."""

    base: Fraction

    def __call__(self, d):
        return 0.0 if d.crossings else float(Fraction(self.base) ** d.circles)

    def exact(self, q: QuantumDiagram) -> Fraction:
        b = Fraction(self.base)
        return sum((c * b**d.circles for d, c in q if d.crossings == 0), Fraction(0))


def from_model(r: VertexModel) -> ModelInvariant:
    return ModelInvariant(r)


def circle_power(base) -> CirclePower:
    return CirclePower(Fraction(base))


def join_value(f: InvariantFunction, g: Diagram, h: Diagram, k: int) -> float:
    """f applied termwise to the k-join; zero when either side has fewer than k crossings."""
    if k > min(g.crossings, h.crossings):
        return 0.0
    return f.on_quantum(k_join(g, h, k))


def dedupe(family) -> list[Diagram]:
    seen, out = set(), []
    for d in family:
        c = canonical_form(d)
        if c not in seen:
            seen.add(c)
            out.append(c)
    return out


@dataclass
class GramReport:
    family: list[Diagram]
    k: int
    matrix: np.ndarray
    min_eigenvalue: float
    eigenvalues: np.ndarray = field(repr=False)

    @property
    def norm(self) -> float:
        return float(np.max(np.abs(self.eigenvalues))) if len(self.eigenvalues) else 0.0

    def is_psd(self, rel_tol: float = EIG_REL_TOL) -> bool:
        return self.min_eigenvalue >= -rel_tol * self.norm

    def to_json(self) -> str:
        return json.dumps({
            "k": self.k,
            "family": [serialize_diagram(d) for d in self.family],
            "matrix": [[float(x) for x in row] for row in self.matrix],
            "min_eigenvalue": self.min_eigenvalue,
            "norm": self.norm,
            "psd": self.is_psd(),
            "tolerance": EIG_REL_TOL,
        }, indent=2)


def gram_matrix(f: InvariantFunction, family, k: int) -> GramReport:
    fam = dedupe(family)
    m = len(fam)
    mat = np.zeros((m, m))
    for i in range(m):
        for j in range(i, m):
            mat[i, j] = mat[j, i] = join_value(f, fam[i], fam[j], k)
    eig = np.linalg.eigvalsh(mat) if m else np.zeros(0)
    return GramReport(fam, k, mat, float(eig[0]) if m else 0.0, eig)


def derivative_identity_gap(r: VertexModel, g: Diagram, h: Diagram) -> float:
    """|f_R(g join_1 h) - <grad f_R(g), grad f_R(h)>|."""
    r = r.as_float()
    lhs = join_value(from_model(r), g, h, 1)
    rhs = float(partition.gradient(r, g) @ partition.gradient(r, h))
    return abs(lhs - rhs)
