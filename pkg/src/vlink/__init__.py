"""Vertex models on virtual link diagrams: partition functions, joins, R-matrix checks."""

from .diagram import (EMPTY, UNKNOT, Diagram, QuantumDiagram, canonical_form, curl, disjoint_union,
                      enumerate_diagrams, fixture_beta, qd_combine, strand_count, validate)
from .join import k_join, k_join_quantum
from .model import VertexModel, identity_model, is_rmatrix, make_model, orthogonal_transform, residuals
from .partition import eval_bruteforce, gradient
from .partition import eval as evaluate

__all__ = [
    "EMPTY", "UNKNOT", "Diagram", "QuantumDiagram", "VertexModel", "canonical_form", "curl",
    "disjoint_union", "enumerate_diagrams", "evaluate", "eval_bruteforce", "fixture_beta", "gradient",
    "identity_model", "is_rmatrix", "k_join", "k_join_quantum", "make_model", "orthogonal_transform",
    "qd_combine", "residuals", "strand_count", "validate",
]
