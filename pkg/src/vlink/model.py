"""Vertex models: S2-symmetric rank-4 tensors R with R[i,j,k,l] == R[k,l,i,j]."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import sqrt
from typing import Iterable, NamedTuple

import numpy as np


class ModelError(ValueError):
    pass


class IndexOutOfRange(ModelError):
    pass


class SymmetryViolation(ModelError):
    pass


class NotOrthogonal(ModelError):
    pass


def swap_pairs(t: np.ndarray) -> np.ndarray:
    """(i,j,k,l) -> (k,l,i,j)."""
    return t.transpose(2, 3, 0, 1)


@dataclass(frozen=True, eq=False)
class VertexModel:
    """Dense n x n x n x n tensor.

    ``entries`` is float64, or an object array of Fractions for the exact path.
    """

    entries: np.ndarray

    def __post_init__(self):
        a = self.entries
        if a.ndim != 4 or len(set(a.shape)) != 1:
            raise ModelError(f"expected an n x n x n x n array, got shape {a.shape}")
        if a.dtype != object:
            a = np.asarray(a, dtype=float)
            if not np.all(np.isfinite(a)):
                raise ModelError("entries must be finite")
        a = a.copy()
        a.flags.writeable = False
        object.__setattr__(self, "entries", a)
        if np.any(a != swap_pairs(a)):
            raise SymmetryViolation("R[i,j,k,l] != R[k,l,i,j]")

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @property
    def exact(self) -> bool:
        return self.entries.dtype == object

    def as_float(self) -> VertexModel:
        if not self.exact:
            return self
        return VertexModel(self.entries.astype(float))

    def __getitem__(self, idx):
        return self.entries[idx]


def symmetrize(t: np.ndarray) -> np.ndarray:
    return (t + swap_pairs(t)) / 2


def make_model(n: int, entries: Iterable[tuple], symmetrize_: bool = False,
               exact: bool = False) -> VertexModel:
    """Build a model from sparse 1-based entries (i, j, k, l, value); omitted entries are 0."""
    if n < 1:
        raise ModelError("dimension must be positive")
    if exact:
        t = np.empty((n,) * 4, dtype=object)
        t.fill(Fraction(0))
    else:
        t = np.zeros((n,) * 4)
    for *idx, value in entries:
        if len(idx) != 4 or not all(1 <= i <= n for i in idx):
            raise IndexOutOfRange(f"index {tuple(idx)} outside [1, {n}]^4")
        t[tuple(i - 1 for i in idx)] = Fraction(value) if exact else float(value)
    if symmetrize_:
        t = symmetrize(t)
    elif np.any(t != swap_pairs(t)):
        bad = next(tuple(int(x) + 1 for x in idx) for idx in np.argwhere(t != swap_pairs(t)))
        raise SymmetryViolation(f"entry {bad} differs from its pair-swapped partner")
    return VertexModel(t)


def identity_model(n: int, exact: bool = False) -> VertexModel:
    """R_id[i,j,k,l] = delta_ik delta_jl."""
    d = np.eye(n, dtype=int)
    t = np.einsum("ik,jl->ijkl", d, d)
    if exact:
        return VertexModel(np.vectorize(Fraction, otypes=[object])(t))
    return VertexModel(t.astype(float))


def zero_model(n: int) -> VertexModel:
    return VertexModel(np.zeros((n,) * 4))


def random_model(n: int, rng: np.random.Generator, scale: float = 1.0) -> VertexModel:
    return from_coords(rng.uniform(-scale, scale, size=basis_size(n)), n)


# -- orthonormal coordinates on the symmetric subspace --------------------


def basis_size(n: int) -> int:
    return (n**4 + n**2) // 2


_BASIS_CACHE: dict[int, tuple[np.ndarray, np.ndarray, np.ndarray]] = {}


def _basis(n: int):
    # flat index of (i,j,k,l), flat index of its swap, and whether it is self-paired;
    # one representative per orbit with (i,j) <= (k,l).
    if n not in _BASIS_CACHE:
        first, second, selfp = [], [], []
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    for l in range(n):
                        if (i, j) <= (k, l):
                            first.append(((i * n + j) * n + k) * n + l)
                            second.append(((k * n + l) * n + i) * n + j)
                            selfp.append((i, j) == (k, l))
        _BASIS_CACHE[n] = (np.array(first), np.array(second), np.array(selfp))
    return _BASIS_CACHE[n]


def to_coords(t: np.ndarray) -> np.ndarray:
    """Inner products of a full tensor with each orthonormal basis element."""
    n = t.shape[0]
    first, second, selfp = _basis(n)
    flat = np.asarray(t, dtype=float).reshape(-1)
    return np.where(selfp, flat[first], (flat[first] + flat[second]) / sqrt(2))


def from_coords(x: np.ndarray, n: int) -> VertexModel:
    first, second, selfp = _basis(n)
    x = np.asarray(x, dtype=float)
    flat = np.zeros(n**4)
    vals = np.where(selfp, x, x / sqrt(2))
    flat[first] = vals
    flat[second] = vals
    return VertexModel(flat.reshape((n,) * 4))


# -- R-matrix residuals ----------------------------------------------------


class ResidualTriple(NamedTuple):
    r1: float
    r2: float
    r3: float


def _delta(n: int, like: np.ndarray) -> np.ndarray:
    d = np.eye(n, dtype=int)
    return d.astype(object) if like.dtype == object else d.astype(float)


def defects(r: VertexModel):
    """Signed defects of the trace, inverse and Yang-Baxter conditions."""
    R = r.entries
    n = r.n
    d = _delta(n, R)
    e1 = np.einsum("iaaj->ij", R) - d
    e2 = np.einsum("ijab,alkb->ijkl", R, R) - np.einsum("ik,jl->ijkl", d, d)
    lhs = np.einsum("iabh,jkca,bclm->ijklmh", R, R, R, optimize=True)
    rhs = np.einsum("ijbc,bkla,camh->ijklmh", R, R, R, optimize=True)
    return e1, e2, lhs - rhs


def residuals(r: VertexModel) -> ResidualTriple:
    """Sums of squares of the three defects; exact Fractions for exact models."""
    return ResidualTriple(*(_sumsq(e) for e in defects(r)))


def _sumsq(e: np.ndarray):
    flat = e.reshape(-1)
    if e.dtype == object:
        return sum((x * x for x in flat), Fraction(0))
    return float(np.dot(flat, flat))


def is_rmatrix(r: VertexModel, tol: float = 1e-12) -> bool:
    return max(residuals(r)) <= tol


def orthogonal_transform(r: VertexModel, u: np.ndarray) -> VertexModel:
    u = np.asarray(u, dtype=float)
    if u.shape != (r.n, r.n) or np.max(np.abs(u.T @ u - np.eye(r.n))) > 1e-10:
        raise NotOrthogonal("u^T u differs from the identity by more than 1e-10")
    t = np.einsum("abcd,ia,jb,kc,ld->ijkl", r.as_float().entries, u, u, u, u, optimize=True)
    # exact S2 symmetry is lost to rounding only; restore it
    return VertexModel(symmetrize(t))


def random_orthogonal(n: int, rng: np.random.Generator) -> np.ndarray:
    q, rr = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.sign(np.diag(rr))
