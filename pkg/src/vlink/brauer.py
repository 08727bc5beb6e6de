"""Perfect matchings, the matrices A(x) and A^Q(x), and their Hanlon-Wales spectra.

Ground elements are 1-based.  A permutation is a tuple ``pi`` with
``pi[i-1]`` the image of ``i``; products compose right to left,
``compose(a, b)(i) == a(b(i))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from math import factorial, prod

import numpy as np

from .diagram import Diagram, QuantumDiagram, circles, qd_combine
from .join import k_join

MATCHING_CAP = 12
DENSE_CAP = 10
TERM_CAP = 10**7


class SizeLimit(RuntimeError):
    pass


class GroundMismatch(ValueError):
    pass


class GroundNotDivisible(ValueError):
    pass


@dataclass(frozen=True)
class Matching:
    size: int
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        pairs = tuple(sorted(tuple(sorted(p)) for p in self.pairs))
        object.__setattr__(self, "pairs", pairs)
        covered = sorted(x for p in pairs for x in p)
        if covered != list(range(1, self.size + 1)):
            raise ValueError(f"{pairs} is not a perfect matching of [{self.size}]")

    @property
    def partner(self) -> tuple[int, ...]:
        """0-based partner array."""
        out = [0] * self.size
        for a, b in self.pairs:
            out[a - 1], out[b - 1] = b - 1, a - 1
        return tuple(out)

    @classmethod
    def from_partner(cls, partner) -> Matching:
        return cls(len(partner), tuple((a + 1, b + 1) for a, b in enumerate(partner) if a < b))

    def act(self, pi: tuple[int, ...]) -> Matching:
        """pi . M = {pi(e) : e in M}."""
        return Matching(self.size, tuple((pi[a - 1], pi[b - 1]) for a, b in self.pairs))


def base_matching(k: int) -> Matching:
    """F on [8k]: edges {i, 4k+i}."""
    return Matching(8 * k, tuple((i, 4 * k + i) for i in range(1, 4 * k + 1)))


def _partner_matchings(items):
    if not items:
        yield {}
        return
    a = items[0]
    for i in range(1, len(items)):
        for rest in _partner_matchings(items[1:i] + items[i + 1:]):
            rest = dict(rest)
            rest[a], rest[items[i]] = items[i], a
            yield rest


@lru_cache(maxsize=None)
def _partners(size: int) -> tuple[tuple[int, ...], ...]:
    # lexicographic order of sorted pair lists
    out = []
    for m in _partner_matchings(list(range(size))):
        out.append(tuple(m[i] for i in range(size)))
    return tuple(out)


@lru_cache(maxsize=None)
def _index(size: int) -> dict[tuple[int, ...], int]:
    return {p: i for i, p in enumerate(_partners(size))}


def matching_index(m: Matching) -> int:
    """Position of ``m`` in enumerate_matchings(m.size)."""
    return _index(m.size)[m.partner]


def enumerate_matchings(size: int) -> list[Matching]:
    if size % 2:
        raise ValueError("ground set size must be even")
    if size > MATCHING_CAP:
        raise SizeLimit(f"ground size {size} exceeds the cap {MATCHING_CAP}")
    return [Matching.from_partner(p) for p in _partners(size)]


def _components(p1, p2) -> int:
    seen = [False] * len(p1)
    count = 0
    for start in range(len(p1)):
        if seen[start]:
            continue
        count += 1
        x = start
        while not seen[x]:
            seen[x] = True
            y = p1[x]
            seen[y] = True
            x = p2[y]
    return count


def components(m1: Matching, m2: Matching) -> int:
    """Connected components of the union multigraph of two matchings."""
    if m1.size != m2.size:
        raise GroundMismatch(f"ground sizes {m1.size} and {m2.size} differ")
    return _components(m1.partner, m2.partner)


@lru_cache(maxsize=None)
def component_matrix(size: int) -> np.ndarray:
    if size > DENSE_CAP:
        raise SizeLimit(f"dense assembly limited to ground size {DENSE_CAP}")
    ps = _partners(size)
    c = np.array([[_components(a, b) for b in ps] for a in ps], dtype=int)
    c.flags.writeable = False
    return c


def _power(x, exps: np.ndarray) -> np.ndarray:
    if isinstance(x, (Fraction, int)):
        base = Fraction(x)
        table = {e: base**int(e) for e in np.unique(exps)}
        return np.vectorize(table.__getitem__, otypes=[object])(exps)
    return float(x) ** exps.astype(float)


def a_matrix(x, size: int) -> np.ndarray:
    """(A(x))_{M,N} = x^c(M,N); exact object array for int or Fraction x."""
    if size > DENSE_CAP:
        raise SizeLimit(f"dense assembly limited to ground size {DENSE_CAP}")
    return _power(x, component_matrix(size))


# -- even partitions and the eigenvalue polynomial ------------------------


def even_partitions(total: int) -> list[tuple[int, ...]]:
    """Partitions of ``total`` into even parts, in decreasing lexicographic order."""

    def rec(rest, largest):
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, largest), 1, -1):
            if first % 2 == 0:
                for tail in rec(rest - first, first):
                    yield (first,) + tail

    return list(rec(total, total))


def _check_even(lam):
    if any(t % 2 or t <= 0 for t in lam) or list(lam) != sorted(lam, reverse=True):
        raise ValueError(f"{lam} is not a weakly decreasing partition into even parts")


def mu(lam: tuple[int, ...], x):
    """Hanlon-Wales eigenvalue: prod over rows a and b <= t_a/2 of (x - a + 2b - 1)."""
    _check_even(lam)
    out = 1
    for a, t in enumerate(lam, start=1):
        for b in range(1, t // 2 + 1):
            out = out * (x - a + 2 * b - 1)
    return out


def mu_zeros(lam: tuple[int, ...]) -> list[int]:
    _check_even(lam)
    return sorted(a - 2 * b + 1 for a, t in enumerate(lam, start=1) for b in range(1, t // 2 + 1))


def standard_tableaux_count(lam: tuple[int, ...]) -> int:
    """Hook length formula."""
    n = sum(lam)
    conj = [sum(1 for t in lam if t > j) for j in range(lam[0])] if lam else []
    hooks = prod(lam[i] - j + conj[j] - i - 1 for i in range(len(lam)) for j in range(lam[i]))
    return factorial(n) // hooks


def predicted_spectrum(x, size: int) -> list:
    """Eigenvalues of A(x) with multiplicity: mu_lambda(x) repeated f^lambda times."""
    out = []
    for lam in even_partitions(size):
        out += [mu(lam, x)] * standard_tableaux_count(lam)
    return out


# -- the group Q = BD on [8k] ---------------------------------------------


def compose(a, b):
    return tuple(a[b[i] - 1] for i in range(len(b)))


def inverse(a):
    out = [0] * len(a)
    for i, ai in enumerate(a, start=1):
        out[ai - 1] = i
    return tuple(out)


def sign(pi) -> int:
    seen = [False] * len(pi)
    s = 1
    for i in range(len(pi)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = pi[j] - 1
            length += 1
        if length % 2 == 0:
            s = -s
    return s


def q_group(k: int) -> list[tuple[int, ...]]:
    """All b d with b in B (per-block rotations by two) and d in D (block permutations)."""
    if k > 2:
        raise SizeLimit("Q is only enumerated for k <= 2")
    size, blocks = 8 * k, 2 * k
    bs = []
    for flips in product((0, 1), repeat=blocks):
        b = list(range(1, size + 1))
        for j, f in enumerate(flips):
            if f:
                for i in range(4):
                    b[4 * j + i] = 4 * j + (i + 2) % 4 + 1
        bs.append(tuple(b))
    ds = []
    for pi in permutations(range(blocks)):
        ds.append(tuple(4 * pi[j] + i + 1 for j in range(blocks) for i in range(4)))
    return [compose(b, d) for b in bs for d in ds]


def _index_map(pi, size) -> np.ndarray:
    """Index of pi.M for each matching M in enumeration order."""
    idx = _index(size)
    out = np.empty(len(_partners(size)), dtype=int)
    for i, p in enumerate(_partners(size)):
        newp = [0] * size
        for a in range(size):
            newp[pi[a] - 1] = pi[p[a]] - 1
        out[i] = idx[tuple(newp)]
    return out


@lru_cache(maxsize=None)
def aq_counts(k: int = 1) -> np.ndarray:
    """counts[M, N, c] = #{s in Q : c(M, s.N) = c}."""
    if k != 1:
        raise SizeLimit("A^Q is only assembled for k = 1")
    size = 8 * k
    comp = component_matrix(size)
    counts = np.zeros(comp.shape + (size // 2 + 1,), dtype=int)
    rows = np.arange(comp.shape[0])[:, None]
    for s in q_group(k):
        shifted = comp[:, _index_map(s, size)]
        np.add.at(counts, (rows, np.arange(comp.shape[1])[None, :], shifted), 1)
    counts.flags.writeable = False
    return counts


def aq_matrix(x, k: int = 1) -> np.ndarray:
    """(A^Q(x))_{M,N} = sum over s in Q of x^c(M, s.N)."""
    counts = aq_counts(k)
    if isinstance(x, (Fraction, int)):
        x = Fraction(x)
        powers = np.array([x**c for c in range(counts.shape[2])], dtype=object)
        return np.tensordot(counts.astype(object), powers, axes=([2], [0]))
    powers = float(x) ** np.arange(counts.shape[2], dtype=float)
    return counts @ powers


# -- tableaux and eigenvectors --------------------------------------------


@dataclass(frozen=True)
class Tableau:
    rows: tuple[tuple[int, ...], ...]
    k: int

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        _check_even(self.shape)
        flat = sorted(x for r in rows for x in r)
        if flat != list(range(1, 8 * self.k + 1)):
            raise ValueError(f"tableau entries must be a permutation of [{8 * self.k}]")
        half = 4 * self.k
        for r in rows:
            for a, b in zip(r[::2], r[1::2]):
                if not (a <= half and b == a + half):
                    raise ValueError(f"row {r} is not of the form i, i+{half}, ...")

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(len(r) for r in self.rows)

    def columns(self) -> list[list[int]]:
        return [[r[j] for r in self.rows if len(r) > j] for j in range(len(self.rows[0]))]


def paired_tableau(firsts: list[list[int]], k: int) -> Tableau:
    """Tableau whose rows read i, i+4k for each i listed in ``firsts``."""
    return Tableau(tuple(tuple(x for i in row for x in (i, i + 4 * k)) for row in firsts), k)


def single_row_tableau(k: int = 1) -> Tableau:
    return paired_tableau([list(range(1, 4 * k + 1))], k)


def two_row_tableau(k: int = 1) -> Tableau:
    """Shape (8k-2, 2): first row 1, 3, 4, ..., 4k; second row 2."""
    return paired_tableau([[1] + list(range(3, 4 * k + 1)), [2]], k)


def rows_of_eight_tableau(k: int) -> Tableau:
    """Shape (8, ..., 8): row j holds 4j-3, ..., 4j."""
    return paired_tableau([list(range(4 * j + 1, 4 * j + 5)) for j in range(k)], k)


def _subgroup(blocks: list[list[int]], size: int, signed: bool):
    """All products of permutations of each block, with their signs."""
    choices = [list(permutations(b)) for b in blocks]
    for pick in product(*choices):
        pi = list(range(1, size + 1))
        for block, image in zip(blocks, pick):
            for a, b in zip(block, image):
                pi[a - 1] = b
        pi = tuple(pi)
        yield pi, (sign(pi) if signed else 1)


def _group_size(blocks):
    return prod(factorial(len(b)) for b in blocks)


def tableau_eigenvector(t: Tableau) -> np.ndarray:
    """v = sum over c in C, r in R of sgn(c) (c r).F, as an exact integer vector."""
    size = 8 * t.k
    if size > DENSE_CAP:
        raise SizeLimit("eigenvectors are only assembled on [8]")
    nc, nr = _group_size(t.columns()), _group_size(t.rows)
    if nc * nr > TERM_CAP:
        raise SizeLimit(f"{nc * nr} terms exceed the cap {TERM_CAP}")
    idx = _index(size)
    f_part = base_matching(t.k).partner
    # r.F for every row permutation r, as a count per matching
    row_counts = np.zeros(len(_partners(size)), dtype=np.int64)
    for r, _ in _subgroup([list(x) for x in t.rows], size, False):
        row_counts[_act_index(r, f_part, idx)] += 1
    v = np.zeros(len(row_counts), dtype=np.int64)
    for c, sg in _subgroup(t.columns(), size, True):
        v[_index_map(c, size)] += sg * row_counts
    return v


def _act_index(pi, partner, idx) -> int:
    newp = [0] * len(partner)
    for a in range(len(partner)):
        newp[pi[a] - 1] = pi[partner[a]] - 1
    return idx[tuple(newp)]


def symmetrized_u(v: np.ndarray, k: int = 1) -> np.ndarray:
    """u = sum over q in Q of q.v."""
    size = 8 * k
    u = np.zeros_like(v)
    for q in q_group(k):
        u[_index_map(q, size)] += v
    return u


def u_f_coefficient(t: Tableau) -> int:
    """sum of sgn(c) over all (q, c, r) in Q x C x R with q c r . F == F."""
    size = 8 * t.k
    idx = _index(size)
    f_part = base_matching(t.k).partner
    f_idx = idx[f_part]
    qmaps = [_index_map(q, size) for q in q_group(t.k)]
    cmaps = [(_index_map(c, size), sg) for c, sg in _subgroup(t.columns(), size, True)]
    total = 0
    for r, _ in _subgroup([list(x) for x in t.rows], size, False):
        i = _act_index(r, f_part, idx)
        for cmap, sg in cmaps:
            j = cmap[i]
            for qmap in qmaps:
                if qmap[j] == f_idx:
                    total += sg
    return total


def exact_matvec(mat: np.ndarray, v: np.ndarray) -> list[Fraction]:
    return [sum((Fraction(a) * int(b) for a, b in zip(row, v)), Fraction(0)) for row in mat]


def check_eigenvector(mat: np.ndarray, v: np.ndarray, eigenvalue) -> bool:
    """Exact test of mat @ v == eigenvalue * v."""
    lhs = exact_matvec(mat, v)
    return all(a == Fraction(eigenvalue) * int(b) for a, b in zip(lhs, v))


# -- bridge to diagrams ---------------------------------------------------


def matching_diagram(m: Matching) -> Diagram:
    """G_M: crossing j gathers ground elements 4j-3..4j as slots 1..4."""
    if m.size % 4:
        raise GroundNotDivisible(f"ground size {m.size} is not divisible by 4")

    def slot(x):
        return ((x - 1) // 4 + 1, (x - 1) % 4 + 1)

    return Diagram(m.size // 4, tuple((slot(a), slot(b)) for a, b in m.pairs))


def join_formula_rhs(m1: Matching, m2: Matching) -> QuantumDiagram:
    """2^{-2k} (2k)! sum over s in Q of circles^c(M, s.N)."""
    k = m1.size // 8
    coef = Fraction(factorial(2 * k), 2 ** (2 * k))
    return qd_combine((coef, circles(components(m1, m2.act(s)))) for s in q_group(k))


def join_formula_check(m1: Matching, m2: Matching, x=None) -> bool:
    """Exact comparison of G_M join_2k G_N with its circle-power expansion.

    With ``x`` given, also compares both sides evaluated at circle value x.
    """
    if m1.size != m2.size:
        raise GroundMismatch(f"ground sizes {m1.size} and {m2.size} differ")
    if m1.size % 8:
        raise GroundNotDivisible("join formula needs a ground set [8k]")
    k = m1.size // 8
    lhs = k_join(matching_diagram(m1), matching_diagram(m2), 2 * k)
    rhs = join_formula_rhs(m1, m2)
    if lhs != rhs:
        return False
    if x is not None:
        x = Fraction(x)
        value = sum((c * x**d.circles for d, c in lhs), Fraction(0))
        direct = sum((x**components(m1, m2.act(s)) for s in q_group(k)), Fraction(0))
        return value == Fraction(factorial(2 * k), 2 ** (2 * k)) * direct
    return True
