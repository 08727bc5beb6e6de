"""Virtual link diagrams and their formal rational linear combinations.

A diagram has ``crossings`` crossings, each with four slots numbered
1..4 clockwise; slots 1 and 3 carry the overcrossing strand.  ``edges``
pairs every slot with exactly one other slot.  Crossing-free loops are
kept as a separate ``circles`` counter since they have no slots.

Isomorphism is up to relabeling crossings and rotating a crossing by two
positions (p -> p+2), which keeps the overcrossing pair in place.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Iterator, Mapping

Slot = tuple[int, int]
Edge = tuple[Slot, Slot]


class DiagramError(ValueError):
    pass


class DuplicateSlot(DiagramError):
    def __init__(self, slot: Slot):
        super().__init__(f"slot {slot} occurs in more than one edge")
        self.slot = slot


class MissingSlot(DiagramError):
    def __init__(self, slot: Slot):
        super().__init__(f"slot {slot} is not covered by any edge")
        self.slot = slot


class NegativeCount(DiagramError):
    def __init__(self, name: str, value: int):
        super().__init__(f"{name} must be nonnegative, got {value}")
        self.field = name


class SlotOutOfRange(DiagramError):
    def __init__(self, slot: Slot):
        super().__init__(f"slot {slot} refers to a nonexistent crossing or position")
        self.slot = slot


def _norm_edge(a: Slot, b: Slot) -> Edge:
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class Diagram:
    crossings: int
    edges: tuple[Edge, ...] = ()
    circles: int = 0

    def __post_init__(self):
        edges = tuple(sorted(_norm_edge(tuple(a), tuple(b)) for a, b in self.edges))
        object.__setattr__(self, "edges", edges)

    def __repr__(self):
        return f"Diagram(crossings={self.crossings}, circles={self.circles}, edges={list(self.edges)})"


EMPTY = Diagram(0)
UNKNOT = Diagram(0, circles=1)


def circles(t: int) -> Diagram:
    """Disjoint union of ``t`` unknots."""
    return Diagram(0, circles=t)


def validate(d: Diagram) -> None:
    """Raise a DiagramError subclass unless every slot is covered exactly once."""
    if d.crossings < 0:
        raise NegativeCount("crossings", d.crossings)
    if d.circles < 0:
        raise NegativeCount("circles", d.circles)
    seen = set()
    for edge in d.edges:
        for v, p in edge:
            if not (1 <= v <= d.crossings and 1 <= p <= 4):
                raise SlotOutOfRange((v, p))
            if (v, p) in seen:
                raise DuplicateSlot((v, p))
            seen.add((v, p))
    for v in range(1, d.crossings + 1):
        for p in range(1, 5):
            if (v, p) not in seen:
                raise MissingSlot((v, p))


def is_valid(d: Diagram) -> bool:
    try:
        validate(d)
    except DiagramError:
        return False
    return True


# Internal representation: slot (v, p) -> 4*(v-1) + (p-1); partner[s] is the
# slot joined to s.


def to_partner(d: Diagram) -> list[int]:
    partner = [-1] * (4 * d.crossings)
    for (v1, p1), (v2, p2) in d.edges:
        a, b = 4 * (v1 - 1) + p1 - 1, 4 * (v2 - 1) + p2 - 1
        partner[a] = b
        partner[b] = a
    return partner


def from_partner(partner: list[int], circles: int = 0) -> Diagram:
    edges = []
    for a, b in enumerate(partner):
        if a < b:
            edges.append(((a // 4 + 1, a % 4 + 1), (b // 4 + 1, b % 4 + 1)))
    return Diagram(len(partner) // 4, tuple(edges), circles)


def relabel(d: Diagram, perm: Mapping[int, int] | list[int]) -> Diagram:
    """Rename crossing v to perm[v] (1-based; a list is indexed by v-1)."""
    if not isinstance(perm, Mapping):
        perm = {v + 1: w for v, w in enumerate(perm)}
    edges = tuple(((perm[v1], p1), (perm[v2], p2)) for (v1, p1), (v2, p2) in d.edges)
    return Diagram(d.crossings, edges, d.circles)


def rotate(d: Diagram, v: int) -> Diagram:
    """Rotate crossing ``v`` by two positions."""

    def move(s):
        w, p = s
        return (w, (p + 1) % 4 + 1) if w == v else s

    return Diagram(d.crossings, tuple((move(a), move(b)) for a, b in d.edges), d.circles)


def _components(partner: list[int]) -> list[list[int]]:
    c = len(partner) // 4
    parent = list(range(c))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in enumerate(partner):
        ra, rb = find(a // 4), find(b // 4)
        if ra != rb:
            parent[ra] = rb
    groups: dict[int, list[int]] = {}
    for v in range(c):
        groups.setdefault(find(v), []).append(v)
    return list(groups.values())


def _traversal_code(partner: list[int], root: int, root_rot: int) -> tuple[tuple[int, int], ...]:
    # Breadth-first relabeling from (root, rotation); each newly reached
    # crossing is rotated so that its entry slot lands on position 1 or 2.
    label = {root: 0}
    rot = {root: root_rot}
    order = [root]
    i = 0
    while i < len(order):
        v = order[i]
        for q in range(4):
            p = (q - rot[v]) % 4
            w, pw = divmod(partner[4 * v + p], 4)
            if w not in label:
                label[w] = len(order)
                rot[w] = 0 if pw < 2 else 2
                order.append(w)
        i += 1
    code = []
    for v in order:
        for p in range(4):
            w, pw = divmod(partner[4 * v + p], 4)
            a = 4 * label[v] + (p + rot[v]) % 4
            b = 4 * label[w] + (pw + rot[w]) % 4
            if a < b:
                code.append((a, b))
    code.sort()
    return tuple(code)


def _component_code(partner: list[int], comp: list[int]) -> tuple[tuple[int, int], ...]:
    return min(_traversal_code(partner, root, r) for root in comp for r in (0, 2))


def canonical_code(d: Diagram) -> tuple:
    """Hashable isomorphism invariant: equal iff the diagrams are isomorphic."""
    partner = to_partner(d)
    codes = sorted((len(c), _component_code(partner, c)) for c in _components(partner))
    return (d.circles, tuple(codes))


def canonical_form(d: Diagram) -> Diagram:
    """Canonical representative of the isomorphism class of ``d``.

    Each connected component is relabeled by the lexicographically smallest
    breadth-first traversal code over all roots and root rotations;
    components are then laid out in sorted order.  Two diagrams are
    isomorphic exactly when their canonical forms are equal.
    """
    validate(d)
    circles_, codes = canonical_code(d)
    partner = [-1] * (4 * d.crossings)
    offset = 0
    for size, code in codes:
        for a, b in code:
            partner[a + 4 * offset] = b + 4 * offset
            partner[b + 4 * offset] = a + 4 * offset
        offset += size
    return from_partner(partner, circles_)


def is_isomorphic(d1: Diagram, d2: Diagram) -> bool:
    return canonical_form(d1) == canonical_form(d2)


def disjoint_union(d1: Diagram, d2: Diagram) -> Diagram:
    off = d1.crossings
    shifted = tuple(((v1 + off, p1), (v2 + off, p2)) for (v1, p1), (v2, p2) in d2.edges)
    return Diagram(d1.crossings + d2.crossings, d1.edges + shifted, d1.circles + d2.circles)


def union_all(diagrams: Iterable[Diagram]) -> Diagram:
    out = EMPTY
    for d in diagrams:
        out = disjoint_union(out, d)
    return out


def from_monomial(*crossings: tuple[str, str, str, str], circles: int = 0) -> Diagram:
    """Closed diagram of a tensor monomial.

    Each argument lists the four index names of one R factor in slot order
    1..4; every index name must occur exactly twice and becomes an edge.
    ``from_monomial(("i", "a", "a", "i"))`` is the closure of sum R_iaai.
    """
    where: dict[str, list[Slot]] = {}
    for v, names in enumerate(crossings, start=1):
        if len(names) != 4:
            raise DiagramError(f"crossing {v} needs four indices, got {names}")
        for p, name in enumerate(names, start=1):
            where.setdefault(name, []).append((v, p))
    edges = []
    for name, slots in where.items():
        if len(slots) != 2:
            raise DiagramError(f"index {name!r} occurs {len(slots)} times, expected 2")
        edges.append(tuple(slots))
    d = Diagram(len(crossings), tuple(edges), circles)
    validate(d)
    return d


def curl(kind: str = "adjacent") -> Diagram:
    """One-crossing diagrams: 'adjacent' {12|34}, 'opposite' {13|24}, 'other' {14|23}."""
    pairs = {
        "adjacent": (((1, 1), (1, 2)), ((1, 3), (1, 4))),
        "opposite": (((1, 1), (1, 3)), ((1, 2), (1, 4))),
        "other": (((1, 1), (1, 4)), ((1, 2), (1, 3))),
    }[kind]
    return Diagram(1, pairs)


def fixture_beta() -> Diagram:
    """Two crossings joined by four parallel edges (a, p)-(b, p)."""
    return Diagram(2, tuple(((1, p), (2, p)) for p in range(1, 5)))


def strand_count(d: Diagram) -> int:
    """Closed straight-through traversals (slot p continues at p+2) plus circles."""
    validate(d)
    partner = to_partner(d)
    seen = [False] * len(partner)
    strands = 0
    for start in range(len(partner)):
        if seen[start]:
            continue
        strands += 1
        s = start
        while not seen[s]:
            seen[s] = True
            t = partner[s]
            seen[t] = True
            s = 4 * (t // 4) + (t % 4 + 2) % 4
    return strands + d.circles


# -- enumeration -----------------------------------------------------------


def _traversal_diagrams(c: int) -> Iterator[list[int]]:
    # Every labeled connected diagram whose labeling is a breadth-first
    # traversal from crossing 0 with no rotation.
    partner = [-1] * (4 * c)

    def rec(t: int):
        s = next((x for x in range(4 * t) if partner[x] < 0), None)
        if s is None:
            if t == c:
                yield list(partner)
            return
        for s2 in range(s + 1, 4 * t):
            if partner[s2] < 0:
                partner[s], partner[s2] = s2, s
                yield from rec(t)
                partner[s] = partner[s2] = -1
        if t < c:
            for entry in (0, 1):
                s2 = 4 * t + entry
                partner[s], partner[s2] = s2, s
                yield from rec(t + 1)
                partner[s] = partner[s2] = -1

    yield from rec(1)


_CONNECTED_CACHE: dict[int, list[Diagram]] = {}


def connected_diagrams(c: int) -> list[Diagram]:
    """All connected diagrams with ``c`` >= 1 crossings, one per isomorphism class."""
    if c < 1:
        raise ValueError("connected diagrams need at least one crossing")
    if c not in _CONNECTED_CACHE:
        out = []
        for partner in _traversal_diagrams(c):
            code = tuple(sorted((a, b) for a, b in enumerate(partner) if a < b))
            if _component_code(partner, list(range(c))) == code:
                out.append(from_partner(partner))
        _CONNECTED_CACHE[c] = out
    return _CONNECTED_CACHE[c]


def _partitions(total: int, largest: int) -> Iterator[tuple[int, ...]]:
    if total == 0:
        yield ()
        return
    for first in range(min(total, largest), 0, -1):
        for rest in _partitions(total - first, first):
            yield (first,) + rest


def diagrams_with_crossings(c: int, circles_: int = 0) -> list[Diagram]:
    """All canonical diagrams with exactly ``c`` crossings and ``circles_`` circles."""
    out = []
    for sizes in _partitions(c, c):
        counts = Counter(sizes)
        pools = []
        for size, mult in sorted(counts.items()):
            pools.append(list(combinations_with_replacement(connected_diagrams(size), mult)))
        for choice in _product(pools):
            d = union_all(x for group in choice for x in group)
            out.append(canonical_form(Diagram(d.crossings, d.edges, circles_)))
    return out


def _product(pools):
    if not pools:
        yield ()
        return
    for head in pools[0]:
        for tail in _product(pools[1:]):
            yield (head,) + tail


def enumerate_diagrams(max_crossings: int, max_circles: int = 0) -> list[Diagram]:
    """Every canonical diagram with at most the given numbers of crossings and circles."""
    out = []
    for c in range(max_crossings + 1):
        for u in range(max_circles + 1):
            out.extend(diagrams_with_crossings(c, u))
    return out


# -- quantum diagrams ------------------------------------------------------


@dataclass(frozen=True)
class QuantumDiagram:
    """Finite formal combination of canonical diagrams with rational coefficients."""

    terms: Mapping[Diagram, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for d, c in self.terms.items():
            c = Fraction(c)
            if c != 0:
                clean[d] = c
        object.__setattr__(self, "terms", dict(sorted(clean.items(), key=lambda kv: _sort_key(kv[0]))))

    def __eq__(self, other):
        if not isinstance(other, QuantumDiagram):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def __add__(self, other: QuantumDiagram) -> QuantumDiagram:
        return qd_combine([(c, d) for d, c in self] + [(c, d) for d, c in other])

    def __sub__(self, other: QuantumDiagram) -> QuantumDiagram:
        return self + (-1) * other

    def __rmul__(self, scalar) -> QuantumDiagram:
        s = Fraction(scalar)
        return QuantumDiagram({d: s * c for d, c in self.terms.items()})

    def coefficient(self, d: Diagram) -> Fraction:
        return self.terms.get(canonical_form(d), Fraction(0))

    def total(self) -> Fraction:
        return sum(self.terms.values(), Fraction(0))

    @classmethod
    def single(cls, d: Diagram, coefficient=1) -> QuantumDiagram:
        return qd_combine([(coefficient, d)])


def _sort_key(d: Diagram):
    return (d.crossings, d.circles, d.edges)


def qd_combine(terms: Iterable[tuple[object, Diagram]]) -> QuantumDiagram:
    """Group (coefficient, diagram) pairs by isomorphism class and sum exactly."""
    acc: dict[Diagram, Fraction] = {}
    for coef, d in terms:
        key = canonical_form(d)
        acc[key] = acc.get(key, Fraction(0)) + Fraction(coef)
    return QuantumDiagram(acc)
