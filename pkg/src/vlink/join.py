"""k-joins of diagrams.

For ordered k-tuples of distinct crossings (u_1..u_k) of G and (v_1..v_k)
of H, each pair u_i, v_i is deleted and the edge ends that met them are
reconnected, with weight 1/2 each, either slot p to slot p (straight) or
slot p to slot p+2 (shifted).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations, product

from .diagram import Diagram, QuantumDiagram, disjoint_union, from_partner, qd_combine, to_partner, validate


class KTooLarge(ValueError):
    pass


def _reconnect(partner: list[int], circles: int, links: dict[int, int]) -> Diagram:
    """Delete the crossings whose slots appear in ``links`` and splice the open ends.

    ``links`` maps each deleted slot to the deleted slot it is spliced to.
    Closed loops made only of spliced segments become circles.
    """
    dead = {s // 4 for s in links}
    alive = [v for v in range(len(partner) // 4) if v not in dead]
    newv = {v: i for i, v in enumerate(alive)}
    out = [-1] * (4 * len(alive))
    used = set()
    for v in alive:
        for p in range(4):
            s = 4 * v + p
            t = partner[s]
            while t in links:
                used.add(t)
                used.add(links[t])
                t = partner[links[t]]
            out[4 * newv[v] + p] = 4 * newv[t // 4] + t % 4
    loops = 0
    for s in links:
        if s in used:
            continue
        loops += 1
        t = s
        while True:
            used.add(t)
            used.add(links[t])
            t = partner[links[t]]
            if t == s:
                break
    return from_partner(out, circles + loops)


def join_terms(g: Diagram, h: Diagram, k: int):
    """Yield (weight, diagram) for every term of the k-join, before grouping."""
    validate(g)
    validate(h)
    if k < 0 or k > min(g.crossings, h.crossings):
        raise KTooLarge(f"k={k} exceeds the crossings available ({g.crossings}, {h.crossings})")
    union = disjoint_union(g, h)
    if k == 0:
        yield Fraction(1), union
        return
    partner = to_partner(union)
    off = g.crossings
    weight = Fraction(1, 2**k)
    for us in permutations(range(g.crossings), k):
        for vs in permutations(range(off, off + h.crossings), k):
            for shifts in product((0, 2), repeat=k):
                links = {}
                for u, v, sh in zip(us, vs, shifts):
                    for p in range(4):
                        a, b = 4 * u + p, 4 * v + (p + sh) % 4
                        links[a] = b
                        links[b] = a
                yield weight, _reconnect(partner, union.circles, links)


def k_join(g: Diagram, h: Diagram, k: int) -> QuantumDiagram:
    return qd_combine(join_terms(g, h, k))


def k_join_quantum(x: QuantumDiagram, y: QuantumDiagram, k: int) -> QuantumDiagram:
    """Bilinear extension of k_join."""
    terms = []
    for g, a in x:
        for h, b in y:
            terms.extend((a * b * w, d) for w, d in join_terms(g, h, k))
    return qd_combine(terms)


def falling(a: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= a - i
    return out
