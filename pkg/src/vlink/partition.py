"""Partition functions f_R(G) of vertex models on diagrams.

f_R(G) sums, over all colorings of the edges with n colors, the product of
R[c1, c2, c3, c4] over crossings, where c_p is the color of the edge at
slot p.  Each circle contributes a factor n.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as iproduct
from string import ascii_letters

import numpy as np

from .diagram import Diagram, strand_count, to_partner, validate
from .model import VertexModel, basis_size, to_coords

DEFAULT_BRUTE_CAP = 10**8
DEFAULT_MAX_INTERMEDIATE = 2**26


class SizeLimit(RuntimeError):
    pass


class ContractionTooLarge(RuntimeError):
    pass


def _edge_labels(d: Diagram) -> list[list[int]]:
    """labels[v][p] is the edge id at slot (v+1, p+1)."""
    labels = [[-1] * 4 for _ in range(d.crossings)]
    for e, ((v1, p1), (v2, p2)) in enumerate(d.edges):
        labels[v1 - 1][p1 - 1] = e
        labels[v2 - 1][p2 - 1] = e
    return labels


def _circle_factor(r: VertexModel, d: Diagram):
    return (Fraction(r.n) if r.exact else float(r.n)) ** d.circles


def _scalar(x, exact: bool):
    return x if exact else float(x)


def eval_bruteforce(r: VertexModel, d: Diagram, cap: int = DEFAULT_BRUTE_CAP):
    """Direct sum over all n^|E| colorings."""
    validate(d)
    n, n_edges = r.n, len(d.edges)
    if n**n_edges > cap:
        raise SizeLimit(f"{n}^{n_edges} colorings exceed the cap {cap}")
    labels = _edge_labels(d)
    factor = _circle_factor(r, d)
    if r.exact:
        total = Fraction(0)
        for phi in iproduct(range(n), repeat=n_edges):
            term = Fraction(1)
            for slots in labels:
                term *= r.entries[tuple(phi[e] for e in slots)]
            total += term
        return total * factor
    total = 0.0
    count = n**n_edges
    chunk = 1 << 18
    shape = (n,) * n_edges
    for start in range(0, count, chunk):
        idx = np.arange(start, min(count, start + chunk))
        phi = np.unravel_index(idx, shape) if n_edges else ()
        term = np.ones(len(idx))
        for slots in labels:
            term *= r.entries[tuple(phi[e] for e in slots)]
        total += float(term.sum())
    return total * factor


def contract(tensors: list[tuple[np.ndarray, list[int]]], output: list[int] = (),
             max_intermediate: int = DEFAULT_MAX_INTERMEDIATE) -> np.ndarray:
    """Contract a network of labeled tensors down to the ``output`` labels.

    Every non-output label must occur exactly twice across the network.
    Pairs of tensors are merged greedily, each time picking the pair that
    shares a label and yields the smallest intermediate tensor.
    """
    output = list(output)
    work = []
    for t, labs in tensors:
        work.append(_reduce_single(t, list(labs), output))
    while len(work) > 1:
        best = None
        for a in range(len(work)):
            la = set(work[a][1])
            for b in range(a + 1, len(work)):
                if la.isdisjoint(work[b][1]):
                    continue
                keep = _kept_labels(work, a, b, output)
                size = int(np.prod([_dim(work, x) for x in keep], dtype=object)) if keep else 1
                if best is None or size < best[0]:
                    best = (size, a, b, keep)
        if best is None:
            # remaining pieces are disconnected; take outer products in order
            best = (None, 0, 1, _kept_labels(work, 0, 1, output))
        size, a, b, keep = best
        if size is not None and size > max_intermediate:
            raise ContractionTooLarge(f"intermediate tensor of {size} entries exceeds {max_intermediate}")
        merged = _einsum_pair(work[a], work[b], keep)
        work = [w for i, w in enumerate(work) if i not in (a, b)] + [merged]
    if not work:
        return np.array(1.0)
    t, labs = work[0]
    return _einsum_single(t, labs, output)


def _dim(work, label):
    for t, labs in work:
        if label in labs:
            return t.shape[labs.index(label)]
    raise KeyError(label)


def _kept_labels(work, a, b, output):
    ta, tb = work[a][1], work[b][1]
    others = set()
    for i, (_, labs) in enumerate(work):
        if i not in (a, b):
            others.update(labs)
    keep = []
    for x in ta + tb:
        if x not in keep and (x in output or x in others):
            keep.append(x)
    return keep


def _letters(labels):
    table = {}
    for x in labels:
        if x not in table:
            table[x] = ascii_letters[len(table)]
    return table


def _einsum_pair(wa, wb, keep):
    (ta, la), (tb, lb) = wa, wb
    table = _letters(la + lb)
    spec = "".join(table[x] for x in la) + "," + "".join(table[x] for x in lb)
    spec += "->" + "".join(table[x] for x in keep)
    return np.einsum(spec, ta, tb), keep


def _einsum_single(t, labs, keep):
    table = _letters(labs)
    return np.einsum("".join(table[x] for x in labs) + "->" + "".join(table[x] for x in keep), t)


def _reduce_single(t, labs, output):
    # trace out labels that occur twice on this tensor alone (self-loops)
    counts = {x: labs.count(x) for x in labs}
    keep = []
    for x in labs:
        if x not in keep and (counts[x] == 1 or x in output):
            keep.append(x)
    if keep == labs:
        return t, labs
    return _einsum_single(t, labs, keep), keep


def eval(r: VertexModel, d: Diagram, max_intermediate: int = DEFAULT_MAX_INTERMEDIATE):
    """f_R(d) by greedy tensor-network contraction."""
    validate(d)
    labels = _edge_labels(d)
    net = [(r.entries, labs) for labs in labels]
    value = contract(net, [], max_intermediate) if net else np.array(1)
    return _scalar(value.item() if hasattr(value, "item") else value, r.exact) * _circle_factor(r, d)


def eval_quantum(r: VertexModel, q) -> float:
    """Linear extension of eval to a QuantumDiagram."""
    total = Fraction(0) if r.exact else 0.0
    for d, c in q:
        total += (c if r.exact else float(c)) * eval(r, d)
    return total


def environment(r: VertexModel, d: Diagram, v: int, max_intermediate: int = DEFAULT_MAX_INTERMEDIATE) -> np.ndarray:
    """Tensor E with f_R(d) = <R, E>: the network with crossing ``v`` (1-based) cut open.

    Open index p of E is the color at slot p of crossing v.
    """
    validate(d)
    labels = _edge_labels(d)
    n = r.n
    net = [(r.entries, labs) for w, labs in enumerate(labels) if w != v - 1]
    eye = np.eye(n, dtype=object) if r.exact else np.eye(n)
    outs = [-(p + 1) for p in range(4)]
    for p, e in enumerate(labels[v - 1]):
        net.append((eye, [outs[p], e]))
    env = contract(net, outs, max_intermediate)
    return env * _circle_factor(r, d)


def gradient(r: VertexModel, d: Diagram) -> np.ndarray:
    """Derivative of f_R(d) in R, as coordinates in the orthonormal basis of symmetric tensors.

    f_R is multilinear in the per-crossing copies of R, so the derivative is
    the sum over crossings of the cut-open environments.
    """
    validate(d)
    r = r.as_float()
    if d.crossings == 0:
        return np.zeros(basis_size(r.n))
    total = sum(environment(r, d, v) for v in range(1, d.crossings + 1))
    return to_coords(total)


def identity_prediction(n: int, d: Diagram) -> int:
    """f of the identity model: n to the number of strands."""
    return n ** strand_count(d)
