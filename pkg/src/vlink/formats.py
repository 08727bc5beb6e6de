"""Line-oriented text formats for diagrams, quantum diagrams and tensors.

Diagram::

    diagram v1
    crossings <c>
    circles <u>
    edge <v1> <p1> <v2> <p2>      (2c lines)

Quantum diagram: blocks of ``term <p>/<q>`` each followed by a diagram block.

Tensor::

    rmatrix v1
    n <n>
    symmetrize on|off
    entry <i> <j> <k> <l> <value>   (value decimal or p/q; omitted entries are 0)

``#`` starts a comment; blank lines are ignored.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .diagram import Diagram, QuantumDiagram, canonical_form, qd_combine, validate
from .model import VertexModel, make_model


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


def parse_rational(text: str) -> Fraction:
    """Exact value of '3', '-2/5' or '0.125'."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"not a rational number: {text!r}") from exc


def _lines(text: str) -> list[tuple[int, list[str]]]:
    out = []
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((no, line.split()))
    return out


def _expect(tokens, no, key, nargs=1):
    if tokens[0] != key or len(tokens) != nargs + 1:
        raise FormatError(f"expected '{key}' with {nargs} value(s), got {' '.join(tokens)!r}", no)
    return tokens[1:]


def _int(tok, no):
    try:
        return int(tok)
    except ValueError:
        raise FormatError(f"not an integer: {tok!r}", no) from None


def _parse_diagram_lines(lines, pos):
    no, tok = lines[pos]
    if tok != ["diagram", "v1"]:
        raise FormatError("expected header 'diagram v1'", no)
    if pos + 2 >= len(lines):
        raise FormatError("truncated diagram header", no)
    no_c, tok_c = lines[pos + 1]
    no_u, tok_u = lines[pos + 2]
    c = _int(_expect(tok_c, no_c, "crossings")[0], no_c)
    u = _int(_expect(tok_u, no_u, "circles")[0], no_u)
    edges = []
    pos += 3
    for _ in range(2 * c):
        if pos >= len(lines):
            raise FormatError(f"expected {2 * c} edge lines")
        no, tok = lines[pos]
        v1, p1, v2, p2 = (_int(t, no) for t in _expect(tok, no, "edge", 4))
        edges.append(((v1, p1), (v2, p2)))
        pos += 1
    d = Diagram(c, tuple(edges), u)
    validate(d)
    return d, pos


def parse_diagram(text: str) -> Diagram:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty diagram file")
    d, pos = _parse_diagram_lines(lines, 0)
    if pos != len(lines):
        raise FormatError("unexpected content after diagram", lines[pos][0])
    return d


def _diagram_block(d: Diagram) -> list[str]:
    d = canonical_form(d)
    out = ["diagram v1", f"crossings {d.crossings}", f"circles {d.circles}"]
    out += [f"edge {v1} {p1} {v2} {p2}" for (v1, p1), (v2, p2) in d.edges]
    return out


def serialize_diagram(d: Diagram) -> str:
    return "\n".join(_diagram_block(d)) + "\n"


def parse_quantum(text: str) -> QuantumDiagram:
    lines = _lines(text)
    terms = []
    pos = 0
    while pos < len(lines):
        no, tok = lines[pos]
        coef = parse_rational(_expect(tok, no, "term")[0])
        d, pos = _parse_diagram_lines(lines, pos + 1)
        terms.append((coef, d))
    return qd_combine(terms)


def serialize_quantum(q: QuantumDiagram) -> str:
    out = []
    for d, c in q:
        out.append(f"term {c.numerator}/{c.denominator}")
        out += _diagram_block(d)
    return "\n".join(out) + ("\n" if out else "")


def parse_tensor(text: str, exact: bool = False) -> VertexModel:
    lines = _lines(text)
    if not lines or lines[0][1] != ["rmatrix", "v1"]:
        raise FormatError("expected header 'rmatrix v1'", lines[0][0] if lines else None)
    n = None
    sym = False
    entries = []
    for no, tok in lines[1:]:
        if tok[0] == "n":
            n = _int(_expect(tok, no, "n")[0], no)
        elif tok[0] == "symmetrize":
            flag = _expect(tok, no, "symmetrize")[0]
            if flag not in ("on", "off"):
                raise FormatError("symmetrize must be 'on' or 'off'", no)
            sym = flag == "on"
        elif tok[0] == "entry":
            *idx, value = _expect(tok, no, "entry", 5)
            entries.append((*(_int(t, no) for t in idx), parse_rational(value)))
        else:
            raise FormatError(f"unknown keyword {tok[0]!r}", no)
    if n is None:
        raise FormatError("missing 'n <n>' line")
    return make_model(n, entries, symmetrize_=sym, exact=exact)


def serialize_tensor(r: VertexModel) -> str:
    out = ["rmatrix v1", f"n {r.n}", "symmetrize off"]
    for idx in np.ndindex(r.entries.shape):
        x = r.entries[idx]
        if x == 0:
            continue
        value = f"{x.numerator}/{x.denominator}" if isinstance(x, Fraction) else repr(float(x))
        out.append("entry " + " ".join(str(i + 1) for i in idx) + " " + value)
    return "\n".join(out) + "\n"


def rational_list(text: str) -> list[Fraction]:
    return [parse_rational(t) for t in text.split(",") if t.strip()]
