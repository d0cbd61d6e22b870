"""Input parsing and stable serialization for the command-line front door.

Text formats (bit-exact, newline-terminated, `#` starts a comment):

    digraph <n>              graph <n>
    arc <u> <v>              edge <u> <v>
    weight <v> <num> <den>

Vertex tokens are either all decimal indices in [0, n) or all symbolic
labels (mapped to dense indices in first-appearance order); mixing the
two styles in one file is rejected.  Weights default to 1 when omitted.

JSON instances mirror the same content: {"kind": "digraph", "n": ...,
"arcs": [[u,v],...], "weights": [{"num","den"},...], "labels": [...]}
and {"kind": "graph", "n": ..., "edges": [[u,v],...], "labels": [...]}.
Parsing then serializing then parsing is the identity on content.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Optional

from .digraph import Digraph, UndirectedGraph, WeightedDigraph, WeightMap
from .errors import ParseError, SncError


class _LabelTable:
    """Vertex token resolution: numeric ids or dense symbolic labels."""

    def __init__(self, n: int):
        self.n = n
        self.mode: Optional[str] = None  # "numeric" | "symbolic"
        self.by_label: dict[str, int] = {}

    def resolve(self, token: str, line: int) -> int:
        numeric = token.isdigit()
        mode = "numeric" if numeric else "symbolic"
        if self.mode is None:
            self.mode = mode
        elif self.mode != mode:
            raise ParseError(
                f"vertex token {token!r} mixes numeric and symbolic labels", line
            )
        if numeric:
            v = int(token)
            if v >= self.n:
                raise ParseError(f"vertex {v} out of range [0,{self.n})", line)
            return v
        if token in self.by_label:
            return self.by_label[token]
        if len(self.by_label) >= self.n:
            raise ParseError(f"more than {self.n} distinct labels", line)
        v = len(self.by_label)
        self.by_label[token] = v
        return v

    def labels(self) -> list[str]:
        if self.mode == "symbolic":
            out = [""] * self.n
            for label, v in self.by_label.items():
                out[v] = label
            for v in range(self.n):
                if not out[v]:
                    out[v] = str(v)
            return out
        return [str(v) for v in range(self.n)]


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _parse_header(tokens: list[str], lineno: int, kind: str) -> int:
    if len(tokens) != 2 or tokens[0] != kind:
        raise ParseError(f"expected header '{kind} <n>'", lineno)
    try:
        n = int(tokens[1])
    except ValueError:
        raise ParseError(f"bad vertex count {tokens[1]!r}", lineno) from None
    if n < 0:
        raise ParseError("vertex count must be nonnegative", lineno)
    return n


def parse_digraph(text: str) -> tuple[WeightedDigraph, list[str]]:
    """Parse the digraph text format; weights default to 1."""
    it = _lines(text)
    try:
        lineno, tokens = next(it)
    except StopIteration:
        raise ParseError("empty input", 1) from None
    n = _parse_header(tokens, lineno, "digraph")
    g = Digraph(n)
    table = _LabelTable(n)
    weights: dict[int, Fraction] = {}
    for lineno, tokens in it:
        if tokens[0] == "arc":
            if len(tokens) != 3:
                raise ParseError("expected 'arc <u> <v>'", lineno)
            u = table.resolve(tokens[1], lineno)
            v = table.resolve(tokens[2], lineno)
            try:
                g.add_arc(u, v)
            except SncError as exc:
                raise type(exc)(f"line {lineno}: {exc}") from None
        elif tokens[0] == "weight":
            if len(tokens) != 4:
                raise ParseError("expected 'weight <v> <num> <den>'", lineno)
            v = table.resolve(tokens[1], lineno)
            try:
                num, den = int(tokens[2]), int(tokens[3])
            except ValueError:
                raise ParseError("weight numerator and denominator must be integers", lineno) from None
            if den <= 0:
                raise ParseError("weight denominator must be positive", lineno)
            if num < 0:
                raise ParseError("weights must be nonnegative", lineno)
            if v in weights:
                raise ParseError(f"duplicate weight for vertex token {tokens[1]!r}", lineno)
            weights[v] = Fraction(num, den)
        else:
            raise ParseError(f"unknown directive {tokens[0]!r}", lineno)
    return WeightedDigraph(g, WeightMap.from_dict(n, weights)), table.labels()


def parse_graph(text: str) -> tuple[UndirectedGraph, list[str]]:
    """Parse the undirected graph text format."""
    it = _lines(text)
    try:
        lineno, tokens = next(it)
    except StopIteration:
        raise ParseError("empty input", 1) from None
    n = _parse_header(tokens, lineno, "graph")
    g = UndirectedGraph(n)
    table = _LabelTable(n)
    for lineno, tokens in it:
        if tokens[0] != "edge":
            raise ParseError(f"unknown directive {tokens[0]!r}", lineno)
        if len(tokens) != 3:
            raise ParseError("expected 'edge <u> <v>'", lineno)
        u = table.resolve(tokens[1], lineno)
        v = table.resolve(tokens[2], lineno)
        try:
            g.add_edge(u, v)
        except SncError as exc:
            raise type(exc)(f"line {lineno}: {exc}") from None
    return g, table.labels()


def serialize_digraph(wd: WeightedDigraph, labels: Optional[list[str]] = None) -> str:
    """Canonical text form: sorted arcs, weight lines only where not 1."""
    d, w = wd.digraph, wd.weights
    name = labels if labels is not None else [str(v) for v in range(d.n)]
    lines = [f"digraph {d.n}"]
    lines += [f"arc {name[u]} {name[v]}" for u, v in d.arcs()]
    lines += [
        f"weight {name[v]} {w[v].numerator} {w[v].denominator}"
        for v in range(d.n)
        if w[v] != 1
    ]
    return "\n".join(lines) + "\n"


def serialize_graph(g: UndirectedGraph, labels: Optional[list[str]] = None) -> str:
    name = labels if labels is not None else [str(v) for v in range(g.n)]
    lines = [f"graph {g.n}"]
    lines += [f"edge {name[u]} {name[v]}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def digraph_instance_dict(wd: WeightedDigraph, labels: Optional[list[str]] = None) -> dict:
    d = wd.digraph
    return {
        "kind": "digraph",
        "n": d.n,
        "arcs": [list(a) for a in d.arcs()],
        "weights": wd.weights.to_dicts(),
        "labels": labels if labels is not None else [str(v) for v in range(d.n)],
    }


def graph_instance_dict(g: UndirectedGraph, labels: Optional[list[str]] = None) -> dict:
    return {
        "kind": "graph",
        "n": g.n,
        "edges": [list(e) for e in g.edges()],
        "labels": labels if labels is not None else [str(v) for v in range(g.n)],
    }


def _rational_from_dict(d: dict, where: str) -> Fraction:
    try:
        num, den = int(d["num"]), int(d["den"])
    except (KeyError, TypeError, ValueError):
        raise ParseError(f"bad rational in {where}") from None
    if den <= 0:
        raise ParseError(f"nonpositive denominator in {where}")
    return Fraction(num, den)


def digraph_from_instance_dict(doc: dict) -> tuple[WeightedDigraph, list[str]]:
    try:
        n = int(doc["n"])
        arcs = [(int(u), int(v)) for u, v in doc.get("arcs", [])]
    except (KeyError, TypeError, ValueError):
        raise ParseError("bad digraph instance") from None
    g = Digraph.from_arcs(n, arcs)
    raw = doc.get("weights")
    if raw is None:
        w = WeightMap.uniform(n)
    else:
        if len(raw) != n:
            raise ParseError("weights list must cover every vertex")
        w = WeightMap([_rational_from_dict(r, "weights") for r in raw])
    labels = [str(x) for x in doc.get("labels", [str(v) for v in range(n)])]
    if len(labels) != n:
        raise ParseError("labels list must cover every vertex")
    return WeightedDigraph(g, w), labels


def graph_from_instance_dict(doc: dict) -> tuple[UndirectedGraph, list[str]]:
    try:
        n = int(doc["n"])
        edges = [(int(u), int(v)) for u, v in doc.get("edges", [])]
    except (KeyError, TypeError, ValueError):
        raise ParseError("bad graph instance") from None
    g = UndirectedGraph.from_edges(n, edges)
    labels = [str(x) for x in doc.get("labels", [str(v) for v in range(n)])]
    if len(labels) != n:
        raise ParseError("labels list must cover every vertex")
    return g, labels


def load_digraph(text: str) -> tuple[WeightedDigraph, list[str]]:
    """Text or JSON digraph input, detected by the leading character."""
    if text.lstrip().startswith("{"):
        doc = _load_json(text)
        if doc.get("kind") != "digraph":
            raise ParseError("expected a digraph instance")
        return digraph_from_instance_dict(doc)
    return parse_digraph(text)


def load_graph(text: str) -> tuple[UndirectedGraph, list[str]]:
    """Text or JSON graph input, detected by the leading character."""
    if text.lstrip().startswith("{"):
        doc = _load_json(text)
        if doc.get("kind") != "graph":
            raise ParseError("expected a graph instance")
        return graph_from_instance_dict(doc)
    return parse_graph(text)


def _load_json(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ParseError("expected a JSON object")
    return doc


def digraph_to_dot(wd: WeightedDigraph, labels: Optional[list[str]] = None) -> str:
    """Lossy DOT export for human inspection; missing edges are dashed."""
    d = wd.digraph
    name = labels if labels is not None else [str(v) for v in range(d.n)]
    out = ["digraph G {"]
    for v in range(d.n):
        w = wd.weights[v]
        out.append(f'  {v} [label="{name[v]} ({w})"];')
    for u, v in d.arcs():
        out.append(f"  {u} -> {v};")
    for u, v in d.missing_pairs():
        out.append(f"  {u} -> {v} [dir=none, style=dashed];")
    out.append("}")
    return "\n".join(out) + "\n"


def graph_to_dot(g: UndirectedGraph, labels: Optional[list[str]] = None) -> str:
    name = labels if labels is not None else [str(v) for v in range(g.n)]
    out = ["graph G {"]
    for v in range(g.n):
        out.append(f'  {v} [label="{name[v]}"];')
    for u, v in g.edges():
        out.append(f"  {u} -- {v};")
    out.append("}")
    return "\n".join(out) + "\n"
