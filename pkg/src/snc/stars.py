"""Generalized-star recognition, decomposition, and the adversarial build.

A generalized star is a clique layered into cores X1..Xn together with a
stable set split into ray classes A1..An (plus isolated vertices A0),
where every vertex of class Ai is adjacent to exactly X1 u ... u Xi.
Three equivalent views are implemented:

* structural: construct and validate a decomposition (decompose);
* pairwise: no two vertex-disjoint edges induce a subgraph of a
  four-cycle (check_condition_B);
* orientational: every digraph whose missing graph is G has only good
  missing edges; refuted constructively by adversarial_digraph when the
  pairwise condition fails.

Decompositions are not unique (a complete graph also reads as a clique
core with one ray peeled off), so equality of decompositions is never
tested structurally; validate_decomposition is the arbiter everywhere.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .digraph import Digraph, UndirectedGraph
from .errors import (
    CounterexampleReport,
    InternalTheoremViolation,
    NotAViolation,
    TooLarge,
)
from .good_edges import classify_missing_edge

MAX_STABLE_SET_N = 64


@dataclass(frozen=True)
class GeneralizedStarDecomposition:
    """Partition (A0..Ak; X1..Xn) of a vertex set.

    a_sets[0] is A0 (isolated vertices, possibly empty); a_sets[i] for
    i >= 1 are the nonempty ray classes; x_sets are the nonempty core
    layers.  The ray list may stop short of the core list: trailing core
    layers with no rays of their own are how plain cliques fit in.
    """

    a_sets: tuple[frozenset[int], ...]
    x_sets: tuple[frozenset[int], ...]

    @property
    def ray_class_count(self) -> int:
        return len(self.a_sets) - 1

    @property
    def layer_count(self) -> int:
        return len(self.x_sets)

    def core(self) -> frozenset[int]:
        out: frozenset[int] = frozenset()
        for x in self.x_sets:
            out |= x
        return out

    def rays(self) -> frozenset[int]:
        out: frozenset[int] = frozenset()
        for a in self.a_sets[1:]:
            out |= a
        return out

    def to_dict(self) -> dict:
        return {
            "a_sets": [sorted(s) for s in self.a_sets],
            "x_sets": [sorted(s) for s in self.x_sets],
        }


CLAUSE_PARTITION = "partition"
CLAUSE_CLIQUE = "clique"
CLAUSE_STABLE = "stable"
CLAUSE_NEIGHBORHOODS = "neighborhoods"


def validate_decomposition(
    g: UndirectedGraph, dec: GeneralizedStarDecomposition
) -> tuple[bool, Optional[str]]:
    """Check the four decomposition rules literally and exactly.

    partition: the listed sets are disjoint and cover every vertex.
    clique: the core layers are nonempty and their union is complete.
    stable: ray classes are nonempty, their union with A0 has no edge.
    neighborhoods: A0 vertices are isolated; a class-i ray is adjacent to
    exactly the first i core layers.
    """
    if not dec.a_sets:
        return False, CLAUSE_PARTITION
    all_sets = list(dec.a_sets) + list(dec.x_sets)
    seen: set[int] = set()
    for s in all_sets:
        for v in s:
            if not 0 <= v < g.n or v in seen:
                return False, CLAUSE_PARTITION
            seen.add(v)
    if len(seen) != g.n:
        return False, CLAUSE_PARTITION

    core = dec.core()
    if any(not x for x in dec.x_sets):
        return False, CLAUSE_CLIQUE
    if not g.is_clique(core):
        return False, CLAUSE_CLIQUE

    if any(not a for a in dec.a_sets[1:]):
        return False, CLAUSE_STABLE
    stable = set(dec.a_sets[0])
    for a in dec.a_sets[1:]:
        stable |= a
    if not g.is_stable(stable):
        return False, CLAUSE_STABLE

    if dec.ray_class_count > dec.layer_count:
        return False, CLAUSE_NEIGHBORHOODS
    for v in dec.a_sets[0]:
        if g.degree(v) != 0:
            return False, CLAUSE_NEIGHBORHOODS
    ladder: set[int] = set()
    for i, x in enumerate(dec.x_sets, start=1):
        ladder |= x
        if i <= dec.ray_class_count:
            for v in dec.a_sets[i]:
                if g.neighbors(v) != ladder:
                    return False, CLAUSE_NEIGHBORHOODS
    return True, None


def max_stable_set(g: UndirectedGraph) -> frozenset[int]:
    """Maximum stable set by exact branch and bound over bitmasks.

    Branches include-first on the lowest candidate vertex, so the first
    maximum found is the lexicographically smallest sorted sequence among
    all maximum stable sets; pruning on <= best preserves that choice.
    The bound is a greedy clique cover of the candidates.
    """
    if g.n > MAX_STABLE_SET_N:
        raise TooLarge(f"exact stable set limited to {MAX_STABLE_SET_N} vertices, got {g.n}")
    n = g.n
    nbr = [0] * n
    for u in range(n):
        for v in g.neighbors(u):
            nbr[u] |= 1 << v

    def clique_cover_bound(cand: int) -> int:
        cliques = 0
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            clique = nbr[v] & cand  # vertices that could join v's clique
            while clique:
                lw = clique & -clique
                u = lw.bit_length() - 1
                cand ^= lw
                clique &= nbr[u]
            cliques += 1
        return cliques

    best_mask = 0
    best_size = -1

    def grow(chosen: int, size: int, cand: int) -> None:
        nonlocal best_mask, best_size
        if not cand:
            if size > best_size:
                best_size, best_mask = size, chosen
            return
        if size + clique_cover_bound(cand) <= best_size:
            return
        low = cand & -cand
        v = low.bit_length() - 1
        grow(chosen | low, size + 1, cand & ~(nbr[v] | low))
        grow(chosen, size, cand ^ low)

    grow(0, 0, (1 << n) - 1)
    return frozenset(v for v in range(n) if best_mask >> v & 1)


@dataclass(frozen=True)
class DecomposeResult:
    decomposition: Optional[GeneralizedStarDecomposition]
    failed_clause: Optional[str]
    stable_set: frozenset[int]

    @property
    def ok(self) -> bool:
        return self.decomposition is not None and self.failed_clause is None


def decompose(g: UndirectedGraph) -> DecomposeResult:
    """Constructive decomposition attempt.

    Peel off the isolated vertices as A0, take a maximum stable set S of
    the rest, group S by increasing degree into ray classes, and carve the
    core layers as the successive neighborhood increments.  The candidate
    is then validated; a failed clause means the graph is not a
    generalized star (nothing is patched).
    """
    a0 = frozenset(g.isolated())
    rest = sorted(set(range(g.n)) - a0)
    sub, back = g.induced(rest)
    s_local = max_stable_set(sub)
    s = frozenset(back[v] for v in s_local)

    by_degree: dict[int, set[int]] = {}
    for v in sorted(s):
        by_degree.setdefault(g.degree(v), set()).add(v)
    a_sets: list[frozenset[int]] = [a0]
    x_sets: list[frozenset[int]] = []
    covered: set[int] = set()
    for d in sorted(by_degree):
        cls = frozenset(by_degree[d])
        a_sets.append(cls)
        nbhd: set[int] = set()
        for v in cls:
            nbhd |= g.neighbors(v)
        x_sets.append(frozenset(nbhd - covered))
        covered |= nbhd
    # clique vertices never adjacent to the stable set stay unassigned and
    # make the partition clause fail, which is the intended verdict
    candidate = GeneralizedStarDecomposition(tuple(a_sets), tuple(x_sets))
    ok, clause = validate_decomposition(g, candidate)
    if not ok:
        return DecomposeResult(None, clause, s)
    return DecomposeResult(candidate, None, s)


@dataclass(frozen=True)
class SquareViolation:
    """Two vertex-disjoint edges inducing a subgraph of a four-cycle.

    With e1 = (a,x) and e2 = (b,y), the cross edges present in the graph
    all lie on one of the two possible four-cycles through e1 and e2:
    pairing "xb-ay" allows cross edges {x,b} and {a,y} (so {a,b} and
    {x,y} are absent), pairing "xy-ab" allows {x,y} and {a,b}.
    """

    e1: tuple[int, int]
    e2: tuple[int, int]
    pairing: str

    def labeling(self) -> tuple[int, int, int, int]:
        """Vertices (x, y, u, v) with xy and uv edges, xu and yv non-edges."""
        a, x = self.e1
        b, y = self.e2
        if self.pairing == "xb-ay":
            return a, x, b, y
        return a, x, y, b

    def to_dict(self) -> dict:
        x, y, u, v = self.labeling()
        return {
            "e1": list(self.e1),
            "e2": list(self.e2),
            "pairing": self.pairing,
            "labeling": {"x": x, "y": y, "u": u, "v": v},
        }


def _induces_square_subgraph(g: UndirectedGraph, e1, e2) -> Optional[str]:
    a, x = e1
    b, y = e2
    present = set()
    if g.has_edge(x, b):
        present.add("xb")
    if g.has_edge(a, y):
        present.add("ay")
    if g.has_edge(x, y):
        present.add("xy")
    if g.has_edge(a, b):
        present.add("ab")
    if present <= {"xb", "ay"}:
        return "xb-ay"
    if present <= {"xy", "ab"}:
        return "xy-ab"
    return None


def _endpoint_covers(g: UndirectedGraph, e1, e2) -> bool:
    # equivalent reading: some endpoint of one edge is adjacent to both
    # endpoints of the other
    for p in e1:
        if g.has_edge(p, e2[0]) and g.has_edge(p, e2[1]):
            return True
    for p in e2:
        if g.has_edge(p, e1[0]) and g.has_edge(p, e1[1]):
            return True
    return False


def check_condition_B(g: UndirectedGraph) -> Optional[SquareViolation]:
    """First pair of disjoint edges inducing a subgraph of a four-cycle.

    Scans edge pairs in sorted order and returns None when no such pair
    exists.  Both formalizations (cross-edge containment and the
    covering-endpoint reading) are evaluated and must agree.
    """
    edges = g.edges()
    for idx, e1 in enumerate(edges):
        for e2 in edges[idx + 1 :]:
            if e1[0] in e2 or e1[1] in e2:
                continue
            pairing = _induces_square_subgraph(g, e1, e2)
            covered = _endpoint_covers(g, e1, e2)
            if covered != (pairing is None):
                raise InternalTheoremViolation(
                    CounterexampleReport(
                        stage="square-formalizations-disagree",
                        description="cross-edge and covering-endpoint readings disagree",
                        state={"graph": g.to_dict(), "e1": list(e1), "e2": list(e2)},
                    )
                )
            if pairing is not None:
                return SquareViolation(e1, e2, pairing)
    return None


@dataclass(frozen=True)
class Classification:
    """Special-case labels for a valid decomposition (A0 is ignored).

    primary picks the most specific true class; the flags report each
    reading independently.  The sun flag follows the level-count reading
    (at most two core layers), which is broader than a literal sun.
    """

    primary: str  # complete | star | sun | general
    complete: bool
    star: bool
    sun: bool
    layers: int
    ray_classes: int
    isolated: int

    def to_dict(self) -> dict:
        return {
            "primary": self.primary,
            "complete": self.complete,
            "star": self.star,
            "sun": self.sun,
            "layers": self.layers,
            "ray_classes": self.ray_classes,
            "isolated": self.isolated,
        }


def classify_special(dec: GeneralizedStarDecomposition) -> Classification:
    """Label a valid decomposition as complete, star, sun, or general."""
    k = dec.ray_class_count
    layers = dec.layer_count
    core_size = len(dec.core())
    complete = k == 0
    star = core_size == 1
    sun = layers <= 2
    if complete:
        primary = "complete"
    elif star:
        primary = "star"
    elif k == 1 and layers == 1:
        primary = "sun"
    else:
        primary = "general"
    return Classification(
        primary=primary,
        complete=complete,
        star=star,
        sun=sun,
        layers=layers,
        ray_classes=k,
        isolated=len(dec.a_sets[0]),
    )


@dataclass(frozen=True)
class AdversarialWitness:
    """A digraph whose missing graph is G and whose designated missing
    edge is not good."""

    digraph: Digraph
    designated_edge: tuple[int, int]

    def to_dict(self) -> dict:
        return {
            "digraph": self.digraph.to_dict(),
            "designated_edge": list(self.designated_edge),
        }


def adversarial_digraph(g: UndirectedGraph, viol: SquareViolation) -> AdversarialWitness:
    """Orient the non-edges of g so the violating edge xy is not good.

    With labeling (x, y, u, v): every vertex not adjacent to u sends an
    arc into u, except x which receives u -> x; symmetrically for v and
    y with v -> y.  Every remaining non-adjacent pair is oriented lower
    index to higher index.  Then u -> x with y unreachable from u within
    two steps, and v -> y with x unreachable from v, so xy fails both
    goodness conditions.
    """
    x, y, u, v = viol.labeling()
    if len({x, y, u, v}) != 4:
        raise NotAViolation("labeling does not give four distinct vertices")
    if not (g.has_edge(x, y) and g.has_edge(u, v)):
        raise NotAViolation("labeled pairs xy and uv must be edges")
    if g.has_edge(x, u) or g.has_edge(y, v):
        raise NotAViolation("labeled pairs xu and yv must be non-edges")

    # uv is an edge of g, so neither loop ever touches the pair {u,v}
    d = Digraph(g.n)
    for w in range(g.n):
        if w != u and not g.has_edge(w, u):
            if w == x:
                d.add_arc(u, x)
            else:
                d.add_arc(w, u)
    for w in range(g.n):
        if w != v and not g.has_edge(w, v):
            if w == y:
                d.add_arc(v, y)
            else:
                d.add_arc(w, v)
    for p, q in g.non_edges():
        if p in (u, v) or q in (u, v):
            continue
        d.add_arc(p, q)

    from .digraph import missing_graph  # local to keep module top imports lean

    if missing_graph(d) != g:
        raise InternalTheoremViolation(
            CounterexampleReport(
                stage="adversarial-missing-graph",
                description="constructed digraph does not have the requested missing graph",
                state={"graph": g.to_dict(), "digraph": d.to_dict()},
            )
        )
    status = classify_missing_edge(d, x, y)
    if status.good:
        raise InternalTheoremViolation(
            CounterexampleReport(
                stage="adversarial-edge-good",
                description="designated edge of the adversarial digraph is good",
                state={"graph": g.to_dict(), "digraph": d.to_dict(), "edge": [x, y]},
            )
        )
    return AdversarialWitness(d, (min(x, y), max(x, y)))


@dataclass(frozen=True)
class RecognitionReport:
    is_generalized_star: bool
    decomposition: Optional[GeneralizedStarDecomposition]
    failed_clause: Optional[str]
    classification: Optional[Classification]
    violation: Optional[SquareViolation]
    adversarial: Optional[AdversarialWitness]

    def to_dict(self) -> dict:
        return {
            "kind": "recognition_report",
            "is_generalized_star": self.is_generalized_star,
            "decomposition": self.decomposition.to_dict() if self.decomposition else None,
            "failed_clause": self.failed_clause,
            "classification": self.classification.to_dict() if self.classification else None,
            "square_violation": self.violation.to_dict() if self.violation else None,
            "adversarial": self.adversarial.to_dict() if self.adversarial else None,
        }


def recognize(g: UndirectedGraph) -> RecognitionReport:
    """Run both recognition routes; they must agree.

    A disagreement between the pairwise condition and the constructive
    decomposition would falsify the characterization theorem and raises
    InternalTheoremViolation with a replayable dump.
    """
    viol = check_condition_B(g)
    res = decompose(g)
    if (viol is None) != res.ok:
        raise InternalTheoremViolation(
            CounterexampleReport(
                stage="route-agreement",
                description="pairwise condition and decomposition disagree",
                state={
                    "graph": g.to_dict(),
                    "violation": viol.to_dict() if viol else None,
                    "failed_clause": res.failed_clause,
                },
            )
        )
    if res.ok:
        assert res.decomposition is not None
        return RecognitionReport(
            is_generalized_star=True,
            decomposition=res.decomposition,
            failed_clause=None,
            classification=classify_special(res.decomposition),
            violation=None,
            adversarial=None,
        )
    assert viol is not None
    return RecognitionReport(
        is_generalized_star=False,
        decomposition=None,
        failed_clause=res.failed_clause,
        classification=None,
        violation=viol,
        adversarial=adversarial_digraph(g, viol),
    )
