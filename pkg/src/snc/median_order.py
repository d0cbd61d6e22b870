"""Weighted local median orders of tournaments, certified exactly.

An order v1..vn of a weighted tournament satisfies the feedback property
when, for every interval [i,j] of the order, the leading vertex vi
out-weighs its in-weight inside the interval and the trailing vertex vj
in-weighs its out-weight inside the interval.  Any order satisfying the
feedback property is a weighted local median order; its last vertex is a
feed vertex.

Zero weights would let exchange arguments stall, so every computation
runs on perturbed weights w(v) + eps for a symbolic infinitesimal eps
(exact lexicographic arithmetic, truncated at degree two; weight products
never exceed degree two).  Final conclusions are re-checked under the
original weights by the callers that need them.

Two order constructions are provided:

* local_median_order: local search that repairs the first feedback
  violation in a fixed scan order; every move strictly increases the
  perturbed forward-arc objective, so no order repeats and the search
  terminates (a move limit turns pathological slowness into an error).
* exact_median_order: subset dynamic program maximizing the perturbed
  objective globally; feasible to about twenty vertices.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .digraph import Digraph, WeightMap
from .errors import (
    CounterexampleReport,
    InternalTheoremViolation,
    MoveLimitExceeded,
    NegativeWeight,
    NotATournament,
    TooLarge,
)

_ZERO = Fraction(0)


class PerturbedRational:
    """Value c0 + c1*eps + c2*eps^2 with exact rational coefficients.

    eps is an unnamed positive infinitesimal: comparison is lexicographic
    on (c0, c1, c2).  Multiplication truncates at degree two, which is
    exact for every product formed here (weights have degree at most one).
    """

    __slots__ = ("c0", "c1", "c2")

    def __init__(self, c0=0, c1=0, c2=0):
        self.c0 = Fraction(c0)
        self.c1 = Fraction(c1)
        self.c2 = Fraction(c2)

    @classmethod
    def from_weight(cls, w) -> "PerturbedRational":
        """The perturbed weight w + eps; strictly positive for any w >= 0."""
        return cls(w, 1, 0)

    def key(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.c0, self.c1, self.c2)

    def __add__(self, other: "PerturbedRational") -> "PerturbedRational":
        return PerturbedRational(self.c0 + other.c0, self.c1 + other.c1, self.c2 + other.c2)

    def __sub__(self, other: "PerturbedRational") -> "PerturbedRational":
        return PerturbedRational(self.c0 - other.c0, self.c1 - other.c1, self.c2 - other.c2)

    def __mul__(self, other: "PerturbedRational") -> "PerturbedRational":
        return PerturbedRational(
            self.c0 * other.c0,
            self.c0 * other.c1 + self.c1 * other.c0,
            self.c0 * other.c2 + self.c1 * other.c1 + self.c2 * other.c0,
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, PerturbedRational):
            return NotImplemented
        return self.key() == other.key()

    def __lt__(self, other: "PerturbedRational") -> bool:
        return self.key() < other.key()

    def __le__(self, other: "PerturbedRational") -> bool:
        return self.key() <= other.key()

    def __gt__(self, other: "PerturbedRational") -> bool:
        return self.key() > other.key()

    def __ge__(self, other: "PerturbedRational") -> bool:
        return self.key() >= other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def is_positive(self) -> bool:
        return self.key() > (_ZERO, _ZERO, _ZERO)

    def to_dict(self) -> dict:
        return {
            "c0": {"num": self.c0.numerator, "den": self.c0.denominator},
            "c1": {"num": self.c1.numerator, "den": self.c1.denominator},
            "c2": {"num": self.c2.numerator, "den": self.c2.denominator},
        }

    def __repr__(self) -> str:
        return f"PerturbedRational({self.c0}, {self.c1}, {self.c2})"


def perturb_weights(w: WeightMap) -> list[PerturbedRational]:
    """Perturbed weight list, indexed by vertex."""
    for v, wv in enumerate(w):
        if wv < 0:
            raise NegativeWeight(f"weight of vertex {v} is negative")
    return [PerturbedRational.from_weight(wv) for wv in w]


def _rational(doc: dict) -> Fraction:
    return Fraction(int(doc["num"]), int(doc["den"]))


def perturbed_from_dict(doc: dict) -> PerturbedRational:
    return PerturbedRational(_rational(doc["c0"]), _rational(doc["c1"]), _rational(doc["c2"]))


Order = tuple[int, ...]

PREFIX = "prefix"
SUFFIX = "suffix"


@dataclass(frozen=True)
class FeedbackViolation:
    """A strict failure of one interval inequality.

    kind "prefix": at interval [i,j], w(N+ of v_i inside) < w(N- of v_i inside).
    kind "suffix": at interval [i,j], w(N- of v_j inside) < w(N+ of v_j inside).
    Positions i, j are 1-based; lhs < rhs always holds.
    """

    kind: str
    i: int
    j: int
    lhs: PerturbedRational
    rhs: PerturbedRational

    def scan_key(self) -> tuple[int, int, int]:
        return (self.i, self.j, 0 if self.kind == PREFIX else 1)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "i": self.i,
            "j": self.j,
            "lhs": self.lhs.to_dict(),
            "rhs": self.rhs.to_dict(),
        }


@dataclass(frozen=True)
class CertifiedOrder:
    """An order that passed the full feedback check, with its objective."""

    order: Order
    objective: PerturbedRational
    violations_checked: int

    def to_dict(self) -> dict:
        return {
            "order": list(self.order),
            "objective": self.objective.to_dict(),
            "violations_checked": self.violations_checked,
        }


def _require_tournament(t: Digraph) -> None:
    if not t.is_tournament():
        raise NotATournament(
            f"digraph with {t.arc_count} arcs on {t.n} vertices is not a tournament"
        )


def _check_order(t: Digraph, order: Sequence[int]) -> None:
    if sorted(order) != list(range(t.n)):
        raise ValueError("order is not a permutation of the vertex set")


def order_objective(
    t: Digraph, wt: Sequence[PerturbedRational], order: Sequence[int]
) -> PerturbedRational:
    """Sum of w~(tail) * w~(head) over arcs pointing forward in the order."""
    _require_tournament(t)
    _check_order(t, order)
    total = PerturbedRational()
    for i, u in enumerate(order):
        out = t._out[u]
        for v in order[i + 1 :]:
            if v in out:
                total = total + wt[u] * wt[v]
    return total


def feedback_check(
    t: Digraph, wt: Sequence[PerturbedRational], order: Sequence[int]
) -> list[FeedbackViolation]:
    """Every strict interval failure, sorted by (i, j, prefix-before-suffix).

    Interval sums of perturbed weights have no eps^2 component, so the
    inner loops track (rational part, eps count) pairs and only build
    PerturbedRational values for reported violations.
    """
    _require_tournament(t)
    _check_order(t, order)
    n = t.n
    violations: list[FeedbackViolation] = []
    out_adj = t._out
    w0 = [wt[v].c0 for v in range(n)]
    w1 = [wt[v].c1 for v in range(n)]

    # prefix conditions: leading vertex v_i against each interval [i, j]
    for i in range(n):
        vi = order[i]
        out = out_adj[vi]
        out0 = out1 = _ZERO
        in0 = in1 = _ZERO
        for j in range(i + 1, n):
            vj = order[j]
            if vj in out:
                out0 += w0[vj]
                out1 += w1[vj]
            else:
                in0 += w0[vj]
                in1 += w1[vj]
            if (out0, out1) < (in0, in1):
                violations.append(
                    FeedbackViolation(
                        PREFIX,
                        i + 1,
                        j + 1,
                        PerturbedRational(out0, out1),
                        PerturbedRational(in0, in1),
                    )
                )

    # suffix conditions: trailing vertex v_j against each interval [i, j]
    for j in range(n):
        vj = order[j]
        out = out_adj[vj]
        out0 = out1 = _ZERO
        in0 = in1 = _ZERO
        for i in range(j - 1, -1, -1):
            vi = order[i]
            if vi in out:
                out0 += w0[vi]
                out1 += w1[vi]
            else:
                in0 += w0[vi]
                in1 += w1[vi]
            if (in0, in1) < (out0, out1):
                violations.append(
                    FeedbackViolation(
                        SUFFIX,
                        i + 1,
                        j + 1,
                        PerturbedRational(in0, in1),
                        PerturbedRational(out0, out1),
                    )
                )

    violations.sort(key=FeedbackViolation.scan_key)
    return violations


def _conditions_count(n: int) -> int:
    # two inequalities per interval i < j, one for each singleton: n^2
    return n * n


def default_move_limit(n: int) -> int:
    """Local search has no polynomial worst-case bound; 50*n^3 converts a
    pathological run into a reported error instead of a hang."""
    return max(1, 50 * n ** 3)


def _apply_move(order: Order, v: FeedbackViolation) -> Order:
    i, j = v.i - 1, v.j - 1
    lst = list(order)
    if v.kind == PREFIX:
        # move v_i to just after v_j
        moved = lst.pop(i)
        lst.insert(j, moved)
    else:
        # move v_j to just before v_i
        moved = lst.pop(j)
        lst.insert(i, moved)
    return tuple(lst)


def local_median_order(
    t: Digraph,
    w: WeightMap,
    move_limit: Optional[int] = None,
    seed: Optional[int] = None,
    trace: Optional[list] = None,
) -> CertifiedOrder:
    """Local search for an order with the feedback property.

    Starts from ascending vertex indices (or a seeded shuffle when seed is
    given), repeatedly repairs the first violation in scan order, and
    certifies the result with a full feedback check.  Each repair strictly
    increases the perturbed objective, which is asserted per move.
    """
    _require_tournament(t)
    if move_limit is None:
        move_limit = default_move_limit(t.n)
    if move_limit <= 0:
        raise ValueError("move_limit must be positive")
    wt = perturb_weights(w)
    order: Order = tuple(range(t.n))
    if seed is not None:
        from .generators import Rng  # local import; generators depend on digraph only

        lst = list(order)
        Rng(seed).shuffle(lst)
        order = tuple(lst)

    moves = 0
    while True:
        violations = feedback_check(t, wt, order)
        if not violations:
            break
        first = violations[0]
        if moves >= move_limit:
            raise MoveLimitExceeded(order, violations, moves)
        # the moved vertex gains w~(v) * (rhs - lhs) > 0 in the objective
        gain = wt[order[first.i - 1] if first.kind == PREFIX else order[first.j - 1]] * (
            first.rhs - first.lhs
        )
        if not gain.is_positive():
            raise InternalTheoremViolation(
                CounterexampleReport(
                    stage="local-search-gain",
                    description="repair move did not strictly increase the objective",
                    state={
                        "digraph": t.to_dict(),
                        "order": list(order),
                        "violation": first.to_dict(),
                    },
                )
            )
        order = _apply_move(order, first)
        moves += 1
        if trace is not None:
            trace.append({"move": moves, "order": list(order), "repaired": first.to_dict()})

    return CertifiedOrder(order, order_objective(t, wt, order), _conditions_count(t.n))


EXACT_MEDIAN_MAX_N = 20


def exact_median_order(t: Digraph, w: WeightMap) -> CertifiedOrder:
    """Globally optimal order by dynamic programming over vertex subsets.

    Appending v after a placed set S gains w~(v) * sum of w~(u) over in-
    neighbors u of v inside S.  The optimal order must pass the feedback
    check (otherwise a repair move would improve it, contradicting
    optimality); a failure here is a counterexample, not an error.
    """
    _require_tournament(t)
    n = t.n
    if n > EXACT_MEDIAN_MAX_N:
        raise TooLarge(f"exact search limited to {EXACT_MEDIAN_MAX_N} vertices, got {n}")
    wt = perturb_weights(w)
    in_mask = [0] * n
    for v in range(n):
        for u in t._in[v]:
            in_mask[v] |= 1 << u

    size = 1 << n
    dp: list[Optional[PerturbedRational]] = [None] * size
    parent = [-1] * size
    dp[0] = PerturbedRational()
    for mask in range(size):
        base = dp[mask]
        if base is None:
            continue
        for v in range(n):
            bit = 1 << v
            if mask & bit:
                continue
            gain = PerturbedRational()
            hits = mask & in_mask[v]
            while hits:
                low = hits & -hits
                gain = gain + wt[low.bit_length() - 1]
                hits ^= low
            cand = base + wt[v] * gain
            nxt = mask | bit
            if dp[nxt] is None or dp[nxt] < cand:
                dp[nxt] = cand
                parent[nxt] = v

    rev: list[int] = []
    mask = size - 1
    while mask:
        v = parent[mask]
        rev.append(v)
        mask ^= 1 << v
    order = tuple(reversed(rev))
    objective = dp[size - 1]
    assert objective is not None

    violations = feedback_check(t, wt, order)
    if violations:
        raise InternalTheoremViolation(
            CounterexampleReport(
                stage="exact-order-feedback",
                description="globally optimal order failed the feedback check",
                state={
                    "digraph": t.to_dict(),
                    "weights": [str(x) for x in w],
                    "order": list(order),
                    "violations": [v.to_dict() for v in violations],
                },
            )
        )
    return CertifiedOrder(order, objective, _conditions_count(n))


def feed_vertex(co: CertifiedOrder) -> int:
    """The last vertex of a certified order."""
    if not co.order:
        raise ValueError("empty order has no feed vertex")
    return co.order[-1]
