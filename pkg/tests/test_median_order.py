"""Certified orders: perturbed arithmetic, feedback checks, both searches.

Expected values tagged as derived were computed by the independent
oracles used in this file (exhaustive enumeration of all orders) before
being frozen into assertions.
"""
from __future__ import annotations

import itertools
from fractions import Fraction

import pytest

from snc import (
    CertifiedOrder,
    Digraph,
    MoveLimitExceeded,
    NotATournament,
    PerturbedRational,
    WeightMap,
    WeightedDigraph,
    exact_median_order,
    feed_vertex,
    feedback_check,
    has_weighted_snp,
    local_median_order,
    order_objective,
    perturb_weights,
)
from snc.generators import random_tournament, random_weights
from snc.median_order import PREFIX, default_move_limit
from snc.oracle import enumerate_tournaments


def cycle3() -> Digraph:
    return Digraph.from_arcs(3, [(0, 1), (1, 2), (2, 0)])


def transitive3() -> Digraph:
    return Digraph.from_arcs(3, [(0, 1), (0, 2), (1, 2)])


def pr(c0, c1=0, c2=0) -> PerturbedRational:
    return PerturbedRational(c0, c1, c2)


def brute_force_best(t: Digraph, w: WeightMap) -> PerturbedRational:
    """Independent oracle: maximize over every permutation."""
    wt = perturb_weights(w)
    return max(order_objective(t, wt, p) for p in itertools.permutations(range(t.n)))


class TestPerturbedRational:
    def test_comparison_is_lexicographic(self):
        assert pr(1, 1) < pr(1, 2)
        assert pr(1, 5, 5) < pr(2)
        assert pr(0, 1).is_positive()
        assert not pr(0).is_positive()

    def test_arithmetic(self):
        x = pr(Fraction(3, 2), 1)
        y = pr(2, 1)
        assert x + y == pr(Fraction(7, 2), 2)
        assert x * y == pr(3, Fraction(7, 2), 1)
        assert y - x == pr(Fraction(1, 2), 0)

    def test_truncation_at_degree_two(self):
        # eps^2 * eps^1 contributions vanish
        assert pr(0, 0, 1) * pr(0, 1) == pr(0, 0, 0)


def test_perturb_weights_examples():
    wt = perturb_weights(WeightMap([Fraction(3, 2), 0]))
    assert wt[0] == pr(Fraction(3, 2), 1)
    assert wt[1] == pr(0, 1)
    assert wt[1].is_positive()


def test_order_objective_examples():
    w1 = perturb_weights(WeightMap.uniform(3))
    assert order_objective(transitive3(), w1, (0, 1, 2)) == pr(3, 6, 3)
    assert order_objective(cycle3(), w1, (0, 1, 2)) == pr(2, 4, 2)
    assert order_objective(Digraph(1), perturb_weights(WeightMap.uniform(1)), (0,)) == pr(0)


def test_order_objective_rejects_non_tournament():
    with pytest.raises(NotATournament):
        order_objective(Digraph(2), perturb_weights(WeightMap.uniform(2)), (0, 1))


def test_feedback_check_examples():
    w1 = perturb_weights(WeightMap.uniform(3))
    assert feedback_check(cycle3(), w1, (0, 1, 2)) == []
    violations = feedback_check(transitive3(), w1, (2, 1, 0))
    assert violations
    first = violations[0]
    assert (first.kind, first.i, first.j) == (PREFIX, 1, 2)
    assert first.lhs < first.rhs
    assert feedback_check(Digraph(1), perturb_weights(WeightMap.uniform(1)), (0,)) == []


def test_conditions_counted_once_per_form():
    co = local_median_order(cycle3(), WeightMap.uniform(3))
    assert co.violations_checked == 9  # n^2 interval conditions


def test_local_median_order_examples():
    # already certified: zero moves needed, order unchanged
    trace: list = []
    co = local_median_order(cycle3(), WeightMap.uniform(3), trace=trace)
    assert co.order == (0, 1, 2)
    assert trace == []

    # weighted cycle: exhaustive oracle gives optimum 9 at order (1,2,0)
    w = WeightMap([1, 2, 3])
    best = brute_force_best(cycle3(), w)
    assert best.c0 == 9
    co = local_median_order(cycle3(), w)
    assert feedback_check(cycle3(), perturb_weights(w), co.order) == []
    assert co.objective <= best


def test_local_search_reaches_unique_certified_order():
    # the transitive triangle has exactly one violation-free order
    w1 = perturb_weights(WeightMap.uniform(3))
    certified = [
        p for p in itertools.permutations(range(3))
        if not feedback_check(transitive3(), w1, p)
    ]
    assert certified == [(0, 1, 2)]
    for start in itertools.permutations(range(3)):
        t = transitive3()
        co = local_median_order(t, WeightMap.uniform(3), seed=None)
        assert co.order == (0, 1, 2)


def test_local_search_trace_is_strictly_improving():
    wt_cache = {}
    for seed in range(10):
        n = 4 + seed % 4
        t = random_tournament(n, seed)
        w = random_weights(n, seed + 50, 10)
        trace: list = []
        co = local_median_order(t, w, trace=trace)
        wt = perturb_weights(w)
        objectives = [order_objective(t, wt, tuple(step["order"])) for step in trace]
        objectives.append(co.objective)
        for a, b in zip(objectives, objectives[1:]):
            assert a <= b
        if trace:
            start_obj = order_objective(t, wt, tuple(range(n)))
            assert start_obj < objectives[0]


def test_move_limit_exceeded_reports_state():
    # reversed transitive triangle: the ascending start needs two repairs
    t = Digraph.from_arcs(3, [(2, 1), (2, 0), (1, 0)])
    assert local_median_order(t, WeightMap.uniform(3)).order == (2, 1, 0)
    with pytest.raises(MoveLimitExceeded) as exc:
        local_median_order(t, WeightMap.uniform(3), move_limit=1)
    err = exc.value
    assert err.moves == 1
    assert err.violations
    assert default_move_limit(3) == 50 * 27


def test_exact_median_order_examples():
    co = exact_median_order(cycle3(), WeightMap([1, 2, 3]))
    assert co.objective.c0 == 9
    co = exact_median_order(transitive3(), WeightMap.uniform(3))
    assert co.order == (0, 1, 2)
    assert co.objective.c0 == 3
    co = exact_median_order(Digraph.from_arcs(2, [(0, 1)]), WeightMap.uniform(2))
    assert co.order == (0, 1)


def test_exact_matches_permutation_brute_force():
    for seed in range(8):
        n = 4 + seed % 3
        t = random_tournament(n, seed * 7 + 1)
        w = random_weights(n, seed * 13 + 2, 6)
        co = exact_median_order(t, w)
        assert co.objective == brute_force_best(t, w)


def test_local_objective_never_beats_exact():
    for seed in range(40):
        n = 3 + seed % 6  # up to 8 vertices
        t = random_tournament(n, seed * 31 + 5)
        w = random_weights(n, seed * 17 + 4, 10)
        local = local_median_order(t, w)
        exact = exact_median_order(t, w)
        assert local.objective <= exact.objective


def test_perturbation_soundness_on_random_sets():
    from snc.generators import Rng

    rng = Rng(77)
    for _ in range(200):
        n = 1 + rng.below(9)
        w = random_weights(n, rng.next_u64(), 6)
        wt = perturb_weights(w)
        a = [v for v in range(n) if rng.bit()]
        b = [v for v in range(n) if rng.bit()]
        sum_a = sum((wt[v] for v in a), PerturbedRational())
        sum_b = sum((wt[v] for v in b), PerturbedRational())
        if sum_a <= sum_b:
            assert w.total(a) <= w.total(b)


def test_feed_vertex():
    assert feed_vertex(CertifiedOrder((0, 1, 2), PerturbedRational(), 9)) == 2
    assert feed_vertex(CertifiedOrder((0,), PerturbedRational(), 1)) == 0
    with pytest.raises(ValueError):
        feed_vertex(CertifiedOrder((), PerturbedRational(), 0))


def test_feed_vertex_has_weighted_snp_randomized():
    for seed in range(100):
        from snc.generators import Rng

        rng = Rng(seed)
        n = 1 + rng.below(8)
        t = random_tournament(n, rng.next_u64())
        w = random_weights(n, rng.next_u64(), 10)
        co = local_median_order(t, w)
        assert has_weighted_snp(WeightedDigraph(t, w), feed_vertex(co)).holds


def test_feed_vertex_has_snp_exhaustive_small():
    for n in range(1, 5):
        w = WeightMap.uniform(n)
        for t in enumerate_tournaments(n):
            co = local_median_order(t, w)
            assert has_weighted_snp(WeightedDigraph(t, w), feed_vertex(co)).holds
