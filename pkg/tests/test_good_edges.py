"""Goodness classification, convenient orientations, witness pipeline."""
from __future__ import annotations

from fractions import Fraction

import pytest

from snc import (
    Digraph,
    FallbackWitness,
    NotAllGood,
    NotMissing,
    WeightMap,
    WeightedDigraph,
    all_missing_edges_good,
    classify_missing_edge,
    complete_to_tournament,
    feedback_check,
    find_witness,
    find_witness_good,
    has_weighted_snp,
    perturb_weights,
    reorient_at_feed,
    verify_certificate,
)
from snc.generators import (
    Rng,
    gen_generalized_star,
    random_digraph_missing,
    random_star_profile,
    random_weights,
)
from snc.good_edges import certificate_from_dict
from snc.oracle import brute_force_snp_vertices


def single_missing() -> Digraph:
    # one missing edge {0,1}, dominated by vertex 2
    return Digraph.from_arcs(3, [(2, 0), (2, 1)])


def two_k2() -> Digraph:
    # both missing edges fail both conditions
    return Digraph.from_arcs(4, [(2, 0), (3, 1), (1, 2), (0, 3)])


def star_missing() -> Digraph:
    # missing edges {0,1} and {0,2} share vertex 0
    return Digraph.from_arcs(4, [(1, 2), (3, 0), (1, 3), (2, 3)])


class TestClassify:
    def test_dominated_edge_satisfies_both(self):
        s = classify_missing_edge(single_missing(), 0, 1)
        assert s.satisfies_i and s.satisfies_ii and s.good

    def test_two_k2_edge_fails_both_with_witnesses(self):
        s = classify_missing_edge(two_k2(), 0, 1)
        assert not s.satisfies_i and not s.satisfies_ii and not s.good
        assert s.witness_against_i == 2  # 2 -> 0 yet 1 is beyond two steps of 2
        assert s.witness_against_ii == 3

    def test_vacuous_goodness_without_in_arcs(self):
        d = Digraph.from_arcs(3, [(0, 2)])
        s = classify_missing_edge(d, 0, 1)
        assert s.satisfies_i and s.satisfies_ii

    def test_rejects_non_missing_pairs(self):
        with pytest.raises(NotMissing):
            classify_missing_edge(single_missing(), 0, 2)

    def test_failure_witnesses_recheck(self):
        d = two_k2()
        for a, b in d.missing_pairs():
            s = classify_missing_edge(d, a, b)
            if s.witness_against_i is not None:
                v = s.witness_against_i
                assert d.has_arc(v, s.a)
                assert s.b not in d.out_neighbors(v) | d.second_out_neighbors(v)
            if s.witness_against_ii is not None:
                v = s.witness_against_ii
                assert d.has_arc(v, s.b)
                assert s.a not in d.out_neighbors(v) | d.second_out_neighbors(v)


def test_all_missing_edges_good_examples():
    t = Digraph.from_arcs(3, [(0, 1), (1, 2), (0, 2)])
    assert all_missing_edges_good(t) == (True, [])
    ok, statuses = all_missing_edges_good(single_missing())
    assert ok and len(statuses) == 1 and statuses[0].good
    ok, statuses = all_missing_edges_good(two_k2())
    assert not ok and all(not s.good for s in statuses) and len(statuses) == 2


class TestCompletion:
    def test_lower_endpoint_wins_when_both_conditions_hold(self):
        t, orientations = complete_to_tournament(single_missing())
        assert [(o.tail, o.head, o.condition) for o in orientations] == [(0, 1, "i")]
        assert t.is_tournament() and t.has_arc(0, 1)

    def test_tournament_input_unchanged(self):
        t0 = Digraph.from_arcs(3, [(0, 1), (1, 2), (0, 2)])
        t, orientations = complete_to_tournament(t0)
        assert orientations == [] and t == t0

    def test_star_missing_takes_condition_ii_arcs(self):
        t, orientations = complete_to_tournament(star_missing())
        assert [(o.tail, o.head, o.condition) for o in orientations] == [
            (1, 0, "ii"),
            (2, 0, "ii"),
        ]

    def test_not_all_good_raises(self):
        with pytest.raises(NotAllGood):
            complete_to_tournament(two_k2())


class TestReorient:
    def test_identity_when_feed_off_missing_edges(self):
        d = single_missing()
        t, _ = complete_to_tournament(d)
        t2 = reorient_at_feed(t, d.missing_pairs(), 2)
        assert t2 == t

    def test_identity_when_already_toward_feed(self):
        d = single_missing()
        t, _ = complete_to_tournament(d)  # adds (0,1)
        t2 = reorient_at_feed(t, d.missing_pairs(), 1)
        assert t2 == t

    def test_flips_arc_away_from_feed(self):
        d = single_missing()
        t, _ = complete_to_tournament(d)
        t2 = reorient_at_feed(t, d.missing_pairs(), 0)
        assert t2.has_arc(1, 0) and not t2.has_arc(0, 1)
        assert t2.arc_count == t.arc_count


class TestWitnessPipeline:
    def test_single_missing_instance(self):
        wd = WeightedDigraph(single_missing(), WeightMap.uniform(3))
        cert = find_witness_good(wd)
        assert cert.witness == 1
        assert cert.order.order == (2, 0, 1)
        assert (cert.lhs, cert.rhs) == (Fraction(0), Fraction(0))
        assert cert.recheck_violations == 0
        assert all(ok for _name, ok in verify_certificate(wd, cert))

    def test_tournament_reduces_to_feed_vertex(self):
        t = Digraph.from_arcs(3, [(0, 1), (1, 2), (2, 0)])
        wd = WeightedDigraph(t, WeightMap([1, 2, 3]))
        cert = find_witness_good(wd)
        assert cert.orientations == ()
        assert cert.reoriented_arcs == ()
        assert has_weighted_snp(wd, cert.witness).holds

    def test_star_missing_cross_checked_by_scan(self):
        wd = WeightedDigraph(star_missing(), WeightMap.uniform(4))
        cert = find_witness_good(wd)
        assert cert.witness in brute_force_snp_vertices(wd)

    def test_requires_all_good(self):
        with pytest.raises(NotAllGood):
            find_witness_good(WeightedDigraph(two_k2(), WeightMap.uniform(4)))


class TestDispatch:
    def test_certified_path_taken_for_good_instances(self):
        result = find_witness(WeightedDigraph(single_missing(), WeightMap.uniform(3)))
        assert result.certified

    def test_fallback_still_finds_witness_on_two_k2(self):
        result = find_witness(WeightedDigraph(two_k2(), WeightMap.uniform(4)))
        assert isinstance(result, FallbackWitness)
        assert not result.certified
        assert result.snp_vertices == (0, 1, 2, 3)
        assert result.witness == 0
        assert result.not_good_edges == ((0, 1), (2, 3))

    def test_empty_digraph_rejected(self):
        with pytest.raises(ValueError):
            find_witness(WeightedDigraph(Digraph(0), WeightMap([])))


def test_certificate_survives_serialization_round_trip():
    wd = WeightedDigraph(star_missing(), WeightMap([2, 0, 1, 3]))
    cert = find_witness_good(wd)
    doc = cert.to_dict()
    rebuilt = certificate_from_dict(doc)
    assert rebuilt == cert
    assert all(ok for _name, ok in verify_certificate(wd, rebuilt))


def test_pipeline_invariants_on_random_good_instances():
    """Certified witness agrees with the scan; the order certifies on both
    the completed and the reoriented tournament."""
    for i in range(60):
        rng = Rng(0x600D ^ i)
        n = 2 + rng.below(9)
        g, _dec = gen_generalized_star(spec=random_star_profile(n, rng))
        d = random_digraph_missing(g, rng.next_u64())
        w = random_weights(g.n, rng.next_u64(), 10)
        wd = WeightedDigraph(d, w)
        cert = find_witness_good(wd)
        assert cert.witness in brute_force_snp_vertices(wd)
        assert cert.lhs <= cert.rhs
        checks = verify_certificate(wd, cert)
        assert all(ok for _name, ok in checks), checks
        # feedback survives reorienting toward any certified feed vertex
        t = d.copy()
        for o in cert.orientations:
            t.add_arc(o.tail, o.head)
        t2 = reorient_at_feed(t, d.missing_pairs(), cert.witness)
        wt = perturb_weights(w)
        assert feedback_check(t2, wt, cert.order.order) == []
        # closure of the second neighborhood
        np_d = d.out_neighbors(cert.witness)
        assert t2.out_neighbors(cert.witness) == np_d
        assert t2.second_out_neighbors(cert.witness) <= np_d | d.second_out_neighbors(cert.witness)
