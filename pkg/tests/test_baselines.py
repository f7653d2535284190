"""Star-contraction baseline semantics and oracle agreement."""

from __future__ import annotations

import math
import random

from helpers import partition_of, random_edges

from ufshuffle.baselines import (
    StarRoundState,
    large_star,
    run_alternating,
    small_star,
)
from ufshuffle.dsu import sequential_components


def symmetric(edges):
    rel = set()
    for u, v in edges:
        if u == v:
            rel.add((u, u))
        else:
            rel.add((u, v))
            rel.add((v, u))
    return StarRoundState(records=sorted(rel))


class TestLargeStar:
    def test_min_centered_star_is_fixpoint(self):
        state = symmetric([(1, 2), (1, 3), (1, 4)])
        out = large_star(state)
        assert out.records == state.records
        assert out.changed is False

    def test_path_relinks_far_node_to_min(self):
        out = large_star(symmetric([(1, 2), (2, 3)]))
        assert (3, 1) in out.records
        assert set(out.records) == {(1, 2), (2, 1), (1, 3), (3, 1)}
        assert out.changed is True

    def test_empty(self):
        out = large_star(StarRoundState())
        assert out.records == []
        assert out.changed is False

    def test_self_record_passes_through(self):
        out = large_star(symmetric([(5, 5)]))
        assert out.records == [(5, 5)]
        assert out.changed is False


class TestSmallStar:
    def test_singleton_unchanged(self):
        out = small_star(symmetric([(5, 5)]))
        assert out.records == [(5, 5)]
        assert out.changed is False

    def test_two_node_component_fixpoint(self):
        state = symmetric([(2, 1)])
        out = small_star(state)
        assert out.records == state.records
        assert out.changed is False

    def test_empty(self):
        out = small_star(StarRoundState())
        assert out.records == []
        assert out.changed is False

    def test_hands_smaller_neighbors_to_their_min(self):
        # node 5 holds 1 and 3; 3 moves under 1 and 5 re-links to 1
        out = small_star(symmetric([(5, 1), (5, 3)]))
        assert set(out.records) == {(5, 1), (1, 5), (3, 1), (1, 3)}


class TestRounds:
    def test_each_round_preserves_the_partition(self):
        rng = random.Random(3)
        for _ in range(20):
            edges = random_edges(rng, max_nodes=60, max_edges=90)
            want = partition_of(sequential_components(edges))
            state = symmetric(edges)
            for i in range(12):
                state = large_star(state) if i % 2 == 0 else small_star(state)
                if state.records:
                    assert partition_of(sequential_components(state.records)) == want


class TestRunAlternating:
    def test_two_components(self):
        labeling, _ = run_alternating([(1, 2), (2, 3), (4, 5)])
        assert labeling == {1: 1, 2: 1, 3: 1, 4: 4, 5: 4}

    def test_empty(self):
        labeling, metrics = run_alternating([])
        assert labeling == {}
        assert metrics.total_rounds == 0

    def test_chain_converges_with_metrics(self):
        edges = [(i, i + 1) for i in range(1023)]
        labeling, metrics = run_alternating(edges)
        assert set(labeling.values()) == {0}
        assert metrics.total_rounds >= 2
        assert len(metrics.shuffle_records_per_round) == metrics.total_rounds
        assert metrics.initial_shuffle_volume == 2 * 1023
        assert metrics.largest_component_size == 1024

    def test_terminates_within_documented_bound(self):
        rng = random.Random(17)
        for _ in range(20):
            edges = random_edges(rng, max_nodes=120, max_edges=200)
            nodes = {x for e in edges for x in e}
            bound = 4 * math.ceil(math.log2(len(nodes) + 2)) + 16
            _, metrics = run_alternating(edges, max_rounds=bound)
            assert metrics.total_rounds <= bound

    def test_oracle_agreement_random(self):
        rng = random.Random(19)
        for _ in range(30):
            edges = random_edges(rng)
            labeling, _ = run_alternating(edges)
            assert labeling == sequential_components(edges)

    def test_self_edges_survive_as_singletons(self):
        labeling, _ = run_alternating([(7, 7), (1, 2)])
        assert labeling == {7: 7, 1: 1, 2: 1}
