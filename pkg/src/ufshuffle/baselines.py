"""Comparison yardsticks for the benchmark harness.

The alternating large-star/small-star method keeps a symmetric neighbor
relation and re-links neighborhoods onto local minima until the relation
stabilizes as stars. Every edge travels from both endpoints' point of
view, so its shuffle volume starts at twice the input and it has no
vertex pruning; that contrast is the whole point of carrying it.

The sequential whole-input oracle is re-exported from :mod:`ufshuffle.dsu`.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Sequence

from .dsu import Edge, PairRecord, edge_rows, sequential_components  # noqa: F401
from .engine import RoundLimitExceeded
from .metrics import RunMetrics


@dataclass
class StarRoundState:
    """Symmetric neighbor relation between rounds, plus a change flag.

    ``records`` holds both directions of every proper linkage and one
    ``(n, n)`` record per self-linked singleton, kept sorted for stable
    comparisons.
    """

    records: list[PairRecord] = field(default_factory=list)
    changed: bool = False


def _neighborhoods(records: Sequence[PairRecord]) -> tuple[dict[int, set[int]], set[int]]:
    nbrs: dict[int, set[int]] = {}
    selfs: set[int] = set()
    for a, b in records:
        if a == b:
            selfs.add(a)
            continue
        g = nbrs.get(a)
        if g is None:
            nbrs[a] = {b}
        else:
            g.add(b)
    return nbrs, selfs


def large_star(state: StarRoundState) -> StarRoundState:
    """Re-link every strictly larger neighbor of each node to the
    neighborhood minimum (including the node itself); self-records pass
    through untouched."""
    nbrs, selfs = _neighborhoods(state.records)
    new: set[PairRecord] = set()
    for u, around in nbrs.items():
        m = min(min(around), u)
        for v in around:
            if v > u:
                new.add((v, m))
                new.add((m, v))
    for s in selfs:
        new.add((s, s))
    return _next_state(state, new)


def small_star(state: StarRoundState) -> StarRoundState:
    """Re-link each node and its strictly smaller neighbors to the minimum
    of that smaller neighborhood; self-records pass through untouched."""
    nbrs, selfs = _neighborhoods(state.records)
    new: set[PairRecord] = set()
    for u, around in nbrs.items():
        smaller = [v for v in around if v < u]
        if not smaller:
            continue
        m = min(smaller)
        new.add((u, m))
        new.add((m, u))
        for v in smaller:
            if v != m:
                new.add((v, m))
                new.add((m, v))
    for s in selfs:
        new.add((s, s))
    return _next_state(state, new)


def _next_state(state: StarRoundState, new: set[PairRecord]) -> StarRoundState:
    changed = new != set(state.records)
    return StarRoundState(records=sorted(new), changed=changed)


def run_alternating(edges: Sequence[Edge],
                    max_rounds: int | None = None) -> tuple[dict[int, int], RunMetrics]:
    """Alternate large-star and small-star until neither moves a link.

    Returns a labeling (node -> component minimum) agreeing with
    :func:`sequential_components`, plus round/record metrics shaped like
    the engine's for side-by-side reporting.
    """
    start = time.perf_counter()
    relation: set[PairRecord] = set()
    universe: set[int] = set()
    for u, v in edge_rows(edges):
        universe.add(u)
        universe.add(v)
        if u == v:
            relation.add((u, u))
        else:
            relation.add((u, v))
            relation.add((v, u))

    metrics = RunMetrics(input_edges=len(edges),
                         initial_shuffle_volume=len(relation))
    if max_rounds is None:
        max_rounds = 4 * math.ceil(math.log2(len(universe) + 2)) + 16

    state = StarRoundState(records=sorted(relation))
    rounds = 0
    while state.records:
        if rounds + 2 > max_rounds:
            raise RoundLimitExceeded(
                f"star alternation still moving after {max_rounds} rounds")
        metrics.shuffle_records_per_round.append(len(state.records))
        state = large_star(state)
        large_changed = state.changed
        metrics.phase2_rounds += 1
        metrics.checkpointed_per_round.append(0)

        metrics.shuffle_records_per_round.append(len(state.records))
        state = small_star(state)
        metrics.phase3_rounds += 1
        metrics.checkpointed_per_round.append(0)
        rounds += 2
        if not large_changed and not state.changed:
            break

    nbrs, _ = _neighborhoods(state.records)
    labeling: dict[int, int] = {}
    counts: dict[int, int] = {}
    for x in universe:
        around = nbrs.get(x)
        label = min(min(around), x) if around else x
        labeling[x] = label
        counts[label] = counts.get(label, 0) + 1
    metrics.largest_component_size = max(counts.values()) if counts else 0
    metrics.wall_time_ms = (time.perf_counter() - start) * 1000.0
    return labeling, metrics
