"""Multi-phase shuffle engine for connected components over k logical partitions.

Phase 1 runs a weighted union-find locally on each edge partition and emits
flattened ``(node, root)`` records (or raw both-direction edge records when
local union-find is disabled). Phase 2 iteratively groups records by child,
elects one parent per child and prunes children that found an unambiguous
parent, checkpointing them. Phase 3 self-joins the checkpoints and contracts
each neighborhood onto its extreme node until everything forms star graphs.
A final consolidation pass resolves duplicate checkpoints and enforces the
star property by pointer jumping.

Everything is deterministic for a fixed input order and config; the worker
count changes scheduling only, never output.
"""

from __future__ import annotations

import math
import time
from array import array
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import Callable, Iterable, Iterator, Sequence

from .checkpoint import PHASE2, PHASE3, CheckpointStore
from .dsu import DisjointSetForest, Edge, PairRecord, build_forest, edge_rows
from .metrics import RunMetrics

_MASK64 = (1 << 64) - 1
_MULT = 0x9E3779B97F4A7C15  # 64-bit golden-ratio multiplier

DEFAULT_HASH_SEED = 0xD6E8FEB86659FD93


class RoundLimitExceeded(RuntimeError):
    """A shuffle phase failed to empty its live records within the round cap."""


class CycleDetected(RuntimeError):
    """Pointer jumping did not reach a fixpoint; signals an engine bug."""


@dataclass(frozen=True)
class EngineConfig:
    """Knobs for a single engine run.

    ``max_rounds`` of ``None`` derives a generous cap from the phase-1
    record count (an upper bound on the distinct node count):
    ``4 * ceil(log2(records + 2)) + 16``. ``phase1_per_edge`` switches
    phase 1 to the mid-stream per-edge emission variant kept for A/B
    validation; the default flattened emission produces the same
    components with strictly less shuffle volume.
    """

    k: int = 8
    election: str = "min"
    local_uf: bool = True
    max_rounds: int | None = None
    hash_seed: int = DEFAULT_HASH_SEED
    worker_count: int = 1
    spill_record_budget: int = 2_000_000
    spill_dir: str | None = None
    phase1_per_edge: bool = False

    def validate(self) -> None:
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if self.election not in ("min", "max"):
            raise ValueError(f"election must be 'min' or 'max', got {self.election!r}")
        if self.max_rounds is not None and self.max_rounds < 1:
            raise ValueError(f"max_rounds must be >= 1, got {self.max_rounds}")
        if self.worker_count < 1:
            raise ValueError(f"worker_count must be >= 1, got {self.worker_count}")
        if not 0 <= self.hash_seed <= _MASK64:
            raise ValueError("hash_seed must fit in 64 bits")
        if self.spill_record_budget < 0:
            raise ValueError("spill_record_budget must be >= 0")


@dataclass
class EngineTrace:
    """Extra observations collected by :func:`run_traced` for verification."""

    phase2_checkpoints: list[PairRecord] = field(default_factory=list)
    max_candidate_parents_round1: int = 0


def bucket_index(node: int, k: int, hash_seed: int = DEFAULT_HASH_SEED) -> int:
    """Deterministic shuffle placement: seeded multiplicative hash mod k."""
    h = ((node ^ hash_seed) * _MULT) & _MASK64
    h ^= h >> 29
    return h % k


class PartitionSet:
    """k buckets of child->parent records forming one shuffle round's input.

    Records live in compact interleaved u64 arrays; :meth:`bucket`
    materializes a bucket with records sharing a child contiguous
    (first-seen child order), which is also the processing order.
    """

    __slots__ = ("k", "round_index", "_data")

    def __init__(self, k: int, round_index: int = 0) -> None:
        self.k = k
        self.round_index = round_index
        self._data = [array("Q") for _ in range(k)]

    @property
    def total_records(self) -> int:
        return sum(len(flat) for flat in self._data) // 2

    def groups(self, i: int) -> dict[int, list[int]]:
        """Child -> candidate parent list for bucket ``i``, first-seen order."""
        out: dict[int, list[int]] = {}
        flat = self._data[i]
        it = iter(flat)
        for c, p in zip(it, it):
            g = out.get(c)
            if g is None:
                out[c] = [p]
            else:
                g.append(p)
        return out

    def bucket(self, i: int) -> list[PairRecord]:
        return [(c, p) for c, parents in self.groups(i).items() for p in parents]

    def to_buckets(self) -> list[list[PairRecord]]:
        """Grouped view of every bucket; stable serialization for comparisons."""
        return [self.bucket(i) for i in range(self.k)]


def load_partitions(edges: Sequence[Edge], k: int) -> list[Sequence[Edge]]:
    """Split edges into k contiguous chunks whose sizes differ by at most 1."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    n = len(edges)
    base, extra = divmod(n, k)
    chunks = []
    start = 0
    for i in range(k):
        size = base + 1 if i < extra else base
        chunks.append(edges[start:start + size])
        start += size
    return chunks


def weighted_union_phase(partition: Sequence[Edge]) -> list[PairRecord]:
    """Local union-find over one partition, emitted as its flattened forest.

    Every registered node yields exactly one ``(node, root)`` record;
    roots announce themselves as ``(r, r)``. Acts like a combiner: dense
    neighborhoods and long chains collapse to stars before any shuffle.
    """
    return build_forest(partition).flatten()


def per_edge_union_records(partition: Sequence[Edge]) -> list[PairRecord]:
    """Debug variant of phase 1: emit one record per merging edge mid-stream.

    For each edge that joins two trees, the losing side's original node is
    emitted under the surviving root, and every node that ever became a
    parent announces itself at the end. Produces more (and possibly stale)
    records than the flattened emission; later phases resolve them to the
    same components.
    """
    records, _ = _per_edge_union(partition)
    return records


def _per_edge_union(partition: Sequence[Edge]) -> tuple[list[PairRecord], DisjointSetForest]:
    forest = DisjointSetForest()
    find = forest.find
    out: list[PairRecord] = []
    new_parents: dict[int, None] = {}
    for u, v in edge_rows(partition):
        if u == v:
            find(u)
            continue
        ru = find(u)
        rv = find(v)
        if ru == rv:
            continue
        winner = forest.union(ru, rv)
        out.append((v, ru) if winner == ru else (u, rv))
        new_parents[winner] = None
    out.extend((p, p) for p in new_parents)
    return out, forest


def initial_records_without_local_uf(partition: Sequence[Edge]) -> list[PairRecord]:
    """Phase-1 emission with local union-find disabled.

    Each proper edge is seen from both endpoints, doubling the initial
    shuffle volume; self-edges emit a single self-record.
    """
    out: list[PairRecord] = []
    for u, v in edge_rows(partition):
        if u == v:
            out.append((u, u))
        else:
            out.append((u, v))
            out.append((v, u))
    return out


def _size1_roots(forest: DisjointSetForest) -> set[int]:
    # Only self-edges produce size-1 roots: the global-singleton candidates.
    return {r for r, size in forest.tree_size.items() if size == 1}


def shuffle_by_child(records: Iterable[PairRecord], k: int,
                     hash_seed: int = DEFAULT_HASH_SEED,
                     round_index: int = 0) -> PartitionSet:
    """Place every record in bucket hash(child) mod k.

    Deterministic for a fixed seed and input order regardless of worker
    count; grouping by child happens at bucket access/processing time.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    pset = PartitionSet(k, round_index)
    _bucket_into(pset, records, hash_seed)
    return pset


def _bucket_into(pset: PartitionSet, records: Iterable[PairRecord],
                 hash_seed: int) -> None:
    data = pset._data
    k = pset.k
    for c, p in records:
        h = ((c ^ hash_seed) * _MULT) & _MASK64
        h ^= h >> 29
        flat = data[h % k]
        flat.append(c)
        flat.append(p)


def _iter_pairs(flat: array) -> Iterator[PairRecord]:
    it = iter(flat)
    return zip(it, it)


def _phase2_bucket(flat: array, election_max: bool,
                   measure_cp: bool = False) -> tuple[array, array, int]:
    """One bucket of a parent-election round.

    Per child group: a lone self-candidate is a parent-parent linkage and
    is dropped; a lone foreign candidate is a terminal parent and the child
    is pruned to the checkpoint output; two or more candidates trigger an
    election whose winner is announced to every candidate and to the child.
    """
    groups: dict[int, list[int]] = {}
    it = iter(flat)
    for c, p in zip(it, it):
        g = groups.get(c)
        if g is None:
            groups[c] = [p]
        else:
            g.append(p)
    ckpt = array("Q")
    emit = array("Q")
    pick = max if election_max else min
    max_cp = 0
    for child, parents in groups.items():
        cp = set(parents) if len(parents) > 1 else None
        if cp is None or len(cp) == 1:
            if measure_cp and max_cp < 1:
                max_cp = 1
            p = parents[0]
            if p != child:
                ckpt.append(child)
                ckpt.append(p)
            continue
        if measure_cp and len(cp) > max_cp:
            max_cp = len(cp)
        winner = pick(cp)
        for n in sorted(cp):
            emit.append(n)
            emit.append(winner)
        if child not in cp:
            emit.append(child)
            emit.append(winner)
    return ckpt, emit, max_cp


def _phase3_bucket(flat: array, election_max: bool) -> tuple[array, array]:
    """One bucket of a star-contraction round over symmetric neighbor records.

    A group keyed on a node is pruned once no record keeps two nodes on the
    far side of the group's extreme node; pruned groups emit normalized
    final records pointing every member at that extreme, live groups emit
    symmetric links between the extreme and every member.
    """
    groups: dict[int, list[int]] = {}
    it = iter(flat)
    for c, p in zip(it, it):
        g = groups.get(c)
        if g is None:
            groups[c] = [p]
        else:
            g.append(p)
    final = array("Q")
    emit = array("Q")
    pick = max if election_max else min
    for key, rights in groups.items():
        cc = set(rights)
        cc.add(key)
        m = pick(cc)
        if key == m:
            pruned = True
        else:
            pruned = all(r == m for r in rights)
        if pruned:
            for n in sorted(cc):
                final.append(n)
                final.append(m)
        else:
            for n in sorted(cc):
                if n == m:
                    emit.append(m)
                    emit.append(m)
                else:
                    emit.append(m)
                    emit.append(n)
                    emit.append(n)
                    emit.append(m)
    return final, emit


def process_partition_round(groups: PartitionSet,
                            election: str = "min") -> tuple[list[PairRecord], list[PairRecord]]:
    """Run one parent-election round over every bucket, in bucket order.

    Returns ``(checkpoints, emitted)``: pruned terminal records and the
    live records for the next round.
    """
    ckpt: list[PairRecord] = []
    emit: list[PairRecord] = []
    election_max = election == "max"
    for flat in groups._data:
        c, e, _ = _phase2_bucket(flat, election_max)
        ckpt.extend(_iter_pairs(c))
        emit.extend(_iter_pairs(e))
    return ckpt, emit


def path_compression_round(groups: PartitionSet,
                           election: str = "min") -> tuple[list[PairRecord], list[PairRecord]]:
    """Run one star-contraction round over every bucket, in bucket order.

    Returns ``(final, emitted)``: normalized terminal records from pruned
    groups and the live symmetric records for the next round.
    """
    final: list[PairRecord] = []
    emit: list[PairRecord] = []
    election_max = election == "max"
    for flat in groups._data:
        f, e = _phase3_bucket(flat, election_max)
        final.extend(_iter_pairs(f))
        emit.extend(_iter_pairs(e))
    return final, emit


def self_join(checkpoints: Iterable[PairRecord]) -> list[PairRecord]:
    """Symmetric expansion of checkpoint records, duplicates removed."""
    out: list[PairRecord] = []
    seen: set[PairRecord] = set()
    for a, b in checkpoints:
        for rec in ((a, b), (b, a)):
            if rec not in seen:
                seen.add(rec)
                out.append(rec)
    return out


def consolidate(store: CheckpointStore, election: str = "min") -> dict[int, int]:
    """Resolve the checkpoint log into a star-shaped component labeling.

    Keeps the extreme (minimum under min-election) checkpointed parent per
    child, then pointer-jumps labels to a fixpoint so that
    ``label(label(x)) == label(x)`` for every node.
    """
    election_max = election == "max"
    best: dict[int, int] = {}
    get = best.get
    for c, p in store.iter_all():
        cur = get(c)
        if cur is None or (p > cur if election_max else p < cur):
            best[c] = p
    _pointer_jump(best)
    return best


def _pointer_jump(labels: dict[int, int], max_sweeps: int | None = None) -> None:
    if not labels:
        return
    if max_sweeps is None:
        max_sweeps = int(math.log2(len(labels))) + 2
    get = labels.get
    for _ in range(max_sweeps):
        changed = False
        for x, label in labels.items():
            target = get(label, label)
            if target != label:
                labels[x] = target
                changed = True
        if not changed:
            return
    if any(get(label, label) != label for label in labels.values()):
        raise CycleDetected(
            f"no fixpoint after {max_sweeps} pointer-jump sweeps over "
            f"{len(labels)} labels")


def run(edges: Sequence[Edge], config: EngineConfig) -> tuple[dict[int, int], RunMetrics]:
    """Execute all phases and return ``(labeling, metrics)``.

    The labeling maps every node appearing in ``edges`` to its component
    representative (the component minimum under min-election) and induces
    the same partition as a sequential whole-input union-find, for any
    partition count and worker count.
    """
    labeling, metrics, _ = _run_impl(edges, config, collect_trace=False)
    return labeling, metrics


def run_traced(edges: Sequence[Edge],
               config: EngineConfig) -> tuple[dict[int, int], RunMetrics, EngineTrace]:
    """Like :func:`run` but also returns verification observations."""
    return _run_impl(edges, config, collect_trace=True)


def _phase1_runner(config: EngineConfig) -> Callable[[Sequence[Edge]], tuple[list[PairRecord], set[int]]]:
    if not config.local_uf:
        def no_uf(chunk: Sequence[Edge]) -> tuple[list[PairRecord], set[int]]:
            records = initial_records_without_local_uf(chunk)
            return records, {u for u, v in records if u == v}
        return no_uf

    if config.phase1_per_edge:
        def per_edge(chunk: Sequence[Edge]) -> tuple[list[PairRecord], set[int]]:
            records, forest = _per_edge_union(chunk)
            return records, _size1_roots(forest)
        return per_edge

    def with_uf(chunk: Sequence[Edge]) -> tuple[list[PairRecord], set[int]]:
        forest = build_forest(chunk)
        return forest.flatten(), _size1_roots(forest)

    return with_uf


def _run_impl(edges: Sequence[Edge], config: EngineConfig,
              collect_trace: bool) -> tuple[dict[int, int], RunMetrics, EngineTrace]:
    config.validate()
    start = time.perf_counter()
    metrics = RunMetrics(input_edges=len(edges))
    trace = EngineTrace()
    election_max = config.election == "max"

    executor = (ThreadPoolExecutor(max_workers=config.worker_count)
                if config.worker_count > 1 else None)
    store = CheckpointStore(config.spill_record_budget, config.spill_dir)
    try:
        # Phase 1: local per-partition emission, bucketed as it streams out.
        chunks = load_partitions(edges, config.k)
        phase1 = _phase1_runner(config)
        pset = PartitionSet(config.k, round_index=0)
        singleton_candidates: set[int] = set()
        part_results = executor.map(phase1, chunks) if executor else map(phase1, chunks)
        for records, candidates in part_results:
            _bucket_into(pset, records, config.hash_seed)
            singleton_candidates |= candidates
        metrics.initial_shuffle_volume = pset.total_records

        max_rounds = config.max_rounds
        if max_rounds is None:
            max_rounds = 4 * math.ceil(math.log2(metrics.initial_shuffle_volume + 2)) + 16

        # Phase 2: parent election with vertex pruning.
        rounds = 0
        while pset.total_records:
            volume = pset.total_records
            rounds += 1
            if rounds > max_rounds:
                raise RoundLimitExceeded(
                    f"parent-election phase still live after {max_rounds} rounds")
            metrics.shuffle_records_per_round.append(volume)
            measure = collect_trace and rounds == 1
            results = _map_buckets(
                executor, partial(_phase2_bucket, election_max=election_max,
                                  measure_cp=measure), pset)
            nxt = PartitionSet(config.k, round_index=rounds)
            checkpointed = 0
            for ckpt, emit, max_cp in results:
                if measure and max_cp > trace.max_candidate_parents_round1:
                    trace.max_candidate_parents_round1 = max_cp
                checkpointed += len(ckpt) // 2
                store.append_pairs(PHASE2, ckpt)
                if collect_trace:
                    trace.phase2_checkpoints.extend(_iter_pairs(ckpt))
                _bucket_into(nxt, _iter_pairs(emit), config.hash_seed)
            metrics.checkpointed_per_round.append(checkpointed)
            pset = nxt
        metrics.phase2_rounds = rounds

        # Nodes whose every appearance was a dropped self-linkage are
        # genuine singletons; checkpoint them so the final labeling and the
        # phase-3 input cover every node.
        if singleton_candidates:
            claimed: set[int] = set()
            for c, p in store.iter_phase(PHASE2):
                if c in singleton_candidates:
                    claimed.add(c)
                if p in singleton_candidates:
                    claimed.add(p)
            orphans = sorted(singleton_candidates - claimed)
            if orphans:
                flat = array("Q")
                for x in orphans:
                    flat.append(x)
                    flat.append(x)
                store.append_pairs(PHASE2, flat)
                if metrics.checkpointed_per_round:
                    metrics.checkpointed_per_round[-1] += len(orphans)
                else:
                    # Only reachable in per-edge debug mode when every
                    # phase-1 record was a silent singleton registration:
                    # book the orphans as a zero-volume round to keep the
                    # per-round arrays aligned.
                    metrics.shuffle_records_per_round.append(0)
                    metrics.checkpointed_per_round.append(len(orphans))
                    metrics.phase2_rounds = 1
                if collect_trace:
                    trace.phase2_checkpoints.extend((x, x) for x in orphans)

        # Phase 3: self-join the checkpoints, then contract onto extremes.
        pset = PartitionSet(config.k, round_index=0)
        _bucket_into(pset, _self_join_stream(store.iter_phase(PHASE2)),
                     config.hash_seed)
        rounds = 0
        while pset.total_records:
            volume = pset.total_records
            rounds += 1
            if rounds > max_rounds:
                raise RoundLimitExceeded(
                    f"star-contraction phase still live after {max_rounds} rounds")
            metrics.shuffle_records_per_round.append(volume)
            results = _map_buckets(
                executor, partial(_phase3_bucket, election_max=election_max), pset)
            nxt = PartitionSet(config.k, round_index=rounds)
            checkpointed = 0
            for final, emit in results:
                checkpointed += len(final) // 2
                store.append_pairs(PHASE3, final)
                _bucket_into(nxt, _iter_pairs(emit), config.hash_seed)
            metrics.checkpointed_per_round.append(checkpointed)
            pset = nxt
        metrics.phase3_rounds = rounds

        labeling = consolidate(store, config.election)
    finally:
        store.close()
        if executor is not None:
            executor.shutdown()

    metrics.largest_component_size = _largest_component(labeling)
    metrics.wall_time_ms = (time.perf_counter() - start) * 1000.0
    return labeling, metrics, trace


def _self_join_stream(records: Iterable[PairRecord]) -> Iterator[PairRecord]:
    # Outer self-join without global dedup; downstream grouping dedups.
    for a, b in records:
        yield a, b
        if a != b:
            yield b, a


def _map_buckets(executor: ThreadPoolExecutor | None,
                 fn: Callable[[array], tuple],
                 pset: PartitionSet) -> Iterator[tuple]:
    if executor is None:
        return map(fn, pset._data)
    return executor.map(fn, pset._data)


def _largest_component(labeling: dict[int, int]) -> int:
    if not labeling:
        return 0
    counts: dict[int, int] = {}
    for root in labeling.values():
        counts[root] = counts.get(root, 0) + 1
    return max(counts.values())
