"""Deterministic synthetic edge lists with known ground truth.

Four families cover the pathologies worth benchmarking: subcritical
``sparse`` graphs with many tiny components, dense ``clique_clusters``,
single long ``chain`` paths, and ``skewed_lcc`` hub-and-spoke graphs whose
heavy-tailed hub attachment yields one very large component.

Node ids are always emitted through a seeded permutation of
``range(node_count)`` so that minimum-id elections are not trivially
aligned with generation order. Same spec, same bytes: generation runs on
the frozen legacy numpy RandomState stream.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

KINDS = ("sparse", "clique_clusters", "chain", "skewed_lcc")

# Documented guarantee window for skewed_lcc producing a component above
# the large-component threshold (> 5000 nodes).
LCC_THRESHOLD = 5000
LCC_MIN_NODES = 10_000
LCC_MAX_HUBS = 32
LCC_MIN_TAIL = 2.0


class InvalidSpec(ValueError):
    """Generator parameters outside their documented ranges."""


@dataclass(frozen=True)
class GenSpec:
    """Parameters of one synthetic graph.

    Per-kind requirements: ``sparse`` needs ``edge_count``;
    ``clique_clusters`` needs ``cluster_size`` dividing ``node_count``;
    ``skewed_lcc`` needs ``hub_count`` and ``tail_exponent``. ``chain``
    needs only ``node_count``.
    """

    kind: str
    node_count: int
    edge_count: Optional[int] = None
    cluster_size: Optional[int] = None
    hub_count: Optional[int] = None
    tail_exponent: Optional[float] = None
    seed: int = 0

    def validate(self) -> None:
        if self.kind not in KINDS:
            raise InvalidSpec(f"unknown kind {self.kind!r}; expected one of {KINDS}")
        if self.node_count < 2:
            raise InvalidSpec(f"node_count must be >= 2, got {self.node_count}")
        if not 0 <= self.seed < 2 ** 32:
            raise InvalidSpec("seed must fit in 32 bits")
        if self.kind == "sparse":
            if self.edge_count is None or self.edge_count < 0:
                raise InvalidSpec("sparse requires edge_count >= 0")
        elif self.kind == "clique_clusters":
            if self.cluster_size is None or self.cluster_size < 2:
                raise InvalidSpec("clique_clusters requires cluster_size >= 2")
            if self.node_count % self.cluster_size:
                raise InvalidSpec(
                    f"node_count {self.node_count} not divisible by "
                    f"cluster_size {self.cluster_size}")
        elif self.kind == "skewed_lcc":
            if self.hub_count is None or self.hub_count < 1:
                raise InvalidSpec("skewed_lcc requires hub_count >= 1")
            if self.hub_count >= self.node_count:
                raise InvalidSpec("hub_count must be smaller than node_count")
            if self.tail_exponent is None or self.tail_exponent <= 0:
                raise InvalidSpec("skewed_lcc requires tail_exponent > 0")


@dataclass
class GeneratorTruth:
    """Structure known at generation time; ``None`` where not exact.

    ``labeling`` maps node -> component minimum when membership is exact.
    ``max_degree`` is reported for reference only.
    """

    component_count: Optional[int] = None
    labeling: Optional[dict[int, int]] = None
    largest_component_size: Optional[int] = None
    max_degree: Optional[int] = None


def generate(spec: GenSpec) -> tuple[np.ndarray, GeneratorTruth]:
    """Edge list (shape ``(m, 2)`` int64) plus structural truth for a spec."""
    spec.validate()
    rng = np.random.RandomState(spec.seed)
    ids = rng.permutation(spec.node_count).astype(np.int64)
    if spec.kind == "chain":
        return _chain(ids)
    if spec.kind == "clique_clusters":
        return _clique_clusters(ids, spec.cluster_size)
    if spec.kind == "sparse":
        return _sparse(ids, spec.edge_count, rng)
    return _skewed_lcc(ids, spec.hub_count, spec.tail_exponent, rng)


def _chain(ids: np.ndarray) -> tuple[np.ndarray, GeneratorTruth]:
    edges = np.column_stack((ids[:-1], ids[1:]))
    truth = GeneratorTruth(
        component_count=1,
        labeling={int(n): 0 for n in ids},  # permutation of range -> min is 0
        largest_component_size=len(ids),
        max_degree=2 if len(ids) > 2 else 1,
    )
    return edges, truth


def _clique_clusters(ids: np.ndarray, cluster_size: int) -> tuple[np.ndarray, GeneratorTruth]:
    n_clusters = len(ids) // cluster_size
    lo, hi = np.triu_indices(cluster_size, k=1)
    parts = []
    labeling: dict[int, int] = {}
    for c in range(n_clusters):
        block = ids[c * cluster_size:(c + 1) * cluster_size]
        parts.append(np.column_stack((block[lo], block[hi])))
        root = int(block.min())
        for n in block:
            labeling[int(n)] = root
    edges = np.concatenate(parts) if parts else np.empty((0, 2), dtype=np.int64)
    truth = GeneratorTruth(
        component_count=n_clusters,
        labeling=labeling,
        largest_component_size=cluster_size,
        max_degree=cluster_size - 1,
    )
    return edges, truth


def _sparse(ids: np.ndarray, edge_count: int,
            rng: np.random.RandomState) -> tuple[np.ndarray, GeneratorTruth]:
    n = len(ids)
    u = rng.randint(0, n, size=edge_count)
    v = rng.randint(0, n, size=edge_count)
    collisions = u == v
    while collisions.any():
        v[collisions] = rng.randint(0, n, size=int(collisions.sum()))
        collisions = u == v
    edges = np.column_stack((ids[u], ids[v]))
    return edges, GeneratorTruth()


def _skewed_lcc(ids: np.ndarray, hub_count: int, tail_exponent: float,
                rng: np.random.RandomState) -> tuple[np.ndarray, GeneratorTruth]:
    hubs = ids[:hub_count]
    spokes = ids[hub_count:]
    weights = np.arange(1, hub_count + 1, dtype=np.float64) ** -tail_exponent
    weights /= weights.sum()
    assignment = rng.choice(hub_count, size=len(spokes), p=weights)
    edges = np.column_stack((hubs[assignment], spokes))

    labeling: dict[int, int] = {}
    sizes: dict[int, int] = {}
    mins = hubs.astype(np.int64).copy()
    for rank in range(hub_count):
        members = spokes[assignment == rank]
        if len(members):
            mins[rank] = min(int(hubs[rank]), int(members.min()))
            sizes[rank] = len(members) + 1
    for rank, size in sizes.items():
        root = int(mins[rank])
        labeling[int(hubs[rank])] = root
    for hub_rank, spoke in zip(assignment.tolist(), spokes.tolist()):
        labeling[spoke] = int(mins[hub_rank])
    truth = GeneratorTruth(
        component_count=len(sizes),
        labeling=labeling,
        largest_component_size=max(sizes.values()) if sizes else 0,
        max_degree=max(sizes.values()) - 1 if sizes else 0,
    )
    return edges, truth
