"""Shared test utilities: independent oracles and partition comparison."""

from __future__ import annotations

import random


def bfs_components(edges) -> dict[int, int]:
    """Brute-force oracle: breadth-first search over the edge list's adjacency."""
    adjacency: dict[int, set[int]] = {}
    for u, v in edges:
        adjacency.setdefault(u, set())
        adjacency.setdefault(v, set())
        if u != v:
            adjacency[u].add(v)
            adjacency[v].add(u)
    labeling: dict[int, int] = {}
    for start in adjacency:
        if start in labeling:
            continue
        seen = {start}
        queue = [start]
        while queue:
            x = queue.pop(0)
            for y in adjacency[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        root = min(seen)
        for x in seen:
            labeling[x] = root
    return labeling


def partition_of(labeling: dict) -> frozenset[frozenset]:
    """The node grouping a labeling induces, ignoring label values."""
    groups: dict = {}
    for node, label in labeling.items():
        groups.setdefault(label, set()).add(node)
    return frozenset(frozenset(g) for g in groups.values())


def random_edges(rng: random.Random, max_nodes: int = 120, max_edges: int = 200,
                 self_edges: bool = True) -> list[tuple[int, int]]:
    n = rng.randint(2, max_nodes)
    m = rng.randint(0, max_edges)
    edges = []
    for _ in range(m):
        u = rng.randrange(n)
        v = rng.randrange(n)
        if not self_edges:
            while v == u:
                v = rng.randrange(n)
        edges.append((u, v))
    return edges
