"""Weighted union-find with path compression.

One forest instance serves a single logical partition; a throwaway instance
over the whole edge list doubles as the correctness oracle
(:func:`sequential_components`). Node ids are unsigned 64-bit integers;
unknown ids register themselves as singleton roots on first touch.
"""

from __future__ import annotations

from typing import Iterable, Iterator

# Directed child -> parent linkage; the unit of shuffle traffic.
PairRecord = tuple[int, int]
# Undirected input linkage.
Edge = tuple[int, int]


class DisjointSetForest:
    """Union-by-size forest with full path compression on find.

    ``parent`` maps every registered node to its parent (roots map to
    themselves); ``tree_size`` holds the member count for roots only.
    A single instance is single-writer: no concurrent mutation.
    """

    __slots__ = ("parent", "tree_size")

    def __init__(self) -> None:
        self.parent: dict[int, int] = {}
        self.tree_size: dict[int, int] = {}

    def __len__(self) -> int:
        return len(self.parent)

    def __contains__(self, x: int) -> bool:
        return x in self.parent

    def nodes(self) -> Iterator[int]:
        """Registered nodes in first-touch order."""
        return iter(self.parent)

    def find(self, x: int) -> int:
        """Root of ``x``, registering ``x`` if unseen.

        Every node traversed on the way up is re-pointed directly at the
        root, so repeated finds are nearly O(1).
        """
        parent = self.parent
        if x not in parent:
            parent[x] = x
            self.tree_size[x] = 1
            return x
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, u: int, v: int) -> int:
        """Merge the trees of ``u`` and ``v``; return the surviving root.

        The root of the larger tree survives; on a size tie the smaller
        node id survives, which keeps results deterministic and biases
        later minimum-parent elections toward quick convergence.
        """
        ru = self.find(u)
        rv = self.find(v)
        if ru == rv:
            return ru
        size = self.tree_size
        su, sv = size[ru], size[rv]
        if su > sv or (su == sv and ru < rv):
            winner, loser = ru, rv
        else:
            winner, loser = rv, ru
        self.parent[loser] = winner
        size[winner] = su + sv
        del size[loser]
        return winner

    def depth(self, x: int) -> int:
        """Parent hops from ``x`` to its root, without compressing."""
        parent = self.parent
        hops = 0
        while parent[x] != x:
            x = parent[x]
            hops += 1
        return hops

    def flatten(self) -> list[PairRecord]:
        """One ``(node, root)`` record per registered node.

        Roots appear as ``(r, r)`` self-records. As a side effect every
        stored parent pointer ends up pointing directly at its root.
        """
        find = self.find
        return [(n, find(n)) for n in self.parent]


def edge_rows(edges: Iterable[Edge]) -> Iterable[Edge]:
    """Rows of an edge sequence as plain int pairs.

    numpy arrays convert through ``tolist`` in one C call; anything else
    passes through untouched.
    """
    tolist = getattr(edges, "tolist", None)
    return tolist() if tolist is not None else edges


def build_forest(edges: Iterable[Edge]) -> DisjointSetForest:
    """Forest over all edges; self-edges register their node, nothing more."""
    forest = DisjointSetForest()
    union = forest.union
    find = forest.find
    for u, v in edge_rows(edges):
        if u == v:
            find(u)
        else:
            union(u, v)
    return forest


def sequential_components(edges: Iterable[Edge]) -> dict[int, int]:
    """Whole-input labeling: every node -> minimum node id of its component.

    Single-process reference used as the oracle for all partition-equality
    checks elsewhere in the package.
    """
    forest = build_forest(edges)
    find = forest.find
    smallest: dict[int, int] = {}
    for n in forest.parent:
        r = find(n)
        cur = smallest.get(r)
        if cur is None or n < cur:
            smallest[r] = n
    return {n: smallest[find(n)] for n in forest.parent}
