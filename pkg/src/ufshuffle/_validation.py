"""Input validation helpers for the estimator API."""

from __future__ import annotations

from typing import Any, Sequence

import numpy as np

U64_MAX = 2 ** 64 - 1


def check_edge_array(X: Any) -> Sequence[tuple[int, int]]:
    """Validate an edge input and return something the engine can consume.

    Accepts an (n_edges, 2) integer ndarray, or any iterable of
    ``(u, v)`` pairs of non-negative ints fitting in 64 bits. ndarrays
    pass through unchanged; other iterables come back as a list of int
    tuples. Raises ValueError on anything else.
    """
    if isinstance(X, np.ndarray):
        if X.size == 0:
            return X.reshape(0, 2)
        if X.ndim != 2 or X.shape[1] != 2:
            raise ValueError(
                f"edge array must have shape (n_edges, 2), got {X.shape}")
        if X.dtype.kind not in "iu":
            raise ValueError(
                f"edge array must have an integer dtype, got {X.dtype}")
        if X.dtype.kind == "i" and int(X.min()) < 0:
            raise ValueError("node ids must be non-negative")
        return X
    if isinstance(X, (str, bytes)) or not hasattr(X, "__iter__"):
        raise ValueError(
            f"expected an edge array or iterable of pairs, got {type(X).__name__}")
    edges: list[tuple[int, int]] = []
    for i, row in enumerate(X):
        try:
            u, v = row
        except (TypeError, ValueError):
            raise ValueError(f"edge {i} is not a (u, v) pair: {row!r}") from None
        edges.append((_check_node(u, i), _check_node(v, i)))
    return edges


def _check_node(value: Any, row: int) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise ValueError(
            f"edge {row}: node id must be an integer, got {value!r}")
    node = int(value)
    if not 0 <= node <= U64_MAX:
        raise ValueError(
            f"edge {row}: node id {node} outside the unsigned 64-bit range")
    return node


def check_node_ids(nodes: Any) -> list[int]:
    """Validate a flat sequence of node ids for prediction lookups."""
    if isinstance(nodes, np.ndarray):
        if nodes.ndim != 1:
            raise ValueError(f"node ids must be one-dimensional, got shape {nodes.shape}")
        if nodes.dtype.kind not in "iu":
            raise ValueError(f"node ids must be integers, got dtype {nodes.dtype}")
        nodes = nodes.tolist()
    elif isinstance(nodes, (str, bytes)) or not hasattr(nodes, "__iter__"):
        raise ValueError(f"expected a sequence of node ids, got {type(nodes).__name__}")
    return [_check_node(n, i) for i, n in enumerate(nodes)]
