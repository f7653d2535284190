"""Estimator-style front end over the functional engine.

Both estimators follow the scikit-learn parameter contract: constructor
arguments are stored verbatim, ``get_params``/``set_params`` round-trip
them (so ``sklearn.base.clone`` works by duck typing, without this
package depending on scikit-learn), and everything learned by ``fit``
lands in trailing-underscore attributes.
"""

from __future__ import annotations

import inspect
from typing import Any

import numpy as np

from ._validation import check_edge_array, check_node_ids
from .baselines import run_alternating
from .engine import DEFAULT_HASH_SEED, EngineConfig, run
from .metrics import RunMetrics


class NotFittedError(ValueError, AttributeError):
    """Raised when predicting with an estimator that has not been fit."""


class BaseGraphEstimator:
    """Parameter plumbing shared by the estimators in this module."""

    @classmethod
    def _param_names(cls) -> list[str]:
        signature = inspect.signature(cls.__init__)
        return sorted(name for name in signature.parameters if name != "self")

    def get_params(self, deep: bool = True) -> dict[str, Any]:
        return {name: getattr(self, name) for name in self._param_names()}

    def set_params(self, **params: Any) -> "BaseGraphEstimator":
        valid = self._param_names()
        for name, value in params.items():
            if name not in valid:
                raise ValueError(
                    f"invalid parameter {name!r} for {type(self).__name__}; "
                    f"valid parameters are {valid}")
            setattr(self, name, value)
        return self

    def __repr__(self) -> str:
        params = ", ".join(f"{k}={v!r}" for k, v in self.get_params().items())
        return f"{type(self).__name__}({params})"

    # -- shared fitted surface --------------------------------------------

    def _finish_fit(self, labeling: dict[int, int], metrics: RunMetrics) -> None:
        nodes = sorted(labeling)
        self.components_: dict[int, int] = labeling
        self.nodes_ = np.array(nodes, dtype=np.uint64)
        self.labels_ = np.array([labeling[n] for n in nodes], dtype=np.uint64)
        self.n_components_ = len(set(labeling.values()))
        self.metrics_ = metrics

    def _check_fitted(self) -> None:
        if not hasattr(self, "components_"):
            raise NotFittedError(
                f"{type(self).__name__} is not fitted yet; call fit first")

    def predict(self, nodes: Any) -> np.ndarray:
        """Component label for each given node id.

        Raises ValueError for ids that were not present in the fitted
        edge list.
        """
        self._check_fitted()
        components = self.components_
        out = []
        for n in check_node_ids(nodes):
            label = components.get(n)
            if label is None:
                raise ValueError(f"unknown node id {n}; not present at fit time")
            out.append(label)
        return np.array(out, dtype=np.uint64)

    def fit_predict(self, X: Any, y: Any = None) -> np.ndarray:
        """Fit on an edge list and return ``labels_`` (aligned with ``nodes_``)."""
        return self.fit(X).labels_


class UnionFindShuffle(BaseGraphEstimator):
    """Connected-components estimator backed by the shuffle engine.

    Parameters
    ----------
    n_partitions : int, default=8
        Logical partition count k; controls simulated parallelism and the
        per-child candidate-parent bound.
    election : {"min", "max"}, default="min"
        Which extreme wins a parent election. Component labels are the
        component minimum (or maximum) node id.
    local_union_find : bool, default=True
        Run weighted union-find inside each partition before the first
        shuffle. Disabling it ships every edge from both endpoints.
    max_rounds : int or None, default=None
        Safety cap per iterative phase; None derives a generous bound
        from the input size.
    hash_seed : int
        Seed of the shuffle placement hash.
    n_workers : int, default=1
        Simulated worker count; never affects outputs.
    spill_record_budget : int
        Checkpoint records held in memory before spilling to disk.
    spill_dir : str or None
        Spill directory; None means ``$UFS_TMPDIR`` or the system tmpdir.

    Attributes
    ----------
    components_ : dict mapping node id to its component label.
    nodes_ : ndarray of node ids seen at fit time, ascending.
    labels_ : ndarray of component labels aligned with ``nodes_``.
    n_components_ : int, number of connected components.
    metrics_ : RunMetrics for the fitting run.
    """

    def __init__(self, n_partitions: int = 8, election: str = "min",
                 local_union_find: bool = True, max_rounds: int | None = None,
                 hash_seed: int = DEFAULT_HASH_SEED, n_workers: int = 1,
                 spill_record_budget: int = 2_000_000,
                 spill_dir: str | None = None) -> None:
        self.n_partitions = n_partitions
        self.election = election
        self.local_union_find = local_union_find
        self.max_rounds = max_rounds
        self.hash_seed = hash_seed
        self.n_workers = n_workers
        self.spill_record_budget = spill_record_budget
        self.spill_dir = spill_dir

    def _config(self) -> EngineConfig:
        return EngineConfig(
            k=self.n_partitions,
            election=self.election,
            local_uf=self.local_union_find,
            max_rounds=self.max_rounds,
            hash_seed=self.hash_seed,
            worker_count=self.n_workers,
            spill_record_budget=self.spill_record_budget,
            spill_dir=self.spill_dir,
        )

    def fit(self, X: Any, y: Any = None) -> "UnionFindShuffle":
        """Label connected components of an (n_edges, 2) edge list."""
        edges = check_edge_array(X)
        labeling, metrics = run(edges, self._config())
        self._finish_fit(labeling, metrics)
        return self


class AlternatingStarContraction(BaseGraphEstimator):
    """Connected components via alternating large-star/small-star rounds.

    Comparison baseline with the same fitted surface as
    :class:`UnionFindShuffle`; labels are always component minima.
    """

    def __init__(self, max_rounds: int | None = None) -> None:
        self.max_rounds = max_rounds

    def fit(self, X: Any, y: Any = None) -> "AlternatingStarContraction":
        """Label connected components of an (n_edges, 2) edge list."""
        edges = check_edge_array(X)
        labeling, metrics = run_alternating(edges, max_rounds=self.max_rounds)
        self._finish_fit(labeling, metrics)
        return self
