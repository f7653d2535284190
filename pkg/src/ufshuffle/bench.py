"""Benchmark harness: engine variants vs. the star baseline on named suites.

Round counts and record counts are the asserted currency; wall times are
reported for orientation only and are the one non-deterministic column.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Iterable, TextIO

from .baselines import run_alternating
from .engine import EngineConfig, run
from .generators import GenSpec, generate

CSV_HEADER = ("dataset", "algorithm", "edges", "rounds", "shuffle_records",
              "wall_time_ms")

ALGORITHMS = ("large_star_small_star", "ufs", "ufs_wo_local_uf")

SUITES: dict[str, tuple[GenSpec, ...]] = {
    "quick": (
        GenSpec("sparse", 400, edge_count=240, seed=101),
        GenSpec("clique_clusters", 128, cluster_size=16, seed=102),
        GenSpec("chain", 256, seed=103),
        GenSpec("skewed_lcc", 600, hub_count=4, tail_exponent=2.0, seed=104),
    ),
    "standard": (
        GenSpec("sparse", 10_000, edge_count=6_000, seed=201),
        GenSpec("sparse", 20_000, edge_count=12_000, seed=202),
        GenSpec("clique_clusters", 1024, cluster_size=32, seed=203),
        GenSpec("clique_clusters", 2048, cluster_size=64, seed=204),
        GenSpec("chain", 4096, seed=205),
        GenSpec("chain", 8192, seed=206),
        GenSpec("skewed_lcc", 10_000, hub_count=8, tail_exponent=2.0, seed=207),
        GenSpec("skewed_lcc", 20_000, hub_count=16, tail_exponent=2.0, seed=208),
    ),
    "skewed": (
        GenSpec("skewed_lcc", 10_000, hub_count=8, tail_exponent=2.0, seed=301),
        GenSpec("skewed_lcc", 20_000, hub_count=16, tail_exponent=2.0, seed=302),
        GenSpec("skewed_lcc", 40_000, hub_count=16, tail_exponent=2.5, seed=303),
    ),
}


@dataclass(frozen=True)
class BenchRow:
    dataset: str
    algorithm: str
    edges: int
    rounds: int
    shuffle_records: int
    wall_time_ms: float


def dataset_name(spec: GenSpec) -> str:
    return f"{spec.kind}-n{spec.node_count}-s{spec.seed}"


def run_suite(suite: str, k: int = 16, workers: int = 1) -> list[BenchRow]:
    """Run every algorithm on every dataset of a suite.

    Rows come back sorted by (dataset, algorithm) for stable diffs.
    """
    try:
        specs = SUITES[suite]
    except KeyError:
        raise ValueError(
            f"unknown suite {suite!r}; expected one of {sorted(SUITES)}") from None
    rows: list[BenchRow] = []
    for spec in specs:
        edges, _ = generate(spec)
        name = dataset_name(spec)
        for algorithm in ALGORITHMS:
            if algorithm == "large_star_small_star":
                _, metrics = run_alternating(edges)
            else:
                config = EngineConfig(k=k, worker_count=workers,
                                      local_uf=algorithm == "ufs")
                _, metrics = run(edges, config)
            rows.append(BenchRow(
                dataset=name,
                algorithm=algorithm,
                edges=len(edges),
                rounds=metrics.total_rounds,
                shuffle_records=metrics.total_shuffle_records,
                wall_time_ms=metrics.wall_time_ms,
            ))
    rows.sort(key=lambda r: (r.dataset, r.algorithm))
    return rows


def write_csv(rows: Iterable[BenchRow], fh: TextIO) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow((row.dataset, row.algorithm, row.edges, row.rounds,
                         row.shuffle_records, f"{row.wall_time_ms:.3f}"))
