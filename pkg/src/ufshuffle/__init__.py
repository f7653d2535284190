"""Connected components via per-partition union-find plus iterative shuffle rounds."""

from .baselines import StarRoundState, large_star, run_alternating, small_star
from .checkpoint import CheckpointStore
from .dsu import DisjointSetForest, build_forest, sequential_components
from .engine import (
    DEFAULT_HASH_SEED,
    CycleDetected,
    EngineConfig,
    EngineTrace,
    PartitionSet,
    RoundLimitExceeded,
    consolidate,
    initial_records_without_local_uf,
    load_partitions,
    path_compression_round,
    process_partition_round,
    run,
    run_traced,
    self_join,
    shuffle_by_child,
    weighted_union_phase,
)
from .estimators import AlternatingStarContraction, NotFittedError, UnionFindShuffle
from .generators import GenSpec, GeneratorTruth, InvalidSpec, generate
from .io import IdDictionary, ParseError, read_edges, write_labeling, write_metrics
from .metrics import RunMetrics

__version__ = "0.1.0"

__all__ = [
    "AlternatingStarContraction",
    "CheckpointStore",
    "CycleDetected",
    "DEFAULT_HASH_SEED",
    "DisjointSetForest",
    "EngineConfig",
    "EngineTrace",
    "GenSpec",
    "GeneratorTruth",
    "IdDictionary",
    "InvalidSpec",
    "NotFittedError",
    "ParseError",
    "PartitionSet",
    "RoundLimitExceeded",
    "RunMetrics",
    "StarRoundState",
    "UnionFindShuffle",
    "build_forest",
    "consolidate",
    "generate",
    "initial_records_without_local_uf",
    "large_star",
    "load_partitions",
    "path_compression_round",
    "process_partition_round",
    "read_edges",
    "run",
    "run_alternating",
    "run_traced",
    "self_join",
    "sequential_components",
    "shuffle_by_child",
    "small_star",
    "weighted_union_phase",
    "write_labeling",
    "write_metrics",
]
