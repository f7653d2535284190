"""Per-run counters: rounds, shuffle volumes, checkpoint volumes."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

# Exact serialized field set, in emission order.
METRIC_FIELDS = (
    "phase2_rounds",
    "phase3_rounds",
    "shuffle_records_per_round",
    "checkpointed_per_round",
    "initial_shuffle_volume",
    "largest_component_size",
    "input_edges",
    "wall_time_ms",
)


@dataclass
class RunMetrics:
    """Benchmark currency of a single engine (or baseline) run.

    ``shuffle_records_per_round`` and ``checkpointed_per_round`` carry one
    entry per round across both iterative phases, in execution order, so
    their length equals ``phase2_rounds + phase3_rounds``.
    """

    phase2_rounds: int = 0
    phase3_rounds: int = 0
    shuffle_records_per_round: list[int] = field(default_factory=list)
    checkpointed_per_round: list[int] = field(default_factory=list)
    initial_shuffle_volume: int = 0
    largest_component_size: int = 0
    input_edges: int = 0
    wall_time_ms: float = 0.0

    def to_dict(self) -> dict[str, Any]:
        """Plain dict with exactly the serialized fields."""
        return {name: getattr(self, name) for name in METRIC_FIELDS}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "RunMetrics":
        return cls(**{name: data[name] for name in METRIC_FIELDS})

    @property
    def total_rounds(self) -> int:
        return self.phase2_rounds + self.phase3_rounds

    @property
    def total_shuffle_records(self) -> int:
        return sum(self.shuffle_records_per_round)
