"""Append-only store for terminal child->parent records.

Records accumulate in memory per phase; once the total live count
exceeds the configured budget, each phase's records stream to an
append-only temporary file of little-endian ``(child, parent)`` u64
pairs (16 bytes per record). The spill directory defaults to
``$UFS_TMPDIR`` when set, else the system temp dir.
"""

from __future__ import annotations

import os
import struct
import tempfile
from array import array
from typing import Iterable, Iterator

from .dsu import PairRecord

PHASE2 = "phase2"
PHASE3 = "phase3"

_PAIR = struct.Struct("<QQ")
_CHUNK_RECORDS = 65536


def spill_directory(override: str | None = None) -> str:
    if override:
        return override
    return os.environ.get("UFS_TMPDIR") or tempfile.gettempdir()


class CheckpointStore:
    """Per-phase append-only record log with optional disk spill.

    Append during rounds, read afterwards; :meth:`close` removes any
    spill files. Usable as a context manager.
    """

    def __init__(self, spill_record_budget: int = 2_000_000,
                 spill_dir: str | None = None) -> None:
        self.spill_record_budget = spill_record_budget
        self.spill_dir = spill_directory(spill_dir)
        self._buffers: dict[str, array] = {PHASE2: array("Q"), PHASE3: array("Q")}
        self._files: dict[str, object] = {}
        self._file_records: dict[str, int] = {PHASE2: 0, PHASE3: 0}

    # -- writing ---------------------------------------------------------

    def append(self, phase: str, record: PairRecord) -> None:
        buf = self._buffers[phase]
        buf.append(record[0])
        buf.append(record[1])
        self._maybe_spill()

    def append_pairs(self, phase: str, flat: array) -> None:
        """Append an interleaved child,parent array in one go."""
        self._buffers[phase].extend(flat)
        self._maybe_spill()

    def extend(self, phase: str, records: Iterable[PairRecord]) -> None:
        buf = self._buffers[phase]
        for child, parent in records:
            buf.append(child)
            buf.append(parent)
        self._maybe_spill()

    def _maybe_spill(self) -> None:
        if self._live_records() > self.spill_record_budget:
            for phase, buf in self._buffers.items():
                if buf:
                    self._flush(phase)

    def _live_records(self) -> int:
        return sum(len(buf) for buf in self._buffers.values()) // 2

    def _flush(self, phase: str) -> None:
        fh = self._files.get(phase)
        if fh is None:
            fh = tempfile.NamedTemporaryFile(
                mode="w+b", dir=self.spill_dir,
                prefix=f"ufs-{phase}-", suffix=".ckpt", delete=False)
            self._files[phase] = fh
        buf = self._buffers[phase]
        fh.write(buf.tobytes())
        self._file_records[phase] += len(buf) // 2
        del buf[:]

    # -- reading ---------------------------------------------------------

    def count(self, phase: str) -> int:
        return self._file_records[phase] + len(self._buffers[phase]) // 2

    def total(self) -> int:
        return self.count(PHASE2) + self.count(PHASE3)

    def iter_phase(self, phase: str) -> Iterator[PairRecord]:
        """All records of one phase, file contents first, in append order."""
        fh = self._files.get(phase)
        if fh is not None:
            fh.flush()
            fh.seek(0)
            chunk_bytes = _CHUNK_RECORDS * _PAIR.size
            while True:
                chunk = fh.read(chunk_bytes)
                if not chunk:
                    break
                yield from _PAIR.iter_unpack(chunk)
            fh.seek(0, os.SEEK_END)
        buf = self._buffers[phase]
        for i in range(0, len(buf), 2):
            yield buf[i], buf[i + 1]

    def iter_all(self) -> Iterator[PairRecord]:
        yield from self.iter_phase(PHASE2)
        yield from self.iter_phase(PHASE3)

    def spill_paths(self) -> list[str]:
        return [fh.name for fh in self._files.values()]

    # -- lifecycle -------------------------------------------------------

    def close(self) -> None:
        for fh in self._files.values():
            name = fh.name
            fh.close()
            try:
                os.unlink(name)
            except OSError:
                pass
        self._files.clear()
        self._buffers = {PHASE2: array("Q"), PHASE3: array("Q")}
        self._file_records = {PHASE2: 0, PHASE3: 0}

    def __enter__(self) -> "CheckpointStore":
        return self

    def __exit__(self, *exc: object) -> None:
        self.close()
