"""Edge-list files, labeling output, metrics JSON.

Edge files are UTF-8 text, one ``u<TAB>v`` (or ``u,v``) linkage per line;
``#`` starts a comment, blank lines are skipped. Labeling files are
``child<TAB>root`` lines sorted by child. Metrics serialize to a JSON
object with exactly the RunMetrics field names.
"""

from __future__ import annotations

import json
from typing import Iterable, Optional

from .dsu import Edge, edge_rows
from .metrics import RunMetrics

U64_MAX = 2 ** 64 - 1

_SEPARATORS = {"tsv": "\t", "csv": ","}


class ParseError(ValueError):
    """Malformed edge or labeling file content, with its line number."""

    def __init__(self, line_no: int, message: str) -> None:
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class IdDictionary:
    """Bijective mapping between external string ids and dense node ids.

    Ids are assigned from 0 in first-seen order; ``reverse`` is the dense
    id -> string table.
    """

    def __init__(self) -> None:
        self.forward: dict[str, int] = {}
        self.reverse: list[str] = []

    def __len__(self) -> int:
        return len(self.reverse)

    def encode(self, token: str) -> int:
        node = self.forward.get(token)
        if node is None:
            node = len(self.reverse)
            self.forward[token] = node
            self.reverse.append(token)
        return node

    def decode(self, node: int) -> str:
        return self.reverse[node]


def read_edges(path: str, fmt: str = "tsv",
               encode_strings: bool = False) -> tuple[list[Edge], Optional[IdDictionary]]:
    """Parse an edge file; returns the edges and the dictionary if encoding.

    Without ``encode_strings`` every token must parse as an unsigned
    64-bit integer: non-numeric tokens raise ParseError, out-of-range
    numeric tokens raise OverflowError.
    """
    sep = _sep(fmt)
    dictionary = IdDictionary() if encode_strings else None
    edges: list[Edge] = []
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            text = raw.split("#", 1)[0].strip()
            if not text:
                continue
            parts = text.split(sep)
            if len(parts) != 2:
                raise ParseError(
                    line_no, f"expected 2 fields separated by {sep!r}, got {len(parts)}")
            u_tok, v_tok = parts[0].strip(), parts[1].strip()
            if not u_tok or not v_tok:
                raise ParseError(line_no, "empty node token")
            if dictionary is not None:
                edges.append((dictionary.encode(u_tok), dictionary.encode(v_tok)))
            else:
                edges.append((_parse_node(u_tok, line_no),
                              _parse_node(v_tok, line_no)))
    return edges, dictionary


def _sep(fmt: str) -> str:
    try:
        return _SEPARATORS[fmt]
    except KeyError:
        raise ValueError(f"unknown edge file format {fmt!r}; expected tsv or csv") from None


def _parse_node(token: str, line_no: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise ParseError(line_no, f"not an integer node id: {token!r}") from None
    if value < 0:
        raise ParseError(line_no, f"negative node id: {value}")
    if value > U64_MAX:
        raise OverflowError(
            f"line {line_no}: node id {value} exceeds 64 bits")
    return value


def write_edges(edges: Iterable[Edge], path: str, fmt: str = "tsv") -> None:
    """Write edges one per line in input order."""
    sep = _sep(fmt)
    with open(path, "w", encoding="utf-8") as fh:
        for u, v in edge_rows(edges):
            fh.write(f"{u}{sep}{v}\n")


def write_labeling(labeling: dict[int, int], path: str,
                   dictionary: Optional[IdDictionary] = None) -> None:
    """Write ``child<TAB>root`` lines sorted ascending by child.

    With a dictionary, ids map back to their external strings and the sort
    is by external child string; output is byte-deterministic either way.
    """
    if dictionary is not None:
        decode = dictionary.decode
        rows = sorted((decode(c), decode(r)) for c, r in labeling.items())
    else:
        rows = sorted(labeling.items())
    with open(path, "w", encoding="utf-8") as fh:
        for child, root in rows:
            fh.write(f"{child}\t{root}\n")


def read_labeling(path: str) -> dict[str, str]:
    """Parse a labeling file back into a raw string mapping."""
    out: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            text = raw.rstrip("\n")
            if not text:
                continue
            parts = text.split("\t")
            if len(parts) != 2:
                raise ParseError(line_no, f"expected 2 tab-separated fields, got {len(parts)}")
            out[parts[0]] = parts[1]
    return out


def write_metrics(metrics: RunMetrics, path: str) -> None:
    """Serialize run metrics as a single JSON object."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(metrics.to_dict(), fh, indent=2)
        fh.write("\n")


def read_metrics(path: str) -> RunMetrics:
    with open(path, "r", encoding="utf-8") as fh:
        return RunMetrics.from_dict(json.load(fh))
