"""Command-line surface: gen, run, verify, bench.

Exit codes: 0 success, 1 verification mismatch, 2 usage error, 3 runtime
error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import bench as bench_mod
from .dsu import sequential_components
from .engine import DEFAULT_HASH_SEED, EngineConfig, run
from .generators import KINDS, GenSpec, InvalidSpec, generate
from .io import read_edges, read_labeling, write_edges, write_labeling, write_metrics


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ufshuffle",
        description="Connected components over k logical partitions, "
                    "plus graph generation, verification and benchmarks.")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a synthetic edge list")
    gen.add_argument("--kind", required=True, choices=KINDS)
    gen.add_argument("--nodes", required=True, type=int)
    gen.add_argument("--edges", type=int, help="edge count (sparse)")
    gen.add_argument("--cluster-size", type=int, help="clique size (clique_clusters)")
    gen.add_argument("--hubs", type=int, help="hub count (skewed_lcc)")
    gen.add_argument("--tail-exponent", type=float, default=2.0,
                     help="hub weight decay (skewed_lcc)")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--format", choices=("tsv", "csv"), default="tsv")
    gen.add_argument("-o", "--output", required=True)

    runp = sub.add_parser("run", help="label connected components of an edge file")
    runp.add_argument("--input", required=True)
    runp.add_argument("-o", "--output", required=True, help="labeling file")
    runp.add_argument("--partitions", type=int, default=8)
    runp.add_argument("--election", choices=("min", "max"), default="min")
    runp.add_argument("--no-local-uf", action="store_true",
                      help="skip the per-partition union-find before shuffling")
    runp.add_argument("--metrics", help="write run metrics JSON here")
    runp.add_argument("--max-rounds", type=int)
    runp.add_argument("--workers", type=int, default=1)
    runp.add_argument("--format", choices=("tsv", "csv"), default="tsv")
    runp.add_argument("--encode-strings", action="store_true",
                      help="treat node tokens as opaque strings")
    runp.add_argument("--hash-seed", type=int, default=DEFAULT_HASH_SEED)
    runp.add_argument("--spill-budget", type=int, default=2_000_000,
                      help="checkpoint records kept in memory before spilling")

    verify = sub.add_parser("verify", help="check a labeling against the oracle")
    verify.add_argument("--input", required=True, help="edge file")
    verify.add_argument("--labeling", required=True, help="labeling file")
    verify.add_argument("--format", choices=("tsv", "csv"), default="tsv")

    benchp = sub.add_parser("bench", help="run the comparison benchmark suite")
    benchp.add_argument("--suite", required=True, choices=sorted(bench_mod.SUITES))
    benchp.add_argument("-o", "--output", default="-", help="CSV path, - for stdout")
    benchp.add_argument("--partitions", type=int, default=16)
    benchp.add_argument("--workers", type=int, default=1)

    return parser


def _cmd_gen(args: argparse.Namespace) -> int:
    spec = GenSpec(
        kind=args.kind,
        node_count=args.nodes,
        edge_count=args.edges,
        cluster_size=args.cluster_size,
        hub_count=args.hubs,
        tail_exponent=args.tail_exponent,
        seed=args.seed,
    )
    try:
        edges, _ = generate(spec)
    except InvalidSpec as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    write_edges(edges, args.output, fmt=args.format)
    print(f"wrote {len(edges)} edges to {args.output}")
    return 0


def _cmd_run(args: argparse.Namespace) -> int:
    edges, dictionary = read_edges(args.input, fmt=args.format,
                                   encode_strings=args.encode_strings)
    config = EngineConfig(
        k=args.partitions,
        election=args.election,
        local_uf=not args.no_local_uf,
        max_rounds=args.max_rounds,
        hash_seed=args.hash_seed,
        worker_count=args.workers,
        spill_record_budget=args.spill_budget,
    )
    labeling, metrics = run(edges, config)
    write_labeling(labeling, args.output, dictionary)
    if args.metrics:
        write_metrics(metrics, args.metrics)
    print(f"{len(edges)} edges, {len(labeling)} nodes, "
          f"{len(set(labeling.values()))} components, "
          f"{metrics.total_rounds} rounds")
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    edges, dictionary = read_edges(args.input, fmt=args.format,
                                   encode_strings=True)
    claimed = read_labeling(args.labeling)
    oracle = sequential_components(edges)
    assert dictionary is not None
    decode = dictionary.decode

    if set(claimed) != {decode(n) for n in oracle}:
        print("mismatch: labeling covers a different node set", file=sys.stderr)
        return 1
    oracle_groups: dict[int, set[str]] = {}
    for node, root in oracle.items():
        oracle_groups.setdefault(root, set()).add(decode(node))
    claimed_groups: dict[str, set[str]] = {}
    for node, label in claimed.items():
        claimed_groups.setdefault(label, set()).add(node)
    ok = ({frozenset(g) for g in oracle_groups.values()}
          == {frozenset(g) for g in claimed_groups.values()})
    if not ok:
        print("mismatch: labeling induces a different partition", file=sys.stderr)
        return 1
    print(f"ok: {len(oracle_groups)} components over {len(oracle)} nodes")
    return 0


def _cmd_bench(args: argparse.Namespace) -> int:
    rows = bench_mod.run_suite(args.suite, k=args.partitions, workers=args.workers)
    if args.output == "-":
        bench_mod.write_csv(rows, sys.stdout)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            bench_mod.write_csv(rows, fh)
    return 0


_COMMANDS = {
    "gen": _cmd_gen,
    "run": _cmd_run,
    "verify": _cmd_verify,
    "bench": _cmd_bench,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return _COMMANDS[args.command](args)
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
