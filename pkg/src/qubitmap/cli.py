"""Command-line front end.

Subcommands::

    qubitmap map --circuit FILE --lattice N --mapper heuristic --seed 7
    qubitmap bench gen --family sequence-i --s 8 --k 3
    qubitmap experiment run --config recipes/corner-trap.json
    qubitmap experiment plot --summary out/summary.csv --kind scaling
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .benchmarks import BenchmarkSpec
from .circuit import parse_circuit
from .experiments import load_config, read_summary_csv, run_experiment, summarize
from .graphs import NoiseSpec, interaction_graph, interaction_to_json, make_lattice
from .mappers import run_mapper
from .metric import swap_edge_count
from .plots import PLOT_KINDS, emit_plots


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qubitmap")
    parser.add_argument("--version", action="version", version=f"qubitmap {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_map = sub.add_parser("map", help="map a circuit onto a lattice and print the result")
    p_map.add_argument("--circuit", required=True, type=Path, help="circuit text file")
    p_map.add_argument("--lattice", required=True, type=int, metavar="N", help="lattice side")
    p_map.add_argument("--mapper", required=True, choices=("heuristic", "brute", "trivial"))
    p_map.add_argument("--seed", required=True, type=int, help="noise sampling seed")
    p_map.add_argument("--include-measurement", action="store_true")

    p_bench = sub.add_parser("bench", help="benchmark graph generators")
    bench_sub = p_bench.add_subparsers(dest="bench_command", required=True)
    p_gen = bench_sub.add_parser("gen", help="emit a benchmark interaction graph as JSON")
    p_gen.add_argument(
        "--family",
        required=True,
        choices=("linear", "sequence-i", "sequence-ii", "realistic"),
    )
    p_gen.add_argument("--r", type=int, help="path length (linear family)")
    p_gen.add_argument("--s", type=int, help="qubit count (sequence families)")
    p_gen.add_argument("--k", type=int, help="nonlinear edges added (sequence families)")
    p_gen.add_argument("--name", help="benchmark name (realistic family)")
    p_gen.add_argument("--depth-mult", type=int, default=1)
    p_gen.add_argument("--output", type=Path, help="write here instead of stdout")

    p_exp = sub.add_parser("experiment", help="Monte-Carlo experiment runner")
    exp_sub = p_exp.add_subparsers(dest="experiment_command", required=True)
    p_run = exp_sub.add_parser("run", help="run a config, writing trials.csv and summary.csv")
    p_run.add_argument("--config", required=True, type=Path)
    p_plot = exp_sub.add_parser("plot", help="render charts from a summary.csv")
    p_plot.add_argument("--summary", required=True, type=Path)
    p_plot.add_argument("--kind", required=True, choices=PLOT_KINDS)
    p_plot.add_argument("--output", type=Path, help="output directory (default: summary's)")

    return parser


def _cmd_map(args) -> int:
    circuit = parse_circuit(args.circuit.read_text(), name=args.circuit.stem)
    graph = interaction_graph(circuit)
    lattice = make_lattice(args.lattice, NoiseSpec(seed=args.seed))
    result = run_mapper(
        args.mapper, graph, lattice, include_measurement=args.include_measurement
    )
    print(f"circuit {circuit.name or '<unnamed>'}: {circuit.qubit_count} qubits, "
          f"{len(circuit.gates)} gates")
    print(f"mapper {result.mapper_id} on {args.lattice}x{args.lattice} lattice "
          f"(seed {args.seed})")
    for v in range(graph.n_vertices):
        p = result.mapping.assign[v]
        r, c = divmod(p, args.lattice)
        print(f"  q{v} -> Q{p} (row {r}, col {c})")
    rep = result.report
    print(f"sigma_s     = {rep.sigma_s:.6f}")
    print(f"sigma_d     = {rep.sigma_d:.6f}")
    print(f"sigma_sw    = {rep.sigma_sw:.6f}")
    print(f"sigma_total = {rep.sigma_total:.6f}")
    print(f"swap routes = {len(rep.swap_routes)} (edges: {swap_edge_count(rep)})")
    for route in rep.swap_routes:
        print(f"  edge q{route.edge[0]}-q{route.edge[1]} via {list(route.path)} "
              f"(l={route.length})")
    print(f"elapsed     = {result.elapsed * 1000.0:.2f} ms")
    return 0


def _cmd_bench_gen(args) -> int:
    family = args.family.replace("-", "_")
    kwargs = {"depth_multiplier": args.depth_mult}
    if family == "linear":
        if args.r is None:
            print("error: --family linear requires --r", file=sys.stderr)
            return 2
        kwargs["r"] = args.r
    elif family in ("sequence_i", "sequence_ii"):
        if args.s is None or args.k is None:
            print(f"error: --family {args.family} requires --s and --k", file=sys.stderr)
            return 2
        kwargs.update(s=args.s, k=args.k)
    else:
        if args.name is None:
            print("error: --family realistic requires --name", file=sys.stderr)
            return 2
        kwargs["name"] = args.name
    graph = BenchmarkSpec(family, **kwargs).build()
    text = json.dumps(interaction_to_json(graph), indent=2)
    if args.output is not None:
        args.output.write_text(text + "\n")
        print(f"wrote {args.output}")
    else:
        print(text)
    return 0


def _cmd_experiment_run(args) -> int:
    cfg = load_config(args.config)
    records = run_experiment(cfg)
    ok = sum(1 for r in records if r.status == "ok")
    print(f"{len(records)} rows ({ok} ok) -> {cfg.output / 'trials.csv'}")
    print(f"summary -> {cfg.output / 'summary.csv'}")
    return 0


def _cmd_experiment_plot(args) -> int:
    summary = read_summary_csv(args.summary)
    outdir = args.output if args.output is not None else args.summary.parent
    for path in emit_plots(summary, args.kind, outdir):
        print(f"wrote {path}")
    return 0


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "map":
        return _cmd_map(args)
    if args.command == "bench":
        return _cmd_bench_gen(args)
    if args.command == "experiment":
        if args.experiment_command == "run":
            return _cmd_experiment_run(args)
        return _cmd_experiment_plot(args)
    return 2


if __name__ == "__main__":
    raise SystemExit(main())
