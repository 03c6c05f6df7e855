"""Command line entry point: ``hamlab <subcommand> ...``.

Exit codes: 0 success, 1 a negative verdict (no Hamilton cycle found, attack
failed, property violated), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import adversary, lab
from .graph import format_edge_list, parse_edge_list
from .kcore import k_core
from .posa import BuildFailure, build_hamilton
from .random_models import GraphProcess, hitting_time_kcore, hitting_time_min_degree, sample_gnm, sample_gnp


class UsageError(Exception):
    pass


def _read_graph(path: str):
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    try:
        return parse_edge_list(text)
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _emit_mapping(data: dict, fmt: str, out: str | None) -> None:
    if fmt == "json":
        _emit(json.dumps(data, sort_keys=True) + "\n", out)
        return
    rows = [(k, json.dumps(v) if isinstance(v, (list, dict)) else v) for k, v in sorted(data.items())]
    target = open(out, "w", newline="") if out else sys.stdout
    try:
        w = csv.writer(target, lineterminator="\n")
        w.writerow(("key", "value"))
        w.writerows(rows)
    finally:
        if out:
            target.close()


def cmd_generate(args) -> int:
    if args.model == "gnp":
        if args.p is None:
            raise UsageError("gnp needs --p")
        G = sample_gnp(args.n, args.p, args.seed)
    else:
        if args.m is None:
            raise UsageError("gnm needs --m")
        G = sample_gnm(args.n, args.m, args.seed)
    _emit(format_edge_list(G), args.out)
    return 0


def cmd_process(args) -> int:
    proc = GraphProcess(args.n, args.seed)
    if args.criterion == "min-degree":
        rep = hitting_time_min_degree(proc, args.k)
    else:
        rep = hitting_time_kcore(proc, args.k)
    data = rep.to_dict()
    data.update(n=args.n, seed=args.seed)
    if args.graph_out:
        Path(args.graph_out).write_text(format_edge_list(proc.current))
    if args.dump_order:
        Path(args.dump_order).write_text(proc.to_text(dump_order=True))
    _emit_mapping(data, args.format, args.out)
    return 0 if rep.reached else 1


def cmd_kcore(args) -> int:
    G = _read_graph(args.graph)
    res = k_core(G, args.k)
    if args.core_out:
        Path(args.core_out).write_text(format_edge_list(res.core_graph))
    data = res.to_dict()
    data["size"] = len(res.core_vertices)
    _emit_mapping(data, args.format, args.out)
    return 0 if res else 1


def cmd_hamilton(args) -> int:
    H = _read_graph(args.graph)
    G = _read_graph(args.host) if args.host else H
    params = {"seed": args.seed}
    if args.per_vertex is not None:
        params["per_vertex"] = args.per_vertex
    if args.max_boosters is not None:
        params["max_boosters"] = args.max_boosters
    log: list = []
    try:
        cycle = build_hamilton(G, H, log=log, **params)
    except BuildFailure as exc:
        _emit(json.dumps({"success": False, **exc.to_dict()}, sort_keys=True, default=str) + "\n", args.out)
        return 1
    data = {"success": True, "cycle": cycle, "boosters": sum(1 for e in log if e["edges"])}
    if args.trace:
        data["trace"] = log
    _emit(json.dumps(data, sort_keys=True) + "\n", args.out)
    return 0


def cmd_attack(args) -> int:
    G = _read_graph(args.graph)
    try:
        if args.kind == "bipartition":
            plan = adversary.bipartition_attack(G, eps=args.eps, seed=args.seed)
        elif args.kind == "random":
            plan = adversary.random_attack(G, args.alpha, args.seed)
        else:
            plan = adversary.greedy_min_degree_attack(G, args.alpha)
    except adversary.AttackFailure as exc:
        _emit(json.dumps({"success": False, **exc.to_dict()}, sort_keys=True) + "\n", args.out)
        return 1
    if args.residual_out:
        Path(args.residual_out).write_text(format_edge_list(plan.residual()))
    data = plan.to_dict()
    _emit(json.dumps(data, sort_keys=True) + "\n", args.out)
    return 0 if data["validation"]["valid"] else 1


_OVERRIDES = ("experiment", "n", "k", "eps", "alpha", "p")


def cmd_experiment(args) -> int:
    base: dict = {}
    if args.config:
        try:
            base = lab.ExperimentConfig.from_file(args.config).to_dict()
        except (OSError, ValueError) as exc:
            raise UsageError(str(exc)) from None
    for key in _OVERRIDES:
        val = getattr(args, key)
        if val is not None:
            base[key] = val
    if args.trials is not None:
        base["trials"] = args.trials
    if args.seed is not None:
        base["master_seed"] = args.seed
    if "experiment" not in base or "n" not in base:
        raise UsageError("experiment needs a config file or --experiment and --n")
    try:
        cfg = lab.ExperimentConfig.from_dict(base)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    records, summary = lab.run_experiment(cfg, threads=args.threads)
    if args.out:
        lab.write_results(records, args.out, include_time=args.timings)
    if args.format == "csv":
        lab.write_summary_csv(summary, sys.stdout)
    else:
        sys.stdout.write(json.dumps(summary, sort_keys=True) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", help="output file (default: stdout)")
    common.add_argument("--format", choices=("json", "csv"), default="json")

    ap = argparse.ArgumentParser(prog="hamlab", description="Hamiltonicity and resilience in random graphs")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", parents=[common], help="sample G(n,p) or G(n,M) as an edge list")
    g.add_argument("model", choices=("gnp", "gnm"))
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--p", type=float)
    g.add_argument("--m", type=int)
    g.set_defaults(func=cmd_generate)

    p = sub.add_parser("process", parents=[common], help="hitting time of the random graph process")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--criterion", choices=("min-degree", "kcore"), default="min-degree")
    p.add_argument("--graph-out", help="write the graph at the hitting time")
    p.add_argument("--dump-order", help="write 'n seed M' plus the edge order up to M")
    p.set_defaults(func=cmd_process)

    k = sub.add_parser("kcore", parents=[common], help="k-core of a graph file")
    k.add_argument("graph")
    k.add_argument("--k", type=int, required=True)
    k.add_argument("--core-out", help="write the core as an edge list")
    k.set_defaults(func=cmd_kcore)

    h = sub.add_parser("hamilton", parents=[common], help="build a Hamilton cycle in a graph file")
    h.add_argument("graph", help="the (residual) graph to search")
    h.add_argument("--host", help="host graph the residual came from (default: the graph itself)")
    h.add_argument("--per-vertex", type=int)
    h.add_argument("--max-boosters", type=int)
    h.add_argument("--trace", action="store_true", help="include the booster log")
    h.set_defaults(func=cmd_hamilton)

    a = sub.add_parser("attack", parents=[common], help="apply a deletion attack")
    a.add_argument("graph")
    a.add_argument("--kind", choices=("bipartition", "random", "greedy"), required=True)
    a.add_argument("--alpha", type=float, default=0.25)
    a.add_argument("--eps", type=float, default=0.05)
    a.add_argument("--residual-out", help="write the residual graph")
    a.set_defaults(func=cmd_attack)

    e = sub.add_parser("experiment", help="run a Monte Carlo experiment")
    e.add_argument("config", nargs="?", help="JSON or TOML experiment config")
    e.add_argument("--experiment", choices=lab.EXPERIMENTS)
    e.add_argument("--n", type=int)
    e.add_argument("--k", type=int)
    e.add_argument("--eps", type=float)
    e.add_argument("--alpha", type=float)
    e.add_argument("--p", type=float)
    e.add_argument("--trials", type=int)
    e.add_argument("--seed", type=int, help="master seed")
    e.add_argument("--out", help="JSON-lines record file")
    e.add_argument("--threads", type=int, default=1)
    e.add_argument("--format", choices=("json", "csv"), default="json", help="summary format")
    e.add_argument("--timings", action="store_true", help="keep wall times in records")
    e.set_defaults(func=cmd_experiment)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"hamlab: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
