"""tmc-lab command line.

Machine-readable output (JSON, or CSV with --csv) goes to stdout, human
summaries to stderr. Exit codes: 0 success, 1 domain or input error,
2 exact solving skipped because the graph exceeds --max-n.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .coloring import SCHEMA, ColoringMismatchError, TotalColoring, construct_theorem1, verify_tmc
from .graph import Graph, is_connected
from .graphio import GraphFormatError, emit_graph6, read_graph, write_graph
from .randgraph import ExperimentConfig, connectivity_probability, erdos_renyi_limit, records_to_csv, run_threshold_experiment
from .solver import BOUNDS, tmc_exact
from .spanning import DisconnectedGraphError
from .theorems import characterize_large, characterize_small, classify, sweep_crosscheck

EXIT_OK, EXIT_ERROR, EXIT_BUDGET = 0, 1, 2


class CliError(Exception):
    pass


def _read_text(arg: str) -> str:
    if arg == "-":
        return sys.stdin.read()
    if os.path.exists(arg):
        with open(arg) as fh:
            return fh.read()
    # not a file: treat the argument itself as graph text
    return arg


def _load_graph(arg: str, fmt: str | None) -> Graph:
    try:
        return read_graph(_read_text(arg), fmt)
    except (GraphFormatError, ValueError) as exc:
        raise CliError(f"cannot read graph: {exc}") from None


def _emit(obj, args, text: str | None = None) -> None:
    out = text if text is not None else json.dumps(obj, indent=2) + "\n"
    sys.stdout.write(out)


def _note(msg: str) -> None:
    print(msg, file=sys.stderr)


def _graph_header(G: Graph) -> dict:
    return {"schema": SCHEMA, "graph6": emit_graph6(G) if G.n <= 62 else None, "n": G.n, "m": G.m}


# -------------------------------------------------------------- commands

def cmd_compute(args) -> int:
    G = _load_graph(args.input, args.format)
    res = _graph_header(G) | {"command": "compute", "mode": args.mode}
    if not is_connected(G):
        res |= {"tmc": 0, "lb": 0, "ub": 0, "method": "disconnected", "exact": True, "certificate": None}
        _emit(res, args)
        _note("graph is disconnected: tmc = 0")
        return EXIT_OK

    code = EXIT_OK
    if args.mode in ("classify", "auto"):
        v = classify(G)
        if v.value is not None:
            res |= {"tmc": v.value, "lb": v.value, "ub": v.value, "method": v.rule, "exact": True,
                    "fired": [list(f) for f in v.fired], "certificate": None}
            _emit(res, args)
            _note(f"tmc = {v.value} via {v.rule}")
            return EXIT_OK
        if args.mode == "auto":
            for name, fn in (("characterize_small", characterize_small), ("characterize_large", characterize_large)):
                val = fn(G) if G.n <= 62 else None
                if val is not None:
                    res |= {"tmc": val, "lb": val, "ub": val, "method": name, "exact": True, "certificate": None}
                    _emit(res, args)
                    _note(f"tmc = {val} via {name}")
                    return EXIT_OK
        else:
            res |= {"tmc": None, "lb": v.lb, "ub": v.ub, "method": BOUNDS, "exact": False, "certificate": None}
            _emit(res, args)
            _note(f"no closed-form rule applies; {v.lb} <= tmc <= {v.ub}")
            return EXIT_OK

    if args.mode == "bounds":
        out = tmc_exact(G, max_n=-1)
    else:
        out = tmc_exact(G, max_n=args.max_n)
        if not out.exact:
            code = EXIT_BUDGET
    body = out.to_json()
    if args.mode == "bounds" and out.lb == out.ub:
        body["tmc"] = out.lb
    res |= body
    _emit(res, args)
    if out.exact:
        _note(f"tmc = {out.value} ({out.method})")
    else:
        _note(f"n = {G.n} exceeds --max-n {args.max_n}; {out.lb} <= tmc <= {out.ub}" if code else
              f"{out.lb} <= tmc <= {out.ub}")
    return code


def cmd_verify(args) -> int:
    G = _load_graph(args.graph, args.format)
    try:
        col = TotalColoring.from_json(_read_text(args.coloring))
        verdict = verify_tmc(G, col)
    except (ColoringMismatchError, KeyError, ValueError, TypeError) as exc:
        raise CliError(f"coloring does not fit the graph: {exc}") from None
    pair = verdict["failing_pair"]
    res = _graph_header(G) | {
        "command": "verify",
        "ok": verdict["ok"],
        "failing_pair": list(pair) if pair else None,
        "num_colors": col.num_colors,
    }
    _emit(res, args)
    _note("valid TMC-coloring" if verdict["ok"] else f"no total monochromatic path between {pair}")
    return EXIT_OK if verdict["ok"] else EXIT_ERROR


def cmd_construct(args) -> int:
    G = _load_graph(args.input, args.format)
    try:
        col = construct_theorem1(G)
    except DisconnectedGraphError as exc:
        raise CliError(str(exc)) from None
    res = col.to_json() | {"num_colors": col.num_colors}
    _emit(res, args)
    _note(f"constructed coloring with {col.num_colors} colors")
    return EXIT_OK


def cmd_convert(args) -> int:
    G = _load_graph(args.input, args.from_format)
    try:
        text = write_graph(G, args.to_format)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    _emit(None, args, text=text)
    return EXIT_OK


def _write_file(path: str, text: str) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(text)


def cmd_sweep(args) -> int:
    if args.n_max > 7:
        raise CliError("sweep supports n_max <= 7")
    report = sweep_crosscheck(args.n_max, jobs=args.jobs)
    csv_text = report.to_csv()
    if args.output:
        _write_file(args.output, csv_text)
    if args.csv:
        _emit(None, args, text=csv_text)
    else:
        _emit({"schema": SCHEMA, "command": "sweep"} | report.summary(), args)
    _note(f"{report.classes} classes, {'pass' if report.passed else f'{len(report.discrepancies)} discrepancies'}")
    return EXIT_OK if report.passed else EXIT_ERROR


def cmd_random(args) -> int:
    try:
        with open(args.config) as fh:
            raw = json.load(fh)
        if args.seed is not None:
            raw["seed"] = args.seed
        if args.trials is not None:
            raw["trials"] = args.trials
        cfg = ExperimentConfig.from_json(raw)
    except (OSError, KeyError, ValueError, TypeError) as exc:
        raise CliError(f"bad experiment config: {exc}") from None
    records, summary = run_threshold_experiment(cfg, jobs=args.jobs)
    csv_text = records_to_csv(records)
    if args.output:
        _write_file(args.output, csv_text)
    if args.csv:
        _emit(None, args, text=csv_text)
    else:
        _emit(summary, args)
    for c in summary["cells"]:
        _note(f"n={c['n']} x{c['multiplier']:g}: yes {c['yes']:.3f} no {c['no']:.3f} unknown {c['unknown']:.3f}")
    return EXIT_OK


def cmd_connectivity(args) -> int:
    prob = connectivity_probability(args.n, args.a, args.trials, args.seed)
    res = {"schema": SCHEMA, "command": "connectivity", "n": args.n, "a": args.a, "trials": args.trials,
           "seed": args.seed, "probability": prob, "limit": erdos_renyi_limit(args.a)}
    _emit(res, args)
    return EXIT_OK


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tmc-lab", description="Total monochromatic connection number toolkit.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    fmt = dict(choices=["graph6", "edgelist"], default=None, help="input format (default: auto-detect)")

    c = sub.add_parser("compute", help="compute or bound tmc(G)")
    c.add_argument("input", help="graph file, '-' for stdin, or a literal graph6 string")
    c.add_argument("--mode", choices=["exact", "bounds", "classify", "auto"], default="auto")
    c.add_argument("--format", **fmt)
    c.add_argument("--max-n", type=int, default=7, help="largest order solved exactly (default 7)")
    c.set_defaults(func=cmd_compute)

    v = sub.add_parser("verify", help="check a total coloring")
    v.add_argument("graph")
    v.add_argument("coloring", help="coloring JSON file or literal JSON")
    v.add_argument("--format", **fmt)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", help="cross-check theorems against the exact solver")
    s.add_argument("n_max", type=int)
    s.add_argument("--output", help="write the per-class CSV report here")
    s.add_argument("--csv", action="store_true", help="print the CSV report instead of the JSON summary")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_sweep)

    r = sub.add_parser("random", help="run a G(n,p) threshold experiment")
    r.add_argument("config", help="experiment config JSON")
    r.add_argument("--seed", type=int)
    r.add_argument("--trials", type=int)
    r.add_argument("--output", help="write the per-trial CSV here")
    r.add_argument("--csv", action="store_true")
    r.add_argument("--jobs", type=int, default=1)
    r.set_defaults(func=cmd_random)

    k = sub.add_parser("connectivity", help="empirical P[G(n,(log n + a)/n) connected]")
    k.add_argument("n", type=int)
    k.add_argument("a", type=float)
    k.add_argument("--trials", type=int, default=10000)
    k.add_argument("--seed", type=int, default=0)
    k.set_defaults(func=cmd_connectivity)

    b = sub.add_parser("construct", help="coloring with m - n + 2 + l(G) colors")
    b.add_argument("input")
    b.add_argument("--format", **fmt)
    b.set_defaults(func=cmd_construct)

    x = sub.add_parser("convert", help="convert between graph6 and edge-list")
    x.add_argument("input")
    x.add_argument("--from", dest="from_format", choices=["graph6", "edgelist"], default=None)
    x.add_argument("--to", dest="to_format", choices=["graph6", "edgelist"], default="edgelist")
    x.set_defaults(func=cmd_convert)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        sys.stdout.write(json.dumps({"schema": SCHEMA, "error": str(exc)}) + "\n")
        _note(f"error: {exc}")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
