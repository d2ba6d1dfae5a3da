"""Command line front end.

Subcommands: solve, simulate, verify, gen, bench.  All JSON output is
byte-deterministic (sorted keys, sorted node lists).  Exit codes:
0 success, 1 malformed input, 2 unsupported method/shape/size,
3 internal consistency failure in check mode.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .diffusion import is_target_set, simulate, trace_to_json_dict
from .errors import (
    CheckError,
    ParseError,
    ShapeMismatchError,
    UnsupportedInstanceError,
)
from .generator import FAMILIES, POLICIES, generate
from .instance import Instance, parse_instance, serialize_instance, validate
from .oracle import DEFAULT_NODE_CAP
from .path_solver import solve_path_with_tables
from .toolkit import METHODS, solve
from .tree_solver import INF, solve_tree_with_tables


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True, separators=(",", ":")))


def _load_instance(path: str) -> Instance:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    inst = parse_instance(text)
    problems = validate(inst)
    if problems:
        raise ParseError("invalid instance: " + "; ".join(problems))
    return inst


def _parse_seed_set(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(p) for p in text.replace(",", " ").split()]
    except ValueError:
        raise ParseError(f"bad seed set {text!r}; expected comma-separated ints") from None


def _cmd_solve(args) -> int:
    inst = _load_instance(args.input)
    tables_obj = None
    if args.dump_tables and args.method in ("path", "tree"):
        if args.method == "path":
            res, tables = solve_path_with_tables(inst, check=args.check)
            if tables is not None:
                tables_obj = {
                    "offset": tables.offset,
                    "D": tables.D,
                    "sigma": tables.sigma,
                    "prec": tables.prec,
                }
        else:
            res, tables, _ = solve_tree_with_tables(inst, check=args.check)
            sigma = {}
            for v in range(inst.n):
                full = [None if c == INF else int(c) for c in tables.sig_full[v]]
                red = [None if c == INF else int(c) for c in tables.sig_red[v]]
                sigma[str(v)] = {"full": full, "reduced": red}
            tables_obj = {"root": tables.root, "diam": tables.diam, "sigma": sigma}
    else:
        res = solve(inst, method=args.method, node_cap=args.node_cap,
                    check=args.check)
    out = {
        "size": res.size,
        "target_set": sorted(res.witness),
        "completion_round": res.completion_round,
        "method": res.method,
    }
    if args.dump_tables:
        out["tables"] = tables_obj
    _emit(out)
    return 0


def _cmd_simulate(args) -> int:
    inst = _load_instance(args.input)
    trace = simulate(inst, _parse_seed_set(args.seed_set))
    _emit(trace_to_json_dict(trace))
    return 0


def _cmd_verify(args) -> int:
    inst = _load_instance(args.input)
    ok, influenced = is_target_set(inst, _parse_seed_set(args.seed_set))
    _emit({"is_target_set": ok, "influenced": influenced})
    return 0


def _cmd_gen(args) -> int:
    inst = generate(args.family, args.n, args.policy, getattr(args, "lambda"),
                    args.seed, policy_p=args.policy_p, edge_p=args.edge_p)
    text = serialize_instance(inst)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_bench(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",") if s]
    rows = []
    for n in sizes:
        for rep in range(args.repeats):
            inst = generate(args.family, n, args.policy, getattr(args, "lambda"),
                            rep, policy_p=args.policy_p, edge_p=args.edge_p)
            t0 = time.perf_counter_ns()
            res = solve(inst, method=args.method, node_cap=args.node_cap)
            dt = time.perf_counter_ns() - t0
            rows.append((args.family, n, inst.lam, rep, res.size, dt))
    rows.sort()
    lines = ["family,n,lambda,seed,size,wall_time_ns"]
    lines.extend(",".join(str(x) for x in row) for row in rows)
    csv_text = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(csv_text)
        if args.plot:
            _plot_bench(rows, args.output)
    else:
        sys.stdout.write(csv_text)
        if args.plot:
            raise UnsupportedInstanceError("--plot requires --output")
    return 0


def _plot_bench(rows, csv_path: str) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    by_n: dict[int, list[int]] = {}
    for _family, n, _lam, _rep, _size, dt in rows:
        by_n.setdefault(n, []).append(dt)
    xs = sorted(by_n)
    med = [sorted(by_n[n])[len(by_n[n]) // 2] / 1e6 for n in xs]
    lo = [min(by_n[n]) / 1e6 for n in xs]
    hi = [max(by_n[n]) / 1e6 for n in xs]

    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(xs, med, marker="o", label="median")
    ax.fill_between(xs, lo, hi, alpha=0.25, label="min..max")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("nodes")
    ax.set_ylabel("wall time (ms)")
    ax.set_title(f"{rows[0][0]} solve time")
    ax.legend()
    fig.tight_layout()
    out = csv_path.rsplit(".", 1)[0] + ".png"
    fig.savefig(out, dpi=150)
    plt.close(fig)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twctss",
        description="Exact solvers and simulation for time-window constrained "
                    "target set selection",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="compute a minimum target set")
    p.add_argument("--input", required=True)
    p.add_argument("--method", default="auto", choices=METHODS)
    p.add_argument("--node-cap", type=int, default=DEFAULT_NODE_CAP)
    p.add_argument("--dump-tables", action="store_true")
    p.add_argument("--check", action="store_true")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("simulate", help="run the diffusion process from a seed set")
    p.add_argument("--input", required=True)
    p.add_argument("--seed-set", required=True)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("verify", help="check whether a seed set is a target set")
    p.add_argument("--input", required=True)
    p.add_argument("--seed-set", required=True)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("gen", help="generate a deterministic instance")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--policy", default="uniform", choices=POLICIES)
    p.add_argument("--lambda", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--policy-p", type=float, default=0.5)
    p.add_argument("--edge-p", type=float, default=0.3)
    p.add_argument("--output")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("bench", help="time the solvers on generated instances")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--sizes", required=True, help="comma-separated node counts")
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--policy", default="uniform", choices=POLICIES)
    p.add_argument("--lambda", type=int, default=2)
    p.add_argument("--method", default="auto", choices=METHODS)
    p.add_argument("--node-cap", type=int, default=DEFAULT_NODE_CAP)
    p.add_argument("--policy-p", type=float, default=0.5)
    p.add_argument("--edge-p", type=float, default=0.3)
    p.add_argument("--output", help="CSV path (stdout when omitted)")
    p.add_argument("--plot", action="store_true",
                   help="also write a PNG next to the CSV")
    p.set_defaults(func=_cmd_bench)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, FileNotFoundError, ValueError) as exc:
        if isinstance(exc, (ShapeMismatchError, UnsupportedInstanceError)):
            print(f"error: {exc}", file=sys.stderr)
            return 2
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except AssertionError as exc:
        kind = "check failure" if isinstance(exc, CheckError) else "internal assertion"
        print(f"{kind}: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(run())
