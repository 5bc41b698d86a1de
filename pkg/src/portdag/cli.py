"""Command-line entry point.

Machine output is JSON on stdout, human summaries go to stderr.
Exit codes: 0 pass, 1 property or validation failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import ca_oracle
from .diagrams import enumerate_diagram, max_schedule, write_diagram
from .errors import BadIndex, BudgetExceeded, PortDagError, Starved
from .graph import from_json, validate
from .rules import RULES, InstanceConfig, build, count_retirements
from .rules.ca import XOR, TruthTable, make_ca_initial, make_ca_rule
from .rules.dilation import default_colour, dilation_rule, make_dilation_line
from .suite import PROPERTIES, SuiteConfig, merged, parse_properties, run_suite


class UsageError(Exception):
    pass


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=1, sort_keys=True) + "\n")


def _say(msg: str) -> None:
    sys.stderr.write(msg + "\n")


def _ints(text: str | None) -> tuple:
    if not text:
        return ()
    try:
        return tuple(int(p) for p in text.split(",") if p.strip())
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _load_table(path: str | None) -> TruthTable:
    if not path:
        return XOR
    try:
        return TruthTable.from_json(Path(path).read_text())
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read truth table {path}: {exc}") from None


def _config(text: str | None, table: TruthTable, width: int, rng: random.Random | None) -> tuple:
    if rng is not None:
        return tuple(rng.choice(table.alphabet) for _ in range(width))
    if not text:
        return (table.alphabet[-1],) + (table.alphabet[0],) * (width - 1)
    cells = tuple(text.split(",")) if "," in text else tuple(text)
    if len(cells) != width:
        raise UsageError(f"configuration has {len(cells)} cells, width is {width}")
    return cells


def _instance(args):
    """(rule, seed graph) from the shared instance flags."""
    if args.rule not in RULES:
        raise UsageError(f"unknown rule {args.rule!r}; known: {', '.join(RULES)}")
    if args.line and args.ring:
        raise UsageError("give --line or --ring, not both")
    width = args.ring or args.line or 6
    table = _load_table(getattr(args, "table", None))
    cfg = InstanceConfig(rule=args.rule, width=width, periodic=bool(args.ring),
                         boundary=args.boundary, right=_ints(args.right), left=_ints(args.left),
                         coloured=-1 if args.no_colored else args.colored, table=table)
    if args.rule == "ca":
        cfg.config = _config(args.config, table, width, None)
    try:
        rule, g = build(cfg)
    except (BadIndex, ValueError) as exc:
        raise UsageError(str(exc)) from None
    if args.graph:
        try:
            g = from_json(Path(args.graph).read_text())
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot read graph {args.graph}: {exc}") from None
    return rule, g


def cmd_validate(args) -> int:
    try:
        g = from_json(Path(args.path).read_text())
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read graph {args.path}: {exc}") from None
    rep = validate(g)
    _emit(rep.to_dict())
    _say("ok" if rep.ok else f"{len(rep.violations)} violation(s)")
    return 0 if rep.ok else 1


def cmd_enumerate(args) -> int:
    rule, g = _instance(args)
    try:
        ds = enumerate_diagram(rule, g, args.budget, max_cuts=args.max_cuts, jobs=args.jobs)
    except BudgetExceeded as exc:
        _emit({"error": str(exc)})
        return 1
    out = {"rule": rule.name, "budget": args.budget, "cuts": len(ds),
           "depth": max(ds.depth.values())}
    if args.out:
        index = write_diagram(ds, Path(args.out), rule.ports)
        out["index"] = str(Path(args.out) / "index.json")
        out["seed"] = index["seed"]
    _emit(out)
    _say(f"{len(ds)} cuts")
    return 0


def cmd_check(args) -> int:
    try:
        props = parse_properties(args.properties)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rule, g = _instance(args)
    cfg = SuiteConfig(budget=args.budget, seq_budget=args.seq_budget, trials=args.trials,
                      max_len=args.max_len, samples=args.samples, seed=args.seed, jobs=args.jobs)
    reports = run_suite(rule, g, props, cfg)
    res = merged(reports)
    _emit(res)
    for r in reports:
        _say(f"{'PASS' if r.passed else 'FAIL'} {r.property} ({r.cases} cases)")
    return 0 if res["passed"] else 1


def cmd_ca(args) -> int:
    table = _load_table(args.table)
    rng = random.Random(args.seed) if args.random_config else None
    config = _config(args.config, table, args.width, rng)
    sim_table = table
    if args.corrupt:
        try:
            lhs, value = args.corrupt.split("=")
            a, b = lhs.split(",")
            sim_table = table.with_entry(a, b, value)
        except ValueError:
            raise UsageError(f"--corrupt expects 'a,b=c', got {args.corrupt!r}") from None
    if args.budget is not None:
        budget = args.budget
    elif args.steps is not None:
        budget = args.steps * (args.steps + 1) // 2
    else:
        raise UsageError("give --budget or --steps")
    try:
        g = make_ca_initial(sim_table, config, args.periodic)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    ds = enumerate_diagram(make_ca_rule(sim_table), g, budget, jobs=args.jobs)
    rep = ca_oracle.compare(ds, table, list(config), args.periodic)
    _emit({"config": list(config), "periodic": args.periodic, "budget": budget, "cuts": len(ds),
           "mismatches": len(rep.witnesses), "report": rep.to_dict()})
    _say(f"{len(rep.witnesses)} mismatches over {len(ds)} cuts, layers 0..{rep.stats['layers']}")
    return 0 if rep.passed else 1


def cmd_dilation(args) -> int:
    centre = args.colored if args.colored is not None else default_colour(args.width)
    try:
        g = make_dilation_line(args.width, -1 if args.no_colored else centre,
                               periodic=args.periodic, boundary=args.boundary or "open")
    except (BadIndex, ValueError) as exc:
        raise UsageError(str(exc)) from None
    try:
        _, seq = max_schedule(dilation_rule(), g, args.n, args.policy)
    except Starved as exc:
        _emit({"error": str(exc)})
        return 1
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    counts = {f"x{c}": count_retirements(seq, f"x{c}") for c in range(args.width)}
    left, right = counts.get(f"x{centre - 1}", 0), counts.get(f"x{centre + 1}", 0)
    _emit({"firings": len(seq), "counts": counts, "left": left, "right": right,
           "ratio": left / right if right else None})
    _say(f"left {left}, right {right}")
    return 0


def _instance_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--rule", required=True, help=f"one of {', '.join(RULES)}")
    p.add_argument("--line", type=int, help="width of a line instance")
    p.add_argument("--ring", type=int, help="width of a ring instance")
    p.add_argument("--boundary", choices=("wall", "open"), help="line ends")
    p.add_argument("--right", help="columns holding right-movers, e.g. 1,3")
    p.add_argument("--left", help="columns holding left-movers")
    p.add_argument("--colored", "--coloured", type=int, dest="colored", help="dilation colour column")
    p.add_argument("--no-colored", "--no-coloured", action="store_true", dest="no_colored")
    p.add_argument("--table", help="truth table JSON for the ca rule")
    p.add_argument("--config", help="CA configuration, e.g. 1000 or 1,0,0,0")
    p.add_argument("--graph", help="seed graph JSON overriding the builder")
    p.add_argument("--budget", type=int, default=10)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)


def parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="portdag", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("validate", help="check a graph file against the structural invariants")
    p.add_argument("path")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("enumerate", help="enumerate the cuts of a diagram")
    _instance_flags(p)
    p.add_argument("--out", help="directory for cut files, background.dot and index.json")
    p.add_argument("--max-cuts", type=int, default=10**6)
    p.set_defaults(fn=cmd_enumerate)

    p = sub.add_parser("check", help="run property checkers")
    _instance_flags(p)
    p.add_argument("--properties", default="all", help=f"all or any of {', '.join(PROPERTIES)}")
    p.add_argument("--seq-budget", type=int, help="sequence length for monotony and privacy")
    p.add_argument("--trials", type=int, default=100, help="random confluence pairs")
    p.add_argument("--max-len", type=int, default=6, help="length of random sequences")
    p.add_argument("--samples", type=int, default=64, help="extensivity samples")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("ca", help="compare the asynchronous CA simulation with the synchronous oracle")
    p.add_argument("--table", help="truth table JSON (default XOR)")
    p.add_argument("--width", type=int, default=8)
    p.add_argument("--periodic", action="store_true")
    p.add_argument("--config", help="initial cells, e.g. 10000000")
    p.add_argument("--random-config", action="store_true", help="draw the configuration from --seed")
    p.add_argument("--budget", type=int)
    p.add_argument("--steps", type=int, help="layers to reach; sets the budget to steps*(steps+1)/2")
    p.add_argument("--corrupt", help="simulate with one table entry replaced, e.g. 0,1=0")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_ca)

    p = sub.add_parser("dilation", help="fire a dilation line and count firings per column")
    p.add_argument("--width", type=int, default=9)
    p.add_argument("--colored", "--coloured", type=int, dest="colored")
    p.add_argument("--no-colored", "--no-coloured", action="store_true", dest="no_colored")
    p.add_argument("--periodic", action="store_true")
    p.add_argument("--boundary", choices=("wall", "open"))
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--policy", default="round-robin", help="round-robin or random:<seed>")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_dilation)
    return ap


def main(argv=None) -> int:
    args = parser().parse_args(argv)
    try:
        return args.fn(args)
    except UsageError as exc:
        _say(f"usage error: {exc}")
        return 2
    except PortDagError as exc:
        _emit({"error": f"{type(exc).__name__}: {exc}"})
        return 1


if __name__ == "__main__":
    sys.exit(main())
