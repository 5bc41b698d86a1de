"""Compare asynchronous CA diagrams with synchronous evolution over many random tables."""
from __future__ import annotations

import argparse
import random
import time
from dataclasses import dataclass

from portdag.ca_oracle import compare
from portdag.diagrams import enumerate_diagram
from portdag.rules.ca import XOR, TruthTable, make_ca_initial, make_ca_rule


@dataclass
class SweepConfig:
    tables: int = 20
    width: int = 8
    budget: int = 6
    periodic: bool = True
    seed: int = 0
    jobs: int = 1


def random_table(rng: random.Random) -> TruthTable:
    return TruthTable.from_function("01", lambda a, b: rng.choice("01"))


def run(cfg: SweepConfig):
    rng = random.Random(cfg.seed)
    tables = [("xor", XOR)] + [(f"t{i}", random_table(rng)) for i in range(cfg.tables)]
    for name, table in tables:
        config = "".join(rng.choice("01") for _ in range(cfg.width))
        t0 = time.perf_counter()
        ds = enumerate_diagram(make_ca_rule(table), make_ca_initial(table, config, cfg.periodic),
                               cfg.budget, jobs=cfg.jobs)
        rep = compare(ds, table, config, cfg.periodic)
        code = "".join(table(a, b) for a in "01" for b in "01")
        yield name, code, config, len(ds), rep.cases, len(rep.witnesses), rep.stats["layers"], \
            time.perf_counter() - t0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--tables", type=int, default=20)
    ap.add_argument("--width", type=int, default=8)
    ap.add_argument("--budget", type=int, default=6)
    ap.add_argument("--line", action="store_true", help="open line instead of a ring")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--jobs", type=int, default=1)
    a = ap.parse_args()
    cfg = SweepConfig(a.tables, a.width, a.budget, not a.line, a.seed, a.jobs)
    print(f"{'table':>5} {'f':>4} {'config':>10} {'cuts':>6} {'slots':>6} {'bad':>4} {'layers':>6} {'s':>6}")
    for name, code, config, cuts, cases, bad, layers, took in run(cfg):
        print(f"{name:>5} {code:>4} {config:>10} {cuts:>6} {cases:>6} {bad:>4} {layers:>6} {took:6.2f}")
