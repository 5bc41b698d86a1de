"""Run every property checker over the library rules and both counterexamples."""
from __future__ import annotations

import argparse
from dataclasses import dataclass

from portdag.rules import InstanceConfig, build
from portdag.suite import PROPERTIES, SuiteConfig, run_suite

INSTANCES = [
    InstanceConfig("particle", 6, periodic=True, right=(1,), left=(3,)),
    InstanceConfig("particle", 8, boundary="open", right=(3,), left=(5,)),
    InstanceConfig("ca", 4, periodic=True),
    InstanceConfig("ca", 4),
    InstanceConfig("dilation", 8, periodic=True, right=(1,), left=(5,)),
    InstanceConfig("dilation", 9, boundary="wall", right=(1,), left=(7,)),
    InstanceConfig("cex-nonprivate"),
    InstanceConfig("cex-nonportdec"),
]


@dataclass
class PropertySweep:
    budget: int = 10
    seq_budget: int = 5
    jobs: int = 1


def label(cfg: InstanceConfig) -> str:
    if cfg.rule.startswith("cex"):
        return cfg.rule
    return f"{cfg.rule}-{'ring' if cfg.periodic else cfg.boundary or 'line'}{cfg.width}"


def run(cfg: PropertySweep):
    suite = SuiteConfig(budget=cfg.budget, seq_budget=cfg.seq_budget, jobs=cfg.jobs)
    for inst in INSTANCES:
        rule, g = build(inst)
        yield label(inst), {r.property: r.passed for r in run_suite(rule, g, PROPERTIES, suite)}


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--budget", type=int, default=10)
    ap.add_argument("--jobs", type=int, default=1)
    a = ap.parse_args()
    short = [p[:6] for p in PROPERTIES]
    print(f"{'instance':<20}" + " ".join(f"{s:>6}" for s in short))
    for name, res in run(PropertySweep(budget=a.budget, jobs=a.jobs)):
        print(f"{name:<20}" + " ".join(f"{'ok' if res[p] else 'FAIL':>6}" for p in PROPERTIES))
