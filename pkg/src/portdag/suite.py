"""Run a selection of checkers over a rule, a seed graph and its enumerated diagram."""
from __future__ import annotations

from dataclasses import dataclass
from functools import partial

from . import checks as C
from .diagrams import DiagramSet, enumerate_diagram
from .graph import PortGraph, internal_past_positions
from .parallel import pmap
from .rewriting import LocalRule, format_sequence

PROPERTIES = (
    "consistency", "weak-consistency", "commutativity", "time-increasing", "locality",
    "extensivity", "monotony", "privacy", "port-decreasing", "confluence",
    "past-determines-cut", "common-past",
)
PER_CUT = ("commutativity", "time-increasing", "locality", "extensivity", "port-decreasing")


@dataclass
class SuiteConfig:
    budget: int = 10
    seq_budget: int | None = None     # monotony/privacy sequence length, default min(budget, 6)
    trials: int = 100                 # confluence pairs
    max_len: int = 6                  # confluence sequence length
    samples: int = 64                 # extensivity samples beyond the exhaustive limit
    seed: int = 0
    jobs: int = 1

    @property
    def sequence_budget(self) -> int:
        return self.seq_budget if self.seq_budget is not None else min(self.budget, 6)


def parse_properties(text: str) -> list:
    """``"all"`` or a comma-separated list; raises ValueError on unknown names."""
    out: list = []
    for p in (s.strip() for s in text.split(",")):
        if not p:
            continue
        names = PROPERTIES if p == "all" else (p,)
        for n in names:
            if n not in PROPERTIES:
                raise ValueError(f"unknown property {n!r}; known: all, {', '.join(PROPERTIES)}")
            if n not in out:
                out.append(n)
    if not out:
        raise ValueError("no property selected")
    return out


def _cut_checks(prop: str, rule: LocalRule, seed: PortGraph, cfg: SuiteConfig, item) -> C.PropertyReport:
    _, g, w = item
    rep = C.PropertyReport(prop)
    xs = sorted(internal_past_positions(g))
    if prop == "commutativity":
        parts = [C.check_commutativity(rule, g)]
    elif prop == "time-increasing":
        parts = [C.check_time_increasing(rule, g, x) for x in xs]
    elif prop == "locality":
        parts = [C.check_locality(rule, g, (x,)) for x in xs]
        parts.append(C.check_locality(rule, seed, w))
    elif prop == "extensivity":
        parts = [C.check_extensivity(rule.scheme, g, {x}, samples=cfg.samples, seed=cfg.seed)
                 for x in xs]
    elif prop == "port-decreasing":
        order = C.PortOrder.for_rule(rule)
        parts = [C.check_port_decreasing(rule, order, g, x) for x in xs]
    else:
        raise ValueError(prop)
    for p in parts:
        for wit in p.witnesses:
            wit["cut"] = format_sequence(w)
        rep.merge(p)
    return rep


def run_suite(rule: LocalRule, g: PortGraph, properties, cfg: SuiteConfig,
              ds: DiagramSet | None = None) -> list:
    """Reports in the order of ``properties``."""
    if ds is None:
        ds = enumerate_diagram(rule, g, cfg.budget, jobs=cfg.jobs)
    items = list(ds.items())
    reports = []
    for prop in properties:
        if prop in PER_CUT:
            rep = C.PropertyReport(prop)
            for part in pmap(partial(_cut_checks, prop, rule, g, cfg), items, cfg.jobs):
                rep.merge(part)
        elif prop == "consistency":
            rep = C.check_diagram_consistency(ds, weak=False, jobs=cfg.jobs)
        elif prop == "weak-consistency":
            rep = C.check_diagram_consistency(ds, weak=True, jobs=cfg.jobs)
        elif prop == "monotony":
            rep = C.check_monotony(rule.scheme, rule, g, cfg.sequence_budget)
        elif prop == "privacy":
            rep = C.check_privacy(rule.scheme, rule, g, cfg.sequence_budget)
        elif prop == "confluence":
            rep = C.check_confluence_random(rule, g, cfg.trials, cfg.max_len, cfg.seed)
        elif prop == "past-determines-cut":
            rep = C.check_past_determines_cut(ds)
        elif prop == "common-past":
            rep = C.check_common_past(ds)
        else:
            raise ValueError(prop)
        reports.append(rep)
    return reports


def merged(reports) -> dict:
    return {"passed": all(r.passed for r in reports),
            "reports": [r.to_dict() for r in reports]}
