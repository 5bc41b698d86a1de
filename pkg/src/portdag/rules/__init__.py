"""Library rules and a registry to build them by name."""
from __future__ import annotations

from dataclasses import dataclass, field

from .ca import XOR, TruthTable, make_ca_initial, make_ca_rule
from .counterexamples import (DISTANCE_TWO, counterexample_nonportdecreasing,
                              counterexample_nonprivate)
from .dilation import dilation_rule, make_dilation_line
from .particle import decode_particles, make_particle_line, particle_rule

RULES = ("particle", "ca", "dilation", "cex-nonprivate", "cex-nonportdec")


@dataclass
class InstanceConfig:
    """Everything needed to build a (rule, seed graph) pair."""
    rule: str = "particle"
    width: int = 6
    periodic: bool = False
    boundary: str | None = None
    right: tuple = ()
    left: tuple = ()
    coloured: int | None = None
    table: TruthTable = field(default_factory=lambda: XOR)
    config: tuple | None = None


def default_ca_config(width: int) -> tuple:
    """An impulse in the first cell."""
    return ("1",) + ("0",) * (width - 1)


def build(cfg: InstanceConfig):
    """Return (rule, seed graph) for a registry name."""
    if cfg.rule == "particle":
        g = make_particle_line(cfg.width, cfg.right, cfg.left, cfg.periodic, cfg.boundary or "wall")
        return particle_rule(), g
    if cfg.rule == "ca":
        config = cfg.config or default_ca_config(cfg.width)
        return make_ca_rule(cfg.table), make_ca_initial(cfg.table, config, cfg.periodic)
    if cfg.rule == "dilation":
        g = make_dilation_line(cfg.width, cfg.coloured, cfg.right, cfg.left, cfg.periodic,
                               cfg.boundary or "open")
        return dilation_rule(), g
    if cfg.rule == "cex-nonprivate":
        g, rule, _ = counterexample_nonprivate()
        return rule, g
    if cfg.rule == "cex-nonportdec":
        g, rule = counterexample_nonportdecreasing()
        return rule, g
    raise KeyError(f"unknown rule {cfg.rule!r}; known: {', '.join(RULES)}")


def count_retirements(schedule, x: str) -> int:
    return sum(1 for y in schedule if y == x)


__all__ = [
    "RULES", "InstanceConfig", "build", "count_retirements", "decode_particles",
    "make_particle_line", "particle_rule", "make_ca_rule", "make_ca_initial", "TruthTable",
    "XOR", "dilation_rule", "make_dilation_line", "counterexample_nonprivate",
    "counterexample_nonportdecreasing", "DISTANCE_TWO",
]
