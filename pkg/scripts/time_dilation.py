"""Firing counts on both sides of the coloured column, over schedules and lengths."""
from __future__ import annotations

import argparse
from dataclasses import dataclass, field

from portdag.diagrams import max_schedule
from portdag.rules import count_retirements
from portdag.rules.dilation import default_colour, dilation_rule, make_dilation_line


@dataclass
class DilationSweep:
    width: int = 9
    lengths: list = field(default_factory=lambda: [50, 100, 200, 400])
    policies: list = field(default_factory=lambda: ["round-robin", "random:0", "random:1"])


def run(cfg: DilationSweep) -> list:
    centre = default_colour(cfg.width)
    rows = []
    for coloured in (True, False):
        g = make_dilation_line(cfg.width, centre if coloured else -1)
        for policy in cfg.policies:
            for n in cfg.lengths:
                _, seq = max_schedule(dilation_rule(), g, n, policy)
                left = count_retirements(seq, f"x{centre - 1}")
                right = count_retirements(seq, f"x{centre + 1}")
                rows.append((coloured, policy, n, left, right))
    return rows


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--width", type=int, default=9)
    args = ap.parse_args()
    print(f"{'colour':>6} {'policy':>12} {'n':>5} {'left':>5} {'right':>5} {'ratio':>6}")
    for coloured, policy, n, left, right in run(DilationSweep(width=args.width)):
        ratio = f"{left / right:.2f}" if right else "-"
        print(f"{str(coloured):>6} {policy:>12} {n:>5} {left:>5} {right:>5} {ratio:>6}")
