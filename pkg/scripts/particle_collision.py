"""Head-on collision of two movers: where and when do they meet?

Enumerates every cut of a particle line and lists each space-time vertex
that ever held a mover, then compares the meeting point with a
synchronous two-mover model.
"""
from __future__ import annotations

import argparse
import json
from dataclasses import asdict, dataclass

from portdag.diagrams import background, enumerate_diagram
from portdag.rules.particle import bits, make_particle_line, particle_rule


@dataclass
class CollisionConfig:
    width: int = 9
    right: int = 1
    left: int = 7
    budget: int = 20
    boundary: str = "wall"


def synchronous_meeting(right: int, left: int):
    for k in range(left - right + 1):
        if right + k == left - k:
            layer = right % 2 + k
            return (layer - (right + k) % 2) // 2, right + k
    return None


def run(cfg: CollisionConfig) -> dict:
    g = make_particle_line(cfg.width, (cfg.right,), (cfg.left,), boundary=cfg.boundary)
    ds = enumerate_diagram(particle_rule(), g, cfg.budget)
    hist = background(ds).state_history
    trail = {"right": set(), "left": set()}
    both = []
    for v, states in hist.items():
        for s in states:
            l, r = bits(s)
            if r:
                trail["right"].add((v.t, v.x))
            if l:
                trail["left"].add((v.t, v.x))
            if l and r:
                both.append(str(v))
    return {"config": asdict(cfg), "cuts": len(ds), "both_movers": sorted(set(both)),
            "model": synchronous_meeting(cfg.right, cfg.left),
            "trail": {d: sorted(f"{t}.{x}" for t, x in pts) for d, pts in trail.items()}}


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for f, default in asdict(CollisionConfig()).items():
        ap.add_argument(f"--{f}", type=type(default), default=default)
    print(json.dumps(run(CollisionConfig(**vars(ap.parse_args()))), indent=1))
