"""Finite prefixes of space-time diagrams, their backgrounds, and long schedules."""
from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass, field
from functools import partial
from pathlib import Path

from .errors import BudgetExceeded, Starved
from .graph import Edge, PortGraph, internal_past_positions, natural_key, to_json
from .parallel import pmap
from .rewriting import LocalRule, apply, enabled, format_sequence

MAX_CUTS = 10**6


@dataclass
class DiagramSet:
    seed: PortGraph
    cuts: dict                    # canonical key -> graph
    witness: dict                 # canonical key -> sequence (leftmost newest)
    budget: int
    depth: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.cuts)

    def items(self):
        """(key, graph, witness) sorted by key."""
        for k in sorted(self.cuts):
            yield k, self.cuts[k], self.witness[k]


def _successors(rule: LocalRule, g: PortGraph) -> list:
    out = []
    for x in sorted(internal_past_positions(g)):
        h = apply(rule, x, g)
        if h != g:
            h.key       # computed here so parallel workers do the hashing
            out.append((x, h))
    return out


def enumerate_diagram(rule: LocalRule, g: PortGraph, budget: int, max_cuts: int = MAX_CUTS,
                      jobs: int = 1) -> DiagramSet:
    """Every cut A_ω g with ω valid and |ω| ≤ budget, breadth first.

    Each cut keeps the lexicographically least among its shortest witnesses,
    so the result does not depend on traversal order or worker count.
    """
    if budget < 0:
        raise ValueError("budget must be non-negative")
    cuts = {g.key: g}
    witness = {g.key: ()}
    depth = {g.key: 0}
    frontier = [g.key]
    expand = partial(_successors, rule)
    for d in range(1, budget + 1):
        if not frontier:
            break
        results = pmap(expand, [cuts[k] for k in frontier], jobs)
        new: dict = {}
        for k, succ in zip(frontier, results):
            for x, h in succ:
                hk = h.key
                if hk in cuts:
                    continue
                w = (x,) + witness[k]
                if hk not in new or w < new[hk][0]:
                    new[hk] = (w, h)
        if len(cuts) + len(new) > max_cuts:
            raise BudgetExceeded(f"more than {max_cuts} cuts at depth {d}")
        for hk in sorted(new):
            witness[hk], cuts[hk] = new[hk]
            depth[hk] = d
        frontier = sorted(new)
    return DiagramSet(g, cuts, witness, budget, depth)


# short public name
enumerate = enumerate_diagram


@dataclass
class Background:
    vertices: frozenset
    arcs: frozenset
    state_history: dict           # Name -> frozenset of states


def background(ds: DiagramSet) -> Background:
    vertices, arcs, hist = set(), set(), {}
    for g in ds.cuts.values():
        vertices |= g.vertices
        arcs |= g.edges
        for v, s in g.states.items():
            hist.setdefault(v, set()).add(s)
    return Background(frozenset(vertices), frozenset(arcs),
                      {v: frozenset(s) for v, s in hist.items()})


def max_schedule(rule: LocalRule, g: PortGraph, n: int, policy: str = "round-robin"):
    """Apply n non-trivial firings; returns (final graph, sequence leftmost newest).

    ``round-robin`` cycles through positions in natural order skipping
    disabled ones; ``random:<seed>`` picks uniformly among enabled ones.
    """
    rng = None
    if policy.startswith("random:"):
        rng = random.Random(int(policy.split(":", 1)[1]))
    elif policy != "round-robin":
        raise ValueError(f"unknown policy {policy!r}")
    seq: list = []
    last = None
    for i in range(n):
        en = sorted(enabled(rule, g), key=natural_key)
        if not en:
            raise Starved(f"nothing enabled after {i} firings")
        if rng is not None:
            x = rng.choice(en)
        else:
            later = [p for p in en if last is not None and natural_key(p) > natural_key(last)]
            x = later[0] if later else en[0]
        g = apply(rule, x, g)
        seq.append(x)
        last = x
    return g, tuple(reversed(seq))


# -- export --------------------------------------------------------------------

def _q(s: str) -> str:
    return json.dumps(s)


def _edge_line(e: Edge) -> str:
    return f"  {_q(str(e.src))} -> {_q(str(e.dst))} [label={_q(e.sport + '→' + e.dport)}];"


def to_dot(g: PortGraph, name: str = "G") -> str:
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for v in sorted(g.internal, key=lambda v: (natural_key(v.x), v.t)):
        label = f"{v}\\n{g.states.get(v, '')}"
        lines.append(f"  {_q(str(v))} [shape=ellipse, style=solid, label=\"{label}\"];")
    for v in sorted(g.border, key=lambda v: (natural_key(v.x), v.t)):
        lines.append(f"  {_q(str(v))} [shape=ellipse, style=dashed, label={_q(str(v))}];")
    for e in sorted(g.edges, key=lambda e: (str(e.src), e.sport, str(e.dst), e.dport)):
        lines.append(_edge_line(e))
    lines.append("}")
    return "\n".join(lines) + "\n"


def background_dot(bg: Background) -> str:
    lines = ["digraph background {", "  rankdir=BT;"]
    for v in sorted(bg.vertices, key=lambda v: (natural_key(v.x), v.t)):
        states = sorted(bg.state_history.get(v, ()))
        if states:
            label = f"{v}\\n{'|'.join(states)}"
            style = "bold" if len(states) > 1 else "solid"
        else:
            label, style = str(v), "dashed"
        lines.append(f"  {_q(str(v))} [shape=ellipse, style={style}, label=\"{label}\"];")
    for e in sorted(bg.arcs, key=lambda e: (str(e.src), e.sport, str(e.dst), e.dport)):
        lines.append(_edge_line(e))
    lines.append("}")
    return "\n".join(lines) + "\n"


def key_digest(key: bytes) -> str:
    return hashlib.sha256(key).hexdigest()


def write_diagram(ds: DiagramSet, out: Path, ports=None) -> dict:
    """One JSON file per cut plus background.dot and index.json; returns the index."""
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    entries = []
    for k, g, w in ds.items():
        digest = key_digest(k)
        fname = f"{digest[:16]}.json"
        (out / fname).write_text(to_json(g, ports) + "\n")
        entries.append({"file": fname, "sha256": digest, "witness": format_sequence(w),
                        "depth": ds.depth.get(k, len(w))})
    (out / "background.dot").write_text(background_dot(background(ds)))
    index = {"seed": key_digest(ds.seed.key), "budget": ds.budget, "count": len(entries),
             "cuts": entries}
    (out / "index.json").write_text(json.dumps(index, indent=1, sort_keys=True) + "\n")
    return index
