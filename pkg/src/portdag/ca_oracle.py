"""Synchronous radius-1/2 CA evolution, used as ground truth for the asynchronous rule.

Row t+1 is computed as ``σ^{t+1}_k = f(σ^t_{k-1}, σ^t_k)``. On an open line
cell k of row t is only defined for k ≥ t; undefined cells are ``None``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .checks import PropertyReport
from .diagrams import DiagramSet, background
from .errors import EmptyConfig, LayoutMismatch
from .rules.ca import EPS, TruthTable, first_past_column, slots


@dataclass
class Configurations:
    rows: list
    width: int
    periodic: bool

    def cell(self, t: int, k: int):
        if t >= len(self.rows):
            return None
        if self.periodic:
            k %= self.width
        elif not 0 <= k < self.width:
            return None
        return self.rows[t][k]


def evolve(table: TruthTable, sigma0, steps: int, periodic: bool = True) -> Configurations:
    sigma0 = [str(s) for s in sigma0]
    if len(sigma0) < 2:
        raise EmptyConfig("need at least two cells")
    if steps < 0:
        raise ValueError("steps must be non-negative")
    W = len(sigma0)
    rows = [sigma0]
    for _ in range(steps):
        prev = rows[-1]
        row = []
        for k in range(W):
            if periodic:
                a, b = prev[k - 1], prev[k]
            else:
                a = prev[k - 1] if k > 0 else None
                b = prev[k]
            row.append(None if a is None or b is None else table(a, b))
        rows.append(row)
    return Configurations(rows, W, periodic)


def decode(name, periodic: bool, width: int) -> tuple:
    """Vertex ``t.f<c>`` -> (layer, cell index of its left slot)."""
    if not name.x.startswith("f") or not name.x[1:].isdigit():
        raise LayoutMismatch(f"{name} is not a CA vertex")
    c = int(name.x[1:])
    layer = 2 * name.t + c % 2
    j2 = c - first_past_column(periodic) + layer
    if j2 % 2:
        raise LayoutMismatch(f"{name} has inconsistent parity")
    j = j2 // 2
    if periodic:
        j %= width
    return layer, j


def compare(ds: DiagramSet, table: TruthTable, sigma0, periodic: bool = True) -> PropertyReport:
    """Every filled slot seen in any cut equals the oracle's cell."""
    rep = PropertyReport("ca-oracle")
    W = len(sigma0)
    hist = background(ds).state_history
    decoded = {}
    max_layer = 0
    for v in hist:
        decoded[v] = decode(v, periodic, W)
        max_layer = max(max_layer, decoded[v][0])
    conf = evolve(table, sigma0, max_layer, periodic)
    observed = 0
    seen = set()
    for v in sorted(hist):
        layer, j = decoded[v]
        for state in sorted(hist[v]):
            for slot, k in zip(slots(state), (j, j + 1)):
                if slot == EPS or (v, k, slot) in seen:
                    continue
                seen.add((v, k, slot))
                observed = max(observed, layer)
                rep.cases += 1
                want = conf.cell(layer, k)
                if slot != want:
                    rep.witnesses.append({"vertex": str(v), "layer": layer,
                                          "cell": k % W if periodic else k,
                                          "got": slot, "expected": want})
    rep.stats["layers"] = observed
    return rep
