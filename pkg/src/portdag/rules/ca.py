"""Asynchronous simulation of a radius-1/2 cellular automaton.

Every internal vertex holds two slots ``"left,right"``; ``_`` marks an
empty slot. A past vertex with both slots filled computes ``f(left, right)``
and writes the value into the right slot of its left neighbour and the left
slot of its right neighbour, then flips its edges like a particle firing.

Positions are ``f<c>``. On a ring of W cells there are 2W columns; on a
line of W cells there are 2W+1 columns with wall borders at both ends.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import partial

from ..errors import IncompleteState, StateTypeMismatch
from ..graph import PortGraph
from ..rewriting import DISTANCE_ONE, LocalRule
from .lattice import PORTS, lattice
from .particle import flip, neighbours

EPS = "_"


@dataclass(frozen=True)
class TruthTable:
    alphabet: tuple
    map: dict

    def __post_init__(self):
        for s in self.alphabet:
            if not s or "," in s or s == EPS:
                raise ValueError(f"bad alphabet token {s!r}")
        missing = [(a, b) for a in self.alphabet for b in self.alphabet if (a, b) not in self.map]
        if missing:
            raise ValueError(f"table is not total, missing {missing[:3]}")
        bad = {v for v in self.map.values() if v not in self.alphabet}
        if bad:
            raise ValueError(f"table outputs outside the alphabet: {sorted(bad)}")

    def __call__(self, a: str, b: str) -> str:
        return self.map[(a, b)]

    def __hash__(self):
        return hash((self.alphabet, tuple(sorted(self.map.items()))))

    def with_entry(self, a: str, b: str, value: str) -> "TruthTable":
        m = dict(self.map)
        m[(a, b)] = value
        return TruthTable(self.alphabet, m)

    def to_dict(self) -> dict:
        return {"alphabet": list(self.alphabet),
                "map": {f"{a},{b}": v for (a, b), v in sorted(self.map.items())}}

    @classmethod
    def from_dict(cls, d: dict) -> "TruthTable":
        try:
            m = {}
            for k, v in d["map"].items():
                a, b = k.split(",")
                m[(a, b)] = str(v)
            return cls(tuple(str(s) for s in d["alphabet"]), m)
        except (KeyError, AttributeError, TypeError) as exc:
            raise ValueError(f"malformed truth table: {exc!r}") from exc

    @classmethod
    def from_json(cls, text: str) -> "TruthTable":
        return cls.from_dict(json.loads(text))

    @classmethod
    def from_function(cls, alphabet, f) -> "TruthTable":
        alphabet = tuple(alphabet)
        return cls(alphabet, {(a, b): f(a, b) for a in alphabet for b in alphabet})


XOR = TruthTable.from_function("01", lambda a, b: str(int(a) ^ int(b)))


def slots(state: str) -> tuple:
    parts = state.split(",")
    if len(parts) != 2:
        raise StateTypeMismatch(f"not a CA state: {state!r}")
    return parts[0], parts[1]


def pack(left: str, right: str) -> str:
    return f"{left},{right}"


def ca_rewrite(table: TruthTable, x: str, local: PortGraph) -> PortGraph:
    u = local.at[x]
    a, b = slots(local.states[u])
    if a == EPS or b == EPS:
        return local        # not enabled
    left, right = neighbours(local, u)
    r = table(a, b)
    states = dict(local.states)
    if left is not None:
        vl, _ = slots(states[left.dst])
        states[left.dst] = pack(vl, r)
    if right is not None:
        _, wr = slots(states[right.dst])
        states[right.dst] = pack(r, wr)
    return flip(local, u, left, right, pack(EPS, EPS), states)


def make_ca_rule(table: TruthTable) -> LocalRule:
    alphabet = frozenset(pack(p, q) for p in table.alphabet + (EPS,) for q in table.alphabet + (EPS,))
    return LocalRule("ca", DISTANCE_ONE, PORTS, partial(ca_rewrite, table), alphabet=alphabet)


def strict_ca_rewrite(table: TruthTable, x: str, local: PortGraph) -> PortGraph:
    """Variant used when the enabled check is bypassed: empty slots are an error."""
    a, b = slots(local.states[local.at[x]])
    if a == EPS or b == EPS:
        raise IncompleteState(f"{x} fired with state {a},{b}")
    return ca_rewrite(table, x, local)


def ca_columns(width: int, periodic: bool) -> int:
    return 2 * width if periodic else 2 * width + 1


def first_past_column(periodic: bool) -> int:
    return 0 if periodic else 2


def make_ca_initial(table: TruthTable, config, periodic: bool = True) -> PortGraph:
    """Bottom layer encoding the configuration ``config`` of W cells.

    Past column ``c0 + 2k`` carries ``(σ⁰_k, σ⁰_{k+1})``; awaiting columns start empty.
    """
    config = [str(s) for s in config]
    W = len(config)
    if W < 2:
        raise ValueError("a CA configuration needs at least two cells")
    for s in config:
        if s not in table.alphabet:
            raise ValueError(f"cell value {s!r} not in the alphabet")
    n = ca_columns(W, periodic)
    c0 = first_past_column(periodic)

    def state(c: int) -> str:
        k, odd = divmod(c - c0, 2)
        if odd:
            return pack(EPS, EPS)
        if periodic:
            return pack(config[k % W], config[(k + 1) % W])
        return pack(config[k], config[k + 1])

    return lattice(n, periodic, "wall", "f", state)
