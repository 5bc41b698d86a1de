"""Neighbourhood schemes, local rules and valid sequences.

Sequences are tuples of positions stored leftmost-newest: ``("x4", "x2")``
applies ``x2`` first. The textual form ``"x4,x2"`` uses the same order.
"""
from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

from .errors import (IncompatibleJoin, InvalidSequence, RuleContractBroken,
                     SchemeContractBroken)
from .graph import (PortGraph, induced_subgraph, interior, join,
                    restrict_complement, validate)

# Full re-validation of every application. Set PORTDAG_PROFILE=release to trust rules.
VALIDATE = os.environ.get("PORTDAG_PROFILE", "debug") != "release"

Sequence = tuple


@dataclass(frozen=True)
class NeighbourhoodScheme:
    name: str
    compute: Callable[[frozenset, PortGraph], Iterable[str]]
    # N_ω is the union of the N_x for x in ω
    additive: bool = False


@dataclass(frozen=True, eq=False)
class LocalRule:
    name: str
    scheme: NeighbourhoodScheme
    ports: frozenset
    rewrite: Callable[[str, PortGraph], PortGraph]
    alphabet: frozenset | None = None
    # per-port weights for the port order; None means unit weights
    weights: Mapping[str, int] | None = field(default=None)


def parse_sequence(text: str) -> Sequence:
    """``"x4,x2,x0"`` -> ("x4", "x2", "x0"); the rightmost letter fires first."""
    text = text.strip()
    if not text:
        return ()
    return tuple(p.strip() for p in text.split(","))


def format_sequence(seq: Iterable[str]) -> str:
    return ",".join(seq)


# -- schemes -------------------------------------------------------------------

def _vertex_neighbourhood(omega: frozenset, g: PortGraph) -> frozenset:
    out = set()
    for x in omega:
        v = g.at.get(x)
        if v is None or v not in g.internal:
            continue
        out.add(x)
        out.update(e.src.x for e in g.in_edges(v))
        out.update(e.dst.x for e in g.out_edges(v))
    return frozenset(out)


# N_x(G) = positions of V_{G_x}
DISTANCE_ONE = NeighbourhoodScheme("distance-1", _vertex_neighbourhood, additive=True)


def reachable_positions(g: PortGraph, omega: Iterable[str], radius: int | None = None) -> frozenset:
    """Positions reachable from ω along directed edges, ω itself included."""
    omega = frozenset(omega)
    starts = [g.at[x] for x in omega if x in g.at]
    seen = {v: 0 for v in starts}
    queue = deque(starts)
    while queue:
        v = queue.popleft()
        d = seen[v]
        if radius is not None and d >= radius:
            continue
        for e in g.out_edges(v):
            if e.dst not in seen:
                seen[e.dst] = d + 1
                queue.append(e.dst)
    return omega | frozenset(v.x for v in seen)


def neighbourhood(scheme: NeighbourhoodScheme, omega: Iterable[str], g: PortGraph) -> frozenset:
    omega = frozenset(omega)
    if not omega:
        return frozenset()
    out = frozenset(scheme.compute(omega, g))
    bad = out - reachable_positions(g, omega)
    if bad:
        raise SchemeContractBroken(
            f"{scheme.name}: {sorted(bad)} not reachable from {sorted(omega)}")
    return out


# -- application ---------------------------------------------------------------

def is_past_position(g: PortGraph, x: str) -> bool:
    v = g.at.get(x)
    return v is not None and v in g.internal and not g.in_edges(v)


def _check_rewrite(local: PortGraph, out: PortGraph, g: PortGraph, N: frozenset, x: str):
    if out.border != local.border:
        raise RuleContractBroken(f"rewrite at {x} changed border vertices")
    before = {e for e in local.edges if e.src in local.border or e.dst in local.border}
    after = {e for e in out.edges if e.src in out.border or e.dst in out.border}
    if before != after:
        raise RuleContractBroken(f"rewrite at {x} changed border edges")
    inner = interior(g, N)
    for v in out.vertices - local.vertices:
        if v.x not in inner:
            raise RuleContractBroken(f"rewrite at {x} created {v} outside the interior")
    rep = validate(out)
    if not rep.ok:
        raise RuleContractBroken(f"rewrite at {x} produced an invalid graph: {rep.violations}")


def apply(rule: LocalRule, x: str, g: PortGraph, check: bool | None = None) -> PortGraph:
    """A_x G: rewrite G_{N_x} and glue it back onto the rest; identity off the past."""
    if not is_past_position(g, x):
        return g
    check = VALIDATE if check is None else check
    N = neighbourhood(rule.scheme, (x,), g)
    local = induced_subgraph(g, N) if N else PortGraph()
    out = rule.rewrite(x, local)
    if out is local:
        return g
    if check:
        _check_rewrite(local, out, g, N, x)
    try:
        return join(out, restrict_complement(g, N), check=check)
    except IncompatibleJoin as exc:
        raise RuleContractBroken(f"rewrite at {x} cannot be glued back: {exc}") from exc


def is_valid(rule: LocalRule, omega: Sequence, g: PortGraph) -> bool:
    for x in reversed(omega):
        if not is_past_position(g, x):
            return False
        g = apply(rule, x, g)
    return True


def apply_sequence(rule: LocalRule, omega: Sequence, g: PortGraph, strict: bool = False) -> PortGraph:
    for i, x in enumerate(reversed(omega)):
        if strict and not is_past_position(g, x):
            raise InvalidSequence(
                f"{format_sequence(omega)}: letter {x} (step {i + 1}) is not an internal past position")
        g = apply(rule, x, g)
    return g


def enabled(rule: LocalRule, g: PortGraph) -> frozenset:
    out = set()
    for v in g.internal:
        if not g.in_edges(v) and apply(rule, v.x, g) != g:
            out.add(v.x)
    return frozenset(out)


# -- sequence algebra ----------------------------------------------------------

def subtract(omega: Sequence, alpha: Sequence) -> Sequence:
    """ω∖α: remove letters of α from ω, rightmost occurrences first.

    A letter of α absent from ω leaves ω unchanged.
    """
    omega = list(omega)
    for x in reversed(alpha):
        for i in range(len(omega) - 1, -1, -1):
            if omega[i] == x:
                del omega[i]
                break
    return tuple(omega)


def missing_letters(omega: Sequence, alpha: Sequence) -> list:
    """Letters of α that found no occurrence during ω∖α."""
    omega = list(omega)
    miss = []
    for x in reversed(alpha):
        for i in range(len(omega) - 1, -1, -1):
            if omega[i] == x:
                del omega[i]
                break
        else:
            miss.append(x)
    return miss
