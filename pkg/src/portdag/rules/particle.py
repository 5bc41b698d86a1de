"""Particles moving left and right on a diamond lattice.

Each internal vertex carries a token ``"lr"`` of two bits: ``l`` for a
left-mover, ``r`` for a right-mover. Firing a past vertex pulls the movers
aimed at it out of its neighbours into the new vertex and flips both edges.
"""
from __future__ import annotations

from ..errors import ShapeMismatch, StateTypeMismatch
from ..graph import Edge, PortGraph
from ..rewriting import DISTANCE_ONE, LocalRule
from .lattice import PORTS, check_awaiting, lattice

ALPHABET = frozenset({"00", "01", "10", "11"})


def bits(state: str) -> tuple:
    if state not in ALPHABET:
        raise StateTypeMismatch(f"not a particle state: {state!r}")
    return int(state[0]), int(state[1])


def fmt(l: int, r: int) -> str:
    return f"{l}{r}"


def neighbours(local: PortGraph, u):
    """Edges ``u:b -> v`` (left) and ``u:a -> w`` (right); either may be absent at an open end."""
    left = right = None
    for e in local.out_edges(u):
        if e.sport == "b" and left is None:
            left = e
        elif e.sport == "a" and right is None:
            right = e
        else:
            raise ShapeMismatch(f"unexpected out-edge {e} at {u}")
    if left is None and right is None:
        raise ShapeMismatch(f"{u} has no outgoing lattice edge")
    for e in (left, right):
        if e is not None and e.dst not in local.internal:
            raise ShapeMismatch(f"{u} points at border vertex {e.dst}")
    return left, right


def flip(local: PortGraph, u, left, right, new_state: str, states: dict,
         right_edge=None) -> PortGraph:
    """Replace u by (t+1).x with ``new_state``; neighbours now point at it.

    ``right_edge`` overrides the edge created on the w side.
    """
    u2 = u.shift(1)
    edges = set(local.edges)
    edges.discard(left)
    edges.discard(right)
    if left is not None:
        edges.add(Edge(left.dst, "a", u2, "a'"))
    if right is not None:
        edges.add(right_edge(u2, right.dst) if right_edge else Edge(right.dst, "b", u2, "b'"))
    states = dict(states)
    del states[u]
    states[u2] = new_state
    return PortGraph.make((local.internal - {u}) | {u2}, local.border, frozenset(edges), states)


def particle_rewrite(x: str, local: PortGraph) -> PortGraph:
    u = local.at[x]
    left, right = neighbours(local, u)
    states = dict(local.states)
    l_in = r_in = 0
    if left is not None:
        vl, vr = bits(states[left.dst])
        r_in = vr
        states[left.dst] = fmt(vl, 0)
    if right is not None:
        wl, wr = bits(states[right.dst])
        l_in = wl
        states[right.dst] = fmt(0, wr)
    # at an open end a mover with nowhere to go leaves the line
    if left is None:
        l_in = 0
    if right is None:
        r_in = 0
    return flip(local, u, left, right, fmt(l_in, r_in), states)


def particle_rule() -> LocalRule:
    return LocalRule("particle", DISTANCE_ONE, PORTS, particle_rewrite, alphabet=ALPHABET)


def make_particle_line(n: int, right_movers=(), left_movers=(), periodic: bool = False,
                       boundary: str = "wall") -> PortGraph:
    """Bottom layer of width n; movers sit on awaiting (odd) columns."""
    right_movers, left_movers = set(right_movers), set(left_movers)
    g = lattice(n, periodic, boundary, "x",
                lambda c: fmt(int(c in left_movers), int(c in right_movers)))
    check_awaiting(g, "x", right_movers | left_movers, n)
    return g


def decode_particles(g: PortGraph) -> frozenset:
    """{(position, "right"|"left")} for every mover bit held by an internal vertex."""
    out = set()
    for v in g.internal:
        s = g.states[v]
        if s in ("green", "red"):
            continue
        l, r = bits(s)
        if r:
            out.add((v.x, "right"))
        if l:
            out.add((v.x, "left"))
    return frozenset(out)
