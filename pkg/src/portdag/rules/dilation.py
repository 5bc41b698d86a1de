"""Particle lattice with one coloured column that slows time on its right.

The coloured column alternates between ``green`` and ``red`` and holds no
mover bits; movers arriving at it are destroyed. A green firing is an
ordinary flip. A red firing flips only the left edge: the new green vertex
keeps pointing at its right neighbour ``w`` through ``u':a -> w:b''``, so w
stays blocked until the colour fires again. Columns right of the colour
therefore fire half as often as columns on its left.
"""
from __future__ import annotations

from ..errors import BadIndex, ShapeMismatch
from ..graph import Edge, PortGraph
from ..rewriting import DISTANCE_ONE, LocalRule
from .lattice import PORTS, check_awaiting, lattice
from .particle import bits, flip, fmt, neighbours

COLOURS = ("green", "red")
DILATION_PORTS = PORTS | {"b''"}
# b'' is the one port cheaper than the others, so a -> b'' is a strict decrease
WEIGHTS = {"a": 2, "a'": 2, "b": 2, "b'": 2, "b''": 1}


def _blocking_edge(u2, w):
    return Edge(u2, "a", w, "b''")


def _take(states: dict, v, side: str) -> int:
    """Remove and return the mover of ``v`` heading towards the firing column."""
    s = states[v]
    if s in COLOURS:
        return 0
    l, r = bits(s)
    if side == "r":
        states[v] = fmt(l, 0)
        return r
    states[v] = fmt(0, r)
    return l


def dilation_rewrite(x: str, local: PortGraph) -> PortGraph:
    u = local.at[x]
    left, right = neighbours(local, u)
    states = dict(local.states)
    r_in = _take(states, left.dst, "r") if left is not None else 0
    l_in = _take(states, right.dst, "l") if right is not None else 0
    colour = states[u]
    if colour not in COLOURS:
        if left is None:
            l_in = 0
        if right is None:
            r_in = 0
        return flip(local, u, left, right, fmt(l_in, r_in), states)
    if left is None or right is None:
        raise ShapeMismatch(f"coloured column {x} needs two neighbours")
    if colour == "green":
        return flip(local, u, left, right, "red", states)
    return flip(local, u, left, right, "green", states, right_edge=_blocking_edge)


def dilation_rule() -> LocalRule:
    alphabet = frozenset({"00", "01", "10", "11", *COLOURS})
    return LocalRule("dilation", DISTANCE_ONE, DILATION_PORTS, dilation_rewrite,
                     alphabet=alphabet, weights=dict(WEIGHTS))


def default_colour(n: int) -> int:
    return n // 2 - (n // 2) % 2


def make_dilation_line(n: int, coloured: int | None = None, right_movers=(), left_movers=(),
                       periodic: bool = False, boundary: str = "open") -> PortGraph:
    """Width-n lattice whose column ``coloured`` starts red.

    The default is the centre, rounded down to an even (past) column.

    ``coloured=-1`` builds a plain lattice without colour.
    """
    if coloured is None:
        coloured = default_colour(n)
    right_movers, left_movers = set(right_movers), set(left_movers)

    def state(c: int) -> str:
        if c == coloured:
            return "red"
        return fmt(int(c in left_movers), int(c in right_movers))

    g = lattice(n, periodic, boundary, "x", state)
    check_awaiting(g, "x", right_movers | left_movers, n)
    if coloured >= 0:
        v = g.at.get(f"x{coloured}")
        if v is None or v not in g.internal or g.in_edges(v):
            raise BadIndex(f"coloured column {coloured} must be an internal past column")
        if coloured in right_movers | left_movers:
            raise BadIndex("the coloured column cannot hold movers")
    return g
