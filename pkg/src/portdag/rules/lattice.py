"""One-dimensional diamond lattices shared by the particle, CA and dilation rules.

Columns ``0..n-1`` become positions ``<prefix><c>``, all at timetag 0.
Between neighbouring columns L (left) and R (right) there is one edge:
``L:a -> R:a'`` if L is the source, ``R:b -> L:b'`` otherwise. Port ``a``
always leads right and ``b`` always leads left, which is what the
firing step relies on. Even columns are sources, so they form the past.

Boundaries:
  * ``wall``  - columns 0 and n-1 are border vertices pointing inward;
  * ``open``  - no borders, the end columns just have one neighbour;
  * periodic  - a ring; with odd n the wrap edge goes from 0 to n-1.
"""
from __future__ import annotations

from ..errors import BadIndex
from ..graph import Edge, Name, PortGraph

PORTS = frozenset({"a", "a'", "b", "b'"})
BOUNDARIES = ("wall", "open")


def column_of(x: str, prefix: str) -> int:
    return int(x[len(prefix):])


def lattice(n: int, periodic: bool = False, boundary: str = "wall", prefix: str = "x",
            states=None) -> PortGraph:
    """Build the bottom layer. ``states(c)`` gives the state of internal column c."""
    if n < 3:
        raise BadIndex(f"width must be at least 3, got {n}")
    if boundary not in BOUNDARIES:
        raise ValueError(f"unknown boundary {boundary!r}")
    names = [Name(0, f"{prefix}{c}") for c in range(n)]

    def source_is_left(c: int) -> bool:
        # pair (c, c+1 mod n)
        if periodic and c == n - 1:
            # the wrap edge always leaves column 0
            return False
        if not periodic and boundary == "wall":
            if c == 0:
                return True
            if c == n - 2:
                return False
        return c % 2 == 0

    pairs = list(range(n - 1)) + ([n - 1] if periodic else [])
    edges = set()
    for c in pairs:
        L, R = names[c], names[(c + 1) % n]
        if source_is_left(c):
            edges.add(Edge(L, "a", R, "a'"))
        else:
            edges.add(Edge(R, "b", L, "b'"))

    border = set()
    if not periodic and boundary == "wall":
        border = {names[0], names[-1]}
    internal = [v for v in names if v not in border]
    states = states or (lambda c: "")
    return PortGraph(frozenset(internal), frozenset(border), frozenset(edges),
                     {v: states(column_of(v.x, prefix)) for v in internal})


def check_awaiting(g: PortGraph, prefix: str, indices, n: int) -> None:
    """Movers and similar payloads must sit on internal non-past columns."""
    for i in indices:
        if not 0 <= i < n:
            raise BadIndex(f"index {i} outside 0..{n - 1}")
        v = Name(0, f"{prefix}{i}")
        if v not in g.internal:
            raise BadIndex(f"column {i} is a border column")
        if not g.in_edges(v):
            raise BadIndex(f"column {i} is a past column; payload must sit on an awaiting column")
