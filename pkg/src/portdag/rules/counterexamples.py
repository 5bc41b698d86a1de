"""Two small rules that each break one hypothesis of the consistency theorem.

``nonprivate``: u and v point into a middle vertex z, which points at w.
With the distance-2 scheme, w lies in the interior of both N_u and N_v.
Firing a position retags it, adds its name to the tag set of w and turns
the edge into w onto port ``a``. A_u G and A_v G then agree on w's
incoming ports but not on its state. The middle vertex z is a witness
too: its own induced subgraph contains the rewired edge.

``nonportdec``: an edge u -> v. Firing u toggles v's state and leaves
everything else alone, so v's incoming ports never change.
"""
from __future__ import annotations

from ..graph import Edge, Name, PortGraph
from ..rewriting import DISTANCE_ONE, LocalRule, NeighbourhoodScheme, reachable_positions

NONPRIVATE_PORTS = frozenset({"a", "a'", "b", "b'"})
# port a is cheaper than b, as the rewired edge z -> w moves from b to a
NONPRIVATE_WEIGHTS = {"a": 1, "a'": 2, "b": 2, "b'": 2}


def _within_two(omega: frozenset, g: PortGraph) -> frozenset:
    return reachable_positions(g, omega, radius=2)


DISTANCE_TWO = NeighbourhoodScheme("distance-2", _within_two, additive=True)


def _tags(state: str) -> set:
    return set() if state == "-" else set(state.split("+"))


def nonprivate_rewrite(x: str, local: PortGraph) -> PortGraph:
    s = local.at[x]
    states = dict(local.states)
    edges = set(local.edges)
    for e1 in local.out_edges(s):
        for e2 in local.out_edges(e1.dst):
            w = e2.dst
            if w not in local.internal:
                continue
            states[w] = "+".join(sorted(_tags(states[w]) | {x}))
            edges.discard(e2)
            edges.add(Edge(e2.src, e2.sport, w, "a"))
    # the fired vertex moves one step forward in time and keeps its edges
    s2 = s.shift(1)
    edges = {Edge(s2, e.sport, e.dst, e.dport) if e.src == s else e for e in edges}
    states[s2] = states.pop(s)
    return PortGraph.make((local.internal - {s}) | {s2}, local.border, frozenset(edges), states)


def counterexample_nonprivate():
    """(graph, rule, scheme) for the non-private gadget."""
    u, v, z, w = (Name(0, p) for p in "uvzw")
    g = PortGraph(frozenset({u, v, z, w}), frozenset(),
                  frozenset({Edge(u, "a", z, "a'"), Edge(v, "a", z, "b'"), Edge(z, "a", w, "b")}),
                  {u: "-", v: "-", z: "-", w: "-"})
    rule = LocalRule("cex-nonprivate", DISTANCE_TWO, NONPRIVATE_PORTS, nonprivate_rewrite,
                     weights=dict(NONPRIVATE_WEIGHTS))
    return g, rule, DISTANCE_TWO


def nonportdec_rewrite(x: str, local: PortGraph) -> PortGraph:
    s = local.at[x]
    states = dict(local.states)
    for e in local.out_edges(s):
        if e.dst in local.internal:
            states[e.dst] = "1" if states[e.dst] == "0" else "0"
    return PortGraph(local.internal, local.border, local.edges, states)


def counterexample_nonportdecreasing():
    """(graph, rule) for the state-toggling gadget."""
    u, v = Name(0, "u"), Name(0, "v")
    g = PortGraph(frozenset({u, v}), frozenset(), frozenset({Edge(u, "a", v, "b")}),
                  {u: "0", v: "0"})
    rule = LocalRule("cex-nonportdec", DISTANCE_ONE, frozenset({"a", "b"}), nonportdec_rewrite,
                     alphabet=frozenset({"0", "1"}))
    return g, rule
