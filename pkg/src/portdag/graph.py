"""Port graphs with named space-time vertices.

A vertex is a :class:`Name` ``t.x``: a timetag ``t`` and a position ``x``.
A :class:`PortGraph` holds internal vertices (which carry states), border
vertices (which only anchor edges) and oriented edges between ports.
Values are immutable; every operation returns a new graph.
"""
from __future__ import annotations

import graphlib
import json
import re
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple

from .errors import IncompatibleJoin, UnknownVertex


class Name(NamedTuple):
    t: int
    x: str

    def shift(self, dt: int) -> "Name":
        return Name(self.t + dt, self.x)

    def __str__(self) -> str:
        return f"{self.t}.{self.x}"


class Edge(NamedTuple):
    src: Name
    sport: str
    dst: Name
    dport: str

    def touches(self, v: Name) -> bool:
        return self.src == v or self.dst == v

    def __str__(self) -> str:
        return f"{self.src}:{self.sport}->{self.dst}:{self.dport}"


def _name_key(n: Name):
    return (n.x, n.t)


def _edge_key(e: Edge):
    return (e.src.x, e.src.t, e.sport, e.dst.x, e.dst.t, e.dport)


@dataclass(frozen=True, eq=False)
class PortGraph:
    internal: frozenset = frozenset()
    border: frozenset = frozenset()
    edges: frozenset = frozenset()
    states: Mapping[Name, str] = field(default_factory=dict)

    @classmethod
    def make(cls, internal: frozenset, border: frozenset, edges: frozenset, states: dict) -> "PortGraph":
        """Trusted constructor: arguments already have the right types."""
        g = object.__new__(cls)
        d = g.__dict__
        d["internal"], d["border"], d["edges"], d["states"] = internal, border, edges, states
        return g

    def __post_init__(self):
        object.__setattr__(self, "internal", frozenset(Name(*v) for v in self.internal))
        object.__setattr__(self, "border", frozenset(Name(*v) for v in self.border))
        object.__setattr__(self, "edges", frozenset(Edge(*e) for e in self.edges))
        object.__setattr__(self, "states", {Name(*k): v for k, v in dict(self.states).items()})

    # structural equality of the four fields
    def __eq__(self, other):
        if not isinstance(other, PortGraph):
            return NotImplemented
        return (self.internal == other.internal and self.border == other.border
                and self.edges == other.edges and self.states == other.states)

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"PortGraph({len(self.internal)} internal, {len(self.border)} border, {len(self.edges)} edges)"

    @cached_property
    def vertices(self) -> frozenset:
        return self.internal | self.border

    @cached_property
    def at(self) -> dict:
        """position -> vertex (last writer wins if unicity is broken)."""
        return {v.x: v for v in self.vertices}

    @cached_property
    def _adj(self):
        ins: dict = {v: [] for v in self.vertices}
        outs: dict = {v: [] for v in self.vertices}
        for e in self.edges:
            outs.setdefault(e.src, []).append(e)
            ins.setdefault(e.dst, []).append(e)
        return ins, outs

    def in_edges(self, v: Name) -> list:
        return self._adj[0].get(v, [])

    def out_edges(self, v: Name) -> list:
        return self._adj[1].get(v, [])

    def positions(self) -> frozenset:
        return frozenset(v.x for v in self.vertices)

    def to_dict(self, ports: Iterable[str] | None = None) -> dict:
        if ports is None:
            ports = {e.sport for e in self.edges} | {e.dport for e in self.edges}
        return {
            "ports": sorted(ports),
            "internal": [{"t": v.t, "x": v.x, "state": self.states.get(v)}
                         for v in sorted(self.internal, key=_name_key)],
            "border": [{"t": v.t, "x": v.x} for v in sorted(self.border, key=_name_key)],
            "edges": [{"from": {"t": e.src.t, "x": e.src.x, "port": e.sport},
                       "to": {"t": e.dst.t, "x": e.dst.x, "port": e.dport}}
                      for e in sorted(self.edges, key=_edge_key)],
        }

    @cached_property
    def key(self) -> bytes:
        return canonical_key(self)


def canonical_key(g: PortGraph) -> bytes:
    """Byte string that is equal for two graphs iff they are structurally equal."""
    return json.dumps(g.to_dict(), sort_keys=True, separators=(",", ":"),
                      ensure_ascii=True).encode()


def to_json(g: PortGraph, ports: Iterable[str] | None = None) -> str:
    return json.dumps(g.to_dict(ports), sort_keys=True, indent=1)


def from_dict(d: dict) -> PortGraph:
    """Parse the JSON graph format. Raises ValueError on malformed input."""
    try:
        declared = set(d.get("ports", []))
        internal, states = [], {}
        for item in d.get("internal", []):
            v = Name(int(item["t"]), str(item["x"]))
            internal.append(v)
            if item.get("state") is not None:
                states[v] = str(item["state"])
        border = [Name(int(i["t"]), str(i["x"])) for i in d.get("border", [])]
        edges = []
        for item in d.get("edges", []):
            a, b = item["from"], item["to"]
            edges.append(Edge(Name(int(a["t"]), str(a["x"])), str(a["port"]),
                              Name(int(b["t"]), str(b["x"])), str(b["port"])))
    except (KeyError, TypeError, AttributeError) as exc:
        raise ValueError(f"malformed graph: {exc!r}") from exc
    if "ports" in d:
        used = {e.sport for e in edges} | {e.dport for e in edges}
        if not used <= declared:
            raise ValueError(f"undeclared ports: {sorted(used - declared)}")
    if len(set(internal)) != len(internal) or len(set(border)) != len(border):
        raise ValueError("duplicated vertex entry")
    return PortGraph(frozenset(internal), frozenset(border), frozenset(edges), states)


def from_json(text: str) -> PortGraph:
    return from_dict(json.loads(text))


# -- validation ---------------------------------------------------------------

@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, invariant: str, witness) -> None:
        self.violations.append((invariant, witness))

    def to_dict(self) -> dict:
        return {"ok": self.ok,
                "violations": [{"invariant": n, "witness": w} for n, w in self.violations]}


def validate(g: PortGraph) -> ValidationReport:
    rep = ValidationReport()
    both = g.internal & g.border
    if both:
        rep.add("Vertex partitioning", sorted(str(v) for v in both))

    seen: dict = {}
    for v in sorted(g.vertices, key=_name_key):
        seen.setdefault(v.x, []).append(v)
    dup = [[str(v) for v in vs] for x, vs in sorted(seen.items()) if len(vs) > 1]
    if dup:
        rep.add("Unicity of positions", dup)

    dangling = sorted(str(e) for e in g.edges
                      if e.src not in g.vertices or e.dst not in g.vertices)
    if dangling:
        rep.add("Edge endpoints", dangling)

    used = Counter()
    for e in g.edges:
        used[(e.src, e.sport)] += 1
        used[(e.dst, e.dport)] += 1
    sat = [f"{v}:{p}" for (v, p), k in sorted(used.items(), key=lambda kv: (_name_key(kv[0][0]), kv[0][1]))
           if k > 1]
    if sat:
        rep.add("Port non-saturation", sat)

    bb = sorted(str(e) for e in g.edges if e.src in g.border and e.dst in g.border)
    if bb:
        rep.add("No border-to-border edges", bb)

    touched = {e.src for e in g.edges} | {e.dst for e in g.edges}
    loose = sorted(str(v) for v in g.border if v not in touched)
    if loose:
        rep.add("Border attachment", loose)

    ts = graphlib.TopologicalSorter()
    for v in g.vertices:
        ts.add(v)
    for e in g.edges:
        ts.add(e.dst, e.src)
    try:
        ts.prepare()
    except graphlib.CycleError as exc:
        rep.add("Acyclicity", [str(v) for v in exc.args[1]])

    keys = set(g.states)
    if keys != set(g.internal):
        rep.add("State totality", {"missing": sorted(str(v) for v in g.internal - keys),
                                   "extra": sorted(str(v) for v in keys - g.internal)})
    return rep


# -- lattice operations ---------------------------------------------------------

def past(g: PortGraph) -> frozenset:
    return frozenset(v for v in g.vertices if not g.in_edges(v))


def internal_past_positions(g: PortGraph) -> frozenset:
    return frozenset(v.x for v in g.internal if not g.in_edges(v))


def induced_subgraph(g: PortGraph, U: Iterable) -> PortGraph:
    """G_U. ``U`` holds either Names or positions (strings); positions X mean G_{ℤX}."""
    U = set(U)
    if U and all(isinstance(u, str) for u in U):
        inner = frozenset(v for v in g.internal if v.x in U)
    else:
        inner = frozenset(Name(*u) for u in U) & g.internal
    return _induced(g, inner)


def restrict_complement(g: PortGraph, X: Iterable[str]) -> PortGraph:
    """G_{X̄}: the induced subgraph on internal vertices whose position is not in X."""
    X = set(X)
    return _induced(g, frozenset(v for v in g.internal if v.x not in X))


def _induced(g: PortGraph, inner: frozenset) -> PortGraph:
    if inner == g.internal:
        return g
    edges = set()
    for v in inner:
        edges.update(g.in_edges(v))
        edges.update(g.out_edges(v))
    border = {e.src for e in edges} | {e.dst for e in edges}
    border -= inner
    return PortGraph.make(inner, frozenset(border), frozenset(edges),
                          {v: g.states[v] for v in inner if v in g.states})


def is_induced_subgraph(h: PortGraph, g: PortGraph) -> bool:
    """h ⊑ g."""
    return h == _induced(g, h.internal) and h.internal <= g.internal


def interior(g: PortGraph, X: Iterable[str]) -> frozenset:
    X = frozenset(X)
    out = set()
    for v in g.internal:
        if v.x not in X:
            continue
        nbrs = [e.src for e in g.in_edges(v)] + [e.dst for e in g.out_edges(v)]
        if all(n.x in X for n in nbrs):
            out.add(v.x)
    return frozenset(out)


def join(g: PortGraph, h: PortGraph, check: bool = True) -> PortGraph:
    """g ⊔ h, raising IncompatibleJoin when the two pieces disagree."""
    if g is h:
        return g
    gat, hat = g.at, h.at
    for x, v in gat.items():
        w = hat.get(x)
        if w is not None and w != v:
            raise IncompatibleJoin(f"position {x} carries {v} and {w}")
    for v in g.internal & h.internal:
        if g.states.get(v) != h.states.get(v):
            raise IncompatibleJoin(f"state of {v} differs: {g.states.get(v)!r} vs {h.states.get(v)!r}")
    # an internal vertex owns all its edges, so the other side may not add any
    for a, b in ((g, h), (h, g)):
        for e in b.edges:
            if (e.src in a.internal or e.dst in a.internal) and e not in a.edges:
                raise IncompatibleJoin(f"edge {e} unknown to the side where it is internal")
    internal = g.internal | h.internal
    states = dict(g.states)
    states.update(h.states)
    res = PortGraph.make(internal, (g.border | h.border) - internal, g.edges | h.edges, states)
    if check:
        rep = validate(res)
        if not rep.ok:
            raise IncompatibleJoin(f"join violates {rep.violations}")
    return res


def incoming_ports(g: PortGraph, v: Name) -> frozenset:
    if v not in g.vertices:
        raise UnknownVertex(str(v))
    return frozenset(e.dport for e in g.in_edges(v))


def edges_from_set(g: PortGraph, Y: Iterable[str], u: Name) -> frozenset:
    if u not in g.vertices:
        raise UnknownVertex(str(u))
    Y = set(Y)
    return frozenset(e for e in g.in_edges(u) if e.src.x in Y)


def natural_key(x: str):
    """Sort key putting x2 before x10."""
    return [int(p) if p.isdigit() else p for p in re.split(r"(\d+)", x)]


EMPTY = PortGraph()
