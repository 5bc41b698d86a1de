"""Executable checks for consistency and for the hypotheses that imply it.

Every checker returns a :class:`PropertyReport`. Witness records are plain
JSON-ready dicts; reports sort them so that output never depends on
iteration or worker order.
"""
from __future__ import annotations

import enum
import json
import random
from dataclasses import dataclass, field
from functools import partial
from itertools import combinations
from typing import Callable, Iterable, Mapping

from .diagrams import DiagramSet
from .errors import InvalidSequence, SchemeContractBroken, UnknownPort
from .graph import (PortGraph, incoming_ports, induced_subgraph, interior,
                    internal_past_positions, is_induced_subgraph, join, past,
                    restrict_complement)
from .parallel import pmap
from .rewriting import (LocalRule, NeighbourhoodScheme, apply, apply_sequence,
                        enabled, format_sequence, is_valid, missing_letters,
                        neighbourhood, subtract)

G_U_NOTE = "changed vertices are those u with G_u != (A_x G)_u (induced subgraph around u)"
EXT_NOTE = "H ranges over induced subgraphs G_Y of the test graph only"


# -- port orders ---------------------------------------------------------------

class Cmp(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@dataclass(frozen=True)
class PortOrder:
    """Compare port sets (or multisets) by the sum of positive port weights."""
    weights: Mapping[str, int]

    def __post_init__(self):
        bad = {p: w for p, w in self.weights.items() if w <= 0}
        if bad:
            raise ValueError(f"weights must be positive: {bad}")

    def weight(self, ports: Iterable[str]) -> int:
        total = 0
        for p in ports:
            try:
                total += self.weights[p]
            except KeyError:
                raise UnknownPort(p) from None
        return total

    def compare(self, A: Iterable[str], B: Iterable[str]) -> Cmp:
        a, b = self.weight(A), self.weight(B)
        return Cmp((a > b) - (a < b))

    @classmethod
    def unit(cls, ports: Iterable[str]) -> "PortOrder":
        return cls({p: 1 for p in ports})

    @classmethod
    def for_rule(cls, rule: LocalRule) -> "PortOrder":
        if rule.weights:
            return cls(dict(rule.weights))
        return cls.unit(rule.ports)


def compare_port_sets(order: PortOrder, A: Iterable[str], B: Iterable[str]) -> Cmp:
    return order.compare(A, B)


# -- reports -------------------------------------------------------------------

def _wkey(w) -> str:
    return json.dumps(w, sort_keys=True)


@dataclass
class PropertyReport:
    property: str
    witnesses: list = field(default_factory=list)
    cases: int = 0
    notes: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.witnesses

    def note(self, text: str) -> None:
        if text not in self.notes:
            self.notes.append(text)

    def merge(self, other: "PropertyReport") -> "PropertyReport":
        self.witnesses.extend(other.witnesses)
        self.cases += other.cases
        for n in other.notes:
            self.note(n)
        return self

    def to_dict(self, max_witnesses: int | None = 20) -> dict:
        ws = sorted(self.witnesses, key=_wkey)
        d = {"property": self.property, "passed": self.passed, "cases": self.cases,
             "witnesses": ws if max_witnesses is None else ws[:max_witnesses]}
        if max_witnesses is not None and len(ws) > max_witnesses:
            d["witnesses_total"] = len(ws)
        if self.notes:
            d["notes"] = sorted(self.notes)
        if self.stats:
            d["stats"] = dict(sorted(self.stats.items()))
        return d


def _shorter(a: tuple, b: tuple) -> bool:
    return (len(a), a) < (len(b), b)


def _seq(s) -> str:
    return format_sequence(s)


def _ports(ps) -> list:
    return sorted(ps)


# -- consistency ---------------------------------------------------------------

def check_pair_consistency(g: PortGraph, h: PortGraph, weak: bool = False) -> PropertyReport:
    rep = PropertyReport("weak-consistency" if weak else "consistency")
    for v in sorted(g.internal & h.internal):
        pg, ph = incoming_ports(g, v), incoming_ports(h, v)
        if pg != ph or (weak and pg):
            continue
        rep.cases += 1
        gv, hv = induced_subgraph(g, {v}), induced_subgraph(h, {v})
        if gv != hv:
            rep.witnesses.append({"vertex": str(v), "ports": _ports(pg),
                                  "states": [g.states[v], h.states[v]],
                                  "same_edges": gv.edges == hv.edges})
    return rep


def _local_views(weak: bool, item) -> list:
    """[(vertex, ports, local key, state)] for one cut."""
    _, g = item
    out = []
    for v in g.internal:
        ps = frozenset(e.dport for e in g.in_edges(v))
        if weak and ps:
            continue
        out.append((v, ps, induced_subgraph(g, {v}).key, g.states[v]))
    return out


def check_diagram_consistency(ds: DiagramSet, weak: bool = False, jobs: int = 1) -> PropertyReport:
    """All cuts pairwise consistent.

    Pairwise consistency is equivalent to: for each vertex v and incoming
    port set P, all cuts where v is internal with ports P agree on G_v.
    Grouping by (v, P) checks every pair in linear time.
    """
    rep = PropertyReport("weak-consistency" if weak else "consistency")
    keys = sorted(ds.cuts)
    views = pmap(partial(_local_views, weak), [(k, ds.cuts[k]) for k in keys], jobs)
    groups: dict = {}
    for k, vs in zip(keys, views):
        w = ds.witness[k]
        for v, ps, lk, st in vs:
            rep.cases += 1
            variants = groups.setdefault((v, ps), {})
            best = variants.get(lk)
            if best is None or _shorter(w, best[0]):
                variants[lk] = (w, st)
    for (v, ps), variants in sorted(groups.items(), key=lambda kv: (kv[0][0], sorted(kv[0][1]))):
        if len(variants) < 2:
            continue
        (w1, s1), (w2, s2) = sorted(variants.values(), key=lambda ws: (len(ws[0]), ws[0]))[:2]
        rep.witnesses.append({"vertex": str(v), "ports": _ports(ps),
                              "cuts": [_seq(w1), _seq(w2)], "states": [s1, s2],
                              "variants": len(variants)})
    return rep


# -- per-graph hypotheses --------------------------------------------------------

def check_commutativity(rule: LocalRule, g: PortGraph) -> PropertyReport:
    rep = PropertyReport("commutativity")
    xs = sorted(enabled(rule, g))
    after = {x: apply(rule, x, g) for x in xs}
    for x, y in combinations(xs, 2):
        rep.cases += 1
        xy = apply(rule, x, after[y])
        yx = apply(rule, y, after[x])
        if xy != yx:
            rep.witnesses.append({"pair": [x, y], "sequences": [_seq((x, y)), _seq((y, x))]})
    return rep


def check_time_increasing(rule: LocalRule, g: PortGraph, x: str) -> PropertyReport:
    rep = PropertyReport("time-increasing")
    h = apply(rule, x, g)
    if h == g:
        return rep
    hat = h.at
    for v in sorted(g.vertices):
        w = hat.get(v.x)
        if w is None:
            continue
        rep.cases += 1
        if w.t < v.t or (v.x == x and w.t == v.t):
            rep.witnesses.append({"fired": x, "position": v.x, "before": v.t, "after": w.t})
    return rep


def check_locality(rule: LocalRule, g: PortGraph, omega) -> PropertyReport:
    rep = PropertyReport("locality")
    omega = tuple(omega)
    if not is_valid(rule, omega, g):
        raise InvalidSequence(_seq(omega))
    rep.cases += 1
    direct = apply_sequence(rule, omega, g)
    N = neighbourhood(rule.scheme, omega, g)
    local = apply_sequence(rule, omega, induced_subgraph(g, N)) if N else PortGraph()
    try:
        glued = join(local, restrict_complement(g, N))
    except Exception as exc:    # a failed gluing is itself the counterexample
        rep.witnesses.append({"sequence": _seq(omega), "error": str(exc)})
        return rep
    if glued != direct:
        rep.witnesses.append({"sequence": _seq(omega), "neighbourhood": sorted(N)})
    return rep


def check_extensivity(scheme: NeighbourhoodScheme, g: PortGraph, omega: Iterable[str],
                      exhaustive_limit: int = 2**12, samples: int = 64, seed: int = 0) -> PropertyReport:
    rep = PropertyReport("extensivity")
    rep.note(EXT_NOTE)
    omega = frozenset(omega)
    N = neighbourhood(scheme, omega, g)
    GN = induced_subgraph(g, N)
    free = sorted(g.positions() - N)
    if 2 ** len(free) <= exhaustive_limit:
        choices = [frozenset(c for i, c in enumerate(free) if mask >> i & 1)
                   for mask in range(2 ** len(free))]
    else:
        rng = random.Random(seed)
        choices = [frozenset(c for c in free if rng.random() < 0.5) for _ in range(samples)]
        rep.note(f"sampled {samples} of {2 ** len(free)} position sets (seed {seed})")
    for extra in choices:
        Y = N | extra
        H = induced_subgraph(g, Y)
        rep.cases += 1
        if not is_induced_subgraph(GN, H):
            rep.witnesses.append({"omega": sorted(omega), "Y": sorted(Y), "error": "G_N not below H"})
            continue
        try:
            NH = neighbourhood(scheme, omega, H)
        except SchemeContractBroken as exc:
            rep.witnesses.append({"omega": sorted(omega), "Y": sorted(Y), "error": str(exc)})
            continue
        if NH != N:
            rep.witnesses.append({"omega": sorted(omega), "Y": sorted(Y),
                                  "in_g": sorted(N), "in_h": sorted(NH)})
    return rep


def check_port_decreasing(rule: LocalRule, order: PortOrder, g: PortGraph, x: str) -> PropertyReport:
    rep = PropertyReport("port-decreasing")
    rep.note(G_U_NOTE)
    h = apply(rule, x, g)
    if h == g:
        return rep
    N = neighbourhood(rule.scheme, (x,), g)
    inner = interior(g, N)
    for u in sorted(g.vertices & h.vertices):
        if induced_subgraph(g, {u}) == induced_subgraph(h, {u}):
            continue
        rep.cases += 1
        private = {e for e in g.in_edges(u) if e.src.x in inner}
        now = set(h.in_edges(u))
        kept = private & now
        new = now - set(g.in_edges(u))
        lhs = [e.dport for e in private]
        rhs = [e.dport for e in kept] + [e.dport for e in new]
        if order.compare(lhs, rhs) != Cmp.GREATER:
            rep.witnesses.append({"fired": x, "vertex": str(u), "before": sorted(lhs),
                                  "after": sorted(rhs)})
    return rep


# -- sequence-level hypotheses ---------------------------------------------------

def letter_states(rule: LocalRule, g: PortGraph, budget: int) -> dict:
    """(cut key, letter set) -> (cut, letter set, least shortest witness) over valid ω, |ω| ≤ budget."""
    start = (g.key, frozenset())
    states = {start: (g, frozenset(), ())}
    frontier = [start]
    for _ in range(budget):
        new: dict = {}
        for st in frontier:
            h, S, w = states[st]
            for x in sorted(internal_past_positions(h)):
                h2 = apply(rule, x, h)
                key = (h2.key, S | {x})
                if key in states:
                    continue
                w2 = (x,) + w
                if key not in new or w2 < new[key][2]:
                    new[key] = (h2, S | {x}, w2)
        states.update(new)
        frontier = sorted(new, key=lambda k: (k[0], sorted(k[1])))
    return states


def check_monotony(scheme: NeighbourhoodScheme, rule: LocalRule, g: PortGraph,
                   budget: int) -> PropertyReport:
    """N_β(A_α G) ⊆ N_{γβα}(G) for valid γβα with |γβα| ≤ budget.

    For an additive scheme the right side only grows with γ, so γ = ε is
    the binding case and the only one examined.
    """
    rep = PropertyReport("monotony")
    cache: dict = {}

    def N_g(S):
        if S not in cache:
            cache[S] = neighbourhood(scheme, S, g)
        return cache[S]

    alphas = letter_states(rule, g, budget)
    for (_, Sa), (Ha, _, wa) in sorted(alphas.items(), key=lambda kv: kv[1][2]):
        rest = budget - len(wa)
        for (_, Sb), (Hb, _, wb) in sorted(letter_states(rule, Ha, rest).items(),
                                          key=lambda kv: kv[1][2]):
            if not Sb:
                continue
            lhs = neighbourhood(scheme, Sb, Ha)
            if scheme.additive:
                gammas = {frozenset(): ()}
            else:
                gammas = {}
                for (_, Sc), (_, _, wc) in letter_states(rule, Hb, rest - len(wb)).items():
                    if Sc not in gammas or wc < gammas[Sc]:
                        gammas[Sc] = wc
            for Sc, wc in sorted(gammas.items(), key=lambda kv: kv[1]):
                rep.cases += 1
                rhs = N_g(Sa | Sb | Sc)
                if not lhs <= rhs:
                    rep.witnesses.append({"alpha": _seq(wa), "beta": _seq(wb), "gamma": _seq(wc),
                                          "outside": sorted(lhs - rhs)})
    return rep


def check_privacy(scheme: NeighbourhoodScheme, rule: LocalRule, g: PortGraph,
                  budget: int) -> PropertyReport:
    rep = PropertyReport("privacy")
    reps: dict = {}
    for (_, S), (_, _, w) in letter_states(rule, g, budget).items():
        if S and (S not in reps or w < reps[S]):
            reps[S] = w
    sets = sorted(reps, key=lambda S: reps[S])
    N = {S: neighbourhood(scheme, S, g) for S in sets}
    inner = {S: interior(g, N[S]) for S in sets}
    for S in sets:
        for S2 in sets:
            if not S.isdisjoint(S2):
                continue
            rep.cases += 1
            shared = inner[S2] & N[S]
            if shared:
                rep.witnesses.append({"omega": _seq(reps[S]), "omega2": _seq(reps[S2]),
                                      "shared": sorted(shared)})
    return rep


def shrink(seqs: tuple, fails: Callable[[tuple], bool]) -> tuple:
    """Greedily delete letters from any of the sequences while ``fails`` stays true."""
    seqs = tuple(tuple(s) for s in seqs)
    progress = True
    while progress:
        progress = False
        for i, s in enumerate(seqs):
            for j in range(len(s)):
                cand = seqs[:i] + (s[:j] + s[j + 1:],) + seqs[i + 1:]
                if fails(cand):
                    seqs, progress = cand, True
                    break
            if progress:
                break
    return seqs


def _confluence_failure(rule: LocalRule, g: PortGraph, w1, w2):
    """None if confluent, else a short reason. Inputs must be valid."""
    g1, g2 = apply_sequence(rule, w1, g), apply_sequence(rule, w2, g)
    r1, r2 = subtract(w2, w1), subtract(w1, w2)
    if not is_valid(rule, r1, g1):
        return f"{_seq(r1)} invalid after {_seq(w1)}"
    if not is_valid(rule, r2, g2):
        return f"{_seq(r2)} invalid after {_seq(w2)}"
    if apply_sequence(rule, r1, g1) != apply_sequence(rule, r2, g2):
        return "different results"
    return None


def check_confluence(rule: LocalRule, g: PortGraph, omega, omega2) -> PropertyReport:
    rep = PropertyReport("confluence")
    omega, omega2 = tuple(omega), tuple(omega2)
    for s in (omega, omega2):
        if not is_valid(rule, s, g):
            raise InvalidSequence(_seq(s))
    rep.cases += 1
    if missing_letters(omega2, omega) or missing_letters(omega, omega2):
        rep.note("subtraction met letters with no occurrence; they were skipped")
    reason = _confluence_failure(rule, g, omega, omega2)
    if reason:
        def fails(c):
            return (is_valid(rule, c[0], g) and is_valid(rule, c[1], g)
                    and _confluence_failure(rule, g, *c) is not None)
        s1, s2 = shrink((omega, omega2), fails)
        rep.witnesses.append({"omega": _seq(omega), "omega2": _seq(omega2), "reason": reason,
                              "shrunk": [_seq(s1), _seq(s2)]})
    return rep


def random_valid_sequence(rule: LocalRule, g: PortGraph, length: int, rng: random.Random) -> tuple:
    seq: list = []
    for _ in range(length):
        xs = sorted(internal_past_positions(g))
        if not xs:
            break
        x = rng.choice(xs)
        g = apply(rule, x, g)
        seq.append(x)
    return tuple(reversed(seq))


def check_confluence_random(rule: LocalRule, g: PortGraph, trials: int = 100, max_len: int = 6,
                            seed: int = 0) -> PropertyReport:
    rep = PropertyReport("confluence")
    rng = random.Random(seed)
    for _ in range(trials):
        w1 = random_valid_sequence(rule, g, rng.randint(0, max_len), rng)
        w2 = random_valid_sequence(rule, g, rng.randint(0, max_len), rng)
        rep.merge(check_confluence(rule, g, w1, w2))
    rep.note(f"{trials} random pairs, lengths <= {max_len}, seed {seed}")
    return rep


# -- diagram-level conclusions --------------------------------------------------

def check_past_determines_cut(ds: DiagramSet) -> PropertyReport:
    rep = PropertyReport("past-determines-cut")
    groups: dict = {}
    for k, g, w in ds.items():
        rep.cases += 1
        groups.setdefault(past(g), []).append((w, k))
    for P, members in groups.items():
        if len(members) > 1:
            members.sort()
            rep.witnesses.append({"past": sorted(str(v) for v in P),
                                  "cuts": [_seq(members[0][0]), _seq(members[1][0])]})
    return rep


def check_common_past(ds: DiagramSet) -> PropertyReport:
    """Cuts sharing a past vertex t.x were reached with equally many x firings."""
    rep = PropertyReport("common-past")
    counts: dict = {}
    for k, g, w in ds.items():
        for v in past(g):
            rep.cases += 1
            counts.setdefault(v, {}).setdefault(w.count(v.x), w)
    for v, by_count in sorted(counts.items()):
        if len(by_count) > 1:
            (c1, w1), (c2, w2) = sorted(by_count.items())[:2]
            rep.witnesses.append({"vertex": str(v), "counts": [c1, c2], "cuts": [_seq(w1), _seq(w2)]})
    return rep
