"""Shared graphs: the hand-drawn examples used across several test modules."""
import pytest

from portdag.graph import Edge, Name, PortGraph
from portdag.rewriting import apply
from portdag.rules import build, InstanceConfig
from portdag.rules.particle import make_particle_line, particle_rule


def _n(x: str, t: int = 0) -> Name:
    return Name(t, x)


def eight_vertex_graph() -> PortGraph:
    """Diamond-ish graph on x0..x7 with borders at x5 and x6."""
    v = {i: _n(f"x{i}", i) for i in range(8)}
    edges = {
        Edge(v[0], "a", v[1], "b"), Edge(v[1], "c", v[4], "b"), Edge(v[1], "a", v[3], "c"),
        Edge(v[2], "a", v[3], "b"), Edge(v[3], "e", v[4], "c"), Edge(v[3], "d", v[6], "a"),
        Edge(v[3], "a", v[7], "a"), Edge(v[4], "a", v[5], "a"),
    }
    internal = {v[i] for i in (0, 1, 2, 3, 4, 7)}
    return PortGraph(frozenset(internal), frozenset({v[5], v[6]}), frozenset(edges),
                     {u: "s" for u in internal})


def diverging_pair() -> tuple:
    """Two graphs that agree on every past vertex but not on v, which keeps its ports."""
    u, y, v, z = (_n(p) for p in "uyvz")
    e_g = {Edge(u, "a", y, "b"), Edge(u, "b", v, "a"), Edge(y, "a", z, "b"), Edge(v, "b", z, "a")}
    st = {u: "00", y: "11", v: "00", z: "00"}
    g = PortGraph(frozenset(st), frozenset(), frozenset(e_g), st)
    e_h = e_g - {Edge(v, "b", z, "a")}
    h = PortGraph(frozenset(st), frozenset(), frozenset(e_h), {**st, z: "11"})
    return g, h


def mover_pair() -> tuple:
    """Width-5 particle line with a right-mover at x1, before and after firing x2."""
    g = make_particle_line(5, right_movers=(1,))
    return g, apply(particle_rule(), "x2", g)


@pytest.fixture
def g8():
    return eight_vertex_graph()


@pytest.fixture
def diverging():
    return diverging_pair()


@pytest.fixture
def movers():
    return mover_pair()


# small instances of each library rule, all with budget <= 12
LIBRARY_INSTANCES = {
    "particle-ring6": InstanceConfig("particle", 6, periodic=True, right=(1,), left=(3,)),
    "particle-line6-open": InstanceConfig("particle", 6, boundary="open", right=(1,), left=(3,)),
    "particle-line7-wall": InstanceConfig("particle", 7, right=(1,), left=(5,)),
    "ca-ring4": InstanceConfig("ca", 4, periodic=True),
    "ca-line4": InstanceConfig("ca", 4),
    "dilation-line6": InstanceConfig("dilation", 6, right=(1,), left=(5,)),
    "dilation-ring6": InstanceConfig("dilation", 6, periodic=True, right=(1,)),
}


def library_instance(name: str):
    return build(LIBRARY_INSTANCES[name])


@pytest.fixture(params=sorted(LIBRARY_INSTANCES))
def instance(request):
    rule, g = library_instance(request.param)
    return request.param, rule, g


# -- acceptance summary --------------------------------------------------------------

ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {n:>2}. {title}: {detail}")
