import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from portdag.diagrams import enumerate_diagram, max_schedule
from portdag.errors import BadIndex, IncompleteState, ShapeMismatch, StateTypeMismatch
from portdag.graph import (Edge, Name, PortGraph, incoming_ports, induced_subgraph,
                           internal_past_positions, past)
from portdag.rewriting import apply, enabled
from portdag.rules import InstanceConfig, build, count_retirements
from portdag.rules.ca import XOR, TruthTable, make_ca_initial, make_ca_rule, slots, strict_ca_rewrite
from portdag.rules.counterexamples import counterexample_nonportdecreasing
from portdag.rules.dilation import dilation_rule, make_dilation_line
from portdag.rules.lattice import lattice
from portdag.rules.particle import bits, decode_particles, make_particle_line, particle_rule

PARTICLE = particle_rule()


def mover_count(g):
    return sum(sum(bits(s)) for s in g.states.values())


# -- lattice and builders ----------------------------------------------------------

def test_lattice_rejects_tiny_width():
    with pytest.raises(BadIndex):
        lattice(2)


def test_wall_line_enables_only_inner_columns():
    g = make_ca_initial(XOR, "10000000", periodic=False)
    cols = {int(x[1:]) for x in enabled(make_ca_rule(XOR), g)}
    n = 17
    assert 0 not in cols and n - 1 not in cols and cols


def test_fresh_collision_line():
    g = make_particle_line(9, right_movers=(1,), left_movers=(7,))
    assert decode_particles(g) == {("x1", "right"), ("x7", "left")}
    assert decode_particles(make_particle_line(9)) == frozenset()


@pytest.mark.parametrize("kwargs", [dict(right_movers=(2,)), dict(left_movers=(0,)),
                                    dict(right_movers=(12,))])
def test_movers_must_sit_on_awaiting_columns(kwargs):
    with pytest.raises(BadIndex):
        make_particle_line(9, **kwargs)


def test_ring_of_four_is_acyclic():
    g = make_particle_line(4, periodic=True)
    assert not g.border and {v.x for v in past(g)} == {"x0", "x2"}


def test_bad_state_token():
    with pytest.raises(StateTypeMismatch):
        bits("2")


def test_registry_rejects_unknown_rule():
    with pytest.raises(KeyError):
        build(InstanceConfig("no-such-rule"))


# -- particle dynamics ---------------------------------------------------------------

def test_single_firing_moves_the_particle(movers):
    g, h = movers
    new = h.at["x2"]
    assert new == Name(1, "x2") and h.states[new] == "01"
    assert h.states[h.at["x1"]] == "00"


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**16), st.sampled_from([(6, True), (8, True), (9, False), (7, False)]))
def test_movers_are_conserved(seed, shape):
    n, periodic = shape
    rng = random.Random(seed)
    odd = [c for c in range(1, n - 1 if not periodic else n, 2)]
    g = make_particle_line(n, rng.sample(odd, 1), rng.sample(odd, 1), periodic=periodic)
    total = mover_count(g)
    for _ in range(25):
        xs = sorted(internal_past_positions(g))
        if not xs:
            break
        g = apply(PARTICLE, rng.choice(xs), g)
        assert mover_count(g) == total


@pytest.mark.parametrize("cfg", [
    InstanceConfig("particle", 6, periodic=True, right=(1,), left=(3,)),
    InstanceConfig("particle", 9, right=(1,), left=(7,)),
    InstanceConfig("particle", 7, boundary="open", right=(3,), left=(5,)),
])
def test_past_vertices_hold_no_movers(cfg):
    rule, g = build(cfg)
    for _, h, _ in enumerate_diagram(rule, g, 10).items():
        assert all(h.states[v] == "00" for v in past(h) if v in h.internal)


def test_open_end_drops_arriving_movers():
    g = make_particle_line(5, left_movers=(1,), boundary="open")
    h = apply(PARTICLE, "x0", g)
    assert mover_count(h) == 0


def test_movers_pass_through_each_other():
    g = make_particle_line(11, right_movers=(3,), left_movers=(7,), boundary="open")
    h, _ = max_schedule(PARTICLE, g, 24)
    where = {d: int(x[1:]) for x, d in decode_particles(h)}
    assert where["right"] > where["left"]


def test_wall_line_freezes_after_the_collision():
    rule, g = build(InstanceConfig("particle", 9, right=(1,), left=(7,)))
    assert len(enumerate_diagram(rule, g, 20)) == 14


def test_rewrite_rejects_a_vertex_without_lattice_edges():
    g = make_particle_line(5)
    with pytest.raises(ShapeMismatch):
        PARTICLE.rewrite("x1", g)      # awaiting column, nothing leaves it


# -- CA ------------------------------------------------------------------------------

def test_truth_table_round_trip_and_checks():
    text = json.dumps(XOR.to_dict())
    assert TruthTable.from_json(text) == XOR
    assert XOR("0", "1") == "1" and XOR("1", "1") == "0"
    with pytest.raises(ValueError):
        TruthTable(("0", "1"), {("0", "0"): "0"})
    with pytest.raises(ValueError):
        TruthTable(("0",), {("0", "0"): "7"})


def test_ca_initial_pairs_adjacent_cells():
    g = make_ca_initial(XOR, "1000", periodic=True)
    got = [g.states[g.at[f"f{c}"]] for c in range(8)]
    assert got == ["1,0", "_,_", "0,0", "_,_", "0,0", "_,_", "0,1", "_,_"]


def test_ca_firing_writes_both_neighbours():
    g = make_ca_initial(XOR, "1000", periodic=True)
    h = apply(make_ca_rule(XOR), "f0", g)
    assert h.states[h.at["f0"]] == "_,_" and h.at["f0"].t == 1
    assert slots(h.states[h.at["f7"]]) == ("_", "1")
    assert slots(h.states[h.at["f1"]]) == ("1", "_")


def test_ca_empty_slot_disables_and_strict_variant_raises():
    rule = make_ca_rule(XOR)
    g = make_ca_initial(XOR, "1000", periodic=True)
    f0 = g.at["f0"]
    holed = PortGraph(g.internal, g.border, g.edges, {**g.states, f0: "1,_"})
    assert "f0" in internal_past_positions(holed) and "f0" not in enabled(rule, holed)
    assert apply(rule, "f0", holed) is holed
    local = induced_subgraph(holed, {"f7", "f0", "f1"})
    with pytest.raises(IncompleteState):
        strict_ca_rewrite(XOR, "f0", local)


def test_ca_neighbour_of_both_firings_gets_both_slots():
    rule = make_ca_rule(XOR)
    h = apply(rule, "f2", apply(rule, "f0", make_ca_initial(XOR, "1000", periodic=True)))
    assert h.states[h.at["f1"]] == "1,0" and "f1" in enabled(rule, h)


def test_singleton_alphabet_is_constant():
    one = TruthTable(("z",), {("z", "z"): "z"})
    rule = make_ca_rule(one)
    g = make_ca_initial(one, "zzzz", periodic=True)
    for _, h, _ in enumerate_diagram(rule, g, 6).items():
        assert all(s in {"z,z", "z,_", "_,z", "_,_"} for s in h.states.values())


# -- dilation ----------------------------------------------------------------------------

def test_red_firing_blocks_the_right_neighbour():
    g = make_dilation_line(9, boundary="wall")
    assert incoming_ports(g, g.at["x5"]) == {"a'", "b'"}
    h = apply(dilation_rule(), "x4", g)
    assert h.states[h.at["x4"]] == "green"
    assert incoming_ports(h, h.at["x5"]) == {"b'", "b''"}
    assert incoming_ports(h, h.at["x3"]) == {"a'"}
    assert Edge(Name(1, "x4"), "a", Name(0, "x5"), "b''") in h.edges


def test_colour_alternates():
    rule, g = dilation_rule(), make_dilation_line(9)
    colours = []
    for k in range(1, 40):
        h, _ = max_schedule(rule, g, k)
        v = h.at["x4"]
        if not colours or colours[-1][0] != v.t:
            colours.append((v.t, h.states[v]))
    states = [c for _, c in colours]
    assert states[0] == "red" and len(states) >= 3
    assert all(a != b for a, b in zip(states, states[1:]))


def test_colour_must_sit_on_a_past_column():
    with pytest.raises(BadIndex):
        make_dilation_line(9, coloured=3)


@pytest.mark.parametrize("policy", ["round-robin", "random:1", "random:2"])
def test_dilation_halves_the_right_side(policy):
    _, seq = max_schedule(dilation_rule(), make_dilation_line(9), 200, policy)
    left, right = count_retirements(seq, "x3"), count_retirements(seq, "x5")
    assert right > 0 and abs(left - 2 * right) <= 2


def test_uncoloured_line_is_symmetric():
    _, seq = max_schedule(dilation_rule(), make_dilation_line(9, coloured=-1), 200)
    assert abs(count_retirements(seq, "x3") - count_retirements(seq, "x5")) <= 1


def test_count_retirements_empty():
    assert count_retirements((), "x0") == 0


def test_nonportdec_keeps_ports():
    g, rule = counterexample_nonportdecreasing()
    h = apply(rule, "u", g)
    v = Name(0, "v")
    assert incoming_ports(g, v) == incoming_ports(h, v) == {"b"}
    assert g.states[v] != h.states[v]
