from math import comb

import pytest

from portdag.ca_oracle import compare, decode, evolve
from portdag.diagrams import enumerate_diagram
from portdag.errors import EmptyConfig, LayoutMismatch
from portdag.graph import Name
from portdag.rules.ca import XOR, TruthTable, make_ca_initial, make_ca_rule

AND = TruthTable.from_function(("0", "1"), lambda a, b: str(int(a) & int(b)))


def test_xor_impulse_is_pascal_mod_two():
    # row t, cell k of the impulse response is C(t, k) mod 2 while the ring is not yet wrapped
    W, T = 16, 10
    conf = evolve(XOR, ["1"] + ["0"] * (W - 1), T)
    for t in range(T + 1):
        for k in range(W):
            assert conf.cell(t, k) == str(comb(t, k) % 2)


def test_open_line_leaves_the_cone_undefined():
    conf = evolve(XOR, "1011", 3, periodic=False)
    assert conf.rows[1] == [None, "1", "1", "0"]
    assert conf.rows[3][:3] == [None, None, None]
    assert conf.cell(0, 9) is None and conf.cell(9, 0) is None


def test_ring_wraps():
    conf = evolve(AND, "1101", 1)
    assert conf.rows[1] == ["1", "1", "0", "0"]
    assert conf.cell(1, -1) == conf.cell(1, 3)


def test_evolve_input_checks():
    with pytest.raises(EmptyConfig):
        evolve(XOR, "1", 2)
    with pytest.raises(ValueError):
        evolve(XOR, "10", -1)


@pytest.mark.parametrize("name, periodic, layer, cell", [
    (Name(0, "f0"), True, 0, 0),
    (Name(0, "f1"), True, 1, 1),
    (Name(1, "f0"), True, 2, 1),
    (Name(0, "f2"), False, 0, 0),
    (Name(1, "f3"), False, 3, 2),
])
def test_decode(name, periodic, layer, cell):
    assert decode(name, periodic, 4) == (layer, cell)


def test_decode_rejects_foreign_names():
    with pytest.raises(LayoutMismatch):
        decode(Name(0, "x3"), True, 4)


@pytest.mark.parametrize("table", [XOR, AND])
@pytest.mark.parametrize("periodic", [True, False])
def test_simulation_matches_oracle(table, periodic):
    config = "10110010"
    ds = enumerate_diagram(make_ca_rule(table), make_ca_initial(table, config, periodic), 6)
    rep = compare(ds, table, config, periodic)
    assert rep.passed, rep.witnesses[:3]
    assert rep.cases > 0 and rep.stats["layers"] >= 2


def test_corrupted_simulation_is_located():
    bad = XOR.with_entry("0", "1", "0")
    config = "10000000"
    ds = enumerate_diagram(make_ca_rule(bad), make_ca_initial(bad, config, True), 6)
    rep = compare(ds, XOR, config, True)
    assert not rep.passed
    first = sorted(rep.witnesses, key=lambda w: (w["layer"], w["cell"]))[0]
    assert first["layer"] == 1 and first["got"] == "0" and first["expected"] == "1"
