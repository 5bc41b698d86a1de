import json

import pytest

from portdag.cli import main
from portdag.graph import to_json
from portdag.rules.particle import make_particle_line
from portdag.suite import PROPERTIES, SuiteConfig, parse_properties


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate(tmp_path, capsys, g8):
    good = tmp_path / "good.json"
    good.write_text(to_json(g8))
    code, out, _ = run(capsys, "validate", str(good))
    assert code == 0 and json.loads(out)["ok"]

    doc = json.loads(to_json(g8))
    doc["internal"].append({"t": 9, "x": "x0", "state": "s"})
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "validate", str(bad))
    assert code == 1
    assert "Unicity of positions" in {v["invariant"] for v in json.loads(out)["violations"]}


def test_validate_unreadable(capsys, tmp_path):
    assert run(capsys, "validate", str(tmp_path / "missing.json"))[0] == 2


def test_enumerate_writes_files(tmp_path, capsys):
    code, out, _ = run(capsys, "enumerate", "--rule", "particle", "--line", "9", "--right", "1",
                       "--left", "7", "--budget", "12", "--out", str(tmp_path))
    res = json.loads(out)
    assert code == 0 and res["cuts"] == 14
    index = json.loads((tmp_path / "index.json").read_text())
    assert index["count"] == 14 and (tmp_path / "background.dot").exists()


def test_enumerate_budget_guard(capsys):
    code, out, _ = run(capsys, "enumerate", "--rule", "particle", "--ring", "8", "--budget", "8",
                       "--max-cuts", "10")
    assert code == 1 and "error" in json.loads(out)


def test_check_passes_on_a_library_rule(capsys):
    code, out, err = run(capsys, "check", "--rule", "particle", "--ring", "6", "--right", "1",
                         "--budget", "6", "--trials", "10")
    res = json.loads(out)
    assert code == 0 and res["passed"]
    assert [r["property"] for r in res["reports"]] == list(PROPERTIES)
    assert err.count("PASS") == len(PROPERTIES)


def test_check_flags_counterexamples(capsys):
    code, out, _ = run(capsys, "check", "--rule", "cex-nonportdec", "--properties", "port-decreasing")
    assert code == 1
    code, out, _ = run(capsys, "check", "--rule", "cex-nonprivate", "--properties",
                       "privacy,consistency", "--budget", "4")
    res = json.loads(out)
    assert code == 1
    assert any(w["vertex"] == "0.w" for w in res["reports"][1]["witnesses"])
    assert any("w" in w["shared"] for w in res["reports"][0]["witnesses"])


def test_check_accepts_a_graph_file(tmp_path, capsys):
    path = tmp_path / "g.json"
    path.write_text(to_json(make_particle_line(6, right_movers=(1,), periodic=True)))
    code, out, _ = run(capsys, "check", "--rule", "particle", "--graph", str(path),
                       "--properties", "consistency", "--budget", "6")
    assert code == 0 and json.loads(out)["reports"][0]["cases"] > 0


@pytest.mark.parametrize("argv", [
    ["check", "--rule", "nope"],
    ["check", "--rule", "particle", "--properties", "beauty"],
    ["check", "--rule", "particle", "--line", "6", "--ring", "6"],
    ["check", "--rule", "particle", "--line", "9", "--right", "2"],
    ["check", "--rule", "particle", "--right", "one"],
    ["ca", "--width", "4"],
    ["ca", "--width", "4", "--steps", "2", "--config", "101"],
    ["ca", "--width", "4", "--steps", "2", "--corrupt", "garbage"],
    ["dilation", "--colored", "3"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_ca_command(capsys):
    code, out, _ = run(capsys, "ca", "--width", "8", "--periodic", "--steps", "3")
    res = json.loads(out)
    assert code == 0 and res["mismatches"] == 0 and res["budget"] == 6
    code, out, _ = run(capsys, "ca", "--width", "8", "--periodic", "--steps", "3", "--corrupt", "0,1=0")
    assert code == 1 and json.loads(out)["mismatches"] > 0
    code, out, _ = run(capsys, "ca", "--width", "6", "--steps", "0")
    assert code == 0 and json.loads(out)["cuts"] == 1


def test_ca_table_file(tmp_path, capsys):
    path = tmp_path / "t.json"
    path.write_text('{"alphabet":["0","1"],"map":{"0,0":"0","0,1":"1","1,0":"1","1,1":"1"}}')
    code, out, _ = run(capsys, "ca", "--table", str(path), "--width", "6", "--periodic",
                       "--random-config", "--seed", "4", "--budget", "6")
    assert code == 0 and len(json.loads(out)["config"]) == 6


def test_dilation_command(capsys):
    code, out, _ = run(capsys, "dilation")
    res = json.loads(out)
    assert code == 0 and res["firings"] == 200 and res["left"] == 2 * res["right"]
    code, out, _ = run(capsys, "dilation", "--no-colored")
    res = json.loads(out)
    assert res["left"] == res["right"]
    code, out, _ = run(capsys, "dilation", "--n", "0")
    assert json.loads(out)["firings"] == 0


def test_jobs_do_not_change_output(capsys, tmp_path):
    base = ["check", "--rule", "dilation", "--line", "6", "--right", "1", "--budget", "8",
            "--trials", "10"]
    a = run(capsys, *base, "--jobs", "1")[1]
    b = run(capsys, *base, "--jobs", "4")[1]
    assert a == b


def test_parse_properties():
    assert parse_properties("all") == list(PROPERTIES)
    assert parse_properties("privacy, privacy,monotony") == ["privacy", "monotony"]
    with pytest.raises(ValueError):
        parse_properties(" , ")
    assert SuiteConfig(budget=3).sequence_budget == 3
    assert SuiteConfig(budget=10).sequence_budget == 6
