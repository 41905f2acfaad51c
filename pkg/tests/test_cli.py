import json

import pytest

from hopf12.cli import main, nichols_single, suite_nichols, suite_yd


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_fusion_single(capsys):
    code, out, _ = run(capsys, "fusion", "--i", "0", "--j", "1", "--k", "0", "--l", "5")
    assert code == 0
    assert json.loads(out)["data"]["decomposition"] == ["P1"]


def test_fusion_labels(capsys):
    code, out, _ = run(capsys, "fusion", "--left", "P0", "--right", "P0", "--compact")
    assert code == 0
    assert json.loads(out)["data"]["decomposition"] == ["P0", "P0", "P1", "P5"]


def test_nichols_preset(capsys):
    code, out, _ = run(capsys, "nichols", "--preset", "V_3_1")
    doc = json.loads(out)
    assert code == 0
    assert doc["data"]["total"] == 6 and doc["data"]["ranks"] == [1, 2, 2, 1]


def test_nichols_cap_is_undetermined_not_failed(capsys):
    code, out, err = run(capsys, "nichols", "--preset", "V_1_1", "--maxdeg", "5")
    doc = json.loads(out)
    assert code == 0
    assert doc["status"] == "undetermined"
    assert doc["data"]["finite"] == "undetermined at cap"
    assert "warning" in err


def test_nichols_infinite_label(capsys):
    code, out, _ = run(capsys, "nichols", "--preset", "V_2_3")
    doc = json.loads(out)
    assert code == 0 and doc["data"]["finite"] is False and doc["data"]["witnesses"]


def test_nichols_relations_file(tmp_path, capsys):
    good = tmp_path / "good.txt"
    good.write_text("# V_3_1\nv1^2\nv1*v2 + xi^-1*v2*v1\nv2^3\n")
    code, out, _ = run(capsys, "nichols", "--preset", "V_3_1", "--relations", str(good))
    assert code == 0
    bad = tmp_path / "bad.txt"
    bad.write_text("v1^2\nv2^3\n")
    code, out, _ = run(capsys, "nichols", "--preset", "V_3_1", "--relations", str(bad))
    assert code == 1
    assert json.loads(out)["status"] == "fail"


def test_usage_errors_exit_2(capsys):
    for argv in (["nichols", "--preset", "W_1"], ["frobnicate"], ["fusion", "--i", "0"],
                 ["lifting", "--j", "2"], ["fusion", "--i", "1", "--j", "3", "--k", "0", "--l", "1"]):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2
    capsys.readouterr()


def test_lifting_dump(tmp_path, capsys):
    path = tmp_path / "out.json"
    code, out, _ = run(capsys, "lifting", "--j", "1", "--mu", "1", "--dump", str(path))
    assert code == 0
    assert json.loads(out)["data"]["dim"] == 216
    doc = json.loads(path.read_text())
    assert doc["dim"] == 216 and len(doc["basis"]) == 216


def test_dump_is_deterministic(capsys):
    _, first, _ = run(capsys, "dump", "C")
    _, second, _ = run(capsys, "dump", "C")
    assert first == second and json.loads(first)["dim"] == 12


def test_json_is_stable_without_timing(capsys):
    _, a, _ = run(capsys, "class-ring", "--no-timing")
    _, b, _ = run(capsys, "class-ring", "--no-timing")
    assert a == b


def test_pretty_table(capsys):
    code, out, _ = run(capsys, "nichols", "--pretty")
    assert code == 0
    rows = {line.split()[0]: line.split()[1:] for line in out.splitlines() if line.startswith("  V_")}
    assert rows["V_1_1"] == ["36"] + "1 2 4 5 6 6 5 4 2 1".split()
    assert rows["V_3_5"] == ["6", "1", "2", "2", "1"]


def test_theta_flip_verdicts():
    cfgs = [{"theta": t, "maxdeg": 12, "exhaustive": False} for t in ("xi", "-xi")]
    a, b = (suite_nichols(c) for c in cfgs)
    assert a.data == b.data and a.checks == b.checks
    a, b = (suite_yd(c) for c in cfgs)
    assert a.checks == b.checks


def test_nichols_single_reports_presets():
    rep = nichols_single({"theta": "xi", "maxdeg": 12, "exhaustive": False}, "V_4_1")
    assert rep.status == "pass" and rep.data["total"] == 18
