import json
import os
import subprocess
import sys

import pytest

from mumford.cli import main, to_csv, to_table

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
SCEN = os.path.join(ROOT, "scenarios")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def scen(name):
    return os.path.join(SCEN, name)


def test_h2(capsys):
    code, out, _ = run(capsys, "h2", "--scenario", scen("h2_c2_z2.json"))
    assert code == 0
    data = json.loads(out)
    assert data["order"] == 2 and data["verdict"]


def test_homs(capsys):
    code, out, _ = run(capsys, "homs", "--scenario", scen("homs_s3_g2.json"))
    data = json.loads(out)
    assert code == 0
    assert data["enumerated"] == data["convolution"] == 486


@pytest.mark.parametrize("name", [
    "cover_s3_g2.json", "extensions_s3_weyl_b3.json", "invariants_swap_g2.json",
    "fiber_z4_over_z2.json", "fiber_z4_inversion_g2.json", "orbit_s3.json",
    "dihedral_n5_g2.json", "weyl_b2_g1.json", "verify_quick.json",
])
def test_scenarios_pass(capsys, name):
    cmd = {"verify_quick.json": "verify-all"}.get(name, name.split("_")[0])
    code, out, err = run(capsys, cmd, "--scenario", scen(name))
    assert code == 0, err
    assert json.loads(out)["verdict"]


def test_failed_verdict_exit(capsys):
    code, out, _ = run(capsys, "weyl", "--scenario", scen("weyl_d3_g2.json"))
    assert code == 1
    assert json.loads(out)["h1_eta"] == 16


def test_parse_errors(capsys, tmp_path):
    empty = tmp_path / "empty.json"
    empty.write_text("")
    assert run(capsys, "h2", "--scenario", str(empty))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"genus": -1}')
    code, _, err = run(capsys, "h2", "--scenario", str(bad))
    assert code == 2 and "genus" in err
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    assert run(capsys, "h2", "--scenario", str(broken))[0] == 2
    assert run(capsys, "h2")[0] == 2
    wrong = tmp_path / "wrong.json"
    wrong.write_text('{"W": {"group": "cyclic", "n": 2}, "T": [2], "N": {"class": [0, 1]}, "cover": {"index": 0}}')
    assert run(capsys, "fiber", "--scenario", str(wrong))[0] == 2


def test_budget_exit(capsys):
    code, _, err = run(capsys, "homs", "--scenario", scen("homs_s3_g2.json"), "--budget", "10")
    assert code == 3 and "budget" in err


def test_formats(capsys):
    code, out, _ = run(capsys, "homs", "--scenario", scen("homs_s3_g2.json"), "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].split(",")[:3] == ["genus", "order", "enumerated"]
    assert lines[1].split(",")[2] == "486"
    code, out, _ = run(capsys, "homs", "--scenario", scen("homs_s3_g2.json"), "--format", "table")
    assert "486" in out and out.splitlines()[1].startswith("-")


def test_out_dir(capsys, tmp_path):
    code, out, _ = run(capsys, "h2", "--scenario", scen("h2_c2_z2.json"), "--out", str(tmp_path))
    assert code == 0 and out == ""
    report = json.loads((tmp_path / "h2.json").read_text())
    meta = json.loads((tmp_path / "h2.meta.json").read_text())
    assert "command" not in report
    assert meta["command"] == "h2" and meta["workers"] == 1


def test_repeatable(capsys):
    a = run(capsys, "cover", "--scenario", scen("cover_s3_g2.json"))[1]
    b = run(capsys, "cover", "--scenario", scen("cover_s3_g2.json"))[1]
    assert a == b


def test_output_helpers():
    rows = [{"a": 1, "b": "x"}, {"a": 22, "b": "y"}]
    assert to_csv(rows) == "a,b\n1,x\n22,y\n"
    assert to_table(rows).splitlines()[0] == "a   b"
    assert to_table([]) == ""


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "mumford", "h2", "--scenario", scen("h2_c2_z2.json"),
                           "--format", "table"], capture_output=True, text=True, cwd=ROOT)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0].split() == ["order", "cocycles", "coboundaries"]
