from __future__ import annotations

import json
from pathlib import Path

import jsonschema
import pytest

import ratlie
from ratlie.cli import main

SCHEMA = json.loads((Path(ratlie.__file__).parent / "report.schema.json").read_text(encoding="utf-8"))

TABLE1_GOLDEN = "wl\tdim\n2\t1\n3\t1\n4\t1\n5\t2\n6\t3\n7\t3\n8\t3\n9\t4\n10\t5\n"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_table1_golden(capsys):
    code, out, err = run(capsys, "table1", "--max-wl", "10")
    assert code == 0
    assert out == TABLE1_GOLDEN
    assert "FAIL" not in err


def test_table1_smallest(capsys):
    code, out, _ = run(capsys, "table1", "--max-wl", "2")
    assert code == 0 and out == "wl\tdim\n2\t1\n"


@pytest.mark.parametrize("wl", ["1", "15"])
def test_table1_range(capsys, wl):
    code, _, err = run(capsys, "table1", "--max-wl", wl)
    assert code == 2 and "2..14" in err


def test_table2_row9_and_symmetry(capsys):
    code, out, _ = run(capsys, "table2", "--max-wl", "9")
    assert code == 0
    rows = [list(map(int, line.split("\t"))) for line in out.splitlines()[1:]]
    assert rows[8] == [9, 0, 1, 4, 9, 14, 14, 9, 4, 1, 56]
    assert rows[0] == [1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 2]
    for r in rows:
        j, cells = r[0], r[1:-1]
        assert all(cells[i] == cells[j - i] for i in range(j + 1) if i < 9 and j - i < 9)


def test_table2_range(capsys):
    assert run(capsys, "table2", "--max-wl", "11")[0] == 2


def test_tsv_is_lf_and_integer(capsys, tmp_path):
    out = tmp_path / "t.tsv"
    assert main(["table2", "--max-wl", "5", "--out", str(out)]) == 0
    raw = out.read_bytes()
    assert b"\r" not in raw and raw.endswith(b"\n")
    for line in raw.decode().splitlines()[1:]:
        [int(c) for c in line.split("\t")]


@pytest.mark.parametrize("argv", [
    ["table1", "--max-wl", "6"],
    ["table2", "--max-wl", "6"],
    ["dual-example"],
    ["ce-check", "--preset", "wedge-two-spheres"],
    ["counterexample", "--deg-a", "3", "--deg-b", "5", "--count", "2", "--cap", "25", "--verify"],
])
def test_json_matches_schema_and_is_deterministic(tmp_path, argv):
    outs = []
    for k in range(2):
        path = tmp_path / f"r{k}.json"
        assert main(argv + ["--format", "json", "--no-timing", "--out", str(path)]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
    doc = json.loads(outs[0])
    jsonschema.validate(doc, SCHEMA)
    assert doc["assertions"] and all(a["pass"] for a in doc["assertions"])


def test_counterexample_usage_error(capsys):
    code, _, err = run(capsys, "counterexample", "--deg-a", "4", "--deg-b", "3")
    assert code == 2 and "odd" in err


def test_counterexample_slow_guard(capsys):
    code, _, err = run(capsys, "counterexample", "--cap", "40")
    assert code == 2 and "--allow-slow" in err


def test_counterexample_lists_differentials(tmp_path):
    path = tmp_path / "c.json"
    main(["counterexample", "--count", "2", "--cap", "20", "--format", "json", "--out", str(path)])
    doc = json.loads(path.read_text())
    assert doc["details"]["differentials"] == {"x1": "[b,[a,b]]", "x3": "[b,[a,[a,[a,b]]]]"}
    assert doc["tables"][0]["rows"] == [[0, 3], [0, 3], [1, 10], [3, 16]]


def test_counterexample_failing_assertion_exit_status(capsys):
    # with x1 and x3 present the Lie homology has a class in degree 19
    # that the quotient by the ideal does not see
    code, _, err = run(capsys, "counterexample", "--count", "2", "--cap", "20", "--verify")
    assert code == 1
    assert "FAIL: Lie homology equals the quotient" in err
    assert "PASS: spherical homology has total dimension 2" in err


def test_dual_example_reports_degree_12(tmp_path):
    path = tmp_path / "d.json"
    assert main(["dual-example", "--format", "json", "--out", str(path)]) == 0
    doc = json.loads(path.read_text())
    assert len(doc["details"]["degree_12_classes"]) >= 1


def test_dual_example_generalised(capsys):
    code, out, _ = run(capsys, "dual-example", "--deg-a", "5", "--count", "2", "--cap", "20")
    assert code == 0
    gens = out.split("\n\n")[1].splitlines()[1:]
    assert [int(r.split("\t")[1]) for r in gens] == [5, 4, 8, 12]


@pytest.mark.parametrize("preset", ["sphere-odd", "wedge-two-spheres", "counterexample-default"])
def test_ce_presets(capsys, preset):
    assert run(capsys, "ce-check", "--preset", preset)[0] == 0


def test_sphere_odd_dims(capsys):
    _, out, _ = run(capsys, "ce-check", "--preset", "sphere-odd", "--cap", "8")
    rows = [list(map(int, l.split("\t"))) for l in out.splitlines()[1:]]
    assert {r[0]: r[1] for r in rows if r[1]} == {0: 1, 4: 1}


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# table run\nmax-wl = 3\n", encoding="utf-8")
    code, out, _ = run(capsys, "table1", "--config", str(cfg))
    assert code == 0 and out == "wl\tdim\n2\t1\n3\t1\n"
    # flags override the file
    code, out, _ = run(capsys, "table1", "--config", str(cfg), "--max-wl", "2")
    assert out == "wl\tdim\n2\t1\n"


def test_bad_config_key(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("colour=red\n", encoding="utf-8")
    assert run(capsys, "table1", "--config", str(cfg))[0] == 2


def test_unknown_preset_is_usage_error():
    with pytest.raises(SystemExit) as e:
        main(["ce-check", "--preset", "torus"])
    assert e.value.code == 2
