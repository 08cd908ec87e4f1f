"""End-to-end command line behavior, including exit codes and file round trips."""

import csv
import io
import json

from kneser_lab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_bound_text(capsys):
    code, out, _ = run(capsys, "bound", "6", "2", "3")
    assert code == 0
    assert "m=5 s=2" in out


def test_bound_json(capsys):
    code, out, _ = run(capsys, "--format", "json", "bound", "6", "2", "3")
    assert code == 0
    doc = json.loads(out)
    assert doc == {"n": 6, "k": 2, "r": 3, "m": 5, "s": 2, "n_minus_s_plus_1": 5}


def test_bound_csv(capsys):
    code, out, _ = run(capsys, "--format", "csv", "bound", "5", "2", "2")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows[0]["m"] == "3" and rows[0]["s"] == "3"


def test_bound_inadmissible_exits_2(capsys):
    code, _, err = run(capsys, "bound", "2", "2", "3")
    assert code == 2
    assert "inadmissible" in err


def test_bad_params_exit_2(capsys):
    code, _, err = run(capsys, "bound", "2", "3", "2")  # k > n
    assert code == 2
    assert "error" in err


def test_construct_verify_roundtrip(tmp_path, capsys):
    path = tmp_path / "partition.json"
    code, out, _ = run(capsys, "construct", "5", "2", "2", "-o", str(path))
    assert code == 0
    assert "3 families" in out
    code, out, _ = run(capsys, "verify", str(path))
    assert code == 0
    assert out.startswith("ok")


def test_verify_catches_tampering(tmp_path, capsys):
    path = tmp_path / "partition.json"
    run(capsys, "construct", "5", "2", "2", "-o", str(path))
    doc = json.loads(path.read_text())
    doc["families"][0].pop()  # drop one subset: coverage now fails
    path.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "verify", str(path))
    assert code == 1
    assert "FAILED" in out


def test_verify_malformed_exits_2(tmp_path, capsys):
    path = tmp_path / "junk.json"
    path.write_text(json.dumps({"format": "kneser-lab/1"}))
    code, _, err = run(capsys, "verify", str(path))
    assert code == 2
    assert "error" in err


def test_verify_missing_file_exits_2(tmp_path, capsys):
    code, _, err = run(capsys, "verify", str(tmp_path / "absent.json"))
    assert code == 2


def test_solve_exact(capsys):
    code, out, _ = run(capsys, "solve", "5", "2", "2")
    assert code == 0
    assert "EXACT value=3" in out


def test_solve_writes_result_file(tmp_path, capsys):
    path = tmp_path / "result.json"
    code, _, _ = run(capsys, "solve", "6", "2", "3", "-o", str(path))
    assert code == 0
    doc = json.loads(path.read_text())
    assert doc["status"] == "EXACT" and doc["upper"] == 5
    assert doc["certificate"]["format"] == "kneser-lab/1"


def test_solve_timeout_exits_3(capsys):
    code, out, _ = run(capsys, "solve", "7", "2", "2", "--max-nodes", "1")
    assert code == 3
    assert "TIMEOUT" in out


def test_chi_plain(capsys):
    code, out, _ = run(capsys, "chi", "6", "2", "3")
    assert code == 0
    assert "EXACT value=2" in out


def test_chi_stable(capsys):
    code, out, _ = run(capsys, "chi", "6", "2", "2", "--stable", "2")
    assert code == 0
    assert "EXACT value=4" in out


def test_chi_parts(capsys):
    code, out, _ = run(capsys, "chi", "6", "2", "3", "--parts", "1,2/3,4/5,6")
    assert code == 0
    assert "EXACT value=2" in out


def test_chi_bad_parts_exit_2(capsys):
    code, _, err = run(capsys, "chi", "6", "2", "3", "--parts", "1,2/xx")
    assert code == 2
    code, _, err = run(capsys, "chi", "6", "2", "3", "--parts", "1,2/3,4")
    assert code == 2  # blocks must cover the ground set


def test_ground_cap_exits_4(capsys):
    code, _, err = run(capsys, "chi", "70", "2", "2")
    assert code == 4
    assert "error" in err


def test_blowup_pipeline(tmp_path, capsys):
    src = tmp_path / "partition.json"
    out_path = tmp_path / "coloring.json"
    run(capsys, "construct", "4", "2", "3", "-o", str(src))
    code, out, _ = run(capsys, "blowup", str(src), "-o", str(out_path))
    assert code == 0
    assert "3 colors on 24 vertices" in out
    assert "stable embedding ok" in out
    code, out, _ = run(capsys, "verify", str(out_path))
    assert code == 0
    assert out.startswith("ok")


def test_blowup_rejects_coloring_input(tmp_path, capsys):
    src = tmp_path / "partition.json"
    col = tmp_path / "coloring.json"
    run(capsys, "construct", "4", "2", "3", "-o", str(src))
    run(capsys, "blowup", str(src), "-o", str(col))
    code, _, err = run(capsys, "blowup", str(col))
    assert code == 2
    assert "partition certificate" in err


def test_table_default_all_agree(capsys):
    code, out, _ = run(capsys, "table")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 12
    assert all(row["agree"] == "True" for row in rows)
    assert all(
        row["tight_bound"] == row["solver_value"] == row["construction_families"]
        for row in rows
    )


def test_table_json_explicit_range(capsys):
    code, out, _ = run(
        capsys, "--format", "json", "table", "--r", "2", "--k", "2", "--n", "4..6"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["all_agree"] is True
    assert [row["n"] for row in doc["rows"]] == [4, 5, 6]
    assert [row["tight_bound"] for row in doc["rows"]] == [2, 3, 4]


def test_table_bad_range_exits_2(capsys):
    code, _, err = run(capsys, "table", "--r", "x")
    assert code == 2


def test_repeat_invocations_identical(tmp_path, capsys):
    _, first, _ = run(capsys, "bound", "9", "3", "2")
    _, second, _ = run(capsys, "bound", "9", "3", "2")
    assert first == second
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "construct", "6", "2", "3", "-o", str(a))
    run(capsys, "construct", "6", "2", "3", "-o", str(b))
    assert a.read_bytes() == b.read_bytes()
