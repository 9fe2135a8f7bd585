import csv
import io
import json
import subprocess
import sys

import pytest

from g2replab import cli

ZERO_POINT = json.dumps({"a": ["1", "0"], "b": ["1", "0"], "c": ["1", "0"], "angle": {"repar": ["0", "0", "1"]}})


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_selftest_hilbert_only(capsys):
    code, out, _ = run(capsys, "selftest", "--only", "hilbert")
    assert code == 0 and "1,2,11,31,94,222,516,1047" in out


def test_selftest_corrupted_table(capsys):
    code, out, _ = run(capsys, "selftest", "--only", "octonion", "--corrupt-table", "i,j")
    assert code == 1 and "(i,j)" in out


def test_selftest_full(capsys):
    code, out, _ = run(capsys, "selftest")
    assert code == 0, out


def test_usage_errors(capsys):
    assert run(capsys, "selftest", "--only", "nope")[0] == 2
    assert run(capsys, "selftest", "--corrupt-table", "i")[0] == 2
    assert run(capsys, "scan", "--p", "17")[0] == 2
    assert run(capsys, "scan", "--p", "12", "--mode", "sample")[0] == 2
    assert run(capsys, "scan", "--p", "5", "--limit", "-1")[0] == 2
    assert run(capsys, "hilbert", "--degree", "3")[0] == 2
    assert run(capsys)[0] == 2


def test_check_zero_point(capsys):
    code, out, _ = run(capsys, "check", "--point", ZERO_POINT)
    rep = json.loads(out)
    assert code == 0
    assert rep["charpoly_T"]["g1"] == "-5"
    assert rep["obstructions"]["verdict"] == "Blocked"
    assert 1 in rep["obstructions"]["failed_conditions"]
    assert rep["invariants"]["t"] == "0" and rep["invariants"]["u"] == "0"


def test_check_schema_error(capsys):
    bad = json.loads(ZERO_POINT)
    bad["a"][0] = "3//5"
    code, _, err = run(capsys, "check", "--point", json.dumps(bad))
    assert code == 2 and "/a/0" in err
    code, _, err = run(capsys, "check", "--point", "{not json")
    assert code == 2


def test_check_full_form_literal(capsys):
    pt = {"a": ["1", "0"], "b": ["1", "0"], "c": ["1", "0"], "angle": {"full": ["1", "0", "0", "0"]}}
    code, out, _ = run(capsys, "check", "--point", json.dumps(pt), "--p", "13")
    rep = json.loads(out)
    assert code == 0 and rep["obstructions"]["conditions"]["3"] is True
    assert not rep["obstructions"]["notes"]


def test_check_point_file(tmp_path, capsys):
    f = tmp_path / "pt.json"
    f.write_text(ZERO_POINT)
    code, out, _ = run(capsys, "check", "--point", str(f), "--p", "13", "--witness")
    rep = json.loads(out)
    assert code == 0 and rep["certificate"]["status"] == "NotSurjective"


def test_witness_exit_codes(capsys):
    assert run(capsys, "witness", "--point", ZERO_POINT, "--p", "13")[0] == 1
    assert run(capsys, "witness", "--point", ZERO_POINT)[0] == 2
    code, out, _ = run(capsys, "witness", "--point", ZERO_POINT, "--p", "13", "--budget", "0")
    assert code == 1 and json.loads(out)["status"] == "Inconclusive"


def test_scan_limit_zero(capsys):
    code, out, _ = run(capsys, "scan", "--p", "5", "--limit", "0")
    rep = json.loads(out)
    assert code == 0 and rep["total"] == 0 and rep["schema_version"] == "1"


def test_scan_p5_with_witness(tmp_path, capsys):
    csv_path = tmp_path / "scan.csv"
    code, out, _ = run(capsys, "scan", "--p", "5", "--witness", "--csv", str(csv_path))
    rep = json.loads(out)
    assert code == 0
    assert rep["total"] == 320 and sum(rep["verdicts"].values()) == 320
    assert rep["verdicts"].get("Surjective", 0) == 0 and rep["anomalies"] == []
    rows = list(csv.DictReader(io.StringIO(csv_path.read_text())))
    assert len(rows) == 320 and tuple(rows[0]) == cli.CSV_COLUMNS
    # only Surjective verdicts are witnessed; every condition-(1) point has its invariant line
    assert all(r["witness"] == "" and r["verdict"] == "Blocked" for r in rows)
    assert rep["witness"] == {"condition1_line_found": 320}


def test_scan_deterministic_and_partitioned(capsys):
    reps = []
    for workers in ("1", "1", "3"):
        code, out, _ = run(capsys, "scan", "--p", "7", "--limit", "60", "--seed", "4", "--workers", workers)
        assert code == 0
        reps.append(json.loads(out))
    assert reps[0]["digest"] == reps[1]["digest"] == reps[2]["digest"]
    a, b = (dict(r) for r in reps[:2])
    a.pop("wall_time_s"), b.pop("wall_time_s")
    assert a == b


def test_scan_sample_mode(capsys):
    args = ("scan", "--p", "29", "--mode", "sample", "--limit", "12", "--seed", "2")
    r1, r2 = (json.loads(run(capsys, *args)[1]) for _ in range(2))
    assert r1["digest"] == r2["digest"] and r1["total"] == 12


def test_scan_p11_condition7_pairs(capsys):
    code, out, _ = run(capsys, "scan", "--p", "11", "--workers", "4")
    rep = json.loads(out)
    pairs = {tuple(int(v) for v in p) for p in rep["condition7_pairs"]}
    from g2replab.obstructions import THEOREM_P11_PAIRS
    assert pairs and pairs <= set(THEOREM_P11_PAIRS)


def test_tables_and_hilbert(capsys):
    code, out, _ = run(capsys, "tables", "--verify")
    # the J1 order-11 row already divides (X-1)^7, so verification fails on exactly that row
    assert code == 1 and "44/45 rows verified" in out
    assert run(capsys, "tables")[0] == 0
    code, out, _ = run(capsys, "hilbert", "--degree", "14")
    assert code == 0 and "1,2,11,31,94,222,516,1047" in out and "1,2,29,95,390,1056,2882,6525" in out


def test_fibers(capsys):
    code, out, _ = run(capsys, "fibers", "--p", "13")
    rep = json.loads(out)
    assert code == 0 and rep["nondegenerate_share"] == {"12": "100.0%"}


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "g2replab", "--version"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip()
