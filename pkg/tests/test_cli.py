import csv
import io
import json
import subprocess
import sys

import pytest

from wheelramsey.cli import main
from wheelramsey.formats import from_graph6, read_coloring


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_construct_and_verify_pass(tmp_path, capsys):
    path = tmp_path / "even8.json"
    code, out, _ = run(capsys, "construct", "--family", "even-lower", "--n", 8, "-o", path, "--graph6-color", 0)
    assert code == 0 and "order=21" in out
    assert (tmp_path / "even8.blocks.json").exists()
    g = from_graph6((tmp_path / "even8.c0.g6").read_bytes())
    assert g == read_coloring(path).color_class(0)
    code, out, _ = run(capsys, "verify", path, "--n", 8)
    assert code == 0
    assert out.strip().splitlines()[-1].startswith("RESULT: PASS pattern=wheel(8) order=21")


def test_verify_fail_exit_code_and_formats(tmp_path, capsys):
    path = tmp_path / "even8.json"
    run(capsys, "construct", "--family", "even-lower", "--n", 8, "-o", path)
    code, out, _ = run(capsys, "--format", "json-lines", "verify", path, "--n", 6)
    assert code == 1
    lines = [json.loads(x) for x in out.splitlines()]
    assert lines[-1]["status"] == "FAIL"
    code, out, _ = run(capsys, "--format", "csv", "verify", path, "--n", 6, "--colors", "1")
    assert code == 1 and out.splitlines()[0] == "color,absent,witness,centers_scanned"
    assert "1 2 3 4 5" in out


def test_verify_pattern_and_certificate(tmp_path, capsys):
    path = tmp_path / "rook.json"
    run(capsys, "construct", "--family", "rook9", "-o", path)
    cert = tmp_path / "certs" / "rook.json"
    code, out, _ = run(capsys, "verify", path, "--pattern", "k4-", "--certificate", cert)
    assert code == 0 and "RESULT: PASS pattern=k4-" in out
    code, out, _ = run(capsys, "verify", cert)
    assert code == 0 and "certificate rook" in out
    code, _, _ = run(capsys, "verify", path, "--pattern", "triangle")
    assert code == 1


def test_certificate_integrity_error(tmp_path, capsys):
    path = tmp_path / "odd7.json"
    run(capsys, "construct", "--family", "odd-lower", "--n", 7, "-o", path)
    cert = tmp_path / "odd7.cert.json"
    run(capsys, "verify", path, "--n", 7, "--certificate", cert)
    data = path.read_bytes().replace(b"[1,", b"[0,", 1)
    path.write_bytes(data)
    code, out, _ = run(capsys, "verify", cert)
    assert code == 3 and out.startswith("ERROR: HASH_MISMATCH")


def test_analyze_petersen(tmp_path, capsys):
    g6 = tmp_path / "petersen.g6"
    g6.write_bytes(b"IheA@GUAo\n")
    code, out, _ = run(capsys, "analyze", g6)
    assert code == 0
    assert "girth: 5" in out and "circumference: 9" in out and "missing_lengths: [7]" in out
    code, out, _ = run(capsys, "--format", "json-lines", "analyze", g6, "--girth")
    assert json.loads(out) == {"order": 10, "edges": 15, "min_degree": 3, "girth": 5}


def test_analyze_large_color_class_uses_budget(tmp_path, capsys):
    path = tmp_path / "k3n8.json"
    run(capsys, "construct", "--family", "iterated-blowup", "--k", 3, "--n", 8, "-o", path)
    code, out, _ = run(capsys, "--format", "json-lines", "analyze", path, "--color", 0, "--circumference")
    res = json.loads(out)
    # beyond the exact range the budgeted search only certifies a lower bound
    assert code == 0 and res["order"] == 63 and 21 <= res["circumference"] <= 63
    assert res["circumference_bound_only"] is (res["circumference"] < 63)
    code, out, _ = run(capsys, "--format", "json-lines", "analyze", path, "--color", 2, "--circumference")
    assert json.loads(out)["circumference"] == 7


def test_bounds_outputs(capsys):
    code, out, _ = run(capsys, "--format", "csv", "bounds", "--k", "2:3", "--n-range", "7:8")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 4
    assert list(rows[0]) == ["k", "n", "lower", "lower_tag", "upper", "upper_tag", "notes"]
    assert rows[3]["upper"] == "13040"
    code, out, _ = run(capsys, "bounds", "--n", 8)
    assert "22 <= R <= 42" in out
    code, out, _ = run(capsys, "bounds", "--n", 5, "--advisory", "--table")
    assert code == 0 and "19" in out and "advisory" in out
    code, _, err = run(capsys, "bounds", "--n", 5)
    assert code == 2 and "advisory" in err


def test_oracle_subcommands(tmp_path, capsys):
    code, out, _ = run(capsys, "oracle", "cycles", "--complete", 5)
    assert out.strip() == "C3:10 C4:15 C5:12"
    code, out, _ = run(capsys, "oracle", "patterns", "--all-colorings", 6)
    assert out.strip() == "K6: 0 of 32768 2-colorings avoid a monochromatic triangle"
    code, out, _ = run(capsys, "oracle", "patterns", "--all-colorings", 5)
    assert "K5: 12 of 1024" in out
    path = tmp_path / "p5.json"
    run(capsys, "construct", "--family", "paley5", "-o", path)
    code, out, _ = run(capsys, "oracle", "patterns", "--coloring", path, "--pattern", "triangle")
    assert out.splitlines() == ["color 0: triangle copies=0", "color 1: triangle copies=0"]
    code, out, _ = run(capsys, "oracle", "wheels", "--complete", 6, "--n", 5)
    assert out.strip() == "color 0: W5 copies=90"


def test_usage_errors(tmp_path, capsys):
    assert run(capsys, "verify", tmp_path / "missing.json", "--n", 7)[0] == 2
    assert run(capsys, "construct", "--family", "even-lower", "--n", 7, "-o", tmp_path / "x.json")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["bounds", "--bogus"])
    assert exc.value.code == 2


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "wheelramsey", "bounds", "--n", "7"],
                         capture_output=True, text=True, check=True)
    assert "14 <= R <= 28" in out.stdout
