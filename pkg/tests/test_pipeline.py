import os

import pytest

from wheelramsey.certificates import Catalog, reverify
from wheelramsey.cli import main
from wheelramsey.formats import sha256_file
from wheelramsey.pipeline import ConfigError, load_config, run_pipeline


def _snapshot(root):
    """Every artifact except the manifest, which holds the timestamp."""
    return {
        p.relative_to(root).as_posix(): p.read_bytes()
        for p in sorted(root.rglob("*"))
        if p.is_file() and p.name != "manifest.json"
    }


@pytest.fixture(scope="module")
def two_color_run(tmp_path_factory):
    out = tmp_path_factory.mktemp("two-color")
    result = run_pipeline(load_config("two-color-lower"), out, threads=1)
    return result, out


def test_two_color_pipeline_passes(two_color_run):
    result, out = two_color_run
    assert result.exit_status == 0, result.errors
    certs = Catalog(out).certificates()
    assert [c.id for c in certs] == ["even10", "even8", "odd7", "odd9"]
    assert all(c.status == "pass" for c in certs)
    assert (out / "reports" / "two-color.csv").read_text().startswith("k,n,lower,lower_tag")
    assert [line.split(":")[0] for line in result.lines][:4] == [
        "construct odd7", "construct even8", "construct odd9", "construct even10"]


def test_certificates_reverify_from_the_file_alone(two_color_run):
    _, out = two_color_run
    for cert_path in sorted((out / "certificates").glob("*.json")):
        cert, report = reverify(cert_path)
        assert report.passed and cert.sha256 == sha256_file(out / cert.coloring)


def test_catalog_cli(two_color_run, capsys):
    _, out = two_color_run
    assert main(["--output-dir", str(out), "catalog", "list"]) == 0
    listing = capsys.readouterr().out.splitlines()
    assert len(listing) == 4 and all("\tPASS\t" in line for line in listing)
    assert main(["--output-dir", str(out), "catalog", "show", "nope"]) == 2
    capsys.readouterr()
    assert main(["--output-dir", str(out), "catalog", "gc"]) == 0
    assert capsys.readouterr().out.strip() == "gc: removed 0 file(s)"


def test_gc_removes_only_strays(tmp_path):
    result = run_pipeline(load_config("iterated-blowup"), tmp_path, threads=1)
    assert result.exit_status == 0
    stray = tmp_path / "colorings" / "stray.json"
    stray.write_bytes((tmp_path / "colorings" / "k3n7.json").read_bytes())
    assert Catalog(tmp_path).gc() == [stray]
    assert (tmp_path / "reports" / "k-color.csv").exists()
    cert = Catalog(tmp_path).load("k3n7")
    assert cert.claim["statement"] == "no monochromatic W7, k=3"
    assert cert.blockspec["notes"]["family"] == "iterated-blowup"


def test_output_dir_env_override(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("WHEELRAMSEY_OUTPUT_DIR", str(tmp_path / "env-out"))
    cfg = tmp_path / "tiny.ini"
    cfg.write_text("[pipeline]\nname = tiny\n\n[construct p]\nfamily = paley5\n\n"
                   "[verify p]\npattern = triangle\n")
    assert main(["pipeline", str(cfg)]) == 0
    assert (tmp_path / "env-out" / "certificates" / "p.json").exists()


def _external_config(tmp_path, digest):
    src = tmp_path / "odd7.json"
    assert main(["construct", "--family", "odd-lower", "--n", "7", "-o", str(src)]) == 0
    cfg = tmp_path / "ext.ini"
    cfg.write_text(f"[pipeline]\nname = ext\n\n[verify ext7]\ncoloring = odd7.json\nn = 7\n"
                   f"sha256 = {digest or sha256_file(src)}\n")
    return cfg


def test_external_coloring_with_hash(tmp_path, capsys):
    cfg = _external_config(tmp_path, None)
    assert main(["--output-dir", str(tmp_path / "out"), "pipeline", str(cfg)]) == 0


def test_hash_mismatch_exits_3(tmp_path, capsys):
    cfg = _external_config(tmp_path, "0" * 64)
    capsys.readouterr()
    assert main(["--output-dir", str(tmp_path / "out"), "pipeline", str(cfg)]) == 3
    assert "ERROR: HASH_MISMATCH" in capsys.readouterr().out


def test_failing_claim_exits_1(tmp_path):
    cfg = tmp_path / "bad.ini"
    cfg.write_text("[pipeline]\nname = bad\n\n[construct e8]\nfamily = even-lower\nn = 8\n\n"
                   "[verify e8]\nn = 6\n")
    result = run_pipeline(load_config(cfg), tmp_path / "out", threads=1)
    assert result.exit_status == 1
    assert Catalog(tmp_path / "out").load("e8").status == "fail"


@pytest.mark.parametrize("text", [
    "[pipeline]\nname = x\n\n[construct x]\nfamily = even-lower\n",
    "[pipeline]\nname = x\n\n[explode x]\n",
    "[pipeline]\nname = x\n\n[verify x]\ncoloring = nowhere\nn = 7\n",
])
def test_bad_configs(tmp_path, text):
    cfg = tmp_path / "bad.ini"
    cfg.write_text(text)
    try:
        result = run_pipeline(load_config(cfg), tmp_path / "out", threads=1)
    except ConfigError:
        return
    assert result.exit_status == 2


def test_crosscheck_step(tmp_path):
    cfg = tmp_path / "cc.ini"
    cfg.write_text("[pipeline]\nname = cc\nseed = 5\n\n[crosscheck wheels]\nsamples = 5\norder = 8\nn = 5:6\n")
    result = run_pipeline(load_config(cfg), tmp_path / "out", threads=1)
    assert result.exit_status == 0
    assert "mismatches=0" in (tmp_path / "out" / "reports" / "wheels.txt").read_text()


@pytest.mark.parametrize("name", ["two-color-lower", "iterated-blowup"])
def test_reruns_are_byte_identical_across_thread_counts(tmp_path, name):
    snaps = []
    for i, threads in enumerate([1, 1, 4, os.cpu_count() or 1]):
        out = tmp_path / f"run{i}"
        assert run_pipeline(load_config(name, seed=0), out, threads=threads).exit_status == 0
        snaps.append(_snapshot(out))
    assert all(s == snaps[0] for s in snaps[1:])
    assert any(k.startswith("certificates/") for k in snaps[0])
