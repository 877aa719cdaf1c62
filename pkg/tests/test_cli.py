"""Command-line interface: exit codes, JSON stability, manifests."""

import json
import subprocess
import sys

import pytest


def run_cli(*args, cwd=None):
    return subprocess.run(
        [sys.executable, "-m", "ssetkit.cli", *args],
        capture_output=True, text=True, cwd=cwd,
    )


def test_space_builtin_summaries():
    r = run_cli("space", "horn", "2", "1")
    assert r.returncode == 0
    assert "(3, 2)" in r.stdout
    r = run_cli("space", "circle")
    assert r.returncode == 0
    assert "(1, 1)" in r.stdout


def test_space_json_round_trips(tmp_path):
    r = run_cli("space", "boundary", "2", "--json")
    assert r.returncode == 0
    rec = json.loads(r.stdout)
    assert len(rec["cells"][0]) == 3 and len(rec["cells"][1]) == 3
    # a serialized space is accepted back as an input file
    f = tmp_path / "b2.json"
    f.write_text(r.stdout)
    r2 = run_cli("homology", str(f), "--top", "1", "--json")
    assert r2.returncode == 0
    table = json.loads(r2.stdout)
    assert table["groups"]["0"]["rank"] == 1
    assert table["groups"]["1"]["rank"] == 1


def test_json_bytes_stable_across_runs():
    a = run_cli("homology", "circle", "--json")
    b = run_cli("homology", "circle", "--json")
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout


def test_homology_human_table():
    r = run_cli("homology", "circle", "--top", "2")
    assert r.returncode == 0
    assert "H_0 = Z" in r.stdout
    assert "H_1 = Z" in r.stdout
    assert "H_2 = 0" in r.stdout


def test_qcat_verdicts_and_assert():
    ok = run_cli("qcat", "simplex3", "-d", "3", "--assert")
    assert ok.returncode == 0
    bad = run_cli("qcat", "boundary2", "-d", "2")
    assert bad.returncode == 0  # failed verdict without --assert still exits 0
    assert "fail" in bad.stdout.lower()
    bad2 = run_cli("qcat", "boundary2", "-d", "2", "--assert")
    assert bad2.returncode == 1
    rec = json.loads(run_cli("qcat", "boundary2", "-d", "2", "--json").stdout)
    assert rec["ok"] is False and rec["witness"]["n"] == 2


def test_mapspace():
    r = run_cli("mapspace", "simplex1", "0", "1", "-d", "1")
    assert r.returncode == 0
    assert "(1,)" in r.stdout


def test_invalid_inputs_exit_two():
    assert run_cli("space", "simplex", "17").returncode == 2
    assert run_cli("space", "nosuchthing").returncode == 2
    assert run_cli("homology", "missing_file.json").returncode == 2
    assert run_cli("qcat", "simplex2", "-d", "1").returncode == 2
    assert run_cli("mapspace", "simplex1", "9", "1", "-d", "1").returncode == 2


def test_mv_from_cover_file(tmp_path):
    cover = {"space": "boundary2", "u": ["01", "12"], "v": ["02"]}
    f = tmp_path / "cover.json"
    f.write_text(json.dumps(cover))
    r = run_cli("mv", str(f), "--top", "2", "--assert")
    assert r.returncode == 0
    rec = json.loads(run_cli("mv", str(f), "--top", "2", "--json").stdout)
    assert all(rec["exact"])
    r2 = run_cli("mv", str(f), "--top", "2", "--reduced")
    assert r2.returncode == 0


def test_excision_square_verdicts():
    good = run_cli("excision", "interval-collapse", "--assert")
    assert good.returncode == 0
    bad = run_cli("excision", "corner-circle", "--assert")
    assert bad.returncode == 1
    rec = json.loads(run_cli("excision", "corner-circle", "--json").stdout)
    assert rec["square_is_pushout"] is False


def test_tower_reports():
    r = run_cli("tower", "l1_mock", "circle", "-N", "4", "--assert")
    assert r.returncode == 0
    assert "zero complex" in r.stdout
    rec = json.loads(run_cli("tower", "l1_mock", "circle", "-N", "4", "--json").stdout)
    assert rec["colimit"]["ranks"] == [0]
    nr = run_cli("tower", "reduced_chains", "s2", "-N", "2")
    assert nr.returncode == 0
    assert "not certified" in nr.stdout


def test_counterexample():
    r = run_cli("counterexample", "--assert")
    assert r.returncode == 0
    rec = json.loads(run_cli("counterexample", "--json").stdout)
    assert rec["pullback_H0_rank"] == 2
    assert rec["square_is_pushout"] is True


def test_manifest_run(tmp_path):
    manifest = {
        "spaces": {
            "torus": ["product", "circle", "circle"],
            "disk": "simplex2",
        },
        "covers": {
            "arcs": {"space": "boundary2", "u": ["01", "12"], "v": ["02"]},
        },
        "squares": {},
        "tasks": [
            ["homology", "torus", "--top", "2"],
            ["mv", "arcs", "--top", "2", "--assert"],
            ["qcat", "disk", "-d", "2", "--assert"],
        ],
    }
    f = tmp_path / "manifest.json"
    f.write_text(json.dumps(manifest))
    r = run_cli("run", str(f))
    assert r.returncode == 0
    assert "task 0" in r.stdout and "task 2" in r.stdout
    assert "H_2 = Z" in r.stdout

    manifest["tasks"].append(["qcat", "boundary2", "--assert"])
    f.write_text(json.dumps(manifest))
    assert run_cli("run", str(f)).returncode == 1

    manifest["tasks"].append(["space", "simplex", "99"])
    f.write_text(json.dumps(manifest))
    assert run_cli("run", str(f)).returncode == 2
