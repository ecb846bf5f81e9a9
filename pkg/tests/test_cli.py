import io
import json
import subprocess
import sys

import pytest

from urnwalk.cli import read_path, run_command, UsageError


def run(argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    rc = run_command(argv, out, err, io.StringIO(stdin))
    return rc, out.getvalue(), err.getvalue()


def test_return_prob_table():
    rc, out, err = run(["exact", "return-prob", "--scheme", "polya", "-w", "1", "-b", "1",
                        "--max-n", "3"])
    assert rc == 0
    assert out.splitlines() == ["n,term,partial_sum", "1,1/3,1/3", "2,1/5,8/15", "3,1/7,71/105"]
    manifest = json.loads(err.split("manifest: ", 1)[1])
    assert manifest["tool"] == "urnwalk"
    assert manifest["config"]["max_n"] == 3


def test_hitting_pmf_and_expected_series():
    rc, out, _ = run(["exact", "hitting-pmf", "--max-n", "2"])
    assert out.splitlines()[1:] == ["1,1/3,1/3", "2,1/15,2/5"]
    rc, out, _ = run(["exact", "series", "--kind", "expected_hitting", "--max-n", "2"])
    assert out.splitlines()[-1].endswith(",14/15")


def test_decimal_and_json_output():
    rc, out, _ = run(["exact", "return-prob", "--max-n", "1", "--decimal-digits", "4",
                      "--format", "json"])
    payload = json.loads(out)
    assert payload["rows"][0]["term"] == "0.3333"
    assert payload["mode"] == "exact"


def test_friedman_and_eulerian():
    rc, out, _ = run(["exact", "return-prob", "--scheme", "friedman", "-w", "1", "-b", "0",
                      "--max-n", "2"])
    assert out.splitlines()[1:] == ["1,1/2,1/2", "2,11/24,23/24"]
    rc, out, _ = run(["exact", "eulerian", "--max-n", "4"])
    assert [line.split(",")[2] for line in out.splitlines()[1:]] == ["1", "11", "11", "1"]


@pytest.mark.parametrize("argv,fragment", [
    (["exact", "return-prob", "--scheme", "polya", "-w", "1", "-b", "0"], "b > 0"),
    (["exact", "return-prob", "--max-n", "0"], "--max-n"),
    (["exact", "hitting-pmf", "--dims", "2"], "one-dimensional"),
    (["exact", "return-prob", "-w", "1,2", "-d", "3"], "--white/--blue"),
    (["simulate", "hitting"], "--seed"),
    (["simulate", "hitting", "--seed", "1", "--cap", "1"], "--cap"),
    (["simulate", "occupancy", "--seed", "1", "--cap", "10", "--horizon", "12"], "--horizon"),
    (["diagnose", "recurrence", "--min-n", "10", "--max-n", "5"], "--min-n"),
    (["exact", "return-prob", "--scheme", "bernoulli", "--prob", "3/2"], "p"),
])
def test_invalid_invocations(argv, fragment):
    rc, out, err = run(argv)
    assert rc == 2
    assert out == ""
    assert "urnwalk: error:" in err and fragment in err


def test_argparse_errors_exit_2():
    rc, _, _ = run(["exact", "nonsense"])
    assert rc == 2
    rc, _, _ = run([])
    assert rc == 2


def test_rotate2d_figure1(tmp_path):
    left = [(0, 0), (1, 1), (2, 2), (1, 3), (0, 2), (-1, 3), (-2, 4), (-3, 5), (-2, 6)]
    path = tmp_path / "left.txt"
    path.write_text("# figure 1\n" + "".join(f"{x} {y}\n" for x, y in left))
    rc, out, _ = run(["transform", "rotate2d", str(path)])
    assert rc == 0
    assert out.splitlines()[1:] == ["0,0", "1,0", "2,0", "2,1", "1,1", "1,2", "1,3", "1,4", "2,4"]
    rc, out2, _ = run(["transform", "rotate2d", "-"], stdin=path.read_text())
    assert out2 == out


def test_rotate2d_reports_bad_line():
    rc, _, err = run(["transform", "rotate2d", "-"], stdin="0 0\n1 1\n2 x\n")
    assert rc == 2 and "line 3" in err
    rc, _, err = run(["transform", "rotate2d", "-"], stdin="0 0\n1 0\n")
    assert rc == 2
    rc, _, err = run(["transform", "rotate2d", "/nonexistent/path"])
    assert rc == 2 and "cannot read" in err


def test_read_path_skips_blanks():
    assert read_path(["", "1 2", "  # c", "3 4"]) == [(1, 2), (3, 4)]
    with pytest.raises(UsageError):
        read_path(["1 2 3"])


def test_simulate_outputs():
    rc, out, err = run(["simulate", "hitting", "--scheme", "friedman", "-w", "1", "-b", "0",
                        "--replicas", "50", "--seed", "4", "--cap", "1000"])
    lines = out.splitlines()
    assert lines[0] == "replica,outcome,time" and len(lines) == 51
    rc, out, _ = run(["simulate", "hitting", "--replicas", "50", "--seed", "4", "--cap", "1000",
                      "--format", "json"])
    payload = json.loads(out)
    assert payload["stats"]["hits"] + payload["stats"]["censored"] == 50
    assert payload["stats"]["seed"] == 4
    rc, out, _ = run(["simulate", "occupancy", "--replicas", "50", "--seed", "4", "--horizon", "6"])
    assert [line.split(",")[0] for line in out.splitlines()] == ["time", "2", "4", "6"]


def test_diagnose_json():
    rc, out, _ = run(["diagnose", "recurrence", "--max-n", "2000", "--format", "json"])
    diag = json.loads(out)["diagnostic"]
    assert diag["verdict"] == "divergent"
    assert diag["classification"] == "null recurrent"
    rc, out, _ = run(["diagnose", "recurrence", "--scheme", "friedman", "-w", "1", "-b", "0",
                      "-d", "2", "--max-n", "2000", "--format", "json"])
    assert "undetermined" in json.loads(out)["diagnostic"]["classification"]


def test_out_sidecar_and_replay(tmp_path):
    out_file = tmp_path / "run.csv"
    argv = ["simulate", "hitting", "--scheme", "friedman", "-w", "1", "-b", "0",
            "--replicas", "200", "--seed", "12", "--out", str(out_file)]
    rc, out, err = run(argv)
    assert rc == 0 and out == "" and err == ""
    first = out_file.read_bytes()
    manifest_path = tmp_path / "run.csv.manifest.json"
    manifest = json.loads(manifest_path.read_text())
    assert manifest["argv"] == argv and manifest["seed"] == 12
    out_file.unlink()
    rc, _, _ = run(["--replay", str(manifest_path)])
    assert rc == 0
    assert out_file.read_bytes() == first


def test_replay_missing_manifest(tmp_path):
    rc, _, err = run(["--replay", str(tmp_path / "none.json")])
    assert rc == 2 and "cannot read manifest" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "urnwalk", "exact", "return-prob", "--max-n", "1"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout.splitlines()[1] == "1,1/3,1/3"
    proc = subprocess.run([sys.executable, "-m", "urnwalk", "--version"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout.startswith("urnwalk ")


def test_json_is_strict():
    for argv in (["diagnose", "recurrence", "--max-n", "500", "--format", "json"],
                 ["diagnose", "recurrence", "-d", "3", "--max-n", "500", "--format", "json"],
                 ["simulate", "hitting", "--replicas", "1", "--seed", "0", "--cap", "2",
                  "--format", "json"]):
        rc, out, _ = run(argv)
        assert rc == 0
        json.loads(out, parse_constant=lambda c: pytest.fail(f"non-finite {c} in {argv}"))
