import json
import subprocess
import sys

from antichain.cli import main, poset_payload, render_scan_csv, scan_rows
from antichain.core import Partition
from antichain.hnf import exhaust_och

P82_COVERS = [[1, 5], [2, 5], [2, 6], [3, 5], [3, 6], [3, 7], [4, 5], [4, 6], [4, 7], [4, 8]]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    rec = json.loads(out)
    assert rec["format"] == 1 and "wall_time" in rec
    return rec


def test_scan_csv(capsys, census):
    code, out, _ = run(capsys, "scan", "--n-max", "12")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n,rpac,relprime,part"
    assert lines[-1] == "12,58,76,77"
    for line in lines[1:]:
        n, *vals = map(int, line.split(","))
        assert tuple(vals) == census[n]
    assert out == render_scan_csv(scan_rows(12, 1), False)
    _, out, _ = run(capsys, "scan", "--n-max", "1")
    assert out.splitlines()[1] == "1,1,1,1"


def test_scan_ratios_and_json(capsys, census):
    _, out, _ = run(capsys, "scan", "--n-max", "13", "--ratios")
    lines = out.splitlines()
    assert lines[0].endswith(",ratio_rp,ratio_ac")
    assert lines[12] == "12,58,76,77,0.987013,0.763158"
    assert lines[13].endswith(",1.000000")
    rec = run_json(capsys, "scan", "--n-max", "5", "--format", "json")
    assert rec["command"] == "scan"
    rpac, relprime, part = census[5]
    assert rec["results"][-1] == {"n": 5, "rpac": rpac, "relprime": relprime, "part": part}


def test_scan_jobs_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["scan", "--n-max", "30", "--jobs", "1", "--out", str(a)]) == 0
    assert main(["scan", "--n-max", "30", "--jobs", "8", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_scan_errors(capsys):
    assert run(capsys, "scan", "--n-max", "0")[0] == 2
    code, _, err = run(capsys, "scan", "--n-max", "74")
    assert code == 3 and "--allow-large" in err


def test_poset_covers(capsys):
    code, out, _ = run(capsys, "poset", "--lambda", "8,2", "--format", "covers")
    assert code == 0
    assert [list(map(int, ln.split())) for ln in out.splitlines()] == P82_COVERS
    _, out, _ = run(capsys, "poset", "--lambda", "3,3,9", "--format", "covers")
    assert len(out.splitlines()) == 20 and "1 5\n" in out and "1 10\n" in out
    _, out, _ = run(capsys, "poset", "--lambda", "8,2", "--format", "covers", "--with-zero")
    assert out.splitlines()[:4] == ["0 1", "0 2", "0 3", "0 4"]


def test_poset_json_and_dot(capsys):
    rec = run_json(capsys, "poset", "--lambda", "8,2")
    assert rec["results"] == poset_payload(Partition((8, 2)))
    assert rec["results"]["covers"] == P82_COVERS
    rec = run_json(capsys, "poset", "--lambda", "2")
    assert rec["results"]["covers"] == [] and rec["results"]["is_antichain"] is True
    _, out, _ = run(capsys, "poset", "--lambda", "2,2", "--format", "dot", "--with-zero")
    assert out == "digraph P {\n  0;\n  1;\n  2;\n  0 -> 1;\n  1 -> 2;\n}\n"


def test_poset_bad_lambda(capsys):
    assert run(capsys, "poset", "--lambda", "8,x")[0] == 2
    assert run(capsys, "poset", "--lambda", "0")[0] == 2


def test_sample_reproducible(capsys):
    argv = ("sample", "--n", "5", "--d", "4", "--samples", "50", "--seed", "9")
    a = run_json(capsys, *argv)
    b = run_json(capsys, *argv, "--jobs", "2")
    assert a["results"] == b["results"] and a["seed"] == 9
    assert 0 <= a["results"]["fraction"] <= 1


def test_sample_exhaustive(capsys):
    rec = run_json(capsys, "sample", "--n", "3", "--d", "3", "--exhaustive")
    total, count = exhaust_och(3, 3)
    assert rec["results"]["total"] == total == 4
    assert rec["results"]["fraction_exact"] == f"{count}/4"


def test_sample_default_samples(capsys):
    rec = run_json(capsys, "sample", "--n", "4", "--d", "3")
    assert rec["results"]["samples"] == 64


def test_sample_sweep(capsys, tmp_path):
    out = tmp_path / "sweep.json"
    assert main(["sample", "--sweep", "--cells", "3x3,4x9", "--samples", "10", "--seed", "1", "--out", str(out)]) == 0
    rec = json.loads(out.read_text())
    assert [(r["n"], r["d"]) for r in rec["results"]] == [(3, 3), (4, 9)]
    assert all("n_over_d" in r and 0 <= r["fraction"] <= 1 for r in rec["results"])
    rec = run_json(capsys, "sample", "--sweep", "--random-cells", "3", "--samples", "5")
    assert len(rec["results"]) == 3


def test_sample_errors(capsys):
    assert run(capsys, "sample", "--n", "2", "--d", "3")[0] == 2
    assert run(capsys, "sample", "--n", "5")[0] == 2
    assert run(capsys, "sample", "--sweep", "--cells", "3by3")[0] == 2
    assert run(capsys, "sample", "--n", "20", "--d", "8", "--exhaustive")[0] == 3


def test_poincare(capsys):
    rec = run_json(capsys, "poincare", "--lambda", "2,1,1", "--z-order", "3", "--t-degree", "6")
    fpa = rec["results"]["fpa_series"]
    assert fpa[1][2] == 2 and fpa[2][4] == 4 and fpa[3][6] == 8
    assert rec["results"]["full_series"][1][1] == 4
    rec = run_json(capsys, "poincare", "--lambda", "1,1", "--z-order", "2", "--t-degree", "3")
    assert rec["results"]["fpa_series"] == [[1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]
    assert run(capsys, "poincare", "--lambda", "2,2")[0] == 2
    assert run(capsys, "poincare", "--lambda", "2,1,1", "--z-order", "9")[0] == 3


def test_twopart(capsys):
    rec = run_json(capsys, "twopart", "--x", "3", "--a", "3", "--u", "0", "--v", "2", "--check")
    res = rec["results"]
    assert res["equivalent"] is True
    assert [1, 5] in res["relations"] and [1, 10] in res["relations"]
    assert res["table"][9] == {"i": 9, "r": 1, "p": 4, "q": 0, "f": -17, "class": 2, "s1": 1 + 3 * 4, "s2": 11}
    rec = run_json(capsys, "twopart", "--x", "4", "--a", "3", "--u", "0", "--v", "2", "--check")
    assert rec["results"]["equivalent"] is True
    assert run(capsys, "twopart", "--x", "3", "--a", "2", "--u", "0", "--v", "2")[0] == 2


def test_twopart_non_coprime(capsys):
    rec = run_json(capsys, "twopart", "--x", "5", "--a", "3", "--u", "0", "--v", "2", "--check")
    assert rec["results"]["coprime"] is False and rec["results"]["relations"] is None


def test_out_to_missing_directory(tmp_path, capsys):
    assert run(capsys, "scan", "--n-max", "3", "--out", str(tmp_path / "no" / "x.csv"))[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "antichain", "scan", "--n-max", "4"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout.splitlines()[-1] == "4,3,4,5"
