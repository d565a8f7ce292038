import json
import os
import subprocess

import pytest

CLI = os.environ.get("LPLAB_CLI")
pytestmark = pytest.mark.skipif(not CLI, reason="LPLAB_CLI not set")


@pytest.fixture()
def run(tmp_path):
    cache = str(tmp_path / "constants.csv")

    def _run(*args):
        return subprocess.run([CLI, *args, "--cache", cache], capture_output=True, text=True, timeout=600)

    return _run


def test_constants_table(run):
    r = run("constants", "--max-n", "7", "--tol", "1e-9")
    assert r.returncode == 0, r.stderr
    lines = r.stdout.strip().splitlines()
    assert lines[0] == "n,lo,hi,width"
    rows = {line.split(",")[0]: line.split(",") for line in lines[1:]}
    assert float(rows["2"][1]) <= 4 <= float(rows["2"][2])
    assert float(rows["3"][1]) <= 3 <= float(rows["3"][2])
    assert abs(float(rows["4"][1]) - (1 + 5 ** 0.5)) < 1e-7
    lo, hi = float(rows["infinity"][1]), float(rows["infinity"][2])
    assert hi - lo <= 1e-9 and abs(lo - 3.23363666) < 1e-8
    again = run("constants", "--max-n", "7", "--tol", "1e-9")
    assert again.stdout == r.stdout


def test_constants_coarse_and_json(run):
    r = run("constants", "--max-n", "6", "--tol", "1e-2", "--format", "json")
    assert r.returncode == 0, r.stderr
    rows = json.loads(r.stdout)["rows"]
    assert [row["n"] for row in rows] == [2, 3, 4, 5, 6, "infinity"]


def test_constants_usage_error(run):
    assert run("constants", "--max-n", "1").returncode == 2


def test_analyze_exit_codes(run, tmp_path):
    bad = run("analyze", "--family", "partial-theta", "--param", "a2=3.0")
    assert bad.returncode == 3, bad.stderr
    report = json.loads(bad.stdout)
    for v in report["verdicts"].values():
        if v["status"] == "violated":
            assert v["witness"] is not None

    good = run("analyze", "--family", "partial-theta", "--param", "a2=4.41", "--degree", "40")
    assert good.returncode == 0, good.stderr
    report = json.loads(good.stdout)
    assert report["verdicts"]["hutchinson"]["status"] == "holds"
    assert report["nonreal_bound"]["bound"] == 2
    assert report["empirical_nonreal"]["count"] == 0

    q = tmp_path / "q.csv"
    q.write_text("n,q_n\n2,4\n3,3.5\n4,5\n")
    gated = run("analyze", "--quotients", str(q))
    assert gated.returncode == 4
    assert json.loads(gated.stdout)["q_profile"]["nondecreasing"] is False


def test_analyze_bad_input(run, tmp_path):
    c = tmp_path / "c.csv"
    c.write_text("k,a_k\n0,1\n1,x\n")
    r = run("analyze", "--coeffs", str(c))
    assert r.returncode == 2
    assert "line 3" in r.stderr
    assert run("analyze").returncode == 2


def test_analyze_deterministic(run):
    args = ("analyze", "--family", "q-kummer", "--param", "a=3", "--degree", "30")
    assert run(*args).stdout == run(*args).stdout


@pytest.mark.parametrize("suite,extra", [("lemma3", ["--seed", "7", "--trials", "1000"]), ("roundtrip", []),
                                          ("theorem2", ["--trials", "3"])])
def test_verify(run, suite, extra):
    r = run("verify", "--suite", suite, *extra)
    assert r.returncode == 0, r.stdout
    assert "PASS" in r.stdout
    if suite == "theorem2":
        assert r.stdout.count("bound=") == 3
