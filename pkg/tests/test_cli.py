import json
import math
import subprocess
import sys

import pytest

from recordlaws import laws
from recordlaws.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def law(capsys, *argv):
    code, out, _ = run(capsys, "law", *argv)
    assert code == 0
    return json.loads(out)


class TestLaw:
    def test_interrecords(self, capsys):
        r = law(capsys, "--formula", "interRecords", "--k", "1")
        assert r["value"] == 0.5 and r["exact"] == "1/2"
        assert law(capsys, "--formula", "interRecords", "--k", "2", "3")["exact"] == "1/60"

    def test_continuous_and_discrete(self, capsys):
        assert law(capsys, "--formula", "ADR3", "--dist", "exp:1", "--n", "3", "--x", "2")["value"] == pytest.approx(0.2706705664)
        assert law(capsys, "--formula", "DDR2", "--dist", "geom:1/2", "--y", "1,2")["exact"] == "1/4"
        assert law(capsys, "--formula", "DDR3", "--dist", "dunif:3", "--n", "2", "--x", "3")["exact"] == "1/2"
        js = '{"dist":"exponential","theta":2.0}'
        assert law(capsys, "--formula", "ADR1", "--dist", js, "--y", "0.5", "1.0")["value"] == pytest.approx(4 * 2.718281828 ** -2)

    def test_other_formulas(self, capsys):
        assert law(capsys, "--formula", "lrecMarkov", "--k", "2", "--j", "3")["exact"] == "1/3"
        assert law(capsys, "--formula", "lawRtimes", "--ell", "3", "5")["exact"] == "1/40"
        assert law(capsys, "--formula", "gamma", "--k", "1", "1", "1")["exact"] == "1/6"
        assert law(capsys, "--formula", "nrec03", "--dist", "dunif:6")["exact"] == "1/6"
        assert law(capsys, "--formula", "gs.21", "--dist", "exp:1", "--n", "3", "--z", "0", "--x", "2")["value"] == pytest.approx(2)
        assert law(capsys, "--formula", "PEX1", "--dist", "unif:0,1", "--y", "0.9", "0.1")["value"] == pytest.approx(0.01)
        assert law(capsys, "--formula", "ADR2", "--dist", "exp:1", "--idx", "1", "3", "--y", "1", "2")["value"] == pytest.approx(2.718281828 ** -2)
        r = law(capsys, "--formula", "GRDMR", "--dist", "unif:0,1", "--y", "1", "0.5", "--horizon", "200")
        assert 0 < r["truncation_mass"] and r["value"] <= 0.5 - 0.5 * math.log(2) + 1e-12

    def test_off_support_flag(self, capsys):
        r = law(capsys, "--formula", "DDR2", "--dist", "geom:1/2", "--y", "2,2")
        assert r["value"] == 0 and r["support"] is False

    def test_list_matches_registry(self, capsys):
        code, out, _ = run(capsys, "law", "--list")
        ids = [line.split()[0] for line in out.splitlines()]
        assert code == 0 and ids == list(laws.FORMULAS) and len(set(ids)) == len(ids)

    @pytest.mark.parametrize("argv", [
        ["--formula", "nope"],
        ["--formula", "ADR3", "--dist", "exp:1", "--n", "2"],
        ["--formula", "ADR3", "--dist", "geom:0.5", "--n", "2", "--x", "1"],
        ["--formula", "ADR3", "--dist", "bogus:1", "--n", "2", "--x", "1"],
        ["--formula", "interRecords", "--k", "0"],
        [],
    ])
    def test_bad_inputs_exit_2(self, capsys, argv):
        code, _, err = run(capsys, "law", *argv)
        assert code == 2 and "error" in err


def test_extract_example(capsys, tmp_path):
    p = tmp_path / "seq.csv"
    p.write_text("3\n1\n4\n1\n5\n")
    code, out, _ = run(capsys, "extract", "--kind", "strong-upper", "--input", str(p))
    events = json.loads(out)["events"]
    assert code == 0 and [(e["t"], e["value"]) for e in events] == [(1, 3), (3, 4), (5, 5)]
    code, out, _ = run(capsys, "extract", "--kind", "strong-lower", "--input", str(p), "--format", "csv")
    assert out.splitlines() == ["n,t,value", "1,1,3", "2,2,1"]


def test_extract_to_file(capsys, tmp_path):
    p = tmp_path / "seq.json"
    p.write_text("[[0,0],[1,1],[2,0]]")
    dest = tmp_path / "out.json"
    assert main(["extract", "--input", str(p), "--output", str(dest)]) == 0
    assert json.loads(dest.read_text())["count"] == 2


def test_extract_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "extract", "--input", str(tmp_path / "none.csv"))
    assert code == 2


class TestSimulate:
    def test_seed_required(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["simulate", "--dist", "unif:0,1"])
        assert exc.value.code == 2

    def test_report_and_determinism(self, capsys):
        argv = ["simulate", "--dist", "unif:0,1", "--k", "1", "--trials", "20000", "--seed", "3"]
        code, out, _ = run(capsys, *argv)
        code2, out2, _ = run(capsys, *argv, "--workers", "2")
        assert code == code2 == 0 and out == out2
        rep = json.loads(out)["report"]
        assert abs(rep["estimate"] - 0.5) <= 4 * rep["stderr"]
        assert set(rep) == {"estimate", "stderr", "trials_used", "truncation_mass", "seed"}

    def test_csv(self, capsys):
        code, out, _ = run(capsys, "simulate", "--dist", "dunif:1", "--trials", "3", "--seed", "1", "--format", "csv")
        assert out.splitlines() == ["trial,n,t,value", "0,1,1,1.0", "1,1,1,1.0", "2,1,1,1.0"]


class TestVerify:
    def test_quick_suite_is_deterministic(self, capsys):
        code, a, _ = run(capsys, "verify", "--suite", "quick", "--seed", "7", "--only", "3", "6", "9")
        code2, b, _ = run(capsys, "verify", "--suite", "quick", "--seed", "7", "--only", "3", "6", "9")
        assert code == code2 == 0 and a == b
        assert json.loads(a)["pass"] is True

    def test_table(self, capsys):
        code, out, _ = run(capsys, "table", "--suite", "quick", "--seed", "7", "--only", "7")
        assert code == 0 and len(out.splitlines()) > 2

    def test_failure_exits_1(self, capsys):
        # the 64-point discrete stand-in misses 1/2 at k=1 by 1/128 (ties)
        code, out, _ = run(capsys, "verify", "--suite", "quick", "--seed", "7", "--only", "1")
        assert code == 1 and json.loads(out)["pass"] is False


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "recordlaws.cli", "law", "--formula", "interRecords", "--k", "1"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["value"] == 0.5
