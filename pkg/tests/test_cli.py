import json
import subprocess
import sys

import pytest

from uclab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def example_one(tmp_path):
    p = tmp_path / "two.ucf"
    p.write_text("n=2\n{1}\n{2}\n")
    return str(p)


@pytest.fixture
def binom3(tmp_path):
    p = tmp_path / "binom3.ucf"
    p.write_text("{}\n{1}\n{2}\n{3}\n{1,2}\n{1,3}\n{2,3}\n")
    return str(p)


class TestAnalyze:
    def test_text(self, capsys, example_one):
        code, out, _ = run(capsys, "analyze", example_one)
        assert code == 0
        assert "union-closed: false" in out
        assert "H(A)     = 1\n" in out
        assert "H(AuB)   = 1.5\n" in out
        assert "verdict  = ProvedNotUnionClosed" in out
        assert "{1}:1/4 {2}:1/4 {1,2}:1/2" in out

    def test_json(self, capsys, binom3):
        code, out, _ = run(capsys, "analyze", binom3, "--format", "json")
        data = json.loads(out)
        assert code == 0
        assert data["certificate"]["verdict"] == "Inconclusive"
        assert data["counts"] == {"1": 3, "2": 3, "3": 3}
        atoms = {tuple(a["set"]): (a["num"], a["den"]) for a in data["union_distribution"]}
        assert atoms[()] == (1, 49) and atoms[(1, 2, 3)] == (12, 49)

    def test_single_member(self, capsys, tmp_path):
        p = tmp_path / "one.ucf"
        p.write_text("{1,2}\n")
        code, out, _ = run(capsys, "analyze", str(p))
        assert code == 0 and "not applicable" in out

    @pytest.mark.parametrize("text", ["", "{1,a}\n", "0101\n01\n"])
    def test_bad_input(self, capsys, tmp_path, text):
        p = tmp_path / "bad.ucf"
        p.write_text(text)
        code, _, err = run(capsys, "analyze", str(p))
        assert code == 2 and "error" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, _ = run(capsys, "analyze", str(tmp_path / "nope.ucf"))
        assert code == 2


class TestVerify:
    def test_refinement(self, capsys, tmp_path):
        cert = tmp_path / "ref.cert"
        code, out, _ = run(capsys, "verify", "gilmer-refinement", "-o", str(cert), "--format", "json")
        assert code == 0
        assert json.loads(out)["status"] == "Proved"
        code, out, _ = run(capsys, "replay", str(cert))
        assert code == 0 and out.startswith("replay: ok")

    def test_failure_exit_code(self, capsys):
        code, out, _ = run(capsys, "verify", "key-lemma", "--tolerance", "0.01")
        assert code == 1 and "status: Failed witness=" in out

    def test_bad_tolerance(self, capsys):
        assert run(capsys, "verify", "key-lemma", "--tolerance", "-1")[0] == 2

    def test_psi_table(self, capsys):
        code, out, _ = run(capsys, "verify", "psi-table", "--kmax", "3")
        lines = out.splitlines()
        assert code == 0 and lines[1] == "1 0.5" and lines[2].startswith("2 0.381966011")

    def test_tampered_replay(self, capsys, tmp_path):
        cert = tmp_path / "ref.cert"
        run(capsys, "verify", "gilmer-refinement", "-o", str(cert))
        cert.write_text(cert.read_text().replace("method=mirror", "method=interval"))
        code, out, _ = run(capsys, "replay", str(cert))
        assert code == 1 and "FAILED" in out


class TestConstruct:
    def test_s12(self, capsys, tmp_path):
        path = tmp_path / "s12.ucf"
        code, out, _ = run(capsys, "construct", "s12-4", "-o", str(path))
        assert code == 0
        assert "size: 1045" in out and "abundant: {1,2}" in out
        code, out, _ = run(capsys, "analyze", str(path), "--format", "json")
        assert json.loads(out)["abundant"] == [1, 2]

    def test_snk(self, capsys):
        code, out, _ = run(capsys, "construct", "snk", "--n", "30", "--k", "3", "--format", "json")
        data = json.loads(out)
        assert code == 0
        assert data["union_closed"] and data["abundant"] == [1, 2]
        assert data["abundance_inequality"] == {"lhs": 1, "rhs": 16356, "holds": True}

    def test_snk_listing_hits_guard(self, capsys, tmp_path):
        code, _, err = run(capsys, "construct", "snk", "--n", "30", "--k", "3", "-o", str(tmp_path / "x"))
        assert code == 3 and "guard" in err

    def test_invalid_params(self, capsys):
        assert run(capsys, "construct", "snk", "--n", "31", "--k", "3")[0] == 2
        assert run(capsys, "construct", "fm")[0] == 2
        assert run(capsys, "construct", "wat")[0] == 2

    def test_size_guard_env(self, capsys, monkeypatch):
        monkeypatch.setenv("UCLAB_SIZE_CAP", "100")
        assert run(capsys, "construct", "binomial-at-most", "--n", "10", "--k", "5")[0] == 3


class TestOthers:
    def test_enumerate(self, capsys, tmp_path):
        worst = tmp_path / "worst.ucf"
        code, out, _ = run(capsys, "enumerate", "--n", "3", "--emit-worst", str(worst))
        data = json.loads(out)
        assert code == 0 and data["uc_count"] == 120 and data["conjecture_holds"]
        assert worst.read_text().startswith("n=3")

    def test_enumerate_guard(self, capsys):
        assert run(capsys, "enumerate", "--n", "5")[0] == 3

    def test_approx_uc(self, capsys):
        code, out, _ = run(capsys, "approx-uc", "--n", "300", "--trials", "100", "--seed", "5", "--header")
        header, row = out.strip().splitlines()
        assert code == 0 and header == "n,k_draws,trials,seed,p_hat,log_gap"
        assert row.startswith("300,2,100,5,")

    def test_entropy_gain(self, capsys, binom3, example_one):
        code, out, _ = run(capsys, "entropy-gain", binom3, "--deltas", "0.5,0.25", "--format", "csv")
        rows = out.strip().splitlines()
        assert code == 0 and rows[0] == "delta,gain" and len(rows) == 3
        assert all(float(r.split(",")[1]) > 0 for r in rows[1:])
        assert run(capsys, "entropy-gain", binom3, "--deltas", "x")[0] == 2

    def test_entropy_gain_union_closed(self, capsys, tmp_path):
        p = tmp_path / "uc.ucf"
        p.write_text("{1}\n{1,2}\n")
        assert run(capsys, "entropy-gain", str(p))[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "uclab", "verify", "psi-table", "--kmax", "2"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("k psi_k")
