import json
import os
import subprocess
import sys

import pytest

from mtprove.cli import main
from mtprove.prover.casestudy import PROBLEM_DIR

NISHIZAWA = str(PROBLEM_DIR / "nishizawa.mtp")


@pytest.fixture(scope="module")
def cert_file(tmp_path_factory):
    out = tmp_path_factory.mktemp("cli") / "cert.json"
    assert main(["prove", NISHIZAWA, "--out", str(out)]) == 0
    return out


def test_prove_writes_certificate(cert_file):
    data = json.loads(cert_file.read_text())
    assert data["schema"] == "mtp-cert-1"
    assert data["root"]["kind"] == "LogReduce"


def test_prove_false_exits_2(capsys):
    assert main(["prove", str(PROBLEM_DIR / "false.mtp")]) == 2
    assert "no proof found" in capsys.readouterr().err


def test_prove_missing_file_exits_1(tmp_path, capsys):
    assert main(["prove", str(tmp_path / "missing.mtp")]) == 1
    assert "cannot read" in capsys.readouterr().err


def test_prove_bad_grammar_exits_1(tmp_path):
    bad = tmp_path / "bad.mtp"
    bad.write_text("prove sin(x) > 0.5 on (0, 1)\n")
    assert main(["prove", str(bad)]) == 1


def test_prove_to_stdout(capsys):
    assert main(["prove", str(PROBLEM_DIR / "sine_below_identity.mtp")]) == 0
    assert json.loads(capsys.readouterr().out)["schema"] == "mtp-cert-1"


def test_check_accept(cert_file, capsys):
    assert main(["check", str(cert_file), NISHIZAWA]) == 0
    assert capsys.readouterr().out.strip() == "Accept"


def test_check_flipped_sign_exits_3(cert_file, tmp_path, capsys):
    text = cert_file.read_text().replace('"claimed": "positive"', '"claimed": "negative"', 1)
    flipped = tmp_path / "flipped.json"
    flipped.write_text(text)
    assert main(["check", str(flipped), NISHIZAWA]) == 3
    assert capsys.readouterr().out.startswith("Reject at ")


def test_check_truncated_json_exits_1(cert_file, tmp_path):
    cut = tmp_path / "cut.json"
    cut.write_text(cert_file.read_text()[:500])
    assert main(["check", str(cut), NISHIZAWA]) == 1


def test_check_against_other_problem_exits_3(cert_file):
    assert main(["check", str(cert_file), str(PROBLEM_DIR / "false.mtp")]) == 3


def test_casestudy_outputs(tmp_path, capsys):
    inter, report, out = tmp_path / "inter.json", tmp_path / "report.md", tmp_path / "cert.json"
    code = main(["casestudy", "nishizawa", "--emit-intermediates", str(inter), "--report", str(report),
                 "--out", str(out)])
    assert code == 0
    assert "Accept" in capsys.readouterr().out
    data = json.loads(inter.read_text())
    assert len(data["polynomials"]["P14"]) == 15
    assert set(data["polynomials"]) >= {"A", "B", "C", "P14", "P", "Q", "T10", "psi1", "psi2", "psi3", "psi4"}
    assert set(data["constants"]) == {"c", "c1"}
    lines = [line for line in report.read_text().splitlines() if line.strip()]
    assert lines[-1].endswith("T₁₀ > 27")
    assert main(["check", str(out), NISHIZAWA]) == 0


def test_casestudy_matches_prove(cert_file, tmp_path):
    out = tmp_path / "cs.json"
    assert main(["casestudy", "nishizawa", "--out", str(out)]) == 0
    assert out.read_bytes() == cert_file.read_bytes()


def test_casestudy_unknown_exits_1(capsys):
    assert main(["casestudy", "unknown"]) == 1
    assert "unknown case study" in capsys.readouterr().err


def test_explain(cert_file, capsys):
    assert main(["explain", str(cert_file)]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0].startswith("prove ")
    assert out[1] == "LogReduce"
    assert any("TheoremTH: K = 2, derivative 3" in line for line in out)
    assert any("Sturm" in line for line in out)


def test_budget_flags_are_validated():
    with pytest.raises(SystemExit):
        main(["prove", NISHIZAWA, "--pi-depth", "0"])


def test_budget_flags_reach_the_prover(tmp_path):
    out = tmp_path / "deep.json"
    assert main(["prove", NISHIZAWA, "--pi-depth", "16", "--ln-terms", "64", "--series-order", "6",
                 "--jobs", "2", "--out", str(out)]) == 0
    assert '"pi_depth": 16' in out.read_text()
    assert main(["check", str(out), NISHIZAWA]) == 0


def _run(*args, level):
    env = {**os.environ, "MTP_LOG": level}
    return subprocess.run([sys.executable, "-m", "mtprove.cli", *args], capture_output=True, text=True, env=env)


def test_module_entry_and_log_env(tmp_path):
    out = tmp_path / "cert.json"
    proc = _run("prove", NISHIZAWA, "--out", str(out), level="DEBUG")
    assert proc.returncode == 0, proc.stderr
    assert "proof found" in proc.stderr
    quiet = _run("check", str(out), NISHIZAWA, level="WARNING")
    assert quiet.returncode == 0 and quiet.stderr == ""
    assert _run("prove", str(PROBLEM_DIR / "false.mtp"), level="WARNING").returncode == 2
