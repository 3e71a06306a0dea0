import json
import subprocess
import sys

import pytest

from tckit.cli import main

C37 = ["--curve", "0,0,1,-1,0", "--label", "37a"]


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_curve_info_37a(capsys):
    code, out, _ = run(capsys, "curve-info", *C37)
    js = json.loads(out)
    assert code == 0
    assert js["disc"] == "37" and js["rad_disc"] == "37" and js["sqfree_disc"] == "37"
    assert js["semistable"] is True and js["reduction"] == {"37": "Multiplicative"}
    assert js["schema"] == "1" and js["command"] == "curve-info"


def test_curve_info_not_semistable(capsys):
    code, out, _ = run(capsys, "curve-info", "--curve", "0,0,0,0,1")
    assert code == 0 and json.loads(out)["semistable"] is False


def test_singular_exit_2(capsys):
    code, out, err = run(capsys, "curve-info", "--curve", "0,0,0,0,0")
    assert code == 2 and out == "" and "singular" in err.lower()


def test_ap(capsys):
    code, out, _ = run(capsys, "ap", *C37, "--limit", "11")
    assert json.loads(out)["ap"] == [[2, -2], [3, -3], [5, -2], [7, -1], [11, -5]]


def test_ap_ceiling_exit_4(capsys):
    code, _, _ = run(capsys, "ap", *C37, "--limit", "1000", "--ceiling", "100")
    assert code == 4


def test_image(capsys):
    code, out, _ = run(capsys, "image", *C37, "--ell", "5")
    js = json.loads(out)
    assert code == 0 and js["image"]["verdict"] == "Full" and js["certificate_revalidated"]


def test_conductor_bound_37a(capsys):
    code, out, _ = run(capsys, "conductor-bound", *C37, "--non-cm")
    js = json.loads(out)
    assert code == 0
    assert js["n_E"] == "13257768960" and js["S"] == [2, 3, 5, 37]
    assert js["bound_check"]["holds"] is True
    assert "conditional_bound" not in js


def test_conductor_bound_cq(capsys):
    code, out, _ = run(capsys, "conductor-bound", *C37, "--non-cm", "--cq", "0")
    cb = json.loads(out)["conditional_bound"]
    assert cb["C_Q"] == 0 and abs(cb["B_E"] - 123.46) < 0.01
    from tckit.intmath import primorial_upto

    assert int(cb["value"]) == primorial_upto(123) ** 4 * 37**5


def test_conductor_bound_override(capsys):
    code, out, _ = run(capsys, "conductor-bound", *C37, "--non-cm", "--alpha-override", "2=100")
    js = json.loads(out)
    assert code == 0 and js["bound_check"]["holds"] is False and js["conditional"]


def test_missing_non_cm_exit_3(capsys):
    code, out, _ = run(capsys, "conductor-bound", *C37)
    assert code == 3 and out == ""
    assert run(capsys, "exceptional-set", *C37)[0] == 3


def test_corpus_missing_assertion(tmp_path, capsys):
    path = tmp_path / "c.txt"
    path.write_text("37a:0,0,1,-1,0 non_cm=1\n11a1:0,-1,1,-10,-20\n")
    code, _, err = run(capsys, "conductor-bound", "--corpus", str(path))
    assert code == 3 and "11a1" in err


def test_bad_corpus_exit_2(tmp_path, capsys):
    path = tmp_path / "c.txt"
    path.write_text("37a:0,0,1\n")
    assert run(capsys, "curve-info", "--corpus", str(path))[0] == 2
    assert run(capsys, "curve-info", "--corpus", str(tmp_path / "missing.txt"))[0] == 2


def test_usage_errors():
    for argv in (["verify", "bogus"], [], ["image", *C37, "--ell", "11"], ["curve-info"]):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 64


def test_verify_vp(capsys):
    code, out, _ = run(capsys, "verify", "vp")
    js = json.loads(out)
    assert code == 0 and js["ok"] and all(c["passed"] for c in js["checks"])


def test_verify_power_lift(capsys):
    code, out, _ = run(capsys, "verify", "power-lift")
    js = json.loads(out)
    assert code == 0 and js["ok"]
    flagged = [c for c in js["checks"] if c["expected_fail"]]
    assert len(flagged) == 1 and flagged[0]["parameters"]["p"] == 2
    assert flagged[0]["counterexample"]["X^p"] == [[1, 0], [0, 1]]


def test_verify_unexpected_failure_exit_1(capsys, monkeypatch):
    from tckit import lemmas

    bad = lemmas.CheckOutcome("fake", {}, False, {"why": "injected"})
    monkeypatch.setitem(lemmas.SUITES, "vp", lambda seed: [bad])
    assert run(capsys, "verify", "vp")[0] == 1


def test_occ(capsys):
    code, out, _ = run(capsys, "occ", "--modulus", "5", "--budget", "100")
    js = json.loads(out)
    assert code == 0 and js["found"] == ["PSL2(F5)"] and js["sound"]


def test_occ_budget_exit_4(capsys, monkeypatch):
    monkeypatch.setenv("TCKIT_BUDGET", "10")
    assert run(capsys, "occ", "--modulus", "7", "--budget", "5")[0] == 4


def test_deterministic_output(capsys):
    first = run(capsys, "occ", "--modulus", "7", "--budget", "40", "--seed", "9")[1]
    second = run(capsys, "occ", "--modulus", "7", "--budget", "40", "--seed", "9")[1]
    assert first == second
    a = run(capsys, "conductor-bound", "--builtin", "semistable")[1]
    b = run(capsys, "conductor-bound", "--builtin", "semistable")[1]
    assert a == b


def test_jobs_match_sequential(capsys):
    seq = run(capsys, "conductor-bound", "--builtin", "semistable")[1]
    par = run(capsys, "conductor-bound", "--builtin", "semistable", "--jobs", "4")[1]
    assert seq == par
    labels = [r["label"] for r in json.loads(par)["results"]]
    assert labels[:3] == ["11a1", "11a3", "14a1"]


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "tckit.cli", "curve-info", *C37],
        capture_output=True,
        text=True,
        check=True,
    )
    assert json.loads(proc.stdout)["disc"] == "37"
