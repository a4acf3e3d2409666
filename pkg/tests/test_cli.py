"""Command-line behavior: exit codes, formats, determinism, round-trips."""

import json
import subprocess
import sys

import pytest

from morirays import CharMatrix, DivisorClass, MultiplicityProfile, RadicalSum, Ray
from morirays.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_matrix_pretty(capsys):
    code, out, _ = run(capsys, "matrix", "--kind", "Q")
    assert code == 0
    assert out.splitlines()[0].split() == ["2", "1", "1", "1"]


def test_matrix_check_homaloidal(capsys):
    code, out, _ = run(capsys, "matrix", "--kind", "CG", "--n", "1", "--check-homaloidal")
    assert code == 0
    assert "L_52(33, 14^7, 11^2)" in out
    assert "matches closed form: True" in out


def test_matrix_json_round_trip(capsys):
    code, out, _ = run(capsys, "matrix", "--kind", "JS", "--n", "2", "--format", "json")
    assert code == 0
    data = json.loads(out)
    m = CharMatrix.from_json(data["matrix"])
    assert m.is_valid() and m.s == 11


def test_matrix_csv(capsys):
    code, out, _ = run(capsys, "matrix", "--kind", "Q", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "c0,c1,c2,c3"
    assert out.splitlines()[1] == "2,1,1,1"


def test_matrix_usage_errors(capsys):
    assert run(capsys, "matrix", "--kind", "J")[0] == 2
    assert run(capsys, "matrix", "--kind", "Q", "--n", "3")[0] == 2
    assert run(capsys, "matrix", "--kind", "J", "--n", "0")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["matrix", "--kind", "X"])
    assert exc.value.code == 2


def test_orbit_pretty_frozen(capsys):
    code, out, _ = run(capsys, "orbit", "--family", "odd", "--n", "2", "--k", "3")
    assert code == 0
    lines = out.splitlines()
    assert lines[1].split() == ["k=1", "13", "9", "4", "2"]
    assert lines[3].split() == ["k=3", "533", "337", "168", "98"]


def test_orbit_csv(capsys):
    code, out, _ = run(capsys, "orbit", "--family", "even", "--n", "1", "--k", "1", "--format", "csv")
    assert code == 0
    assert out == "k,d,a,b,c\n0,1,1,0,0\n1,40,25,11,8\n"


def test_orbit_custom_seed(capsys):
    code, out, _ = run(capsys, "orbit", "--family", "odd", "--n", "2", "--k", "1",
                       "--seed", "1,0,0,0", "--format", "csv")
    assert code == 0
    assert out.splitlines()[1] == "0,1,0,0,0"


def test_orbit_usage_errors(capsys):
    assert run(capsys, "orbit", "--family", "sq4", "--n", "1", "--k", "2")[0] == 2
    assert run(capsys, "orbit", "--family", "odd", "--n", "2", "--k", "-1")[0] == 2
    assert run(capsys, "orbit", "--family", "odd", "--n", "2", "--k", "1", "--seed", "1,2")[0] == 2
    assert run(capsys, "orbit", "--family", "odd", "--n", "2", "--k", "1", "--seed", "a,b,c,d")[0] == 2


def test_eigenray_pretty(capsys):
    code, out, _ = run(capsys, "eigenray", "--family", "odd", "--n", "2")
    assert code == 0
    assert "L_28(12+4√2, (6+2√2)^4, (8-2√2)^6)" in out
    assert "3+2√2" in out and "(dominant)" in out
    assert "display only" in out


def test_eigenray_json_round_trip(capsys):
    code, out, _ = run(capsys, "eigenray", "--family", "Wplus_sq4", "--n", "1", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["family"] == "sq4"
    display = MultiplicityProfile.from_json(data["display"])
    assert display.s == 13
    ray = Ray(DivisorClass.from_json(data["dominant_ray"]["class"]))
    assert not ray.is_rational
    assert data["certificate"]["converges"] is True


def test_eigenray_rejects_unknown_family(capsys):
    code, _, err = run(capsys, "eigenray", "--family", "galois", "--n", "2")
    assert code == 2 and "unknown ray family" in err


def test_verify_failure_exit(capsys):
    code, out, _ = run(capsys, "verify", "--family", "even", "--n", "2", "--k", "0")
    assert code == 1
    assert "REFUSED" in out
    assert "failures at [(2, 0)]" in out


def test_verify_success(capsys):
    code, out, _ = run(capsys, "verify", "--family", "sq4", "--n", "1..2", "--k", "1..2")
    assert code == 0
    assert "sq4 n=1 k=1: good (R2_PENCIL)" in out
    assert "sq4 n=2 k=1: good (R3_PENCIL)" in out
    assert "all certificates valid" in out


def test_verify_alias_and_json(capsys):
    code, out, _ = run(capsys, "verify", "--family", "even_plus", "--n", "2", "--k", "1",
                       "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["family"] == "even"
    assert data["valid"] is True and data["failing"] == []
    assert data["certificates"][0]["emptiness"]["rule"] == "R2_PENCIL"
    assert data["defernex"]["rows"][0]["sign"] == -1


def test_verify_jobs_deterministic(capsys):
    args = ["verify", "--family", "odd", "--n", "1..2", "--k", "1..2", "--format", "json"]
    a = run(capsys, *args)
    b = run(capsys, *args, "--jobs", "4")
    assert a[0] == b[0] == 0
    assert a[1] == b[1]


def test_verify_usage_errors(capsys):
    assert run(capsys, "verify", "--family", "odd", "--n", "3..2")[0] == 2
    assert run(capsys, "verify", "--family", "odd", "--n", "x..2")[0] == 2
    assert run(capsys, "verify", "--family", "odd", "--n", "2", "--jobs", "0")[0] == 2
    assert run(capsys, "verify", "--family", "nope", "--n", "2")[0] == 2


def test_pair_negative_sign(capsys):
    code, out, _ = run(capsys, "pair", "--ray", "Wplus_sq2:1", "--with", "F")
    assert code == 0
    assert "sign: -1" in out
    assert "(display only)" in out


def test_pair_json_round_trip(capsys):
    code, out, _ = run(capsys, "pair", "--ray", "Wplus_sq2:1", "--with", "F", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["sign"] == -1
    value = RadicalSum.from_json(data["value"])
    assert value.sign() == -1
    assert data["decimal_note"] == "display only"


def test_pair_self_and_canonical(capsys):
    code, out, _ = run(capsys, "pair", "--ray", "odd:2", "--with", "self", "--format", "json")
    assert code == 0 and json.loads(out)["sign"] == 0
    code, out, _ = run(capsys, "pair", "--ray", "W_even:2", "--with", "K", "--format", "json")
    assert code == 0 and json.loads(out)["sign"] == 0
    code, out, _ = run(capsys, "pair", "--ray", "even_plus:2", "--with", "K", "--format", "json")
    assert code == 0 and json.loads(out)["sign"] == 1


def test_pair_usage_errors(capsys):
    assert run(capsys, "pair", "--ray", "odd", "--with", "K")[0] == 2
    assert run(capsys, "pair", "--ray", "odd:x", "--with", "K")[0] == 2
    assert run(capsys, "pair", "--ray", "odd:0", "--with", "K")[0] == 2
    assert run(capsys, "pair", "--ray", "mystery:1", "--with", "K")[0] == 2


def test_out_file_and_env(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("MORIRAYS_OUTDIR", str(tmp_path))
    code, out, _ = run(capsys, "orbit", "--family", "odd", "--n", "1", "--k", "1",
                       "--format", "csv", "--out", "orbit.csv")
    assert code == 0 and out == ""
    assert (tmp_path / "orbit.csv").read_text() == "k,d,a,b,c\n0,1,1,0,0\n1,9,5,4,2\n"
    # absolute --out ignores the env prefix
    target = tmp_path / "direct.csv"
    code, _, _ = run(capsys, "orbit", "--family", "odd", "--n", "1", "--k", "0",
                     "--format", "csv", "--out", str(target))
    assert code == 0 and target.exists()


def test_digits_flag(capsys):
    _, out4, _ = run(capsys, "pair", "--ray", "odd:2", "--with", "F", "--digits", "4")
    _, out12, _ = run(capsys, "pair", "--ray", "odd:2", "--with", "F", "--digits", "12")
    assert "~ " in out4
    tail4 = out4.split("~ ")[1].split(" ")[0]
    tail12 = out12.split("~ ")[1].split(" ")[0]
    assert len(tail12) > len(tail4)


def test_repeated_runs_byte_identical(capsys):
    args = ["eigenray", "--family", "sq2", "--n", "1", "--format", "json"]
    assert run(capsys, *args)[1] == run(capsys, *args)[1]


def test_console_script_and_module():
    proc = subprocess.run(
        [sys.executable, "-m", "morirays", "pair", "--ray", "Wplus_sq2:1", "--with", "F",
         "--format", "json"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["sign"] == -1
    bad = subprocess.run([sys.executable, "-m", "morirays", "verify", "--family", "even",
                          "--n", "2", "--k", "0"], capture_output=True, text=True)
    assert bad.returncode == 1
