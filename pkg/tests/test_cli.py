import json

import pytest

from planebundles.cli import run
from planebundles.schemes import ZeroDimScheme

from conftest import FP, QQ, sample


@pytest.fixture
def omega_file(tmp_path):
    path = tmp_path / "point.json"
    path.write_text(sample(FP, 1).dumps())
    return str(path)


def _run(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_rr(capsys):
    assert _run(capsys, "rr", "--space", "p2", "--c1", "0", "--c2", "0", "--k", "0")[:2] == (0, "2\n")
    code, out, _ = _run(capsys, "rr", "--space", "p3", "--c1", "-1", "--c2", "3", "--k", "0")
    assert out == "-7/2\n"
    code, out, _ = _run(capsys, "rr", "--space", "p3", "--c1", "-1", "--c2", "2", "--k", "0", "--format", "json")
    assert json.loads(out)["chi"] == -2
    code, out, _ = _run(capsys, "rr", "--space", "p3", "--c1", "-1", "--c2", "3", "--k", "0", "--format", "json")
    assert json.loads(out)["chi"] == "-7/2"


def test_rr_bad_c1(capsys):
    code, out, err = _run(capsys, "rr", "--c1", "2", "--c2", "0", "--k", "0")
    assert code == 3 and "InvalidC1" in err and out == ""


def test_cohomology_omega1(capsys, omega_file):
    code, out, _ = _run(capsys, "cohomology", "--scheme", omega_file, "--c1", "-1", "--r", "1")
    assert code == 0
    h1_line = next(l for l in out.splitlines() if l.startswith("h1"))
    assert h1_line.split("|")[1].split() == ["0", "0", "1", "0", "0"]
    code, out, _ = _run(capsys, "cohomology", "--scheme", omega_file, "--c1", "-1", "--r", "1", "--format", "json")
    data = json.loads(out)
    assert [row["h1"] for row in data["rows"]] == [0, 0, 1, 0, 0]
    assert data["stable"] is True and data["c2"] == 1


def test_cohomology_range(capsys, omega_file):
    code, out, _ = _run(capsys, "cohomology", "--scheme", omega_file, "--c1", "-1", "--r", "1",
                        "--range=-6..4", "--format", "json")
    assert code == 0 and [r["k"] for r in json.loads(out)["rows"]] == list(range(-6, 5))
    code, _, err = _run(capsys, "cohomology", "--scheme", omega_file, "--c1", "-1", "--r", "1", "--range=-1..2")
    assert code == 3 and "WindowTooSmall" in err


def test_cohomology_minimality_violation(capsys, omega_file):
    code, out, err = _run(capsys, "cohomology", "--scheme", omega_file, "--c1", "0", "--r", "1")
    assert code == 3 and "MinimalityViolation" in err and out == ""


def test_usage_errors(capsys):
    assert run(["bogus"]) == 2
    assert run(["rr", "--c1", "0"]) == 2
    assert run(["cohomology", "--scheme", "x.json", "--c1", "0", "--r", "0", "--range", "junk"]) == 2


def test_missing_file(capsys):
    code, _, err = _run(capsys, "classify", "--scheme", "/nonexistent.json")
    assert code == 3


def test_random_round_trip(capsys, tmp_path):
    code, out, _ = _run(capsys, "random", "--u", "5", "--constraint", "collinear_subset(4)", "--seed", "3")
    assert code == 0
    path = tmp_path / "z.json"
    path.write_text(out)
    code, out, _ = _run(capsys, "classify", "--scheme", str(path), "--format", "json")
    data = json.loads(out)
    assert data["label"] == "B4" and data["generators"] == [2, 2, 4] and data["syzygies"] == [3, 5]
    assert data["hilbert"][:4] == [0, 0, 2, 5]
    code, out, _ = _run(capsys, "cohomology", "--scheme", str(path), "--c1", "0", "--r", "0", "--format", "json")
    assert code == 0
    assert max(r["h1"] for r in json.loads(out)["rows"]) == 5


def test_random_rational_field(capsys):
    code, out, _ = _run(capsys, "random", "--u", "3", "--field", "q", "--seed", "1")
    Z = ZeroDimScheme.loads(out)
    assert Z.field == QQ and Z.degree == 3


def test_random_bad_constraint(capsys):
    code, _, err = _run(capsys, "random", "--u", "3", "--constraint", "wiggly")
    assert code == 3


def test_classify_text(capsys, tmp_path):
    path = tmp_path / "z.json"
    path.write_text(sample(FP, 3).dumps())
    code, out, _ = _run(capsys, "classify", "--scheme", str(path))
    assert code == 0 and "label      B1" in out


def test_verify_small(capsys):
    code, out, _ = _run(capsys, "verify", "--trials", "5", "--seed", "1")
    assert code == 0
    summary = json.loads(out)
    ids = {c["id"]: c for c in summary["checks"]}
    assert ids["remark_three_points"]["flag"] == 1
    assert ids["ten_cases"]["pass"] == 10
    assert summary["failures"] == []
    assert summary["config"]["seed"] == 1 and summary["config"]["suite"] == "all"


def test_verify_is_byte_identical(capsys):
    _, first, _ = _run(capsys, "verify", "--trials", "4", "--seed", "8", "--suite", "tcv2")
    _, second, _ = _run(capsys, "verify", "--trials", "4", "--seed", "8", "--suite", "tcv2")
    assert first == second


def test_verify_text(capsys):
    code, out, _ = _run(capsys, "verify", "--suite", "remarks", "--format", "text")
    assert code == 0 and "remark_three_points" in out


def test_verify_exit_code_on_failure(capsys, monkeypatch):
    import planebundles.cli as cli
    from planebundles.verifier import CheckReport

    monkeypatch.setattr(cli, "verify_remarks", lambda rng, F: [CheckReport("forced", "x", "fail")])
    code, _, err = _run(capsys, "verify", "--suite", "remarks")
    assert code == 1 and "verification failed" in err


def test_env_prime_override(capsys, monkeypatch):
    monkeypatch.setenv("PLANEBUNDLES_PRIME", "1000003")
    code, out, _ = _run(capsys, "random", "--u", "2")
    assert json.loads(out)["field"] == {"type": "fp", "p": 1000003}
    monkeypatch.setenv("PLANEBUNDLES_PRIME", "12")
    code, _, _ = _run(capsys, "random", "--u", "2")
    assert code == 3
