import json

import pytest

from sftprop.cli import EXIT_INPUT_ERROR, EXIT_USAGE, main


@pytest.fixture
def mats(tmp_path):
    files = {
        "fib": "1 1\n1 0\n",
        "two": "2\n",
        "three": "3\n",
        "ones": "1 1\n1 1\n",
        "empty": "",
        "bad": "1 x\n",
        "rect": "1 1\n",
        "poly": "t 2t^2+t\n0 1\n",
    }
    out = {}
    for name, text in files.items():
        p = tmp_path / f"{name}.mat"
        p.write_text(text)
        out[name] = str(p)
    out["dir"] = tmp_path
    return out


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_invariants_text(capsys, mats):
    code, out, _ = run(capsys, "invariants", mats["fib"])
    assert code == 0
    assert "zeta: 1 - t - t^2" in out
    assert "bowen_franks: trivial" in out
    code, out, _ = run(capsys, "invariants", mats["two"])
    assert "bowen_franks: trivial" in out and "zeta: 1 - 2*t" in out
    assert "semimodule: ⟨x | 2tx = x⟩" in out


def test_invariants_json_is_byte_identical(capsys, mats):
    argv = ("invariants", mats["fib"], "--monoid", "z3", "--modulus", "5", "--format", "json")
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
    doc = json.loads(first)
    assert doc["schema"] == 1 and doc["zeta"] == "1 - t - t^2"
    assert doc["fixed_counts"][0]["monoid"] == "z3"


def test_invariants_with_monoid_file(capsys, mats):
    path = mats["dir"] / "z2.json"
    path.write_text(json.dumps({"elements": ["0", "1"], "table": [[0, 1], [1, 0]], "unit": 0}))
    code, out, _ = run(capsys, "invariants", mats["two"], "--monoid", str(path))
    assert code == 0
    assert f"fixed_count[{path}]: 1" in out


def test_input_errors(capsys, mats):
    code, _, err = run(capsys, "invariants", mats["empty"])
    assert code == EXIT_INPUT_ERROR and "empty matrix document" in err
    code, _, err = run(capsys, "zeta", mats["bad"])
    assert code == EXIT_INPUT_ERROR and "line 1, column 3" in err
    code, _, err = run(capsys, "bf", mats["rect"])
    assert code == EXIT_INPUT_ERROR
    code, _, err = run(capsys, "zeta", str(mats["dir"] / "missing.mat"))
    assert code == EXIT_INPUT_ERROR
    code, _, err = run(capsys, "invariants", mats["two"], "--lambda", "1")
    assert code == EXIT_INPUT_ERROR and "--modulus" in err


def test_usage_errors(capsys, mats):
    assert run(capsys)[0] == EXIT_USAGE
    assert run(capsys, "frobnicate")[0] == EXIT_USAGE
    assert run(capsys, "compare", mats["two"])[0] == EXIT_USAGE
    assert run(capsys, "compare", mats["two"], mats["two"], "--relation", "conjugacy")[0] == EXIT_USAGE
    assert run(capsys, "zeta", mats["two"], "--max-steps", "-1")[0] == EXIT_USAGE
    assert run(capsys, "--help")[0] == 0


def test_global_flags_before_or_after_subcommand(capsys, mats):
    a = run(capsys, "--format", "json", "zeta", mats["two"])
    b = run(capsys, "zeta", mats["two"], "--format", "json")
    assert a == b
    assert json.loads(a[1]) == {"schema": 1, "zeta": "1 - 2*t"}


def test_compare_exit_codes(capsys, mats):
    cert_path = mats["dir"] / "cert.json"
    code, out, _ = run(capsys, "compare", mats["two"], mats["ones"], "--certificate", str(cert_path))
    assert code == 0 and "1 steps" in out
    assert json.loads(cert_path.read_text())["steps"][0]["type"] == "sse.factor"
    code, out, _ = run(capsys, "compare", mats["two"], mats["three"])
    assert code == 1 and "zeta" in out
    code, out, _ = run(capsys, "compare", mats["two"], mats["two"], "--format", "json")
    assert code == 0 and json.loads(out)["steps"] == 0
    code, out, _ = run(capsys, "compare", mats["two"], mats["ones"], "--max-steps", "0")
    assert code == 2 and "unknown within budget" in out


def test_compare_flow(capsys, mats):
    code, out, _ = run(capsys, "compare", mats["two"], mats["three"], "--relation", "flow")
    assert code == 1 and "bowen_franks" in out


def test_search_commands(capsys, mats):
    code, out, _ = run(capsys, "sse-search", mats["two"], mats["ones"], "--format", "json")
    assert code == 0 and json.loads(out)["found"] is True
    code, out, _ = run(capsys, "flow-search", mats["two"], mats["three"], "--max-steps", "1", "--format", "json")
    assert code == 2 and json.loads(out)["found"] is False


def test_verify_round_trip_and_tampering(capsys, mats):
    cert_path = mats["dir"] / "cert.json"
    run(capsys, "sse-search", mats["two"], mats["ones"], "--certificate", str(cert_path))
    code, out, _ = run(capsys, "verify", str(cert_path))
    assert code == 0 and out.startswith("ok")
    code, _, _ = run(capsys, "verify", str(cert_path), "--source", mats["two"], "--target", mats["ones"])
    assert code == 0
    code, out, _ = run(capsys, "verify", str(cert_path), "--target", mats["three"])
    assert code == 1 and "target" in out
    doc = json.loads(cert_path.read_text())
    doc["steps"][0]["S"]["text"] = "2\n1"
    bad = mats["dir"] / "bad_cert.json"
    bad.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "verify", str(bad), "--format", "json")
    result = json.loads(out)
    assert code == 1 and result["failed_step"] == 0 and result["ok"] is False
    (mats["dir"] / "junk.json").write_text("{")
    assert run(capsys, "verify", str(mats["dir"] / "junk.json"))[0] == EXIT_INPUT_ERROR


def test_eval_diagram(capsys, mats, monkeypatch):
    d = mats["dir"]
    (d / "unit.diag").write_text("(c mu (t eta id))")
    code, out, _ = run(capsys, "eval-diagram", str(d / "unit.diag"))
    assert code == 0 and out == "1\n"
    (d / "yank.diag").write_text("(tr sigma)")
    code, out, _ = run(capsys, "eval-diagram", str(d / "yank.diag"))
    assert out == "pair with 1 dashed wires\n0 1\n1 0\nmodel value: id\n"
    (d / "bad.diag").write_text("(c mu mu)")
    code, _, err = run(capsys, "eval-diagram", str(d / "bad.diag"))
    assert code == EXIT_INPUT_ERROR and "root" in err
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO("(t h h)"))
    code, out, _ = run(capsys, "eval-diagram", "-")
    assert out == "t 0\n0 t\n"


def test_eval_worked_example(capsys):
    from importlib import resources

    path = resources.files("sftprop").joinpath("data", "worked_example.diag")
    code, out, _ = run(capsys, "eval-diagram", str(path))
    assert code == 0
    assert out.splitlines() == ["0 1 0 0 t", "0 0 0 0 0", "0 0 0 0 1", "0 t^2+t 1 0 0"]


def test_fixed_count(capsys, mats):
    code, out, _ = run(capsys, "fixed-count", mats["two"], "--monoid", "z2")
    assert code == 0 and out.endswith("count: 1\n")
    code, out, _ = run(capsys, "fixed-count", mats["fib"], "--monoid", "trivial")
    assert out.endswith("count: 1\n")
    code, out, _ = run(capsys, "fixed-count", mats["fib"], "--monoid", "z3", "--hom", "0,2,1", "--format", "json")
    doc = json.loads(out)
    assert doc["interpret_matrix"] == doc["count_fixed_points"]
    code, _, err = run(capsys, "fixed-count", mats["two"], "--monoid", "z3", "--hom", "1,1,1")
    assert code == EXIT_INPUT_ERROR
    code, _, err = run(capsys, "fixed-count", mats["fib"], "--monoid", "z4", "--budget", "3")
    assert code == EXIT_INPUT_ERROR and "budget" in err


def test_ring_flag(capsys, mats):
    code, out, _ = run(capsys, "zeta", mats["poly"], "--ring", "zplus_t")
    assert code == EXIT_INPUT_ERROR
