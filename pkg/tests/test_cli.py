import json

from kvquad import KVSolution, bch_multi, kv1_residual
from kvquad.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_bch_command(capsys):
    code, out, _ = run(capsys, "bch", "--arity", "2", "--order", "3")
    assert code == 0
    data = json.loads(out)
    assert data == bch_multi(2, 3).to_json_dict()
    coeffs = {t["word"]: t["coeff"] for t in data["terms"]}
    assert coeffs["ab"] == "1/2"
    assert coeffs["aab"] == "1/12"
    assert coeffs["abb"] == "1/12"


def test_bch_rejects_bad_order(capsys):
    code, _, err = run(capsys, "bch", "--order", "0")
    assert code == 2
    assert "order" in err


def test_solve_kv_order_zero_is_usage_error(capsys):
    code, _, _ = run(capsys, "solve-kv", "--order", "0")
    assert code == 2


def test_solve_kv_roundtrip(tmp_path, capsys):
    out_file = tmp_path / "solution.json"
    code, _, _ = run(capsys, "solve-kv", "--order", "5", "--out", str(out_file))
    assert code == 0
    loaded = KVSolution.from_json_dict(json.loads(out_file.read_text()))
    assert loaded.order == 5
    assert kv1_residual(loaded).is_zero()


def test_solve_kv_gauge_family(capsys):
    code, out, _ = run(capsys, "solve-kv", "--order", "4", "--gauge", "2")
    assert code == 0
    family = json.loads(out)["family"]
    assert len(family) == 3
    for member in family:
        assert kv1_residual(KVSolution.from_json_dict(member)).is_zero()


def test_verify_single_suite(capsys):
    code, out, _ = run(capsys, "verify", "--order", "4", "--suite", "series")
    assert code == 0
    assert "series: pass" in out


def test_verify_homo_suite_json(capsys):
    code, out, _ = run(capsys, "verify", "--order", "4", "--suite", "homo", "--json")
    assert code == 0
    lines = [json.loads(line) for line in out.strip().splitlines()]
    assert {line["check"] for line in lines} == {"homo"}
    assert {line["degree"] for line in lines} == {2, 3, 4}
    assert all(line["status"] == "pass" for line in lines)


def test_verify_unknown_suite(capsys):
    code, _, _ = run(capsys, "verify", "--suite", "bogus")
    assert code == 2


def test_verify_corrupted_solution_fails_with_witness(tmp_path, capsys):
    out_file = tmp_path / "solution.json"
    run(capsys, "solve-kv", "--order", "5", "--out", str(out_file))
    data = json.loads(out_file.read_text())
    data["A"]["terms"][0]["coeff"] = "9/7"
    out_file.write_text(json.dumps(data))
    code, out, _ = run(capsys, "verify", "--order", "5", "--suite", "theorem",
                       "--solution", str(out_file), "--json")
    assert code == 1
    lines = [json.loads(line) for line in out.strip().splitlines()]
    failing = [line for line in lines if line["status"] == "fail"]
    assert failing
    assert all(line["witness"]["item"] for line in failing if "witness" in line)


def test_verify_loaded_solution_passes(tmp_path, capsys):
    out_file = tmp_path / "solution.json"
    run(capsys, "solve-kv", "--order", "5", "--out", str(out_file))
    code, out, _ = run(capsys, "verify", "--suite", "series",
                       "--solution", str(out_file))
    assert code == 0


def test_missing_solution_file(capsys):
    code, _, err = run(capsys, "verify", "--suite", "series", "--solution", "/nonexistent.json")
    assert code == 2
    assert "error" in err
