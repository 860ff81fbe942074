import io
import json
from pathlib import Path

import pytest

from trapcount.cli import SCHEMA, load_config, main
from trapcount.errors import ConfigError

GOLDEN = Path(__file__).parent / "fixtures" / "golden"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def result(*argv):
    code, out, err = run(*argv)
    assert code == 0, err
    doc = json.loads(out)
    assert doc["schema"] == SCHEMA
    return doc["result"]


def test_gt_trivial():
    assert result("gt", "--h", "0", "--n", "3", "--bottom", "1,2,5")["value"] == 1


def test_gt_and_mt_values():
    assert result("gt", "--h", "2", "--bottom", "1,3,4,6")["value"] == 108
    r = result("mt", "--h", "2", "--bottom", "1,3,4,6")
    assert r["value"] == 78 and r["provenance"] == "operator_formula"
    assert result("gt", "--h", "2", "--bottom", "1,3,4,6", "--method", "brute")["value"] == 108


def test_mt_symbolic_matches_golden():
    r = result("mt", "--h", "1", "--n", "4", "--symbolic", "--A", "p0a")
    assert r["polynomial"] + "\n" == (GOLDEN / "mt1_k4.canonical").read_text()
    r = result("mt", "--h", "2", "--n", "4", "--symbolic")
    assert r["polynomial"] + "\n" == (GOLDEN / "mt2_k4.canonical").read_text()


def test_eval_at():
    r = result("mt", "--h", "1", "--symbolic", "--eval-at", "1,2,4")
    assert r["value"] == 5 and r["eval_at"] == [1, 2, 4]


def test_byte_identical_without_timings():
    a = run("mt", "--h", "2", "--n", "3", "--symbolic", "--no-timings")
    b = run("--no-timings", "mt", "--h", "2", "--n", "3", "--symbolic")
    assert a == b and a[0] == 0
    assert "timings" not in json.loads(a[1])


def test_timings_are_separate():
    code, out, _ = run("gt", "--h", "1", "--bottom", "1,2")
    doc = json.loads(out)
    assert set(doc) == {"schema", "command", "result", "timings"}


def test_enumerate_and_asm():
    r = result("enumerate", "--h", "1", "--bottom", "1,2,4", "--monotone", "--list")
    assert r["count"] == 5 and len(r["trapezoids"]) == 5
    r = result("asm", "--n", "3", "--list")
    assert r["count"] == r["formula"] == 7 and r["agree"]
    assert len(r["matrices"]) == 7


def test_pfaffian_command(tmp_path):
    rows = [[1, 2, 3], [4, 5], [6]]
    want = str(1 * 6 - 2 * 5 + 3 * 4)
    for method in ("laplace", "matchings", "elimination"):
        assert result("pfaffian", "--entries", json.dumps(rows), "--method", method)["value"] == want
    f = tmp_path / "rows.json"
    f.write_text(json.dumps([["1/2"], []]))
    assert result("pfaffian", "--file", str(f))["value"] == "1/2"


def test_hidden_command():
    r = result("hidden", "--P", "q_a", "--order", "4", "--dump")
    assert r["constant_term"] == "1" and r["symmetric"] and r["equation"]["passed"]
    assert r["rows"]


def test_verify_single_check():
    r = result("verify", "--check", "bsym", "--params", '{"h": 2}')
    assert r["passed"] and r["reports"][0]["check_id"] == "bsym"


def test_verify_failure_exit_code():
    code, out, _ = run("verify", "--check", "urbanrenewal", "--params", '{"p": 1, "n": 3, "part": 2, "k": [0, 2, 4]}')
    assert code == 1
    assert json.loads(out)["result"]["passed"] is False


def test_selftest():
    code, out, _ = run("selftest")
    assert code == 0
    r = json.loads(out)["result"]
    assert r["passed"] and r["checked"] > 0


def test_text_format():
    code, out, _ = run("gt", "--h", "1", "--bottom", "1,3", "--format", "text")
    assert code == 0 and "value: 3" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["nope"],
        ["gt"],
        ["gt", "--h", "1", "--symbolic", "--bottom", "1,2"],
        ["gt", "--h", "x", "--n", "2"],
        ["mt", "--h", "1", "--bottom", "3,1"],
        ["gt", "--h", "3", "--bottom", "1,2"],
        ["pfaffian", "--entries", "[[1],[2]]"],
        ["verify", "--check", "bsym", "--params", "[]"],
    ],
)
def test_usage_errors(argv):
    code, _, err = run(*argv)
    assert code == 2 and err


def test_resource_cap(tmp_path):
    cfg = tmp_path / "c.conf"
    cfg.write_text("enum_cap = 10\n")
    code, _, err = run("--config", str(cfg), "enumerate", "--h", "2", "--bottom", "1,5,9,14")
    assert code == 3 and "resource" in err


def test_config_file_and_env(tmp_path, monkeypatch):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"output_format": "text", "default_A": "q_b"}))
    monkeypatch.setenv("TRAPCOUNT_CONFIG", str(cfg))
    code, out, _ = run("mt", "--h", "1", "--bottom", "1,2,4")
    assert code == 0 and "A: q_b" in out and "value: 5" in out
    # flags override the file
    code, out, _ = run("mt", "--h", "1", "--bottom", "1,2,4", "--format", "json")
    assert json.loads(out)["result"]["value"] == 5


def test_config_validation(tmp_path):
    bad = tmp_path / "bad.conf"
    bad.write_text("colour = blue\n")
    with pytest.raises(ConfigError):
        load_config(str(bad))
    code, _, _ = run("--config", str(bad), "gt", "--h", "0", "--n", "1")
    assert code == 2
    bad.write_text("pf_cap = 0\n")
    with pytest.raises(ConfigError):
        load_config(str(bad))
    assert load_config(None).default_A == "p0a"
