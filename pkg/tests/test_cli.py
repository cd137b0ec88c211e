import json

import pytest

from constalg.cli import main, parse_generator_product, render_straightened
from constalg.uvconstants import ConstGen


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_kernel_comm_degree_2(capsys):
    code, out, _ = run(capsys, "kernel", "--algebra", "comm", "--d", "2", "--degree", "2")
    assert code == 0
    assert "total dimension: 4" in out


def test_kernel_grass_d1_degree_4(capsys):
    code, out, _ = run(capsys, "kernel", "--algebra", "grass", "--d", "1", "--degree", "4")
    assert code == 0
    assert "total dimension: 2" in out


def test_kernel_meta_degree_2(capsys):
    code, out, _ = run(capsys, "kernel", "--algebra", "meta", "--d", "2", "--degree", "2")
    assert code == 0
    assert "total dimension: 8" in out


def test_kernel_multidegree_and_json(capsys):
    code, out, _ = run(
        capsys,
        "kernel",
        "--algebra",
        "comm",
        "--d",
        "2",
        "--multidegree",
        "1,1",
        "--format",
        "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["command"] == "kernel"
    assert doc["results"][0]["dimension"] == 2


def test_kernel_output_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run(
        capsys,
        "kernel",
        "--algebra",
        "comm",
        "--d",
        "1",
        "--degree",
        "1",
        "--format",
        "json",
        "--output",
        str(target),
    )
    assert code == 0 and out == ""
    doc = json.loads(target.read_text())
    assert doc["total_dimension"] == 1


def test_verify_relations(capsys):
    code, out, _ = run(capsys, "verify", "relations", "--d", "3")
    assert code == 0
    assert "result: PASS" in out


def test_verify_generators_grass(capsys):
    code, out, _ = run(capsys, "verify", "generators", "--algebra", "grass", "--d", "2")
    assert code == 0
    assert "result: PASS" in out


def test_verify_embedding(capsys):
    code, out, _ = run(
        capsys,
        "verify",
        "embedding",
        "--d",
        "2",
        "--degree",
        "3",
        "--cases",
        "25",
    )
    assert code == 0


def test_verify_identities_small(capsys):
    code, out, _ = run(
        capsys, "verify", "identities", "--d", "2", "--cases", "20", "--seed", "1"
    )
    assert code == 0
    assert "result: PASS" in out


def test_verify_failure_exit_code(capsys, monkeypatch):
    from constalg import checks, cli

    def broken(d):
        return [checks.CheckReport("relation-S1", 1, failures=["witness"])]

    monkeypatch.setattr(cli.checks, "check_relations", broken)
    code, out, _ = run(capsys, "verify", "relations", "--d", "2")
    assert code == 1
    assert "result: FAIL" in out


def test_span_comm(capsys):
    code, out, _ = run(capsys, "span", "--algebra", "comm", "--d", "2", "--max-degree", "4")
    assert code == 0
    assert "result: PASS" in out


def test_span_meta_module_reports_gap(capsys):
    code, out, _ = run(
        capsys,
        "span",
        "--algebra",
        "meta",
        "--module",
        "--d",
        "2",
        "--max-degree",
        "4",
    )
    assert code == 1
    assert "MISSING" in out
    code, out, _ = run(
        capsys,
        "span",
        "--algebra",
        "meta",
        "--module",
        "--complete-generators",
        "--d",
        "2",
        "--max-degree",
        "4",
    )
    assert code == 0


def test_span_grass_completion(capsys):
    code, out, _ = run(
        capsys,
        "span",
        "--algebra",
        "grass",
        "--d",
        "2",
        "--max-degree",
        "4",
        "--complete-generators",
    )
    assert code == 0


def test_straighten_examples(capsys):
    code, out, _ = run(capsys, "straighten", "--d", "4", "alpha(1,3)*alpha(2,4)")
    assert code == 0
    assert out.strip() == "alpha(1,2)*alpha(3,4) + alpha(1,4)*alpha(2,3)"
    code, out, _ = run(capsys, "straighten", "--d", "3", "u(2)*alpha(1,3)")
    assert code == 0
    assert out.strip() == "alpha(1,2)*u(3) + alpha(2,3)*u(1)"
    # canonical input comes back unchanged
    code, out, _ = run(capsys, "straighten", "--d", "2", "gamma(1,1)")
    assert code == 0
    assert out.strip() == "gamma(1,1)"


def test_straighten_errors(capsys):
    code, _, err = run(capsys, "straighten", "--d", "2", "alpha(1,3)")
    assert code == 2
    code, _, err = run(capsys, "straighten", "--d", "2", "alpha(1,2)**u(1)")
    assert code == 2


def test_parse_generator_product():
    gens = parse_generator_product("u(2) * alpha(1,3)", 3)
    assert gens == [ConstGen("u", 2), ConstGen("alpha", 1, 3)]
    with pytest.raises(ValueError):
        parse_generator_product("", 2)
    with pytest.raises(ValueError):
        parse_generator_product("u(1) alpha(1,2)", 2)


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["kernel", "--algebra", "bogus"])
    assert exc.value.code == 2
    assert main(["kernel", "--algebra", "comm", "--d", "0"]) == 2


def test_determinism_and_threads(capsys, monkeypatch):
    args = ["span", "--algebra", "comm", "--d", "2", "--max-degree", "4", "--format", "json"]
    code, first, _ = run(capsys, *args)
    code, second, _ = run(capsys, *args)
    assert first == second
    monkeypatch.setenv("NOWICKI_THREADS", "3")
    code, third, _ = run(capsys, *args)
    assert third == first


def test_json_envelope_shape(capsys):
    code, out, _ = run(
        capsys,
        "verify",
        "relations",
        "--d",
        "2",
        "--format",
        "json",
    )
    doc = json.loads(out)
    assert set(doc) >= {"command", "config", "results", "ok"}
    assert doc["ok"] is True
