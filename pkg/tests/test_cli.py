"""The thin client: flag marshalling, output determinism, exit codes."""

import json

import pytest
from click.testing import CliRunner

from metaplectic.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


def invoke(runner, *args):
    result = runner.invoke(main, list(args), catch_exceptions=False)
    return result


def test_hilbert_command(runner):
    res = invoke(runner, "hilbert", "--place", "q2", "--a", "2", "--b", "5")
    assert res.exit_code == 0
    assert json.loads(res.output)["value"] == -1


def test_weil_command(runner):
    res = invoke(runner, "weil", "--place", "q2", "--a", "3", "--bruteforce")
    body = json.loads(res.output)
    assert body["gamma"] == "-i"


def test_table_command(runner):
    res = invoke(runner, "table", "--kind", "q2-weil")
    assert json.loads(res.output)["table"]["-10"] == "i"


def test_table_format(runner):
    res = invoke(runner, "--format", "table", "hilbert",
                 "--place", "q3", "--a", "3", "--b", "3")
    assert "value" in res.output and "{" not in res.output


def test_matrix_commands(runner, tmp_path):
    g = tmp_path / "g.json"
    g.write_text(json.dumps([["0", "-1"], ["1", "0"]]))
    h = tmp_path / "h.json"
    h.write_text(json.dumps([["1", "0"], ["2", "1"]]))
    res = invoke(runner, "cocycle", "--place", "q3", "--g", str(g), "--h", str(h))
    assert res.exit_code == 0
    assert json.loads(res.output)["value"] in (1, -1)
    res = invoke(runner, "bruhat", "--place", "q3", "--g", str(h))
    assert json.loads(res.output)["cell_index"] == 1
    elts = tmp_path / "elts.json"
    elts.write_text(json.dumps([
        {"g": [["0", "-1"], ["1", "0"]], "eps": 1},
        {"g": [["0", "1"], ["-1", "0"]], "eps": 1},
    ]))
    res = invoke(runner, "mp-mul", "--place", "q3", "--elements", str(elts))
    assert json.loads(res.output)["g"] == [["1", "0"], ["0", "1"]]


def test_local_coef_command(runner):
    res = invoke(runner, "local-coef", "--place", "q3", "--char-kind", "legendre",
                 "--conductor", "1", "--s", "0.6,0.2")
    body = json.loads(res.output)
    assert body["rel_error"] < 1e-8


def test_gamma_and_reducibility(runner):
    res = invoke(runner, "gamma", "--kind", "sym2", "--params", "0.6,0.8;0.28,0.96")
    assert json.loads(res.output)["degree"] == 6
    res = invoke(runner, "reducibility", "--alphas", "0.6,0.8;0.6,0.8;quadratic")
    assert json.loads(res.output)["verdict"] == "irreducible"


def test_domain_error_exit_code(runner):
    res = invoke(runner, "hilbert", "--place", "q2", "--a", "0", "--b", "1")
    assert res.exit_code == 1
    assert "error" in json.loads(res.output)


def test_verify_command_and_determinism(runner):
    args = ["verify", "--suite", "reducibility", "--seed", "3", "--trials", "15"]
    first = invoke(runner, *args)
    second = invoke(runner, *args)
    assert first.exit_code == 0
    assert first.output == second.output
    body = json.loads(first.output)
    assert body["passed"] is True


def test_verify_unknown_suite(runner):
    res = invoke(runner, "verify", "--suite", "nope", "--seed", "1")
    assert res.exit_code == 1


def test_verify_rank_restriction(runner):
    res = invoke(runner, "verify", "--suite", "cocycle", "--seed", "5",
                 "--trials", "5", "--n", "1", "--place", "q3")
    assert res.exit_code == 0
    body = json.loads(res.output)
    assert body["passed"] is True
