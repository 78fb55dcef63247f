import json

import pytest

from quiverdyn import fixtures
from quiverdyn.cli import EXIT_DOMAIN, EXIT_OK, EXIT_PROPERTY, EXIT_USAGE, main
from quiverdyn.io import from_dict


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_fixture_dump(capsys, tmp_path):
    code, out, _ = run(capsys, "--fixtures", str(tmp_path))
    assert code == EXIT_OK
    names = {p.name for p in tmp_path.iterdir()}
    assert {"fig1l.json", "fig1r.json", "ce4.json"} <= names
    assert len(out.splitlines()) == len(fixtures.FIXTURES)


def test_mutate_fig1l_at_3_gives_fig1r(capsys, tmp_fixtures):
    code, out, _ = run(capsys, "mutate", str(tmp_fixtures / "fig1l.json"), "--at", "3")
    assert code == EXIT_OK
    assert from_dict(json.loads(out)).b == fixtures.fig1r().b


def test_mutate_along_word(capsys):
    code, out, _ = run(capsys, "mutate", "@CE4", "--word", ",".join(fixtures.CE4_CYCLE))
    assert code == EXIT_OK and from_dict(json.loads(out)).b == fixtures.ce4().b


def test_validate_and_text_output(capsys):
    code, out, _ = run(capsys, "--format", "text", "validate", "@FIG6")
    assert code == EXIT_OK
    assert "valid: True" in out and "rank: 3" in out


def test_classify_json_and_dot(capsys):
    code, out, _ = run(capsys, "classify", "@FIG1L")
    info = json.loads(out)
    assert code == EXIT_OK and info["ice_fork"] == {"por": "3"}
    code, out, _ = run(capsys, "--format", "dot", "classify", "@FIG1L")
    assert out.startswith("digraph")


def test_sigma_command(capsys):
    code, out, _ = run(capsys, "sigma", "@MARKOV", "--word", "1,2", "--a", "1,0,-1", "--b", "1,1,-1")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["equal"] == (data["sigma_a"] == data["sigma_b"])
    assert isinstance(data["two_frozen_sign_coherent"], bool)


def test_explore_and_budget(capsys, tmp_path):
    out_file = tmp_path / "rec.jsonl"
    code, out, _ = run(capsys, "explore", "@FIG1L", "--depth", "3", "--out", str(out_file))
    assert code == EXIT_OK
    summary = json.loads(out)
    assert summary["layers"][-1]["N"] == len(out_file.read_text().splitlines())
    code, out, err = run(capsys, "explore", "@FIG1L", "--depth", "6", "--budget", "20")
    assert code == EXIT_DOMAIN
    assert json.loads(out)["status"] == "budget_exhausted"
    assert json.loads(err)["error"] == "BudgetExhausted"


def test_walk_is_reproducible(capsys, tmp_path):
    args = ("walk", "@FIG1L", "--steps", "50", "--window", "10", "--trials", "5", "--seed", "4")
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, "--workers", "2", *args)
    assert a == b
    code, out, _ = run(capsys, "walk", "@CE4", "--steps", "28", "--window", "14", "--seed", "0",
                       "--word", "| " + ",".join(fixtures.CE4_CYCLE))
    assert code == EXIT_OK and json.loads(out)["fraction_coherent_suffix"] == 0.0


def test_verify_exit_codes(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "--property", "P11", "--trials", "1", "--seed", "0")
    assert code == EXIT_OK and json.loads(out)["failed"] == 0
    cex = tmp_path / "cex.json"
    code, out, _ = run(capsys, "verify", "--property", "P18", "--trials", "50", "--seed", "1",
                       "--counterexample", str(cex))
    assert code == EXIT_PROPERTY
    assert json.loads(cex.read_text())["quiver"]["frozen"] == ["u"]


def test_verify_custom_generator(capsys):
    code, out, _ = run(capsys, "verify", "--property", "P1", "--trials", "3", "--seed", "2",
                       "--gen", "family=Rank3,m=2")
    assert code == EXIT_OK
    assert json.loads(out)["config"]["family"] == "Rank3"


@pytest.mark.parametrize("argv", [
    [],
    ["mutate", "@FIG1L"],
    ["walk", "@FIG1L", "--steps", "10"],
    ["--format", "yaml", "validate", "@FIG1L"],
    ["bogus"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_USAGE and "usage" in err


@pytest.mark.parametrize("argv", [
    ["validate", "@NOPE"],
    ["validate", "/no/such/file.json"],
    ["mutate", "@FIG1L", "--at", "u"],
    ["verify", "--property", "P99", "--seed", "0"],
    ["walk", "@MARKOV", "--steps", "5", "--seed", "0"],
])
def test_domain_errors_are_json(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_DOMAIN
    assert set(json.loads(err)) >= {"error", "message"}


def test_config_file_supplies_defaults(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"format": "text", "trials": 2}))
    code, out, _ = run(capsys, "--config", str(cfg), "walk", "@FIG1L", "--steps", "20",
                       "--window", "5", "--seed", "1")
    assert code == EXIT_OK
    assert "trials: 2" in out or "'trials': 2" in out or '"trials": 2' in out
