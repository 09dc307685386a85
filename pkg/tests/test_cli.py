"""Command-line behaviour: outputs, exit codes, determinism and configuration."""
import json

import numpy as np
import pytest

from weberquartic import cli, formats
from weberquartic.errors import FormatError
from weberquartic.siegel import random_tau, validate_siegel


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def tau_file(tmp_path):
    p = tmp_path / "tau.json"
    p.write_text(formats.to_text(formats.dump_tau(random_tau(31))))
    return p


@pytest.fixture
def bitangent_file(tmp_path, tau_file, capsys):
    p = tmp_path / "b.json"
    assert run(capsys, "bitangents", tau_file, "-o", p)[0] == 0
    return p


def test_bitangents_command(bitangent_file):
    data = json.loads(bitangent_file.read_text())
    assert len(data["bitangents"]) == 28
    assert all(isinstance(x, list) and len(x) == 2 for e in data["bitangents"] for x in e["coords"])


def test_bitangents_rejects_non_symmetric(tmp_path, capsys):
    obj = formats.dump_tau(random_tau(31))
    obj["tau"][0][2] = [0.4, 0.0]
    p = tmp_path / "ns.json"
    p.write_text(json.dumps(obj))
    code, out, _ = run(capsys, "bitangents", p, "--json")
    assert code == 2
    assert json.loads(out)["error"] == "not_symmetric"


def test_bitangents_hyperelliptic_exit(tmp_path, capsys):
    # diagonal period matrices are products of elliptic curves: some even constants vanish
    p = tmp_path / "diag.json"
    p.write_text(formats.to_text(formats.dump_tau(validate_siegel(np.diag([1j, 1.2j, 0.9j])))))
    code, _, err = run(capsys, "bitangents", p)
    assert code == 3
    assert "vanishes" in err


def test_weber_verify_random(capsys):
    code, out, _ = run(capsys, "weber-verify", "--random", 50, "--seed", 1, "--json")
    assert code == 0
    data = json.loads(out)
    assert len(data["trials"]) == 50
    assert max(t["residual"] for t in data["trials"]) < 1e-8
    again = run(capsys, "weber-verify", "--random", 50, "--seed", 1, "--json")[1]
    assert again == out


def test_weber_verify_corruption(capsys, tau_file):
    code, out, _ = run(capsys, "weber-verify", tau_file, "--random", 3, "--inject-corruption")
    assert code == 1
    assert "FAILED at trial 0" in out


def test_fingerprint_and_compare(tmp_path, bitangent_file, tau_file, capsys):
    code, out, _ = run(capsys, "fingerprint", bitangent_file, "--json")
    assert code == 0 and len(json.loads(out)["quotients"]) == 36

    rng = np.random.default_rng(0)
    b = formats.load_bitangents(formats.read_json(bitangent_file))
    scaled = b.map_coords(lambda n, v: v * (rng.uniform(0.1, 10) + 1j * rng.uniform()))
    sp = tmp_path / "scaled.json"
    sp.write_text(formats.to_text(formats.dump_bitangents(scaled)))
    code, out, _ = run(capsys, "compare", bitangent_file, sp)
    assert code == 0 and out.startswith("SAME")

    other_tau = tmp_path / "other_tau.json"
    other_tau.write_text(formats.to_text(formats.dump_tau(random_tau(32))))
    other = tmp_path / "other.json"
    run(capsys, "bitangents", other_tau, "-o", other)
    code, out, _ = run(capsys, "compare", bitangent_file, other, "--json")
    assert code == 1 and json.loads(out)["verdict"] == "DIFFERENT"


def test_compare_malformed(tmp_path, bitangent_file, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    code, out, _ = run(capsys, "compare", bad, bitangent_file, "--json")
    assert code >= 2
    assert json.loads(out)["error"] == "malformed_input"


def test_aronhold_commands(capsys):
    code, out, _ = run(capsys, "aronhold", "enumerate")
    assert code == 0 and len(out.splitlines()) == 288
    code, out, _ = run(capsys, "aronhold", "find", "--m1", "000|000", "--m2", "100|000", "--json")
    assert code == 0 and len(json.loads(out)) == 1
    assert json.loads(out)[0]["sum"] == "000|000"
    assert run(capsys, "aronhold", "find", "--m1", "100|100", "--m2", "000|000")[0] != 0
    assert run(capsys, "aronhold", "find", "--m1", "10|100", "--m2", "000|000")[0] == 2


def test_transform_check(capsys):
    code, out, _ = run(capsys, "transform-check", "--seed", 7, "--json")
    assert code == 0
    data = json.loads(out)
    assert data["ok"] and len(data["cases"]) == 30
    assert max(max(c["theta"], c["gradient"], c["jacobian"]) for c in data["cases"]) < 1e-8


def test_theta_eval(tau_file, capsys):
    code, out, _ = run(capsys, "theta", "eval", "--char", "000|000", "--tau", tau_file, "--json")
    assert code == 0
    data = json.loads(out)
    assert data["char"] == "000|000" and data["tail_bound"] < 1e-12
    code, out, _ = run(capsys, "theta", "eval", "--char", "100|100", "--tau", tau_file,
                       "--z", "[[0.1, 0], [0, 0], [0, 0.2]]", "--json")
    assert code == 0 and abs(complex(*json.loads(out)["value"])) > 0
    assert run(capsys, "theta", "eval", "--char", "1x0|100", "--tau", tau_file)[0] == 2
    assert run(capsys, "theta", "eval", "--char", "100|100", "--tau", tau_file, "--z", "oops")[0] == 2


def test_random_tau_deterministic(capsys):
    a = run(capsys, "random-tau", "--seed", 5)[1]
    b = run(capsys, "random-tau", "--seed", 5)[1]
    assert a == b
    assert formats.load_tau(json.loads(a)).lambda_min >= 0.7


def test_config_precedence(monkeypatch):
    parser = cli.build_parser()
    monkeypatch.setenv("WEBERQ_TOL", "1e-10")
    monkeypatch.setenv("WEBERQ_COMPARE_TOL", "1e-5")
    cfg = cli.config_from_args(parser.parse_args(["selftest"]))
    assert (cfg.tol, cfg.compare_tol) == (1e-10, 1e-5)
    cfg = cli.config_from_args(parser.parse_args(["selftest", "--tol", "1e-13"]))
    assert cfg.tol == 1e-13
    monkeypatch.setenv("WEBERQ_SEED", "nope")
    with pytest.raises(FormatError):
        cli.config_from_args(parser.parse_args(["selftest"]))


def test_run_config_invariants():
    with pytest.raises(FormatError):
        cli.RunConfig(tol=0)
    with pytest.raises(FormatError):
        cli.RunConfig(tol=1e-6, compare_tol=1e-6)
    assert cli.RunConfig().compare_tol > cli.RunConfig().tol


def test_selftest_scoreboard(capsys):
    code, out, _ = run(capsys, "selftest", "--json")
    data = json.loads(out)
    assert data["total"] == 8 and len(data["criteria"]) == 8
    assert code == (0 if data["passed"] == data["total"] else 1)
