"""CLI contract: JSON on stdout, exit codes 0/1/2, seeded determinism."""
import json

import pytest

from weyltorus.cli import main

CONFIG = "configs/verify_theta_ratio_n2m5.json"
ORBIT = "configs/orbit_theta_ratio_n2m5.json"


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_lattice_act(capsys):
    code, out = run(capsys, "lattice", "act", "--n", "2", "--m", "5",
                    "--word", "0", "--class", "E")
    assert code == 0
    assert json.loads(out)["coeffs"] == [2, -1, -1, -1, 0, 0]


def test_lattice_act_word_identity(capsys):
    code, out = run(capsys, "lattice", "act", "--n", "2", "--m", "5",
                    "--word", "0,1,2,1", "--class", "E-E_1-E_2")
    assert code == 0
    body = json.loads(out)
    assert body["kind"] == "divisor" and len(body["coeffs"]) == 6


def test_lattice_act_bad_class(capsys):
    code, out = run(capsys, "lattice", "act", "--n", "2", "--m", "5",
                    "--word", "0", "--class", "E+Q")
    assert code == 2
    assert json.loads(out)["kind"] == "parse"


def test_lattice_act_bad_word(capsys):
    code, out = run(capsys, "lattice", "act", "--n", "2", "--m", "5",
                    "--word", "0,9", "--class", "E")
    assert code == 2


def test_lattice_matrix(capsys):
    code, out = run(capsys, "lattice", "matrix", "--n", "2", "--m", "5",
                    "--word", "0,1", "--pullback")
    assert code == 0
    body = json.loads(out)
    assert body["direction"] == "pullback"
    assert body["determinant"] in (-1, 1)
    assert len(body["rows"]) == 6


def test_lattice_dynkin(capsys):
    code, out = run(capsys, "lattice", "dynkin", "--n", "3", "--m", "6")
    assert code == 0
    assert len(json.loads(out)["adjacency"]) == 6


def test_lattice_orbit(capsys):
    code, out = run(capsys, "lattice", "orbit", "--n", "2", "--m", "5",
                    "--depth", "1", "--class", "E-E_1-E_2-E_3")
    assert code == 0
    body = json.loads(out)
    assert body["member"] is True and body["count"] >= 1


def test_orbit_stream(capsys):
    code, out = run(capsys, "orbit", "--params", ORBIT, "--steps", "2")
    assert code == 0
    lines = [json.loads(line) for line in out.strip().splitlines()]
    assert [s["step"] for s in lines] == [0, 1, 2]
    assert all(len(s["u"]) == 5 for s in lines)


def test_orbit_missing_file(capsys):
    code, out = run(capsys, "orbit", "--params", "/no/such/file.json")
    assert code == 2
    assert json.loads(out)["kind"] == "parse"


def test_orbit_malformed_json(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, out = run(capsys, "orbit", "--params", str(bad))
    assert code == 2


def test_verify_bundled_config(capsys):
    code, out = run(capsys, "verify", "--config", CONFIG)
    assert code == 0
    body = json.loads(out)
    assert body["passed"] is True
    assert body["reports"]["word"]["residual"] < 1e-8


def test_verify_compare_equal_words(capsys):
    code, out = run(capsys, "verify", "--config", CONFIG,
                    "--word", "1,2,1", "--compare", "2,1,2", "--checks", "")
    assert code == 0
    assert json.loads(out)["reports"]["compare"]["equal"] is True


def test_verify_compare_unequal_words(capsys):
    code, out = run(capsys, "verify", "--config", CONFIG,
                    "--word", "0", "--compare", "1", "--checks", "")
    assert code == 1
    assert json.loads(out)["passed"] is False


def test_verify_random_seed_deterministic(capsys):
    args = ("verify", "--n", "2", "--m", "5", "--tau", "0.31+1.17i",
            "--random", "--seed", "7", "--word", "0,2")
    code_a, out_a = run(capsys, *args)
    code_b, out_b = run(capsys, *args)
    assert code_a == code_b == 0
    assert out_a == out_b
    _, out_c = run(capsys, *args[:-3], "8", "--word", "0,2")
    assert out_a != out_c


def test_verify_weierstrass_random(capsys):
    code, out = run(capsys, "verify", "--n", "2", "--m", "5", "--tau", "1i",
                    "--variant", "weierstrass", "--random", "--seed", "1",
                    "--word", "0", "--checks", "word,decomposition")
    assert code == 0
    body = json.loads(out)
    assert body["reports"]["decomposition"]["passed"] is True


def test_verify_bad_tau(capsys):
    code, out = run(capsys, "verify", "--n", "2", "--m", "5", "--tau", "0.5-1i",
                    "--random", "--word", "0")
    assert code == 1
    assert json.loads(out)["kind"] == "DomainError"


def test_verify_unknown_flag_value(capsys):
    code, out = run(capsys, "verify", "--config", CONFIG, "--word", "zebra")
    assert code == 2


def test_help_lists_subcommands(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--help"])
    assert exc.value.code == 0
    out = capsys.readouterr().out
    for cmd in ("lattice", "orbit", "verify", "serve"):
        assert cmd in out
