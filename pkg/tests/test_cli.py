import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from wittiso.cli import DEFAULT_SEED, main
from wittiso.witt_polynomials import cache_path

SCHEMA = json.loads(resources.files("wittiso").joinpath("schemas/cli_output.schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    records = [json.loads(line) for line in out.splitlines() if line.strip()]
    for rec in records:
        jsonschema.validate(rec, SCHEMA)
    return code, records, err


@pytest.mark.parametrize("argv,expected", [
    (["alpha", "--p", "2", "--n", "3", "3*[1]"], "(1, 1, 0)"),
    (["alpha", "--p", "2", "--n", "2", "3*[1]"], "(1, 1)"),
    (["alpha", "--p", "3", "--n", "2", "5*[1]"], "(2, 2)"),
    (["alpha", "--p", "3", "--n", "3", "5*[1]"], "(2, 2, 1)"),
    (["alpha", "--p", "2", "--n", "3", "--capped", "-1"], "(1, 1, 1)"),
    (["oracle", "--p", "3", "--n", "3", "5"], "(2, 2, 1)"),
    (["oracle", "--p", "3", "--n", "5", "5"], "(2, 2, 1, 0, 0)"),
    (["delta", "--p", "2", "2*[1]"], "-1*[1]"),
    (["delta", "--p", "2", "3*[1]"], "-3*[1]"),
    (["beta", "--p", "3", "(0, 1)"], "1*[0] + 3*[1]"),
    (["beta", "--p", "2", "--e", "2", "([0,1], [0,1])"], "1*[[0,1]] + 2*[[1,1]]"),
    (["alpha", "--p", "2", "--e", "2", "--mod", "[1,1,1]", "--n", "1", "[[0,1]] + [[1,1]]"],
     "([1,0])"),
])
def test_text_output(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out.strip() == expected


def test_product_algebra(capsys):
    code, recs, _ = run_json(capsys, "alpha", "--p", "2", "--product", "e=1", "--product",
                             "e=2,mod=[1,1,1]", "--n", "2", "3*[(1; [0,1])]")
    assert code == 0
    assert recs[0]["components"] == ["(1; [0,1])", "(1; [1,1])"]
    assert recs[0]["n"] == 2 and recs[0]["p"] == 2


def test_json_records(capsys):
    code, recs, _ = run_json(capsys, "alpha", "--p", "2", "--n", "3", "3*[1]")
    assert code == 0
    assert recs == [{"command": "alpha", "algebra": "p=2,e=1,mod=[0,1]", "input": "3*[1]",
                     "p": 2, "n": 3, "components": ["1", "1", "0"]}]
    code, recs, _ = run_json(capsys, "delta", "--p", "2", "2*[1]")
    assert recs[0]["element"] == "-1*[1]"


@pytest.mark.parametrize("argv,code,kind", [
    (["alpha", "--p", "3", "--n", "5", "[1]"], 2, "unsupported"),
    (["alpha", "--p", "2", "--n", "4", "[1]"], 2, "unsupported"),
    (["wittpoly", "--p", "13", "--n", "4"], 2, "unsupported"),
    (["alpha", "--p", "2", "--n", "3", "2*["], 1, "parse"),
    (["alpha", "--p", "4", "--n", "3", "[1]"], 1, "usage"),
    (["alpha", "--p", "2", "--e", "2", "--mod", "[1,0,1]", "--n", "1", "[1]"], 1, "usage"),
    (["alpha", "--p", "2", "[1]"], 1, "usage"),
    (["alpha", "--p", "2", "--n", "0", "[1]"], 1, "usage"),
    (["delta", "[1]"], 1, "usage"),
    (["beta", "--p", "2", "--n", "3", "(1, 0)"], 1, "usage"),
])
def test_error_exit_codes(capsys, argv, code, kind):
    got, recs, err = run_json(capsys, *argv)
    assert got == code
    assert err.startswith("error:")
    assert recs[-1]["error"] == kind and recs[-1]["exit_code"] == code


def test_unsupported_names_hypothesis(capsys):
    code, _, err = run(capsys, "alpha", "--p", "3", "--n", "5", "[1]")
    assert code == 2 and "p >= n" in err


def test_parse_error_offset(capsys):
    code, recs, err = run_json(capsys, "alpha", "--p", "2", "--n", "3", "2*[")
    assert code == 1 and recs[-1]["offset"] == 3
    assert "offset 3" in err


def test_argparse_errors_exit_1(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["check", "--mutate", "nonsense"])
    assert exc.value.code == 1


def test_check_default_seed_is_echoed(capsys):
    code, out, _ = run(capsys, "check", "--p", "2", "--samples", "3")
    assert code == 0
    assert out.splitlines()[0].startswith(f"seed {DEFAULT_SEED}")
    assert out.strip().endswith("all properties hold")


def test_check_seed_and_samples(capsys):
    code, recs, _ = run_json(capsys, "check", "--seed", "42", "--samples", "10")
    assert code == 0
    report = recs[0]
    assert report["seed"] == 42 and report["samples"] == 10 and report["passed"]
    names = [p["name"] for p in report["properties"]]
    assert names == sorted(names)
    assert all(p["samples"] == 10 for p in report["properties"])


def test_check_is_reproducible(capsys):
    _, first, _ = run_json(capsys, "check", "--seed", "7", "--samples", "4", "--p", "3")
    _, second, _ = run_json(capsys, "check", "--seed", "7", "--samples", "4", "--p", "3")
    assert first == second


def test_check_mutation_detected(capsys):
    code, recs, _ = run_json(capsys, "check", "--samples", "5", "--mutate", "sign-flip-alpha3")
    assert code == 3
    failed = {p["name"]: p for p in recs[0]["properties"] if not p["passed"]}
    assert "witt_core.sign_necessity" in failed
    assert "witt_core.oracle_equivalence" in failed
    assert failed["witt_core.sign_necessity"]["counterexample"]


def test_check_mutation_text(capsys):
    code, out, _ = run(capsys, "check", "--samples", "3", "--mutate", "sign-flip-alpha3")
    assert code == 3
    assert "FAIL  witt_core.sign_necessity" in out and "counterexample:" in out


def test_wittpoly_output(capsys):
    code, out, _ = run(capsys, "wittpoly", "--p", "2", "--n", "2")
    assert code == 0
    assert "S 1: 1 x1 ; 1 y1 ; -1 x0 y0" in out.splitlines()
    code, out, _ = run(capsys, "wittpoly", "--p", "2", "--n", "1")
    assert out.splitlines() == ["witt-poly v1 p=2 n=1", "S 0: 1 x0 ; 1 y0", "P 0: 1 x0 y0"]


def test_wittpoly_file_and_cache(capsys, tmp_path, monkeypatch):
    target = tmp_path / "p3n2.txt"
    cache = tmp_path / "cache"
    monkeypatch.setenv("WITT_CACHE_DIR", str(cache))
    code, recs, _ = run_json(capsys, "wittpoly", "--p", "3", "--n", "2", "--output", str(target))
    assert code == 0 and recs[0]["output"] == str(target)
    assert target.read_text().startswith("witt-poly v1 p=3 n=2\n")
    assert cache_path(cache, 3, 2).read_text() == target.read_text()


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "wittiso", "alpha", "--p", "2", "--n", "3", "3*[1]"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.strip() == "(1, 1, 0)"
    out = subprocess.run([sys.executable, "-m", "wittiso", "alpha", "--p", "3", "--n", "5", "1"],
                         capture_output=True, text=True)
    assert out.returncode == 2
