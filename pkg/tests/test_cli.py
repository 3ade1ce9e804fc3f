import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest
from referencing import Registry, Resource

from curvesing.cli import run

DOCS = Path(__file__).resolve().parent.parent / "docs"


def _schemas():
    schemas, registry = {}, Registry()
    for p in DOCS.glob("*.schema.json"):
        s = json.loads(p.read_text())
        schemas[p.name.removesuffix(".schema.json")] = s
        registry = registry.with_resource(s["$id"], Resource.from_contents(s))
    return schemas, registry


SCHEMAS, REGISTRY = _schemas()


def validate(obj, name):
    jsonschema.Draft202012Validator(SCHEMAS[name], registry=REGISTRY).validate(obj)


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def call_json(capsys, *argv):
    code, out, _ = call(capsys, *argv, "--json")
    return code, json.loads(out)


def test_invariants_table(capsys):
    code, out, _ = call(capsys, "invariants", "x^3 - y^2")
    assert code == 0
    for token in ("mu", "tau", "delta", "rho"):
        assert token in out


def test_invariants_json(capsys):
    code, js = call_json(capsys, "invariants", "x^3 - y^2")
    assert code == 0
    validate(js, "record")
    assert (js["mu"], js["tau"], js["m"], js["r"], js["delta"]) == (2, 2, 2, 1, 1)
    assert js["rho"] == {"num": 1, "den": 1} and js["quasihomogeneous"]


def test_non_isolated_exit_code(capsys):
    code, _, err = call(capsys, "invariants", "x^2")
    assert code == 1
    assert "non-isolated singularity" in err


def test_syntax_error_exit_code(capsys):
    code, _, err = call(capsys, "invariants", "x + ")
    assert code == 2
    assert "position 4" in err


def test_usage_errors(capsys):
    assert call(capsys, "frobnicate")[0] == 2
    assert call(capsys, "scan", "--family", "x^m+y^2", "--range", "5..1")[0] == 2
    assert call(capsys, "search", "--samples", "0")[0] == 2


def test_scan_json(capsys):
    code, js = call_json(capsys, "scan", "--family", "x^(2m+1)+x^m*y^(m+1)+y^(2m)",
                         "--range", "2..5")
    assert code == 0
    validate(js, "scan")
    assert [r["tau"] for r in js["records"]] == [12, 27, 48, 75]
    assert js["summary"]["strictly_increasing"]


def test_omega_json(capsys):
    code, js = call_json(capsys, "omega", "y^3 - x^4")
    assert code == 0
    validate(js, "omega")
    assert js["omega_codim"] == 3 and js["delta"] == 3
    assert js["pol_identity"]


def test_omega_reducible(capsys):
    assert call(capsys, "omega", "y^2 - x^2")[0] == 2


def test_tauprime(capsys):
    code, js = call_json(capsys, "tauprime", "z^2 - x^3", "y^2 - x*z")
    assert code == 0
    validate(js, "tauprime")
    assert js["tau_prime"] == 8


def test_branches(capsys):
    code, js = call_json(capsys, "branches", "y^2 - x^2")
    assert code == 0
    validate(js, "branches")
    assert js["r"] == 2


def test_search_json_and_file(capsys, tmp_path):
    out = tmp_path / "s.jsonl"
    code, js = call_json(capsys, "search", "--samples", "4", "--seed", "9", "--out", str(out))
    assert code == 0
    validate(js, "search")
    lines = [json.loads(l) for l in out.read_text().splitlines()]
    validate(lines[0], "results-header")
    for line in lines[1:]:
        validate(line, "results-line")


def test_verify_and_corpus(capsys, tmp_path):
    code, js = call_json(capsys, "verify")
    assert code == 0 and js["ok"]
    validate(js, "verify")
    code, js = call_json(capsys, "corpus")
    validate(js, "corpus")
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"items": [{"name": "cusp", "f": "y^2-x^3", "tau": 5}]}))
    assert call(capsys, "verify", str(bad))[0] == 1


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "curvesing.cli", "--version"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip().endswith("0.1.0")
