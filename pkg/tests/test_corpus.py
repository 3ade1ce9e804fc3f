import json

import pytest

from curvesing.corpus import GOLDEN_FIELDS, load_corpus
from curvesing.errors import InputError
from curvesing.explorer import verify_corpus
from curvesing.finitealg import jet_colength_oracle
from curvesing.localstd import colength, standard_basis
from curvesing.polyring import order_of

REQUIRED = {"A1", "A2", "A3", "A4", "A5", "A6", "D4", "D5", "E6", "E7", "E8", "triple point"}


def test_corpus_contents():
    items = load_corpus()
    names = {it.name for it in items}
    assert len(items) >= 15
    assert REQUIRED <= names
    assert {it.family for it in items} >= {"A", "B"}
    non_qh = [it for it in items if not it.golden["quasihomogeneous"] and it.family is None]
    assert len(non_qh) >= 2
    assert all(set(it.golden) == set(GOLDEN_FIELDS) for it in items)


def test_golden_values_are_consistent():
    for it in load_corpus():
        g = it.golden
        assert g["m"] == order_of(it.polynomial()), it.name
        assert g["mu"] == 2 * g["delta"] - g["r"] + 1, it.name
        assert g["quasihomogeneous"] == (g["mu"] == g["tau"]), it.name


def test_jet_oracle_on_corpus_ideals():
    for it in load_corpus():
        f = it.polynomial()
        for gens in ([f.diff("x"), f.diff("y")], [f, f.diff("x"), f.diff("y")]):
            c = colength(standard_basis(gens))
            if c <= 40:
                assert jet_colength_oracle(gens, c + 1) == c, it.name


def test_bundled_corpus_verifies():
    assert verify_corpus().ok


def test_wrong_golden_value_is_reported(tmp_path):
    data = {"items": [{"name": "cusp", "f": "y^2 - x^3", "mu": 2, "tau": 3}]}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    report = verify_corpus(path)
    assert not report.ok
    (row,) = report.items
    assert row["name"] == "cusp"
    assert any("tau" in str(m) for m in row["mismatches"])


def test_empty_corpus(tmp_path):
    path = tmp_path / "empty.json"
    path.write_text('{"items": []}')
    report = verify_corpus(path)
    assert report.ok and report.to_json()["count"] == 0


def test_bad_corpus_files(tmp_path):
    with pytest.raises(InputError):
        load_corpus(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(InputError):
        load_corpus(bad)
    bad.write_text('{"items": [{"name": "no f"}]}')
    with pytest.raises(InputError):
        load_corpus(bad)
