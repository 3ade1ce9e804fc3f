import json

import pytest
from gmpy2 import mpq

from curvesing.errors import InputError
from curvesing.explorer import (
    FamilyTemplate, ScanEntry, SearchConfig, SplitMix64, load_results, parse_range,
    sample_polynomials, scan_family, search_support, summarize,
)
from curvesing.finitealg import jet_colength_oracle
from curvesing.polyring import Polynomial

FAMILY_A = "x^(2m+1)+x^m*y^(m+1)+y^(2m)"
FAMILY_B = "x^(2m+1)+y^(2m+1)+x^(m+1)*y^(m+1)"


def test_splitmix_reference_values():
    rng = SplitMix64(0)
    assert [rng.next() for _ in range(3)] == [
        0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F]


def test_template_expansion():
    t = FamilyTemplate(FAMILY_A)
    assert t.expand(2) == "x^5+x^2*y^3+y^4"
    assert FamilyTemplate("y^2 - x^(2m+1)").expand(3) == "y^2 - x^7"
    assert FamilyTemplate("x^2m + y^3").expand(2) == "x^4 + y^3"


def test_template_rejects_bare_parameter():
    with pytest.raises(InputError):
        FamilyTemplate("m*x^2 + y^3").expand(2)


def test_parse_range():
    assert list(parse_range("2..5")) == [2, 3, 4, 5]
    assert list(parse_range("3")) == [3]
    with pytest.raises(InputError):
        parse_range("5..2")


def test_scan_family_a():
    res = scan_family(FamilyTemplate(FAMILY_A), range(2, 5))
    assert [e.rho for e in res.entries] == [mpq(1), mpq(10, 9), mpq(7, 6)]
    assert res.summary["strictly_increasing"] and res.summary["all_below_4_3"]


def test_scan_family_b_first_member():
    (e,) = scan_family(FamilyTemplate(FAMILY_B), [2]).entries
    assert e.rho == mpq(16, 15)


def test_scan_quasihomogeneous_family():
    res = scan_family(FamilyTemplate("y^2 - x^(2m+1)"), range(1, 4))
    assert all(e.rho == 1 for e in res.entries)
    assert not res.summary["strictly_increasing"]


def one_sample(support):
    c = SearchConfig(support=support, coefficients=(1,), samples=1)
    (e,) = search_support(c).entries
    return e


def test_search_hits_family_a_member():
    e = one_sample(((5, 0), (2, 3), (0, 4)))
    assert Polynomial.parse(e.input) == Polynomial.parse("x^5 + x^2*y^3 + y^4")
    assert e.rho == 1


def test_search_node():
    assert one_sample(((2, 0), (0, 2))).rho == 1


def test_search_w12():
    e = one_sample(((4, 0), (0, 5), (2, 3)))
    assert e.record["mu"] == 12
    p = Polynomial.parse(e.input)
    assert jet_colength_oracle([p, p.diff("x"), p.diff("y")], e.record["tau"] + 1) == 11
    assert e.rho == mpq(12, 11)


def test_sampling_is_seeded():
    a = list(sample_polynomials(SearchConfig(samples=20, seed=7)))
    b = list(sample_polynomials(SearchConfig(samples=20, seed=7)))
    c = list(sample_polynomials(SearchConfig(samples=20, seed=8)))
    assert a == b and a != c


def test_search_file_is_deterministic(tmp_path):
    c = SearchConfig(samples=12, seed=3)
    search_support(c, tmp_path / "a.jsonl")
    search_support(c, tmp_path / "b.jsonl", resume=False)
    assert (tmp_path / "a.jsonl").read_bytes() == (tmp_path / "b.jsonl").read_bytes()


def test_resume_after_partial_line(tmp_path):
    c = SearchConfig(samples=10, seed=5)
    full = tmp_path / "full.jsonl"
    search_support(c, full)
    reference = full.read_bytes()

    part = tmp_path / "part.jsonl"
    lines = reference.split(b"\n")
    part.write_bytes(b"\n".join(lines[:5]) + b"\n" + lines[5][:17])
    res = search_support(c, part)
    assert part.read_bytes() == reference
    assert len(res.entries) == 10


def test_resume_rejects_other_config(tmp_path):
    out = tmp_path / "r.jsonl"
    search_support(SearchConfig(samples=3, seed=1), out)
    with pytest.raises(InputError, match="different configuration"):
        search_support(SearchConfig(samples=3, seed=2), out)


def test_load_results_recomputes_summary(tmp_path):
    out = tmp_path / "r.jsonl"
    res = search_support(SearchConfig(samples=6, seed=11), out)
    cfg, loaded = load_results(out)
    assert cfg.seed == 11 and cfg.samples == 6
    assert loaded.summary == res.summary
    header = json.loads(out.read_text().splitlines()[0])
    assert header["schema_version"] == 1


def test_config_validation():
    with pytest.raises(InputError):
        SearchConfig(coefficients=(0, 1))
    with pytest.raises(InputError):
        SearchConfig(support=((0, 0),))
    with pytest.raises(InputError):
        SearchConfig(samples=0)


def rec(rho, status="pass"):
    return {"rho": {"num": rho.numerator, "den": rho.denominator},
            "checks": [{"name": "C1", "status": status, "detail": ""}]}


def test_summary_flags_candidates():
    entries = [ScanEntry(0, "a", rec(mpq(5, 4))), ScanEntry(1, "b", rec(mpq(3, 2))),
               ScanEntry(2, "c", error="boom", kind="InputError")]
    s = summarize(entries)
    assert s["max_rho"] == "3/2"
    assert s["argmax"] == {"key": 1, "input": "b"}
    assert [c["key"] for c in s["refutation_candidates"]] == [1]
    assert len(s["errors"]) == 1
    assert s["internal_errors"] == []


def test_summary_ordered_verdict():
    up = [ScanEntry(k, "", rec(mpq(10 + k, 10))) for k in range(3)]
    assert summarize(up, ordered=True)["strictly_increasing"]
    assert not summarize(up[::-1], ordered=True)["strictly_increasing"]
