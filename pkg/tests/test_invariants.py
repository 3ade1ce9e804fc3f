import pytest
from gmpy2 import mpq

from curvesing.corpus import load_corpus
from curvesing.errors import InputError, NonIsolatedError
from curvesing.invariants import (
    CHECK_NAMES, full_record, milnor, record_to_json, space_curve_record, tjurina, tjurina_prime,
)
from curvesing.polyring import parse_polynomial


@pytest.mark.parametrize("f, mu", [
    ("x^3 - y^2", 2),
    ("x^5 + x^2*y^3 + y^4", 12),
    ("x^5 + y^5 + x^3*y^3", 16),
])
def test_milnor(P, f, mu):
    assert milnor(P(f)) == mu


@pytest.mark.parametrize("f, tau", [
    ("x^3 - y^2", 2),
    ("x^7 + x^3*y^4 + y^6", 27),
    ("x^5 + y^5 + x^3*y^3", 15),
])
def test_tjurina(P, f, tau):
    assert tjurina(P(f)) == tau


def test_non_isolated(P):
    with pytest.raises(NonIsolatedError, match="non-isolated singularity"):
        milnor(P("x^2"))
    with pytest.raises(NonIsolatedError):
        full_record(P("y*(x^2 - y^3)^2"))


def test_input_guards(P):
    with pytest.raises(InputError):
        milnor(P("1 + x"))
    with pytest.raises(InputError):
        milnor(parse_polynomial("x^2 + y^2 + z^2", "x,y,z"))


@pytest.mark.parametrize("gens, value", [
    (["x^3 - y^2"], 2),
    (["x^5 + y^5 + x^3*y^3"], 15),
])
def test_tjurina_prime_plane(P, gens, value):
    assert tjurina_prime([P(g) for g in gens]) == value


def test_tjurina_prime_space_curve():
    v = "x,y,z"
    gens = [parse_polynomial("z^2 - x^3", v), parse_polynomial("y^2 - x*z", v)]
    # semigroup <4,5,6> gives delta 4, mu = 2*delta = 8, and mu/2 < tau' <= mu
    assert tjurina_prime(gens) == 8
    assert space_curve_record(gens)["tau_prime"] == 8


def test_tjurina_prime_guards():
    v = "x,y,z"
    with pytest.raises(InputError):
        tjurina_prime([parse_polynomial("z^2 - x^3", v)])
    with pytest.raises(NonIsolatedError, match="non-isolated or non-reduced"):
        tjurina_prime([parse_polynomial("x^2", v), parse_polynomial("y^2", v)])


def test_tjurina_prime_equals_tjurina_on_corpus():
    for item in load_corpus():
        f = item.polynomial()
        assert tjurina_prime([f]) == tjurina(f), item.name


def test_cusp_record(P):
    rec = full_record(P("x^3 - y^2"))
    assert (rec.mu, rec.tau, rec.m, rec.r, rec.delta) == (2, 2, 2, 1, 1)
    assert rec.rho == 1 and rec.quasihomogeneous
    assert rec.omega_codim == 1
    assert rec.passed
    assert [c.name for c in rec.checks] == list(CHECK_NAMES)


def test_family_a_m3_record(P):
    rec = full_record(P("x^7 + x^3*y^4 + y^6"))
    assert (rec.mu, rec.tau) == (30, 27)
    assert rec.rho == mpq(10, 9)
    assert not rec.quasihomogeneous
    assert rec.passed


def test_node_record(P):
    rec = full_record(P("x^2 + y^2"))
    assert (rec.mu, rec.tau, rec.m, rec.r, rec.delta) == (1, 1, 2, 2, 1)
    assert rec.rho == 1 and rec.quasihomogeneous
    assert rec.check("C5").status == "n/a"
    assert rec.passed


def test_smooth_record(P):
    rec = full_record(P("y - x^2"))
    assert (rec.mu, rec.tau, rec.delta, rec.r) == (0, 0, 0, 1)
    assert rec.rho is None
    assert rec.check("C3").status == "n/a"
    assert rec.passed


def test_record_json(P):
    js = record_to_json(full_record(P("x^7 + x^3*y^4 + y^6")))
    assert js["rho"] == {"num": 10, "den": 9}
    assert js["lambda"] == js["tau"] == 27
    assert all(c["status"] == "pass" for c in js["checks"])
