import pytest

from curvesing.invariants import tjurina
from curvesing.omega import (
    conductor_generator, jacobian_span, omega_codim, omega_span, pol_identity_check,
    pol_report, pullback,
)
from curvesing.puiseux import PuiseuxBranch, delta_branch
from curvesing.series import TruncatedSeries

branch = PuiseuxBranch.from_parametrization
CUSP = branch([0, 0, 1], [0, 0, 0, 1])


def test_pullback_of_equation(P):
    assert pullback(CUSP, P("y^2 - x^3"), 10).is_zero()


def test_pullback_of_coordinate(P):
    assert pullback(CUSP, P("x"), 5) == TruncatedSeries.monomial(2, 1, 5)


def test_pullback_two_pairs(P):
    b = branch([0] * 4 + [1], [0] * 6 + [1, 1])
    s = pullback(b, P("y^2 - x^3"), 20)
    assert s == TruncatedSeries([0] * 13 + [2, 1], 20)


def test_cusp_form_span():
    V = omega_span(CUSP, 6)
    assert V.orders == [1, 2, 3, 4, 5, 6]
    assert V.codim == 1


def test_smooth_form_span():
    V = omega_span(branch([0, 1], [0, 1]), 4)
    assert V.orders == [0, 1, 2, 3, 4]


def test_e6_form_span():
    V = omega_span(branch([0, 0, 0, 1], [0, 0, 0, 0, 1]), 12)
    assert V.codim == 3


@pytest.mark.parametrize("x, y, expected", [
    ([0, 0, 1], [0, 0, 0, 1], 1),
    ([0, 1], [0] * 7 + [1], 0),
    ([0, 0, 0, 1], [0, 0, 0, 0, 1], 3),
])
def test_omega_codim(x, y, expected):
    assert omega_codim(branch(x, y)) == expected


def test_omega_codim_is_tau_minus_delta(P):
    b = branch([0, 0, 0, 1], [0, 0, 0, 0, 1])
    assert omega_codim(b) == tjurina(P("y^3 - x^4")) - delta_branch(b)


def test_omega_needs_irreducible_branch(P):
    from curvesing.puiseux import puiseux_branches
    b = puiseux_branches(P("x^2 + y^2"))[0]
    with pytest.raises(ValueError):
        omega_codim(b)


@pytest.mark.parametrize("f", ["y^2 - x^3", "y^3 - x^4", "x^5 + x^2*y^3 + y^4",
                               "(y^2 - x^3)^2 - 4*x^5*y - x^7"])
def test_pol_identity(P, f):
    f = P(f)
    rep = pol_report(f)
    assert rep.holds
    assert rep.jacobian_codim == tjurina(f) + rep.delta
    assert pol_identity_check(f)


def test_cusp_jacobian_orders(P):
    f = P("y^2 - x^3")
    J = jacobian_span(f, CUSP, 12)
    assert J.orders == list(range(3, 13))


def test_conductor_generator_order(P):
    g = conductor_generator(P("y^2 - x^3"), CUSP, 8)
    assert g.order() == 2


def test_literal_shift_fails_off_monomial_branches(P):
    rep = pol_report(P("x^5 + x^2*y^3 + y^4"))
    assert rep.holds and not rep.shift_form


def test_pol_rejects_reducible(P):
    with pytest.raises(ValueError, match="reducible"):
        pol_report(P("y^2 - x^2"))
