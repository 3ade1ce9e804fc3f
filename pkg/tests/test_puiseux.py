import pytest
from hypothesis import given, settings, strategies as st

from curvesing.invariants import milnor
from curvesing.polyring import Polynomial
from curvesing.puiseux import (
    Edge, NonReducedError, PuiseuxBranch, branch_values, delta_branch, delta_oracle,
    intersection_multiplicity, newton_polygon, puiseux_branches, render_branch,
    semigroup_data,
)
from curvesing.puiseux import _evaluate

branch = PuiseuxBranch.from_parametrization


def semigroup(gens, bound):
    out = {0}
    for k in range(bound + 1):
        if k in out:
            out |= {k + g for g in gens if k + g <= bound}
    return out


def test_polygon_of_cusp(P):
    assert newton_polygon(P("y^2 - x^3")) == [Edge((0, 2), (3, 0), 3, 2, 1)]


def test_polygon_single_edge(P):
    # (2,3) lies strictly above the segment from (0,4) to (5,0)
    assert newton_polygon(P("x^5 + x^2*y^3 + y^4")) == [Edge((0, 4), (5, 0), 5, 4, 1)]


def test_polygon_two_edges(P):
    edges = newton_polygon(P("y^3 - x^2*y + x^7"))
    assert [(e.start, e.end) for e in edges] == [((0, 3), (2, 1)), ((2, 1), (7, 0))]


def test_polygon_of_xy_is_empty(P):
    assert newton_polygon(P("x*y")) == []


def test_cusp_branch(P):
    B = puiseux_branches(P("y^2 - x^3"))
    assert B.r == 1
    assert render_branch(B[0]) == "x = t^2, y = t^3"


def test_node_branches(P):
    B = puiseux_branches(P("y^2 - x^2"))
    assert sorted(render_branch(b) for b in B) == ["x = t, y = -t", "x = t, y = t"]


def test_product_branches(P):
    B = puiseux_branches(P("(y - x^2)*(y^2 - x^3)"))
    assert [render_branch(b) for b in B] == ["x = t, y = t^2", "x = t^2, y = t^3"]


def test_conjugate_branches(P):
    B = puiseux_branches(P("x^2 + y^2"))
    assert len(B) == 1 and B.r == 2
    assert B[0].field.degree == 2


def test_vertical_branch(P):
    B = puiseux_branches(P("x*(y^2 - x^3)"))
    assert B.r == 2
    assert B[-1].swapped


def test_non_reduced(P):
    with pytest.raises(NonReducedError):
        puiseux_branches(P("(y^2 - x^3)^2"))


def test_two_characteristic_pairs(P):
    f = P("(y^2 - x^3)^2 - 4*x^5*y - x^7")
    B = puiseux_branches(f)
    assert B.r == 1 and B[0].e == 4
    xs, ys = B[0].series_pair(40)
    assert _evaluate(f, xs, ys, 40).is_zero()


@pytest.mark.parametrize("x, y, bound, gens", [
    ([0, 0, 1], [0, 0, 0, 1], 7, (2, 3)),
    ([0, 0, 0, 1], [0, 0, 0, 0, 1], 12, (3, 4)),
    ([0] * 4 + [1], [0] * 6 + [1, 1], 20, (4, 6, 13)),
])
def test_branch_values(x, y, bound, gens):
    assert branch_values(branch(x, y), bound) == semigroup(gens, bound)


def test_values_need_precision():
    b = branch([0, 0, 1], [0, 0, 0, 1, 1], prec=6)
    with pytest.raises(ArithmeticError, match="insufficient precision"):
        branch_values(b, 40)


@pytest.mark.parametrize("x, y, delta, gaps", [
    ([0, 0, 1], [0, 0, 0, 1], 1, [1]),
    ([0, 0, 0, 1], [0, 0, 0, 0, 1], 3, [1, 2, 5]),
    ([0] * 4 + [1], [0] * 6 + [1, 1], 8, [1, 2, 3, 5, 7, 9, 11, 15]),
])
def test_branch_delta(x, y, delta, gaps):
    b = branch(x, y)
    assert delta_branch(b) == delta
    c, g = semigroup_data(b)
    assert g == gaps and c == 2 * delta


def test_intersection_multiplicity(P):
    assert intersection_multiplicity(branch([0, 1], [0, 0, 1]), P("y + x^2")) == 2
    assert intersection_multiplicity(branch([0, 0, 1], [0, 0, 0, 1]), P("y")) == 3


def test_intersection_with_component(P):
    with pytest.raises(ValueError, match="component"):
        intersection_multiplicity(branch([0, 0, 1], [0, 0, 0, 1]), P("y^2 - x^3"))


@pytest.mark.parametrize("f, delta", [
    ("y^2 - x^3", 1),
    ("y^2 - x^2", 1),
    ("x^3 - y^3", 3),
    ("x^2 + y^2", 1),
    ("x*y*(x - y)*(x + y)", 6),
])
def test_delta_oracle(P, f, delta):
    assert delta_oracle(puiseux_branches(P(f))) == delta


exps = st.tuples(st.integers(0, 6), st.integers(0, 6)).filter(lambda m: sum(m) >= 2)


@settings(max_examples=30, deadline=None)
@given(st.dictionaries(exps, st.integers(-3, 3).filter(bool), min_size=2, max_size=4))
def test_branches_satisfy_equation(terms):
    f = Polynomial("x,y", {**terms, (5, 0): 1, (0, 4): 1})
    try:
        mu = milnor(f)
    except ValueError:
        return
    B = puiseux_branches(f)
    for b in B:
        xs, ys = b.series_pair(24)
        assert _evaluate(f, xs, ys, 24).is_zero()
    assert B.multiplicity_sum() == min(sum(m) for m in f.terms)
    assert 2 * delta_oracle(B) - B.r + 1 == mu


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 5), st.integers(2, 9), st.integers(0, 3))
def test_values_form_a_semigroup(a, b, c):
    if b % a == 0:
        b += 1
    y = [0] * b + [1] + [0] * c + [1]
    v = branch_values(branch([0] * a + [1], y), 30)
    assert all(s + t in v for s in v for t in v if s + t <= 30)
