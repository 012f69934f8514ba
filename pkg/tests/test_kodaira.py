import random

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from multinorm.kodaira import (
    DegenerateModel,
    KodairaType,
    UnsupportedCharacteristic,
    WeierstrassModel,
    classify,
    coordinate_change,
    fiber_graph,
    invariants,
    t,
)
from multinorm.surface import dual_graph, is_forest, validate


def test_tate_example():
    w = WeierstrassModel.from_exprs(a2=1, a6=t**3)
    inv = invariants(w)
    assert inv.c4.as_expr() == 16
    assert sp.expand(inv.delta.as_expr() - (-64 * t**3 - 432 * t**6)) == 0
    assert inv.v_delta == 3 and inv.v_c4 == 0
    assert str(classify(w)) == "I3"


def test_good_reduction():
    w = WeierstrassModel.from_exprs(a6=1)
    assert invariants(w).v_delta == 0
    assert str(classify(w)) == "I0"


def test_cusp():
    w = WeierstrassModel.from_exprs(a6=t)
    inv = invariants(w)
    assert inv.c4.is_zero and sp.expand(inv.delta.as_expr() + 432 * t**2) == 0
    assert str(classify(w)) == "II"


@pytest.mark.parametrize(
    "a4, a6, expected",
    [
        (t, 0, "III"),
        (0, t**2, "IV"),
        (t**2, t**3, "I0*"),
        (0, t**4, "IV*"),
        (t**3, 0, "III*"),
        (0, t**5, "II*"),
        (0, t**7, "II"),  # not minimal: t^6 comes out
    ],
)
def test_additive_table(a4, a6, expected):
    assert str(classify(WeierstrassModel.from_exprs(a4=a4, a6=a6))) == expected


def test_multiplicative_and_starred():
    assert str(classify(WeierstrassModel.from_exprs(a2=1, a6=t**5))) == "I5"
    # quadratic twist of I2 by t gives I2*
    w = WeierstrassModel.from_exprs(a2=t, a6=t**5)
    assert str(classify(w)) == "I2*"


def test_prime_field():
    w = WeierstrassModel.from_lists([[], [1], [], [], [0, 0, 0, 1]], p=13)
    assert str(classify(w)) == "I3"
    with pytest.raises(UnsupportedCharacteristic):
        WeierstrassModel.from_lists([[], [], [], [], [1]], p=3)


def test_singular_model():
    with pytest.raises(DegenerateModel):
        invariants(WeierstrassModel.from_exprs())


def test_fiber_graphs():
    i3 = fiber_graph(KodairaType.parse("I3"))
    assert i3.snc and i3.graph.number_of_nodes() == 3 and i3.graph.number_of_edges() == 3
    assert validate(i3.config) == [] and not is_forest(dual_graph(i3.config))
    i0 = fiber_graph(KodairaType.parse("I0"))
    assert i0.graph.number_of_nodes() == 1 and i0.graph.number_of_edges() == 0
    i2 = fiber_graph(KodairaType.parse("I2"))
    assert not i2.snc and "once" in i2.hint
    assert "twice" in fiber_graph(KodairaType.parse("I1")).hint


@pytest.mark.parametrize("sym, comps", [("I0*", 5), ("I3*", 8), ("IV*", 7), ("III*", 8), ("II*", 9)])
def test_starred_fibers_are_trees(sym, comps):
    fg = fiber_graph(KodairaType.parse(sym))
    assert fg.snc and fg.graph.number_of_nodes() == comps
    assert is_forest(fg.graph) and validate(fg.config) == []


small = st.integers(-3, 3)


@settings(max_examples=40, deadline=None)
@given(
    st.lists(st.lists(small, max_size=4), min_size=5, max_size=5),
    st.sampled_from([1, -1, 2, sp.Rational(1, 3)]),
    st.lists(small, max_size=3),
    st.lists(small, max_size=3),
    st.lists(small, max_size=3),
)
def test_invariance_under_coordinate_change(coeffs, u, r, s, z):
    w = WeierstrassModel.from_lists(coeffs)
    try:
        inv = invariants(w)
        kt = classify(w)
    except DegenerateModel:
        return
    # 1728 Delta = c4^3 - c6^2
    assert (1728 * inv.delta - inv.c4**3 + inv.c6**2).is_zero
    poly = lambda cs: sum(c * t**i for i, c in enumerate(cs))  # noqa: E731
    w2 = coordinate_change(w, u, poly(r), poly(s), poly(z))
    assert classify(w2) == kt
