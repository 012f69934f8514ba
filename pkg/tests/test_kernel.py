import pytest
from hypothesis import given, strategies as st

from multinorm.kernel import (
    CurveFunctionField,
    FiniteQ1Mod4,
    KindMismatch,
    LocalSqClass,
    SeparablyClosed,
    UnitSqClass,
    euler_bit,
    identity,
    is_trivial,
    sqclass_mul,
    tame_residue,
)

F5 = FiniteQ1Mod4(5)
GAMMA = CurveFunctionField("g")
POINTS = ["m1", "m2", "m3", "m4"]


def test_trivial_times_trivial():
    one = identity(SeparablyClosed())
    assert sqclass_mul(one, one) == one


def test_nonsquare_squared_in_f5():
    ns = UnitSqClass(F5, 1)
    assert sqclass_mul(ns, ns) == identity(F5)


def test_divisor_xor():
    x = UnitSqClass(GAMMA, divisor=frozenset({"m1"}))
    y = UnitSqClass(GAMMA, divisor=frozenset({"m1", "m2"}))
    assert (x * y).divisor == frozenset({"m2"})


def test_kind_mismatch():
    with pytest.raises(KindMismatch):
        identity(F5) * identity(SeparablyClosed())


@pytest.mark.parametrize("q", [3, 7, 9, 15])
def test_finite_field_needs_q_1_mod_4(q):
    with pytest.raises(ValueError):
        FiniteQ1Mod4(q)


def test_separably_closed_has_no_nonsquare():
    with pytest.raises(ValueError):
        UnitSqClass(SeparablyClosed(), 1)


def test_is_trivial_three_valued():
    assert is_trivial(identity(GAMMA)) is True
    assert is_trivial(UnitSqClass(GAMMA, divisor=frozenset({"m3"}))) is False
    genus_one = UnitSqClass(GAMMA, decidable=False)
    assert is_trivial(genus_one) is None
    declared = UnitSqClass(GAMMA, decidable=False, declared_trivial=True)
    assert is_trivial(declared) is True


def test_euler_bit():
    assert [euler_bit(x, 5) for x in range(1, 5)] == [0, 1, 1, 0]
    # -1 is a square when q = 1 mod 4
    assert euler_bit(-1, 13) == 0


def test_residue_of_uniformizer_against_unit():
    u = UnitSqClass(F5, 1)
    pi = LocalSqClass(1, identity(F5))
    assert tame_residue(pi, LocalSqClass(0, u)) == u


def test_residue_of_two_units():
    assert tame_residue(LocalSqClass(0, UnitSqClass(F5, 1)), LocalSqClass(0, UnitSqClass(F5, 1))) == identity(F5)


classes = st.builds(
    lambda v, pts: LocalSqClass(v, UnitSqClass(GAMMA, divisor=frozenset(pts))),
    st.integers(-4, 4),
    st.sets(st.sampled_from(POINTS)),
)


@given(st.sets(st.sampled_from(POINTS)))
def test_exponent_two(pts):
    x = UnitSqClass(GAMMA, divisor=frozenset(pts))
    assert x * x == identity(GAMMA)


@given(classes, classes, classes)
def test_bilinear(a, a2, b):
    assert tame_residue(a * a2, b) == tame_residue(a, b) * tame_residue(a2, b)
    assert tame_residue(b, a * a2) == tame_residue(b, a) * tame_residue(b, a2)


@given(classes)
def test_steinberg_minus_a(a):
    # -a has the class of a because -1 is a square
    assert tame_residue(a, a) == identity(GAMMA)


@given(classes, classes)
def test_antisymmetric_mod_squares(a, b):
    assert tame_residue(a, b) == tame_residue(b, a)
