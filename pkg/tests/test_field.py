from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hypercomm.field import (
    FieldError,
    FieldMismatchError,
    NotEnumerableError,
    Scalar,
    enumerate_field,
    field_arith,
    field_inverse,
    is_irreducible,
    make_field,
)


def test_prime_field_descriptor():
    F = make_field("gf 5")
    assert F.kind == "prime" and F.q == 5 and F.characteristic == 5


def test_gf4_default_modulus_is_t2_t_1():
    F = make_field("gf 2 2")
    assert F.modulus == (1, 1, 1)
    assert F.q == 4


def test_gf9_with_explicit_modulus():
    F = make_field("gf 3 2 1,0,1")
    assert F.q == 9 and F.characteristic == 3
    assert make_field("gf 3 2") == F  # t^2+1 is also the default


def test_rational_descriptor():
    F = make_field("q")
    assert not F.is_finite
    assert F.characteristic == 0


@pytest.mark.parametrize("bad", ["gf 4", "gf 6 2", "gf 2 2 1,0,1", "gf 5 0", "gx 5", ""])
def test_bad_descriptors(bad):
    with pytest.raises(FieldError):
        make_field(bad)


def test_shorthand_without_space():
    assert make_field("gf5") == make_field("gf 5")


def test_gf5_mul_and_inverse():
    F = make_field("gf 5")
    assert field_arith("mul", Scalar(F, 3), Scalar(F, 4)) == Scalar(F, 2)
    assert field_inverse(Scalar(F, 2)) == Scalar(F, 3)


def test_gf4_t_times_t_plus_1(gf4):
    t = Scalar.of(gf4, (0, 1))
    t1 = Scalar.of(gf4, (1, 1))
    assert t * t1 == Scalar.of(gf4, 1)
    assert field_inverse(t) == t1


def test_gf9_t_squared_is_2(gf9):
    t = Scalar.of(gf9, (0, 1))
    assert t * t == Scalar.of(gf9, 2)


def test_rational_inverse(qq):
    assert field_inverse(Scalar(qq, Fraction(2, 3))) == Scalar(qq, Fraction(3, 2))


def test_zero_has_no_inverse(gf5, gf9, qq):
    for F in (gf5, gf9, qq):
        with pytest.raises(ZeroDivisionError):
            field_inverse(Scalar.of(F, 0))


def test_mixed_fields_rejected(gf5):
    F7 = make_field("gf 7")
    with pytest.raises(FieldMismatchError):
        field_arith("add", Scalar(gf5, 1), Scalar(F7, 1))


def test_enumeration(gf4, gf9):
    assert [s.value for s in enumerate_field(make_field("gf 2"))] == [0, 1]
    els = enumerate_field(gf4)
    assert len(els) == 4 and els[0] == Scalar.of(gf4, 0)
    assert sum(1 for e in els if e) == 3
    assert len(set(enumerate_field(gf9))) == 9
    with pytest.raises(NotEnumerableError):
        enumerate_field(make_field("q"))


def test_irreducibility_check():
    assert is_irreducible((1, 0, 1), 3)
    assert not is_irreducible((1, 0, 1), 2)  # (t+1)^2
    assert is_irreducible((1, 1, 0, 1), 2)


@pytest.mark.parametrize("desc", ["gf 2", "gf 3", "gf 2 2", "gf 5", "gf 7", "gf 2 3", "gf 3 2"])
def test_field_axioms_exhaustive(desc):
    F = make_field(desc)
    els = F.elements()
    for a, b in itertools.product(els, repeat=2):
        assert F.add(a, b) == F.add(b, a)
        assert F.mul(a, b) == F.mul(b, a)
        assert F.sub(F.add(a, b), b) == a
    for a, b, c in itertools.product(els, repeat=3):
        assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    for a in F.nonzero_elements():
        assert F.mul(a, F.inv(a)) == F.one
        assert F.pow(a, F.q - 1) == F.one


@pytest.mark.parametrize("desc", ["gf 3 4", "gf 2 8", "gf 17 2"])
def test_larger_fields_fermat(desc):
    F = make_field(desc)
    step = max(1, F.q // 97)
    for a in range(1, F.q, step):
        assert F.pow(a, F.q - 1) == F.one
        assert F.mul(a, F.inv(a)) == F.one


@pytest.mark.parametrize("desc", ["gf 5", "gf 3 2", "q"])
def test_format_parse_roundtrip(desc):
    F = make_field(desc)
    vals = F.elements() if F.is_finite else F.sample_values() + [Fraction(-7, 3)]
    for v in vals:
        assert F.parse_element(F.format_element(v)) == v


def test_canonical_reduction_idempotent(gf9):
    for v in gf9.elements():
        assert gf9.coerce(list(gf9.coefficients(v))) == v
    assert gf9.coerce((1, 0, 1)) == 0  # t^2 + 1 reduces to zero


@given(st.integers(-10 ** 6, 10 ** 6), st.integers(1, 10 ** 6))
def test_rational_field_laws(num, den):
    F = make_field("q")
    a = Fraction(num, den)
    assert F.add(a, F.neg(a)) == 0
    if a:
        assert F.mul(a, F.inv(a)) == 1


@given(st.integers(0, 48), st.integers(0, 48), st.integers(0, 48))
def test_gf49_distributive(a, b, c):
    F = make_field("gf 7 2")
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
