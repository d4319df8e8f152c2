from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lwr.scalars import (
    QQ,
    CharacteristicTwo,
    FieldSpec,
    Residue,
    ScalarParseError,
    format_scalar,
    scalar_arith,
    scalar_parse,
)

F5 = FieldSpec("prime", 5)
F7 = FieldSpec("prime", 7)


def test_parse_examples():
    assert scalar_parse("3/6", QQ) == Fraction(1, 2)
    assert scalar_parse("0", QQ) == 0
    assert scalar_parse("7", F5) == Residue(2, 5)
    assert scalar_parse("-1/3", F7) == Residue(2, 7)  # 3 * 2 = 6 = -1


@pytest.mark.parametrize("text", ["", "1.5", "a", "1/-2", "--1", "1/2/3"])
def test_parse_malformed(text):
    with pytest.raises(ScalarParseError):
        scalar_parse(text, QQ)


def test_parse_bad_denominators():
    with pytest.raises(ScalarParseError):
        scalar_parse("1/0", QQ)
    with pytest.raises(ScalarParseError):
        scalar_parse("1/10", F5)


def test_arith_examples():
    assert scalar_arith(Fraction(1, 2), Fraction(1, 3), "add") == Fraction(5, 6)
    assert scalar_arith(Fraction(1, 2), Fraction(2), "mul") == 1
    assert scalar_arith(F5(3), F5(2), "div") == F5(4)
    with pytest.raises(ZeroDivisionError):
        scalar_arith(F5(3), F5(0), "div")
    with pytest.raises(ZeroDivisionError):
        scalar_arith(Fraction(1), Fraction(0), "div")


def test_field_spec_rejects_char_two_and_composites():
    with pytest.raises(CharacteristicTwo):
        FieldSpec("prime", 2)
    with pytest.raises(ValueError):
        FieldSpec("prime", 9)
    with pytest.raises(ValueError):
        FieldSpec("prime")


def test_residue_canonical_range():
    x = F7(-15)
    assert x.value == 6
    assert F7(Fraction(1, 2)) == F7(4)


def test_format():
    assert format_scalar(Fraction(-2, 4)) == "-1/2"
    assert format_scalar(Fraction(6, 3)) == "2"
    assert format_scalar(F5(12)) == "2"


ints = st.integers(-10**6, 10**6)
rationals = st.builds(Fraction, ints, st.integers(1, 10**4))


@pytest.mark.parametrize("F", [QQ, F5, F7, FieldSpec("prime", 101)], ids=str)
@given(a=rationals, b=rationals, c=rationals)
def test_field_axioms(F, a, b, c):
    if F.kind == "prime":
        if any(x.denominator % F.p == 0 for x in (a, b, c)):
            return
    x, y, z = F(a), F(b), F(c)
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x and x * y == y * x
    assert x - x == F(0)
    if x:
        assert x * (F.one / x) == F.one


@pytest.mark.parametrize("F", [QQ, F5, F7], ids=str)
@given(a=rationals)
def test_half_is_total(F, a):
    if F.kind == "prime" and a.denominator % F.p == 0:
        return
    x = F(a)
    assert F.half(x) + F.half(x) == x
