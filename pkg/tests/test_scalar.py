import pytest

from frobmeas.errors import ContextMismatch, DivisionByZero, FieldError
from frobmeas.scalar import (
    QQ,
    Extension,
    PrimeField,
    Scalar,
    field_arith,
    field_from_descriptor,
    find_root_of_unity,
    is_primitive_root,
    parse_field,
    rational_to_prime,
)


def test_prime_field_arithmetic():
    F5, F7 = PrimeField(5), PrimeField(7)
    assert Scalar(F5, 2) + Scalar(F5, 4) == Scalar(F5, 1)
    assert Scalar(F7, 3).inv() == Scalar(F7, 5)
    assert field_arith("add", Scalar(F5, 2), Scalar(F5, 4)) == 1
    assert field_arith("inv", Scalar(F7, 3)) == 5
    assert str(Scalar(F5, 4)) == "4 mod 5"


def test_rationals_are_normalized():
    assert Scalar.parse(QQ, "6/4") == Scalar.parse(QQ, "3/2")
    assert str(Scalar.parse(QQ, "-10/4")) == "-5/2"
    assert Scalar.parse(PrimeField(7), "1/3") == 5


def test_extension_field():
    E = Extension(QQ, [1, 0, 1])
    t = Scalar(E, E.gen)
    assert t * t == -1
    assert (t + 1) * (t + 1).inv() == 1
    assert E.name() == "Q[t]/(t^2+1)"
    assert field_from_descriptor(E.descriptor()) == E


def test_reducible_minimal_polynomial_is_rejected():
    with pytest.raises(FieldError):
        Extension(QQ, [-1, 0, 1])
    with pytest.raises(FieldError):
        Extension(PrimeField(5), [1, 0, 1])  # 2^2 = -1 in F5


@pytest.mark.parametrize("ctx,n,expected", [(PrimeField(7), 3, 2), (QQ, 3, None), (PrimeField(5), 4, 2)])
def test_roots_of_unity(ctx, n, expected):
    z = find_root_of_unity(ctx, n)
    if expected is None:
        assert z is None
    else:
        assert z == expected
        assert is_primitive_root(ctx, z.value, n)


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        Scalar(PrimeField(5), 0).inv()
    with pytest.raises(DivisionByZero):
        Scalar(QQ, 1) / Scalar(QQ, 0)


def test_context_mismatch():
    with pytest.raises(ContextMismatch):
        Scalar(PrimeField(5), 1) + Scalar(PrimeField(7), 1)


def test_characteristic_and_parsing():
    assert QQ.characteristic == 0
    assert parse_field("F5").characteristic == 5
    assert parse_field("Q") is QQ or parse_field("Q") == QQ
    assert parse_field("F7[t]/(t^2+1)").order == 49
    with pytest.raises(FieldError):
        PrimeField(6)


def test_rational_to_prime_embedding():
    F7, embed = rational_to_prime(7)
    assert embed(QQ.from_fraction(1, 3)) == F7.from_int(5)
    with pytest.raises(FieldError):
        embed(QQ.from_fraction(1, 7))
