import json

import pytest
from conftest import kG

from frobmeas.comeasure import ComeasuringCache, comeasuring_presentation, gen_index
from frobmeas.errors import CapExceeded
from frobmeas.ncgb import (
    HARD_CAP,
    GBState,
    GBStatus,
    NCPoly,
    Presentation,
    complete,
    count_normal_words,
    has_infinitely_many_normal_words,
    normal_form,
    quotient_basis,
    quotient_dimension,
)
from frobmeas.reproduce import NamedBasis, c3_named_polys
from frobmeas.scalar import QQ, PrimeField


def involution():
    x = NCPoly.gen(QQ, 0)
    return x, Presentation(QQ, ["x"], [x * x - NCPoly.one(QQ)])


def test_involution_saturates():
    x, pres = involution()
    gb = complete(pres, 4)
    assert gb.status is GBStatus.SATURATED_FINITE
    assert quotient_basis(gb).words == ((), (0,))
    assert quotient_dimension(gb).dimension == 2
    assert normal_form(x * x * x, gb) == x
    for strategy in ("leftmost", "rightmost"):
        assert normal_form(x * x * x * x, gb, strategy) == NCPoly.one(QQ)


def test_relations_reduce_to_zero():
    A = kG(QQ, "C3")
    pres = comeasuring_presentation(A, A)
    gb = complete(pres, 8)
    assert all(normal_form(r, gb).is_zero() for r in pres.relations)


def test_c2_self_generator_squares_to_one():
    F5 = PrimeField(5)
    A = kG(F5, "C2")
    gb = ComeasuringCache().get(A, A).gb
    x = NCPoly.gen(F5, gen_index(1, 1, 2))
    assert normal_form(x * x, gb) == NCPoly.one(F5)


def test_degree_above_hard_cap():
    _, pres = involution()
    with pytest.raises(CapExceeded):
        complete(pres, HARD_CAP + 1)


def test_json_round_trip():
    A = kG(QQ, "C2")
    gb = ComeasuringCache().get(A, A).gb
    back = GBState.from_dict(json.loads(json.dumps(gb.to_dict())))
    assert back.status is gb.status
    assert back.leading_words == gb.leading_words
    assert quotient_basis(back).words == quotient_basis(gb).words
    pres = comeasuring_presentation(A, A)
    again = Presentation.from_dict(json.loads(json.dumps(pres.to_dict())))
    assert again.relations == pres.relations


def test_c3_table_entries():
    A = kG(QQ, "C3")
    cm = ComeasuringCache().get(A, A)
    polys = c3_named_polys(QQ)
    basis = NamedBasis(cm.algebra, polys)
    e = dict(zip(basis.names, basis.elements))
    assert basis.name_of(cm.algebra.mul(e["A"], e["B"])) == "X"
    assert basis.name_of(cm.algebra.mul(e["A"], e["Y"])) == "0"
    assert basis.name_of(cm.algebra.mul(e["C"], e["D"])) == "Y"


@pytest.mark.parametrize("name", ["C2", "C3", "V4"])
def test_normal_words_are_subword_closed(name):
    A = kG(QQ, name)
    gb = ComeasuringCache().get(A, A).gb
    assert quotient_basis(gb).is_subword_closed()


def test_c4_quotient_is_flagged_infinite():
    A = kG(QQ, "C4")
    gb = ComeasuringCache(6).get(A, A).gb
    res = quotient_dimension(gb)
    assert res.kind == "undetermined"
    assert gb.complete_basis
    assert res.quotient_infinite
    counts = count_normal_words(gb.leading_words, gb.ngens, 4)
    assert counts == [(2 * k + 1) ** 2 for k in range(5)]


def test_infinite_normal_words_detection():
    # x^2 forbidden over two letters leaves y^n
    assert has_infinitely_many_normal_words([(0, 0)], 2)
    assert not has_infinitely_many_normal_words([(0,), (1,)], 2)
    assert not has_infinitely_many_normal_words([(0, 0), (1,)], 2)
    assert count_normal_words([(0, 0), (1,)], 2, 3) == [1, 1, 0, 0]
