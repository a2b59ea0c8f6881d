import pytest
from conftest import kG
from oracles import brute_grouplikes, cyclic_cayley, group_frobenius_morphisms, primitive_dimension

from frobmeas.comeasure import ComeasuringCache
from frobmeas.errors import BudgetExceeded, NotFinite
from frobmeas.frobenius import asymmetric_fixture, check_omega_morphism
from frobmeas.linalg import mat_mul, rank
from frobmeas.measure import (
    antipode_dual,
    antipode_dual_inverse,
    compose_m,
    dual_coalgebra,
    frobenius_dual_roundtrip,
    grouplikes,
    measuring_action,
    primitives,
    unit_j,
    verify_measuring,
)
from frobmeas.reproduce import NamedBasis, c3_named_polys
from frobmeas.scalar import QQ, PrimeField


@pytest.fixture(scope="module")
def cache():
    return ComeasuringCache()


def coalgebra(cache, ctx, name):
    A = kG(ctx, name)
    return A, cache.get(A, A), dual_coalgebra(cache.get(A, A).algebra)


def ints(C):
    return [{jk: int(c) for jk, c in row.items()} for row in C.comul], [int(c) for c in C.counit]


def test_dual_coalgebra_of_c2(cache):
    _, cm, C = coalgebra(cache, QQ, "C2")
    assert C.labels == ("1*", "(g*|g)*")
    assert C.check() == []
    assert C.counit == [1, 0]
    assert C.delta(C.basis_vector(1)) == {(0, 1): 1, (1, 0): 1}


def test_c3_counit_on_named_basis(cache):
    _, cm, C = coalgebra(cache, QQ, "C3")
    basis = NamedBasis(cm.algebra, c3_named_polys(QQ))
    for name, value in [("X", 1), ("Y", 1), ("A", 0), ("B", 0), ("C", 0), ("D", 0)]:
        assert C.eps(basis.functional({name: 1})) == value


def test_measuring_action(cache):
    A, cm, C = coalgebra(cache, QQ, "C2")
    act = measuring_action(cm)
    assert verify_measuring(act) == []
    assert act.induced_map(C.basis_vector(0)).matrix == [[1, 0], [0, 0]]
    assert act.induced_map(C.basis_vector(1)).matrix == [[0, 0], [0, 1]]


def test_measuring_action_needs_a_finite_quotient():
    A = kG(QQ, "C4")
    with pytest.raises(NotFinite):
        measuring_action(ComeasuringCache(4).get(A, A))


@pytest.mark.parametrize("p,name", [(2, "C2"), (3, "C2"), (5, "C2"), (3, "C3"), (5, "C3"), (7, "C3")])
def test_grouplikes_match_enumeration(cache, p, name):
    _, _, C = coalgebra(cache, PrimeField(p), name)
    found = grouplikes(C)
    assert found.complete
    comul, counit = ints(C)
    assert sorted(tuple(int(x) for x in v) for v in found) == sorted(brute_grouplikes(comul, counit, p))


def test_grouplike_budget(cache):
    _, _, C = coalgebra(cache, PrimeField(7), "C3")
    partial = grouplikes(C, budget=10)
    assert not partial.complete
    with pytest.raises(BudgetExceeded):
        grouplikes(C, budget=10, strict=True)


def test_grouplikes_over_q_are_flagged(cache):
    _, _, C = coalgebra(cache, QQ, "C2")
    res = grouplikes(C)
    assert not res.complete and len(res) == 2


@pytest.mark.parametrize("p,name", [(5, "C2"), (2, "C2"), (3, "C3")])
def test_unit_primitives_match_linear_algebra(cache, p, name):
    A, _, C = coalgebra(cache, PrimeField(p), name)
    one = unit_j(A, cache)
    comul, _ = ints(C)
    g = [int(x) for x in one]
    assert len(primitives(C, one, one)) == primitive_dimension(comul, g, g, p)


def test_no_unit_primitives_over_f5(cache):
    A, _, C = coalgebra(cache, PrimeField(5), "C2")
    one = unit_j(A, cache)
    assert primitives(C, one, one) == []


def test_composition_of_grouplikes(cache):
    F7 = PrimeField(7)
    A, cm, C = coalgebra(cache, F7, "C3")
    m = compose_m(A, A, A, cache)
    act = measuring_action(cm)
    gl = list(grouplikes(C))
    one = unit_j(A, cache)
    for f in gl:
        assert m.apply(one, f) == f and m.apply(f, one) == f
        for g in gl:
            fg = m.apply(f, g)
            assert C.is_grouplike(fg)
            want = mat_mul(F7, act.induced_map(f).matrix, act.induced_map(g).matrix)
            assert act.induced_map(fg).matrix == want


def test_composition_acts_by_composing(cache):
    A, cm, C = coalgebra(cache, QQ, "C2")
    m = compose_m(A, A, A, cache)
    act = measuring_action(cm)
    x = C.basis_vector(1)
    assert act.induced_map(m.apply(x, x)).matrix == act.induced_map(x).matrix


def test_antipode_on_the_dual(cache):
    A, _, _ = coalgebra(cache, QQ, "C2")
    assert antipode_dual(A, A, cache) == [[1, 0], [0, 1]]
    B, cm, C = coalgebra(cache, QQ, "C3")
    basis = NamedBasis(cm.algebra, c3_named_polys(QQ))
    s = antipode_dual(B, B, cache)
    image = [sum(s[i][j] * v for j, v in enumerate(basis.functional({"A": 1}))) for i in range(C.dim)]
    assert image == basis.functional({"B": 1})
    assert mat_mul(QQ, s, s) == [[1 if i == j else 0 for j in range(C.dim)] for i in range(C.dim)]
    assert mat_mul(QQ, antipode_dual_inverse(B, B, cache), s) == mat_mul(QQ, s, s)


@pytest.mark.parametrize("p,name", [(2, "C2"), (3, "C2"), (5, "C2"), (7, "C3"), (3, "C3")])
def test_grouplikes_are_frobenius_morphisms(cache, p, name):
    ctx = PrimeField(p)
    A, cm, C = coalgebra(cache, ctx, name)
    act = measuring_action(cm)
    maps = [act.induced_map(v) for v in grouplikes(C)]
    assert all(check_omega_morphism(f) == [] for f in maps)
    n = A.dim
    cols = {tuple(tuple(int(f.matrix[i][j]) for i in range(n)) for j in range(n)) for f in maps}
    assert cols == set(group_frobenius_morphisms(cyclic_cayley(n), cyclic_cayley(n), p))
    gl = list(grouplikes(C))
    assert rank(ctx, gl) == len(gl)


def test_primitives_induce_derivations_of_the_form(cache):
    F3 = PrimeField(3)
    A, cm, C = coalgebra(cache, F3, "C3")
    act = measuring_action(cm)
    one = unit_j(A, cache)
    for x in primitives(C, one, one):
        f = act.induced_map(x)
        assert f.apply(A.unit) == {}
        assert all(A.nu(f.column(j)) == 0 for j in range(A.dim))


@pytest.mark.parametrize("name", ["1", "C2", "C3", "V4"])
def test_double_dual_for_group_algebras(name):
    assert all(frobenius_dual_roundtrip(kG(QQ, name)).values())


def test_double_dual_fails_without_symmetry():
    rep = frobenius_dual_roundtrip(asymmetric_fixture(QQ))
    assert not rep["double dual"]
    assert rep["iota morphism"] and rep["iota_inv after iota"]
