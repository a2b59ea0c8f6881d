"""Acceptance criteria 1-12.  A summary line per criterion is printed at the end of the run."""

import itertools
import os
import time

import pytest
from conftest import Mn, kG
from oracles import group_frobenius_morphisms

from frobmeas import (
    QQ,
    ComeasuringCache,
    PrimeField,
    antipode_S,
    check_omega_morphism,
    comeasuring_from_morphism,
    dual_coalgebra,
    factor_comeasuring,
    gamma_pi_factorization_check,
    grouplikes,
    hopf_category_check,
    invert_frobenius_morphism,
    measuring_action,
    primitives,
    quotient_dimension,
    triviality_oracle,
    unit_j,
)
from frobmeas.comeasure import gen_index
from frobmeas.linalg import mat_mul, rank
from frobmeas.measure import frobenius_dual_roundtrip
from frobmeas.ncgb import NCPoly
from frobmeas.reproduce import C3_NAMES, C3_TABLE, NamedBasis, c3_named_polys, klein_to_cyclic_f5, run_example

# wall-clock limits in seconds, one per criterion
LIMIT = {1: 1.0, 2: 1.0, 3: 1.0, 4: 1.0, 5: 5.0, 6: 10.0, 7: 60.0, 8: 60.0, 9: 30.0, 10: 30.0}


def criterion(n, title):
    return pytest.mark.criterion(n, title)


class Clock:
    def __init__(self):
        self.start = time.perf_counter()

    @property
    def elapsed(self):
        return time.perf_counter() - self.start


def within(n, clock):
    assert clock.elapsed < LIMIT[n], f"took {clock.elapsed:.2f}s, limit {LIMIT[n]}s"


def status(A, B, degree=8):
    return quotient_dimension(ComeasuringCache(degree).get(A, B).gb)


# ---------------------------------------------------------------------------


@criterion(1, "dim Q(k -> k) = 1 over Q")
def test_c1_ground_field():
    clock = Clock()
    res = status(kG(QQ, "1"), kG(QQ, "1"))
    assert res.kind == "finite" and res.dimension == 1
    within(1, clock)


@criterion(2, "Q(k -> k[C2]) and Q(k[C2] -> k[C3]) are trivial over Q")
@pytest.mark.parametrize("a,b", [("1", "C2"), ("C2", "C3")])
def test_c2_trivial_pairs(a, b):
    clock = Clock()
    assert status(kG(QQ, a), kG(QQ, b)).kind == "trivial"
    within(2, clock)


@criterion(3, "dim Q(k[C2] -> k[C2]) = 2 with table {1, x}, x^2 = 1")
@pytest.mark.parametrize("field", ["Q", 2, 5])
def test_c3_c2_self_quotient(field):
    clock = Clock()
    ctx = QQ if field == "Q" else PrimeField(field)
    A = kG(ctx, "C2")
    cm = ComeasuringCache().get(A, A)
    assert cm.dim == 2
    Q = cm.algebra
    x_poly = NCPoly.gen(ctx, gen_index(1, 1, 2))
    basis = NamedBasis(Q, {"1": NCPoly.one(ctx), "x": x_poly})
    e = dict(zip(basis.names, basis.elements))
    table = [[basis.name_of(Q.mul(e[r], e[c])) for c in ("1", "x")] for r in ("1", "x")]
    assert table == [["1", "x"], ["x", "1"]]
    within(3, clock)


@criterion(4, "C2 self-case: 2 grouplikes over F5, 1 over F2; F2 (unit,unit)-primitives = span{x*}")
@pytest.mark.parametrize("p,count", [(5, 2), (2, 1)])
def test_c4_c2_grouplikes(p, count):
    clock = Clock()
    ctx = PrimeField(p)
    A = kG(ctx, "C2")
    C = dual_coalgebra(ComeasuringCache().get(A, A).algebra)
    gl = grouplikes(C)
    assert gl.complete and len(gl) == count
    within(4, clock)


@criterion(4, "C2 self-case: 2 grouplikes over F5, 1 over F2; F2 (unit,unit)-primitives = span{x*}")
def test_c4_c2_char2_primitive():
    clock = Clock()
    ctx = PrimeField(2)
    A = kG(ctx, "C2")
    cache = ComeasuringCache()
    cm = cache.get(A, A)
    C = dual_coalgebra(cm.algebra)
    one = unit_j(A, cache)
    prim = primitives(C, one, one)
    xstar = NamedBasis(cm.algebra, {"1": NCPoly.one(ctx), "x": NCPoly.gen(ctx, 3)}).functional({"x": 1})
    assert len(prim) == 1
    assert rank(ctx, prim + [xstar]) == 1
    within(4, clock)


@criterion(5, "C3 self-case over Q: dim 6, the 6x6 table, S swaps A and B and fixes X, Y, C, D")
def test_c5_c3_quotient_and_antipode():
    clock = Clock()
    A = kG(QQ, "C3")
    cache = ComeasuringCache()
    cm = cache.get(A, A)
    assert cm.dim == 6
    polys = c3_named_polys(QQ)
    basis = NamedBasis(cm.algebra, polys)
    Q = cm.algebra
    e = dict(zip(basis.names, basis.elements))
    table = [[basis.name_of(Q.mul(e[r], e[c])) for c in C3_NAMES] for r in C3_NAMES]
    assert table == [list(row) for row in C3_TABLE]
    S = antipode_S(A, A, cache)
    images = {n: basis.name_of(S.evaluate(polys[n])) for n in C3_NAMES}
    assert images == {"A": "B", "B": "A", "X": "X", "Y": "Y", "C": "C", "D": "D"}
    within(5, clock)


def _c3_f3():
    ctx = PrimeField(3)
    A = kG(ctx, "C3")
    cache = ComeasuringCache()
    cm = cache.get(A, A)
    C = dual_coalgebra(cm.algebra)
    basis = NamedBasis(cm.algebra, c3_named_polys(ctx))
    one = unit_j(A, cache)
    return ctx, C, basis, primitives(C, one, one)


@criterion(6, "C3 self-case: 6 grouplikes over F7 forming S3; F3 (unit,unit)-primitives contain A*-B* and C*-D*")
def test_c6_c3_f7_grouplikes_form_nonabelian_group():
    clock = Clock()
    F7 = PrimeField(7)
    A = kG(F7, "C3")
    cm = ComeasuringCache().get(A, A)
    C = dual_coalgebra(cm.algebra)
    gl = grouplikes(C)
    assert gl.complete and len(gl) == 6
    action = measuring_action(cm)
    mats = [action.induced_map(v).matrix for v in gl]
    keys = {tuple(map(tuple, m)) for m in mats}
    assert len(keys) == 6
    assert all(tuple(map(tuple, mat_mul(F7, f, g))) in keys for f in mats for g in mats)
    assert any(mat_mul(F7, f, g) != mat_mul(F7, g, f) for f in mats for g in mats)
    # independent oracle: all Frobenius automorphisms of F7[C3] by enumeration
    oracle = group_frobenius_morphisms([[(i + j) % 3 for j in range(3)] for i in range(3)],
                                       [[(i + j) % 3 for j in range(3)] for i in range(3)], 7)
    as_cols = {tuple(tuple(m[i][j] for i in range(3)) for j in range(3)) for m in mats}
    assert as_cols == set(oracle)
    within(6, clock)


@criterion(6, "C3 self-case: 6 grouplikes over F7 forming S3; F3 (unit,unit)-primitives contain A*-B* and C*-D*")
def test_c6_c3_f3_unit_primitives_contain_a_minus_b():
    clock = Clock()
    ctx, C, basis, prim = _c3_f3()
    v = basis.functional({"A": 1, "B": -1})
    assert rank(ctx, prim + [v]) == len(prim)
    within(6, clock)


@criterion(6, "C3 self-case: 6 grouplikes over F7 forming S3; F3 (unit,unit)-primitives contain A*-B* and C*-D*")
def test_c6_c3_f3_unit_primitives_contain_c_minus_d():
    clock = Clock()
    ctx, C, basis, prim = _c3_f3()
    v = basis.functional({"C": 1, "D": -1})
    assert rank(ctx, prim + [v]) == len(prim), (
        f"(unit,unit)-primitives are {[C.vector_str(p) for p in prim]}; C*-D* is not among them"
    )
    within(6, clock)


GROUPS = [("1", 1), ("C2", 2), ("C3", 3), ("C4", 4), ("V4", 4)]


@criterion(7, "triviality oracle agrees with the Groebner status on small group and matrix pairs over Q")
def test_c7_triviality_oracle_agreement():
    clock = Clock()
    cache = ComeasuringCache()
    checked = 0
    for (ga, na), (gb, nb) in itertools.permutations(GROUPS, 2):
        if na == nb:
            continue
        oracle = triviality_oracle(("group", na), ("group", nb), 0)
        assert oracle == "Trivial"
        assert quotient_dimension(cache.get(kG(QQ, ga), kG(QQ, gb)).gb).kind == "trivial", (ga, gb)
        checked += 1
    for m, n in [(1, 2), (2, 1)]:
        assert triviality_oracle(("matrix", m), ("matrix", n), 0) == "Trivial"
        assert quotient_dimension(cache.get(Mn(QQ, m), Mn(QQ, n)).gb).kind == "trivial", (m, n)
        checked += 1
    assert checked == 20
    within(7, clock)


@criterion(8, "k[C2 x C2] vs k[C4]: explicit isomorphism over F5 gives a character; over Q the quotient is nonzero")
def test_c8_klein_cyclic():
    clock = Clock()
    phi = klein_to_cyclic_f5()
    ctx = phi.ctx
    assert check_omega_morphism(phi) == []
    inv = invert_frobenius_morphism(phi)
    assert inv.compose(phi).is_identity() and phi.compose(inv).is_identity()
    univ = ComeasuringCache().get(phi.codomain, phi.domain)
    char = factor_comeasuring(comeasuring_from_morphism(inv), univ)
    assert char.unkilled_relations() == []
    assert char.evaluate(NCPoly.one(ctx)) == {0: ctx.one}
    for a, b in [("C4", "V4"), ("V4", "C4")]:
        gb = ComeasuringCache(8).get(kG(QQ, a), kG(QQ, b)).gb
        assert gb.degree <= 8 and not gb.is_trivial
    within(8, clock)


@criterion(9, "Hopf-category axiom suite on {k}, {k[C2]}, {k[C3]} and {k[C2], k}")
@pytest.mark.parametrize("names", [["1"], ["C2"], ["C3"], ["C2", "1"]], ids=lambda n: "+".join(n))
def test_c9_hopf_category_axioms(names):
    clock = Clock()
    X = [kG(QQ, n) for n in names]
    rep = hopf_category_check(X)
    assert rep.passed, rep.failures
    expected = {
        "coalgebra axioms", "unit is grouplike", "left unit", "right unit", "associativity",
        "m is a coalgebra map",
    }
    assert expected <= set(rep.checks)
    assert any("antipode" in k for k in rep.checks)
    assert any("s^2" in k or "involut" in k for k in rep.checks)
    within(9, clock)


@criterion(10, "duality: iota round trip, gamma and pi invertible coalgebra maps, s = pi gamma")
@pytest.mark.parametrize("name,field", [("1", "Q"), ("C2", 5), ("C3", "Q")])
def test_c10_duality(name, field):
    clock = Clock()
    ctx = QQ if field == "Q" else PrimeField(field)
    A = kG(ctx, name)
    ident = frobenius_dual_roundtrip(A)
    assert all(ident.values()), ident
    rep = gamma_pi_factorization_check(A, A)
    assert rep.passed, rep.checks
    for key in ("gamma invertible", "pi invertible", "gamma coalgebra map", "pi cop coalgebra map", "pi gamma = s"):
        assert rep.checks[key], key
    within(10, clock)


@criterion(12, "optional: normal-word counts for Q(k[C4] -> k[C4]) never decrease with degree")
def test_c12_c4_bound_monotone():
    degree = int(os.environ.get("FROBMEAS_C4_DEGREE", "6"))
    run = run_example("c4-bound", degree)
    assert not run.gating
    assert run.passed, [c.to_dict() for c in run.checks if not c.ok]
    counts = run.data["normal words up to degree"]
    assert len(counts) == degree + 1
