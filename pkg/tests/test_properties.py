"""Randomized invariants.  The last test checks the whole module ran inside its time limit."""

import random
import time

import pytest
from conftest import Mn, kG
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from frobmeas.comeasure import ComeasuringCache, comeasuring_presentation, perturb_comeasuring, verify_comeasuring
from frobmeas.measure import MeasuringAction, measuring_action, verify_measuring
from frobmeas.ncgb import NCPoly, Presentation, complete, normal_form, quotient_dimension
from frobmeas.omega import apply_op
from frobmeas.scalar import QQ, Extension, PrimeField

TIME_LIMIT = 60.0
_elapsed = []

CASES = 1000
PRIMES = [2, 3, 5, 7, 101, 2**31 - 1]
EXT_F5 = Extension(PrimeField(5), [2, 0, 1])       # t^2 + 2
EXT_Q = Extension(QQ, [1, 0, 1])                    # t^2 + 1
F9 = Extension(PrimeField(3), [1, 0, 1])
EXT_F3_TOWER = Extension(F9, [F9.neg(F9.coerce([1, 1])), 0, 1], "s")  # s^2 = 1 + t, a non-square in F9

CACHE = ComeasuringCache()


def criterion11(fn):
    return pytest.mark.criterion(11, "randomized property suites in under 60 s")(fn)


@pytest.fixture(autouse=True)
def _clock():
    start = time.perf_counter()
    yield
    _elapsed.append(time.perf_counter() - start)


def many(n=CASES):
    return settings(max_examples=n, deadline=None, suppress_health_check=[HealthCheck.too_slow])


# ---------------------------------------------------------------------------
# fields

small = st.integers(-10**6, 10**6)
rationals = st.builds(lambda n, d: QQ.from_fraction(n, d), small, st.integers(1, 10**6))


@st.composite
def prime_field_triples(draw):
    F = PrimeField(draw(st.sampled_from(PRIMES)))
    return (F,) + tuple(F.from_int(draw(small)) for _ in range(3))


@st.composite
def extension_triples(draw):
    E = draw(st.sampled_from([EXT_F5, EXT_Q, EXT_F3_TOWER]))
    if E is EXT_Q:
        elem = st.lists(rationals, min_size=2, max_size=2).map(E.coerce)
    else:
        elem = st.builds(lambda r: E.random(r), st.randoms(use_true_random=False))
    return (E,) + tuple(draw(elem) for _ in range(3))


def check_field_axioms(F, a, b, c):
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, b) == F.mul(b, a)
    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.zero) == a and F.mul(a, F.one) == a
    assert F.is_zero(F.add(a, F.neg(a)))
    assert F.sub(a, b) == F.add(a, F.neg(b))
    if not F.is_zero(a):
        assert F.is_one(F.mul(a, F.inv(a)))
        assert F.div(b, a) == F.mul(b, F.inv(a))


@criterion11
@many()
@given(rationals, rationals, rationals)
def test_rational_field_axioms(a, b, c):
    check_field_axioms(QQ, a, b, c)


@criterion11
@many()
@given(prime_field_triples())
def test_prime_field_axioms(triple):
    check_field_axioms(*triple)


@criterion11
@many()
@given(extension_triples())
def test_extension_field_axioms(triple):
    check_field_axioms(*triple)


@criterion11
@many()
@given(small, st.integers(1, 10**6), st.integers(1, 50))
def test_rationals_are_stored_reduced(n, d, k):
    assert QQ.from_fraction(n * k, d * k) == QQ.from_fraction(n, d)
    assert QQ.parse(f"{n * k}/{d * k}") == QQ.from_fraction(n, d)


# ---------------------------------------------------------------------------
# operations

ALGEBRAS = [kG(QQ, "C3"), Mn(QQ, 2), kG(QQ, "V4")]


@criterion11
@many(300)
@given(st.sampled_from(range(len(ALGEBRAS))), st.data())
def test_operations_are_multilinear(k, data):
    A = ALGEBRAS[k]
    vec = st.lists(st.integers(-5, 5).map(QQ.from_int), min_size=A.dim, max_size=A.dim)
    u, v, w = data.draw(vec), data.draw(vec), data.draw(vec)
    c = QQ.from_int(data.draw(st.integers(-5, 5)))
    mix = [QQ.add(x, QQ.mul(c, y)) for x, y in zip(u, v)]

    def combine(p, q):
        out = dict(p)
        for key, x in q.items():
            out[key] = QQ.add(out.get(key, QQ.zero), QQ.mul(c, x))
        return {key: x for key, x in out.items() if x}

    for name, args in [("mu", lambda z: [z, w]), ("mu", lambda z: [w, z]), ("delta", lambda z: [z]), ("nu", lambda z: [z])]:
        assert apply_op(A, name, args(mix)) == combine(apply_op(A, name, args(u)), apply_op(A, name, args(v)))


# ---------------------------------------------------------------------------
# Groebner bases


def _gb(name, ctx):
    A = kG(ctx, name)
    return CACHE.get(A, A).gb


GBS = [("C2", QQ), ("C3", QQ), ("C3", PrimeField(3)), ("C2", PrimeField(2))]


@st.composite
def polys(draw, ctx, ngens, max_deg):
    terms = {}
    for _ in range(draw(st.integers(1, 6))):
        w = tuple(draw(st.lists(st.integers(0, ngens - 1), max_size=max_deg)))
        terms[w] = ctx.from_int(draw(st.integers(-3, 3)))
    return NCPoly(ctx, terms)


@criterion11
@many(300)
@given(st.sampled_from(range(len(GBS))), st.data(), st.integers(0, 2**32))
def test_normal_forms_agree_across_strategies(k, data, seed):
    gb = _gb(*GBS[k])
    p = data.draw(polys(gb.ctx, gb.ngens, 4))
    left = normal_form(p, gb, "leftmost")
    assert normal_form(p, gb, "rightmost") == left
    assert normal_form(p, gb, "random", random.Random(seed)) == left
    assert normal_form(left, gb) == left


@st.composite
def presentations(draw):
    ctx = draw(st.sampled_from([QQ, PrimeField(3)]))
    n = draw(st.integers(1, 3))
    rels = [draw(polys(ctx, n, 3)) for _ in range(draw(st.integers(1, 3)))]
    return Presentation(ctx, [f"x{i}" for i in range(n)], rels)


@criterion11
@many(100)
@given(presentations(), st.data())
def test_random_bases_are_confluent_and_subword_closed(pres, data):
    gb = complete(pres, 5)
    words = gb.normal_words(4) if not gb.is_trivial else []
    found = set(words)
    for w in words:
        for i in range(len(w)):
            for j in range(i + 1, len(w) + 1):
                assert w[i:j] in found
    p = data.draw(polys(pres.ctx, pres.ngens, 4))
    assert normal_form(p, gb, "rightmost") == normal_form(p, gb, "leftmost")
    for r in pres.relations:
        if r.degree() <= gb.degree:
            assert normal_form(r, gb).is_zero()


PAIRS = [("C2", "C2"), ("C3", "C3"), ("C2", "C3"), ("1", "C2"), ("V4", "V4"), ("1", "1")]


@criterion11
@many(20)
@given(st.sampled_from(PAIRS), st.randoms(use_true_random=False))
def test_dimension_ignores_generator_order(pair, rnd):
    A, B = kG(QQ, pair[0]), kG(QQ, pair[1])
    pres = comeasuring_presentation(A, B)
    perm = list(range(pres.ngens))
    rnd.shuffle(perm)
    one = quotient_dimension(complete(pres, 8))
    two = quotient_dimension(complete(pres.permuted(perm), 8))
    assert (one.kind, getattr(one, "dimension", None)) == (two.kind, getattr(two, "dimension", None))


@criterion11
@many(20)
@given(st.sampled_from([("C2", "C2", 3), ("C2", "C2", 5), ("C3", "C3", 2), ("C3", "C3", 5), ("C2", "C3", 7),
                        ("C3", "C3", 7), ("V4", "V4", 3)]))
def test_dimension_matches_q_when_p_is_coprime_to_the_orders(case):
    a, b, p = case
    F = PrimeField(p)
    over_q = quotient_dimension(CACHE.get(kG(QQ, a), kG(QQ, b)).gb)
    over_p = quotient_dimension(CACHE.get(kG(F, a), kG(F, b)).gb)
    assert (over_q.kind, getattr(over_q, "dimension", None)) == (over_p.kind, getattr(over_p, "dimension", None))


# ---------------------------------------------------------------------------
# measuring and comeasuring checkers

UNIVERSAL = [("C2", QQ), ("C3", QQ), ("C2", PrimeField(2)), ("C3", PrimeField(3)), ("C3", PrimeField(7)), ("1", QQ)]

# (group, field, beta, alpha) positions of the shipped perturbations; each adds the unit of Q to rho
PERTURBED = [("C2", QQ, 1, 1), ("C2", QQ, 0, 1), ("C2", PrimeField(2), 1, 0), ("C3", QQ, 2, 1),
             ("C3", PrimeField(3), 0, 0), ("C3", PrimeField(7), 1, 2), ("1", QQ, 0, 0)]


def _universal(name, ctx):
    A = kG(ctx, name)
    return CACHE.get(A, A)


@criterion11
@many(30)
@given(st.sampled_from(UNIVERSAL))
def test_checkers_accept_universal_objects(case):
    cm = _universal(*case)
    assert verify_comeasuring(cm) == []
    assert verify_measuring(measuring_action(cm)) == []


@criterion11
@many(30)
@given(st.sampled_from(PERTURBED))
def test_checkers_reject_perturbed_fixtures(case):
    name, ctx, beta, alpha = case
    cm = _universal(name, ctx)
    bad = perturb_comeasuring(cm, beta, alpha, cm.algebra.one())
    assert verify_comeasuring(bad)
    act = measuring_action(cm)
    psi = [[dict(col) for col in row] for row in act.psi]
    psi[0][alpha][beta] = ctx.add(psi[0][alpha].get(beta, ctx.zero), ctx.one)
    assert verify_measuring(MeasuringAction(act.coalgebra, act.source, act.target, psi))


@criterion11
def test_property_suite_time_limit():
    total = sum(_elapsed)
    assert total < TIME_LIMIT, f"property suite took {total:.1f}s"
