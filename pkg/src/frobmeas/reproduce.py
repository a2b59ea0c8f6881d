"""Named worked examples with embedded expected values.

Each example recomputes a small universal (co)measuring object and compares
it against values recorded from hand calculation.  ``run_example(id)`` returns
an ``ExampleRun`` whose ``passed`` flag drives the CLI exit code.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .comeasure import (
    ComeasuringCache,
    antipode_S,
    comeasuring_from_morphism,
    factor_comeasuring,
    gen_index,
    verify_comeasuring,
)
from .errors import UnknownCommand
from .frobenius import group_algebra, invert_frobenius_morphism, klein_four, named_group
from .linalg import inverse, mat_mul, mat_vec, rank
from .measure import dual_coalgebra, grouplikes, measuring_action, primitives, unit_j
from .ncgb import NCPoly, count_normal_words, quotient_dimension
from .omega import LinearMap, check_omega_morphism
from .scalar import QQ, PrimeField


@dataclass
class Check:
    name: str
    expected: object
    observed: object

    @property
    def ok(self):
        return self.expected == self.observed

    def to_dict(self):
        return {"name": self.name, "expected": self.expected, "observed": self.observed, "ok": self.ok}


@dataclass
class ExampleRun:
    id: str
    reference: str
    checks: list = field(default_factory=list)
    data: dict = field(default_factory=dict)
    gating: bool = True

    @property
    def passed(self):
        return all(c.ok for c in self.checks)

    def check(self, name, expected, observed):
        self.checks.append(Check(name, expected, observed))

    def to_dict(self):
        return {
            "id": self.id,
            "reference": self.reference,
            "gating": self.gating,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
            "mismatches": [c.to_dict() for c in self.checks if not c.ok],
            "data": self.data,
        }


def kG(ctx, name):
    return group_algebra(ctx, named_group(name))


def _status(cm):
    return quotient_dimension(cm.gb).kind


# ---------------------------------------------------------------------------
# C3 bookkeeping: the worked example names six elements of Q(k[C3] -> k[C3])

C3_NAMES = ("X", "A", "B", "Y", "C", "D")

# row * column in the basis (X, A, B, Y, C, D); "0" is zero
C3_TABLE = (
    ("X", "A", "B", "0", "0", "0"),
    ("A", "B", "X", "0", "0", "0"),
    ("B", "X", "A", "0", "0", "0"),
    ("0", "0", "0", "Y", "C", "D"),
    ("0", "0", "0", "C", "D", "Y"),
    ("0", "0", "0", "D", "Y", "C"),
)

C3_ANTIPODE = {"X": "X", "A": "B", "B": "A", "Y": "Y", "C": "C", "D": "D"}


def c3_named_polys(ctx):
    """Free-algebra representatives.  Basis order e, a, b; C is the b-coefficient of rho(a)."""
    g = lambda beta, alpha: NCPoly.gen(ctx, gen_index(beta, alpha, 3))  # noqa: E731
    A, B, C, D = g(1, 1), g(2, 2), g(2, 1), g(1, 2)
    return {"X": A * B, "A": A, "B": B, "Y": D * C, "C": C, "D": D}


class NamedBasis:
    """Change of basis between the normal-word basis of Q and a list of named elements."""

    def __init__(self, Q, polys):
        self.Q = Q
        self.names = list(polys)
        self.elements = [Q.element_of(polys[n]) for n in self.names]
        ctx = Q.ctx
        # columns are the named elements in normal-word coordinates
        self.P = [[e.get(i, ctx.zero) for e in self.elements] for i in range(Q.dim)]
        self.P_inv = inverse(ctx, self.P)

    def coords(self, u):
        return mat_vec(self.Q.ctx, self.P_inv, self.Q.to_vector(u))

    def name_of(self, u):
        """The single name u equals, "0", or a rendered combination."""
        ctx = self.Q.ctx
        c = self.coords(u)
        nz = [(n, x) for n, x in zip(self.names, c) if not ctx.is_zero(x)]
        if not nz:
            return "0"
        if len(nz) == 1 and ctx.is_one(nz[0][1]):
            return nz[0][0]
        return " + ".join(f"{ctx.to_str(x)}*{n}" for n, x in nz)

    def functional(self, values):
        """Dual vector (values on normal words) of the functional with given values on the names."""
        ctx = self.Q.ctx
        f = [ctx.coerce(values.get(n, 0)) for n in self.names]
        return [ctx.sum(ctx.mul(f[k], self.P_inv[k][i]) for k in range(len(f))) for i in range(self.Q.dim)]

    def values(self, v):
        """Values of a dual vector on the named elements."""
        ctx = self.Q.ctx
        return [ctx.sum(ctx.mul(v[i], self.P[i][k]) for i in range(self.Q.dim)) for k in range(len(self.names))]


# ---------------------------------------------------------------------------
# examples


def _trivial(degree):
    run = ExampleRun("trivial", "ground field comeasuring itself: Q(k -> k) = k")
    k = kG(QQ, "1")
    cm = ComeasuringCache(degree).get(k, k)
    run.check("status", "finite", _status(cm))
    run.check("dimension", 1, cm.dim)
    return run


def _c2_c3(degree):
    run = ExampleRun("c2-c3", "group algebras of different small groups: Q(k[C2] -> k[H]) = 0 for H != C2")
    cache = ComeasuringCache(degree)
    for a, b in [("1", "C2"), ("C2", "1"), ("C2", "C3"), ("C3", "C2")]:
        cm = cache.get(kG(QQ, a), kG(QQ, b))
        run.check(f"{a}->{b} status", "trivial", _status(cm))
    return run


def _c2_self(degree):
    run = ExampleRun("c2-self", "C2 acting on itself: Q = k[x]/(x^2 - 1), grouplikes 1* +- x*, x* primitive in char 2")
    for ctx in (QQ, PrimeField(2), PrimeField(5)):
        cache = ComeasuringCache(degree)
        A = kG(ctx, "C2")
        cm = cache.get(A, A)
        tag = ctx.name()
        run.check(f"{tag} dimension", 2, cm.dim)
        Q = cm.algebra
        x_poly = NCPoly.gen(ctx, gen_index(1, 1, 2))
        x = Q.element_of(x_poly)
        basis = NamedBasis(Q, {"1": NCPoly.one(ctx), "x": x_poly})
        run.check(f"{tag} x^2", "1", basis.name_of(Q.mul(x, x)))
        run.check(f"{tag} rho axioms", [], verify_comeasuring(cm))
        S = antipode_S(A, A, cache)
        run.check(f"{tag} S(x)", "x", basis.name_of(S.evaluate(x_poly)))
        C = dual_coalgebra(Q)
        gl = grouplikes(C)
        if ctx.order is not None:
            expected = {2: 1, 5: 2}[ctx.order]
            run.check(f"{tag} grouplike count", expected, len(gl))
            run.check(f"{tag} grouplike search complete", True, gl.complete)
        if ctx.order == 2:
            one = unit_j(A, cache)
            prim = primitives(C, one, one)
            xstar = basis.functional({"x": 1})
            run.check(f"{tag} (unit,unit)-primitive dimension", 1, len(prim))
            run.check(f"{tag} x* spans the primitives", True, rank(ctx, prim + [xstar]) == len(prim) == 1)
        if ctx.order == 5:
            got = sorted(tuple(ctx.coeff_str(c) for c in basis.values(v)) for v in gl)
            run.check(f"{tag} grouplikes as values on (1, x)", [("1", "1"), ("1", "4")], got)
    return run


def _c3_setup(ctx, degree):
    cache = ComeasuringCache(degree)
    A = kG(ctx, "C3")
    cm = cache.get(A, A)
    return cache, A, cm


def _c3_dim(degree):
    run = ExampleRun("c3-dim", "C3 acting on itself: six-dimensional Q = k[C3] x k[C3], with its 6x6 table")
    cache, A, cm = _c3_setup(QQ, degree)
    run.check("dimension", 6, cm.dim)
    if cm.dim != 6:
        return run
    Q = cm.algebra
    basis = NamedBasis(Q, c3_named_polys(QQ))
    els = dict(zip(basis.names, basis.elements))
    table = tuple(
        tuple(basis.name_of(Q.mul(els[r], els[c])) for c in C3_NAMES) for r in C3_NAMES
    )
    run.check("multiplication table", [list(r) for r in C3_TABLE], [list(r) for r in table])
    run.check("X + Y = 1", True, Q.add(els["X"], els["Y"]) == Q.one())
    run.data["table"] = [list(r) for r in table]
    run.data["basis"] = list(C3_NAMES)
    return run


def _c3_antipode(degree):
    run = ExampleRun("c3-antipode", "C3 acting on itself: S swaps A and B and fixes X, Y, C, D")
    cache, A, cm = _c3_setup(QQ, degree)
    basis = NamedBasis(cm.algebra, c3_named_polys(QQ))
    S = antipode_S(A, A, cache)
    polys = c3_named_polys(QQ)
    got = {n: basis.name_of(S.evaluate(polys[n])) for n in C3_NAMES}
    run.check("S on named elements", C3_ANTIPODE, got)
    return run


def _permutation_key(m):
    return tuple(tuple(row) for row in m)


def _c3_grouplikes(degree):
    run = ExampleRun(
        "c3-grouplikes",
        "C3 acting on itself: six grouplikes forming S3 when cube roots of unity exist; biderivations in char 3",
    )
    F7 = PrimeField(7)
    cache, A, cm = _c3_setup(F7, degree)
    C = dual_coalgebra(cm.algebra)
    gl = grouplikes(C)
    run.check("F7 grouplike count", 6, len(gl))
    run.check("F7 search complete", True, gl.complete)
    action = measuring_action(cm)
    maps = [action.induced_map(v) for v in gl]
    run.check("F7 induced maps are Frobenius morphisms", True, all(not check_omega_morphism(f) for f in maps))
    mats = {_permutation_key(f.matrix) for f in maps}
    run.check("F7 induced maps distinct", 6, len(mats))
    closed = all(_permutation_key(mat_mul(F7, f.matrix, g.matrix)) in mats for f in maps for g in maps)
    run.check("F7 closed under composition", True, closed)
    commutative = all(mat_mul(F7, f.matrix, g.matrix) == mat_mul(F7, g.matrix, f.matrix) for f in maps for g in maps)
    run.check("F7 nonabelian", False, commutative)

    # explicit list with xi = 2, a primitive cube root of unity mod 7
    basis = NamedBasis(cm.algebra, c3_named_polys(F7))
    xi, xi2 = 2, 4
    expected = [
        {"X": 1, "A": 1, "B": 1},
        {"Y": 1, "C": 1, "D": 1},
        {"X": 1, "A": xi, "B": xi2},
        {"X": 1, "A": xi2, "B": xi},
        {"Y": 1, "C": xi, "D": xi2},
        {"Y": 1, "C": xi2, "D": xi},
    ]
    want = sorted(tuple(F7.coeff_str(F7.coerce(e.get(n, 0))) for n in C3_NAMES) for e in expected)
    got = sorted(tuple(F7.coeff_str(c) for c in basis.values(v)) for v in gl)
    run.check("F7 grouplikes in the named dual basis", want, got)

    F3 = PrimeField(3)
    cache3, A3, cm3 = _c3_setup(F3, degree)
    C3 = dual_coalgebra(cm3.algebra)
    basis3 = NamedBasis(cm3.algebra, c3_named_polys(F3))
    one = unit_j(A3, cache3)
    tau = basis3.functional({"Y": 1, "C": 1, "D": 1})
    run.check("F3 unit is X*+A*+B*", basis3.functional({"X": 1, "A": 1, "B": 1}), one)
    run.check("F3 tau grouplike", True, C3.is_grouplike(tau))
    a_minus_b = basis3.functional({"A": 1, "B": -1})
    c_minus_d = basis3.functional({"C": 1, "D": -1})
    run.check("F3 A*-B* is (unit,unit)-primitive", True, C3.is_primitive(a_minus_b, one, one))
    run.check("F3 C*-D* is (tau,tau)-primitive", True, C3.is_primitive(c_minus_d, tau, tau))
    run.data["F3 (unit,unit)-primitives"] = [C3.vector_str(v) for v in primitives(C3, one, one)]
    run.data["F3 (tau,tau)-primitives"] = [C3.vector_str(v) for v in primitives(C3, tau, tau)]
    return run


# k[C2 x C2] -> k[C4] over F5 with i = 2: (1+i)/2 = 4, (1-i)/2 = 2
PHI_F5 = [
    [1, 0, 0, 0],
    [0, 4, 2, 0],
    [0, 0, 0, 1],
    [0, 2, 4, 0],
]


def klein_to_cyclic_f5():
    ctx = PrimeField(5)
    V = group_algebra(ctx, klein_four())
    C4 = kG(ctx, "C4")
    return LinearMap(V, C4, [[ctx.from_int(x) for x in row] for row in PHI_F5])


def _c4_v4(degree):
    run = ExampleRun(
        "c4-v4",
        "k[C2 x C2] and k[C4] are isomorphic Frobenius algebras once a fourth root of unity exists",
    )
    phi = klein_to_cyclic_f5()
    ctx = phi.ctx
    run.check("phi is a Frobenius morphism", [], check_omega_morphism(phi))
    inv = invert_frobenius_morphism(phi)
    run.check("phi^-1 phi = Id", True, inv.compose(phi).is_identity())
    run.check("phi phi^-1 = Id", True, phi.compose(inv).is_identity())
    cache = ComeasuringCache(degree)
    univ = cache.get(phi.codomain, phi.domain)
    char = factor_comeasuring(comeasuring_from_morphism(inv), univ)
    run.check("character kills all relations", [], char.unkilled_relations())
    run.check("character sends 1 to 1", {0: ctx.one}, char.evaluate(NCPoly.one(ctx)))
    qres = quotient_dimension(univ.gb)
    run.data["F5 status"] = qres.kind
    q_cache = ComeasuringCache(degree)
    for a, b in [("C4", "V4"), ("V4", "C4")]:
        cm = q_cache.get(kG(QQ, a), kG(QQ, b))
        run.check(f"Q {a}->{b} not reduced to zero", True, not cm.gb.is_trivial)
        res = quotient_dimension(cm.gb)
        run.data[f"Q {a}->{b}"] = {
            "status": res.kind,
            "normal words per degree": list(getattr(res, "per_degree", ())),
            "quotient infinite": getattr(res, "quotient_infinite", False),
        }
    return run


def _c4_bound(degree):
    run = ExampleRun(
        "c4-bound",
        "growth of Q(k[C4] -> k[C4]); counts are engine output, only monotonicity is asserted",
        gating=False,
    )
    cache = ComeasuringCache(degree)
    A = kG(QQ, "C4")
    cm = cache.get(A, A)
    gb = cm.gb
    counts = count_normal_words(gb.leading_words, gb.ngens, degree)
    cumulative = [sum(counts[: d + 1]) for d in range(len(counts))]
    run.check("cumulative counts never decrease", True, all(x <= y for x, y in zip(cumulative, cumulative[1:])))
    res = quotient_dimension(gb)
    run.data.update({
        "degree": degree,
        "status": res.kind,
        "normal words per degree": counts,
        "normal words up to degree": cumulative,
        "basis complete": gb.complete_basis,
        "quotient infinite": getattr(res, "quotient_infinite", False),
    })
    return run


EXAMPLES = {
    "trivial": _trivial,
    "c2-c3": _c2_c3,
    "c2-self": _c2_self,
    "c3-dim": _c3_dim,
    "c3-antipode": _c3_antipode,
    "c3-grouplikes": _c3_grouplikes,
    "c4-v4": _c4_v4,
    "c4-bound": _c4_bound,
}

DEFAULT_DEGREES = {"c4-bound": 6}


def run_example(example_id: str, degree: int | None = None) -> ExampleRun:
    try:
        fn = EXAMPLES[example_id]
    except KeyError:
        raise UnknownCommand(f"unknown example {example_id!r}; known: {', '.join(EXAMPLES)}") from None
    return fn(degree if degree is not None else DEFAULT_DEGREES.get(example_id, 8))


__all__ = ["EXAMPLES", "ExampleRun", "C3_NAMES", "C3_TABLE", "NamedBasis", "c3_named_polys",
           "klein_to_cyclic_f5", "run_example"]
