"""Frobenius algebras: validation, Casimir element, builders and the canonical inverse."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import EngineError, FrobeniusAxiomError, NotAFrobeniusMorphism, NotAGroup, SignatureMismatch
from .linalg import inverse
from .omega import FROBENIUS_SIGNATURE, LinearMap, OmegaAlgebra, _add_into, check_omega_morphism
from .scalar import FieldCtx


# ---------------------------------------------------------------------------
# element-level helpers on sparse vectors {index: payload}

def _mul(alg, u, v):
    ctx, table = alg.ctx, alg.tables["mu"]
    out = {}
    for i, a in u.items():
        for j, b in v.items():
            row = table.get((i, j))
            if row:
                ab = ctx.mul(a, b)
                for (k,), c in row.items():
                    _add_into(ctx, out, k, ctx.mul(ab, c))
    return out


def _delta(alg, u):
    ctx, table = alg.ctx, alg.tables["delta"]
    out = {}
    for i, a in u.items():
        for pq, c in table.get((i,), {}).items():
            _add_into(ctx, out, pq, ctx.mul(a, c))
    return out


def _nu(alg, u):
    ctx, table = alg.ctx, alg.tables["nu"]
    total = ctx.zero
    for i, a in u.items():
        c = table.get((i,), {}).get(())
        if c is not None:
            total = ctx.add(total, ctx.mul(a, c))
    return total


def _unit(alg):
    return {k: c for (k,), c in alg.tables["eta"].get((), {}).items()}


def _e(alg, i):
    return {i: alg.ctx.one}


def validate_frobenius(alg: OmegaAlgebra) -> list:
    """Violated axioms as (family, basis witness) pairs; empty means all hold.

    Families: assoc, unit, coassoc, counit, frobenius.  Coassociativity is
    checked on its own even though it follows from the other axioms.
    """
    if alg.signature != FROBENIUS_SIGNATURE:
        raise SignatureMismatch(f"not the Frobenius signature: {alg.signature}")
    ctx, n = alg.ctx, alg.dim
    out = []
    basis = [_e(alg, i) for i in range(n)]
    prods = [[_mul(alg, basis[i], basis[j]) for j in range(n)] for i in range(n)]
    for i, j, k in itertools.product(range(n), repeat=3):
        if _mul(alg, prods[i][j], basis[k]) != _mul(alg, basis[i], prods[j][k]):
            out.append(("assoc", (i, j, k)))
    one = _unit(alg)
    for i in range(n):
        if _mul(alg, one, basis[i]) != basis[i] or _mul(alg, basis[i], one) != basis[i]:
            out.append(("unit", (i,)))
    deltas = [_delta(alg, basis[i]) for i in range(n)]
    for i in range(n):
        left, right = {}, {}
        for (p, q), c in deltas[i].items():
            for (p1, p2), d in deltas[p].items():
                _add_into(ctx, left, (p1, p2, q), ctx.mul(c, d))
            for (q1, q2), d in deltas[q].items():
                _add_into(ctx, right, (p, q1, q2), ctx.mul(c, d))
        if left != right:
            out.append(("coassoc", (i,)))
    for i in range(n):
        left, right = {}, {}
        for (p, q), c in deltas[i].items():
            _add_into(ctx, left, q, ctx.mul(_nu(alg, basis[p]), c))
            _add_into(ctx, right, p, ctx.mul(_nu(alg, basis[q]), c))
        if left != basis[i] or right != basis[i]:
            out.append(("counit", (i,)))
    for i, j in itertools.product(range(n), repeat=2):
        target = _delta(alg, prods[i][j])
        via_left, via_right = {}, {}
        for (p, q), c in deltas[i].items():
            for r, d in prods[q][j].items():
                _add_into(ctx, via_left, (p, r), ctx.mul(c, d))
        for (p, q), c in deltas[j].items():
            for r, d in prods[i][p].items():
                _add_into(ctx, via_right, (r, q), ctx.mul(c, d))
        if target != via_left or target != via_right:
            out.append(("frobenius", (i, j)))
    return out


class FrobeniusAlgebra(OmegaAlgebra):
    """An Omega-algebra over the signature {mu, eta, delta, nu}, validated on construction."""

    def __init__(self, ctx: FieldCtx, basis, tables, label=None):
        super().__init__(ctx, basis, FROBENIUS_SIGNATURE, tables, label)
        violations = validate_frobenius(self)
        if violations:
            raise FrobeniusAxiomError(violations)
        self.unit = _unit(self)
        self.counit = [_nu(self, _e(self, i)) for i in range(self.dim)]
        self.casimir = _delta(self, self.unit)

    @classmethod
    def from_omega(cls, alg: OmegaAlgebra) -> "FrobeniusAlgebra":
        if isinstance(alg, FrobeniusAlgebra):
            return alg
        return cls(alg.ctx, alg.basis, alg.tables, alg.label)

    def mul(self, u, v):
        return _mul(self, u, v)

    def comul(self, u):
        return _delta(self, u)

    def nu(self, u):
        return _nu(self, u)

    def with_label(self, label):
        return FrobeniusAlgebra(self.ctx, self.basis, self.tables, label)


def casimir(alg: FrobeniusAlgebra) -> dict:
    """Delta applied to the unit, as a sparse {(i, j): coefficient} matrix."""
    return dict(alg.casimir)


def is_symmetric(alg: FrobeniusAlgebra) -> bool:
    e = alg.casimir
    return e == {(j, i): c for (i, j), c in e.items()}


# ---------------------------------------------------------------------------
# groups

@dataclass(frozen=True)
class Group:
    name: str
    cayley: tuple
    unit: int
    inverse: tuple
    labels: tuple

    @property
    def order(self):
        return len(self.cayley)


def cyclic_group(n: int) -> Group:
    if n < 1:
        raise ValueError("cyclic group order must be positive")
    names = {1: ["e"], 2: ["e", "g"], 3: ["e", "a", "b"]}
    labels = names.get(n) or ["e"] + ["x" if k == 1 else f"x^{k}" for k in range(1, n)]
    table = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
    inv = tuple((-i) % n for i in range(n))
    return Group(f"C{n}", table, 0, inv, tuple(labels))


def direct_product(g: Group, h: Group) -> Group:
    """Index i + |g| * j stands for the pair (g_i, h_j)."""
    m, n = g.order, h.order
    labels = tuple(f"({g.labels[i]},{h.labels[j]})" for j in range(n) for i in range(m))
    idx = lambda i, j: i + m * j  # noqa: E731
    table = tuple(
        tuple(idx(g.cayley[a % m][b % m], h.cayley[a // m][b // m]) for b in range(m * n))
        for a in range(m * n)
    )
    inv = tuple(idx(g.inverse[a % m], h.inverse[a // m]) for a in range(m * n))
    return Group(f"{g.name}x{h.name}", table, idx(g.unit, h.unit), inv, labels)


def klein_four() -> Group:
    return direct_product(cyclic_group(2), cyclic_group(2))


def symmetric_group(n: int) -> Group:
    perms = sorted(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    compose = lambda p, q: tuple(p[q[k]] for k in range(n))  # noqa: E731
    table = tuple(tuple(index[compose(p, q)] for q in perms) for p in perms)
    ident = tuple(range(n))
    inv = tuple(index[tuple(sorted(range(n), key=lambda k: p[k]))] for p in perms)
    labels = tuple("".join(str(x + 1) for x in p) for p in perms)
    return Group(f"S{n}", table, index[ident], inv, labels)


def named_group(name: str) -> Group:
    key = name.strip().upper().replace("×", "X")
    if key in ("1", "C1", "TRIVIAL", "E"):
        return cyclic_group(1)
    if key in ("V4", "K4", "C2XC2", "KLEIN"):
        return klein_four()
    if key.startswith("S") and key[1:].isdigit():
        return symmetric_group(int(key[1:]))
    if "X" in key:
        if any(not p for p in key.split("X")):
            raise ValueError(f"unknown group {name!r}")
        parts = [named_group(p) for p in key.split("X")]
        out = parts[0]
        for p in parts[1:]:
            out = direct_product(out, p)
        return out
    if key.startswith("C") and key[1:].isdigit():
        return cyclic_group(int(key[1:]))
    raise ValueError(f"unknown group {name!r}")


def check_group(cayley, unit, inverse) -> None:
    n = len(cayley)
    if any(len(row) != n for row in cayley) or not (0 <= unit < n) or len(inverse) != n:
        raise NotAGroup("Cayley table, unit or inverse table has the wrong shape")
    for row in cayley:
        if any(not (0 <= x < n) for x in row):
            raise NotAGroup("Cayley table entry out of range")
    for a in range(n):
        if cayley[unit][a] != a or cayley[a][unit] != a:
            raise NotAGroup(f"{unit} is not a unit at {a}", (unit, a))
        b = inverse[a]
        if cayley[a][b] != unit or cayley[b][a] != unit:
            raise NotAGroup(f"{b} is not inverse to {a}", (a, b))
    for a, b, c in itertools.product(range(n), repeat=3):
        if cayley[cayley[a][b]][c] != cayley[a][cayley[b][c]]:
            raise NotAGroup(f"associativity fails at ({a}, {b}, {c})", (a, b, c))


def group_algebra(ctx: FieldCtx, cayley, unit: int = 0, inverse=None, labels=None, name=None) -> FrobeniusAlgebra:
    """k[G] with Delta(g) = sum_h g h^-1 (x) h, nu(e) = 1 and nu(g) = 0 otherwise."""
    if isinstance(cayley, Group):
        grp = cayley
        cayley, unit, inverse = grp.cayley, grp.unit, grp.inverse
        labels = labels or grp.labels
        name = name or f"k[{grp.name}]"
    n = len(cayley)
    if inverse is None:
        raise NotAGroup("inverse table required")
    check_group(cayley, unit, inverse)
    one = ctx.one
    mu = {(x, y): {(cayley[x][y],): one} for x in range(n) for y in range(n)}
    delta = {(g,): {(cayley[g][inverse[h]], h): one for h in range(n)} for g in range(n)}
    tables = {"mu": mu, "eta": {(): {(unit,): one}}, "delta": delta, "nu": {(unit,): {(): one}}}
    labels = labels or [f"g{i}" for i in range(n)]
    return FrobeniusAlgebra(ctx, labels, tables, name)


def matrix_algebra(ctx: FieldCtx, n: int) -> FrobeniusAlgebra:
    """M_n(k) with Delta(E_ij) = sum_k E_ik (x) E_kj and nu = trace."""
    if n < 1:
        raise ValueError("matrix size must be positive")
    idx = lambda i, j: i * n + j  # noqa: E731
    sep = "" if n < 10 else ","
    labels = [f"E{i + 1}{sep}{j + 1}" for i in range(n) for j in range(n)]
    one = ctx.one
    mu = {(idx(i, j), idx(j, l)): {(idx(i, l),): one} for i in range(n) for j in range(n) for l in range(n)}
    eta = {(): {(idx(i, i),): one for i in range(n)}}
    delta = {(idx(i, j),): {(idx(i, k), idx(k, j)): one for k in range(n)} for i in range(n) for j in range(n)}
    nu = {(idx(i, i),): {(): one} for i in range(n)}
    return FrobeniusAlgebra(ctx, labels, {"mu": mu, "eta": eta, "delta": delta, "nu": nu}, f"M{n}")


def frobenius_from_form(ctx, basis, mu, unit, nu_values, label=None) -> FrobeniusAlgebra:
    """Complete an algebra with a nondegenerate Frobenius form to Frobenius data.

    The Casimir element is the inverse Gram matrix of (a, b) -> nu(ab), and
    Delta(a) = a e1 (x) e2.
    """
    n = len(basis)
    probe = OmegaAlgebra(ctx, basis, FROBENIUS_SIGNATURE, {"mu": mu, "eta": {(): {(k,): c for k, c in unit.items()}}, "delta": {}, "nu": {(i,): {(): nu_values[i]} for i in range(n)}})
    gram = [[_nu(probe, _mul(probe, _e(probe, i), _e(probe, j))) for j in range(n)] for i in range(n)]
    cas = inverse(ctx, gram)
    delta = {}
    for a in range(n):
        row = {}
        for i, j in itertools.product(range(n), repeat=2):
            if ctx.is_zero(cas[i][j]):
                continue
            for k, c in _mul(probe, _e(probe, a), _e(probe, i)).items():
                _add_into(ctx, row, (k, j), ctx.mul(c, cas[i][j]))
        delta[(a,)] = row
    tables = dict(probe.tables)
    tables["delta"] = delta
    return FrobeniusAlgebra(ctx, basis, tables, label)


def asymmetric_fixture(ctx: FieldCtx) -> FrobeniusAlgebra:
    """M_2 with the twisted form nu(a) = trace(a u), u = [[1, 1], [0, 1]].

    u is invertible in every characteristic and not central, so nu(ab) != nu(ba)
    (take a = E11, b = E21).
    """
    base = matrix_algebra(ctx, 2)
    u = [[1, 1], [0, 1]]
    nu_values = [ctx.from_int(u[j][i]) for i in range(2) for j in range(2)]
    return frobenius_from_form(ctx, base.basis, base.tables["mu"], base.unit, nu_values, "M2-twisted")


# ---------------------------------------------------------------------------
# duality and morphisms

def dual_frobenius(alg: FrobeniusAlgebra):
    """(A*, iota, iota_inv) with iota(a)(b) = nu(ab) and iota_inv(f) = f(e1) e2."""
    ctx, n = alg.ctx, alg.dim
    mu, delta = {}, {}
    for k in range(n):
        for (p, q), c in alg.tables["delta"].get((k,), {}).items():
            # (a_q* . a_p*)(a_k) picks the Delta coefficient at (p, q)
            _add_into(ctx, mu.setdefault((q, p), {}), (k,), c)
    for (j, i), row in alg.tables["mu"].items():
        for (k,), c in row.items():
            _add_into(ctx, delta.setdefault((k,), {}), (i, j), c)
    eta = {(): {(a,): c for a, c in enumerate(alg.counit) if not ctx.is_zero(c)}}
    nu = {(k,): {(): c} for k, c in alg.unit.items()}
    labels = [f"{b}*" for b in alg.basis]
    name = f"{alg.label}*" if alg.label else None
    dual = FrobeniusAlgebra(ctx, labels, {"mu": mu, "eta": eta, "delta": delta, "nu": nu}, name)
    iota = [[alg.nu(alg.mul(_e(alg, a), _e(alg, b))) for a in range(n)] for b in range(n)]
    iota_inv = [[alg.casimir.get((k, j), ctx.zero) for k in range(n)] for j in range(n)]
    return dual, LinearMap(alg, dual, iota), LinearMap(dual, alg, iota_inv)


def invert_frobenius_morphism(h: LinearMap) -> LinearMap:
    """The two-sided inverse g(b) = e1 nu_B(h(e2) b) of a Frobenius morphism."""
    A = FrobeniusAlgebra.from_omega(h.domain)
    B = FrobeniusAlgebra.from_omega(h.codomain)
    bad = check_omega_morphism(h)
    if bad:
        raise NotAFrobeniusMorphism(f"not a morphism; first violations {bad[:3]}")
    ctx = A.ctx
    g = [[ctx.zero] * B.dim for _ in range(A.dim)]
    images = [h.column(j) for j in range(A.dim)]
    for beta in range(B.dim):
        b = _e(B, beta)
        for (i, j), c in A.casimir.items():
            w = B.nu(B.mul(images[j], b))
            if not ctx.is_zero(w):
                g[i][beta] = ctx.add(g[i][beta], ctx.mul(c, w))
    inv = LinearMap(h.codomain, h.domain, g)
    if not inv.compose(h).is_identity() or not h.compose(inv).is_identity():
        raise EngineError("computed inverse does not compose to the identity")
    return inv
