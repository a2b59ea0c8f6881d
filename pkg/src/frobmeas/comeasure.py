"""Universal comeasurings between Omega-algebras and their op-category structure.

For algebras A (basis a_alpha) and B (basis b_beta) the universal comeasuring
algebra Q(A->B) is generated by x_{beta alpha}, stored at generator index
``beta * dim A + alpha``, with coaction rho(a_alpha) = sum_beta b_beta (x) x_{beta alpha}.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

from .algebra import FiniteAlgebra, PresentedQuotient, pure_tensor, tensor_algebra
from .errors import (
    FieldMismatch,
    InfiniteCodomain,
    InfiniteQuotient,
    RelationNotKilled,
    SignatureMismatch,
)
from .frobenius import FrobeniusAlgebra
from .ncgb import DEFAULT_DEGREE, HARD_CAP, NCPoly, Presentation, complete
from .omega import LinearMap, OmegaAlgebra, _add_into


def gen_index(beta, alpha, dim_a):
    return beta * dim_a + alpha


def generator_labels(A, B):
    return [f"({b}*|{a})" for b in B.basis for a in A.basis]


# ---------------------------------------------------------------------------
# comeasurings


@dataclass
class Comeasuring:
    """rho(a_alpha) = sum_beta b_beta (x) rho[alpha][beta], entries in ``algebra``."""

    source: OmegaAlgebra
    target: OmegaAlgebra
    algebra: object
    rho: list
    presentation: Presentation | None = None
    gb: object = None
    degree: int | None = None

    @property
    def is_finite(self):
        return getattr(self.algebra, "finite", False)

    @property
    def dim(self):
        return self.algebra.dim if self.is_finite else None

    @property
    def is_trivial(self):
        return self.is_finite and self.algebra.dim == 0

    def coefficient(self, beta, alpha):
        return self.rho[alpha].get(beta, {})

    def to_dict(self):
        alg = self.algebra
        return {
            "source": self.source.to_dict(),
            "target": self.target.to_dict(),
            "quotient": None if self.presentation is None else self.presentation.to_dict(),
            "rho": [
                [alg.element_str(self.rho[a].get(b, {})) for b in range(self.target.dim)]
                for a in range(self.source.dim)
            ],
        }


def _relation_polys(A: OmegaAlgebra, B: OmegaAlgebra):
    """The generic comeasuring relation family, one polynomial per (op, alpha, mu)."""
    ctx, nA, nB = A.ctx, A.dim, B.dim
    rels = []
    for op in A.signature:
        ta, tb = A.tables[op.name], B.tables[op.name]
        # d^mu_beta indexed by mu for quick lookup
        by_target = {}
        for beta, row in tb.items():
            for mu, d in row.items():
                by_target.setdefault(mu, []).append((beta, d))
        for alpha in itertools.product(range(nA), repeat=op.source):
            row = ta.get(alpha, {})
            for mu in itertools.product(range(nB), repeat=op.target):
                terms = {}
                for gamma, c in row.items():
                    word = tuple(gen_index(m, g, nA) for m, g in zip(mu, gamma))
                    _add_into(ctx, terms, word, c)
                for beta, d in by_target.get(mu, ()):
                    word = tuple(gen_index(b, a, nA) for b, a in zip(beta, alpha))
                    _add_into(ctx, terms, word, ctx.neg(d))
                if terms:
                    rels.append(NCPoly(ctx, terms))
    return rels


def comeasuring_presentation(A: OmegaAlgebra, B: OmegaAlgebra) -> Presentation:
    if A.ctx != B.ctx:
        raise FieldMismatch(f"{A.ctx} vs {B.ctx}")
    if A.signature != B.signature:
        raise SignatureMismatch(f"{A.signature} vs {B.signature}")
    name = f"A({A.label or 'A'}->{B.label or 'B'})"
    return Presentation(A.ctx, generator_labels(A, B), _relation_polys(A, B), name)


def build_universal_comeasuring(A: OmegaAlgebra, B: OmegaAlgebra, degree: int = DEFAULT_DEGREE,
                                hard_cap: int = HARD_CAP, max_terms=None):
    """(Presentation, Comeasuring) for the universal comeasuring from A to B."""
    pres = comeasuring_presentation(A, B)
    kwargs = {} if max_terms is None else {"max_terms": max_terms}
    gb = complete(pres, max(degree, pres.max_degree()), hard_cap, **kwargs)
    if gb.is_finite:
        alg = FiniteAlgebra.from_gb(gb)
    else:
        alg = PresentedQuotient(gb)
    nA, nB = A.dim, B.dim
    rho = []
    for alpha in range(nA):
        col = {}
        for beta in range(nB):
            q = alg.gen(gen_index(beta, alpha, nA))
            if q:
                col[beta] = q
        rho.append(col)
    return pres, Comeasuring(A, B, alg, rho, pres, gb, gb.degree)


def _rho_tensor(cm: Comeasuring, alphas):
    """rho^{(x)s}(a_alpha1 (x) ... (x) a_alphas) as {beta-tuple: Q-element}."""
    alg = cm.algebra
    out = {(): alg.one()}
    for a in alphas:
        nxt = {}
        for key, q in out.items():
            for beta, x in cm.rho[a].items():
                prod = alg.mul(q, x)
                if prod:
                    k = key + (beta,)
                    nxt[k] = alg.add(nxt.get(k, {}), prod)
                    if not nxt[k]:
                        del nxt[k]
        out = nxt
    return out


def verify_comeasuring(cm: Comeasuring) -> list:
    """(op, alpha multi-index) pairs where rho fails to intertwine; empty means pass."""
    A, B, alg = cm.source, cm.target, cm.algebra
    violations = []
    for op in A.signature:
        for alpha in itertools.product(range(A.dim), repeat=op.source):
            lhs = {}
            for gamma, c in A.tables[op.name].get(alpha, {}).items():
                for mu, q in _rho_tensor(cm, gamma).items():
                    lhs[mu] = alg.add(lhs.get(mu, {}), alg.scale(c, q))
            rhs = {}
            for beta, q in _rho_tensor(cm, alpha).items():
                for mu, d in B.tables[op.name].get(beta, {}).items():
                    rhs[mu] = alg.add(rhs.get(mu, {}), alg.scale(d, q))
            lhs = {k: v for k, v in lhs.items() if v}
            rhs = {k: v for k, v in rhs.items() if v}
            if lhs != rhs:
                violations.append((op.name, alpha))
    return violations


def perturb_comeasuring(cm: Comeasuring, beta, alpha, delta) -> Comeasuring:
    """Copy of cm with rho[alpha][beta] shifted by the algebra element delta."""
    rho = [dict(col) for col in cm.rho]
    new = cm.algebra.add(rho[alpha].get(beta, {}), delta)
    if new:
        rho[alpha][beta] = new
    else:
        rho[alpha].pop(beta, None)
    return Comeasuring(cm.source, cm.target, cm.algebra, rho)


def comeasuring_from_morphism(f: LinearMap) -> Comeasuring:
    """The ground field as a comeasuring via rho(a) = f(a) (x) 1."""
    ctx = f.ctx
    k = FiniteAlgebra.trivial_field(ctx)
    rho = [{beta: {0: c} for beta, c in f.column(alpha).items()} for alpha in range(f.domain.dim)]
    return Comeasuring(f.domain, f.codomain, k, rho)


def compose_comeasurings(outer: Comeasuring, inner: Comeasuring) -> Comeasuring:
    """(rho' (x) Q) rho: from inner.source to outer.target with algebra Q' (x) Q."""
    P, Q = outer.algebra, inner.algebra
    if not (P.finite and Q.finite):
        raise InfiniteCodomain("composite comeasurings need finite algebras")
    T = tensor_algebra(P, Q)
    rho = []
    for alpha in range(inner.source.dim):
        col = {}
        for mid, q in inner.rho[alpha].items():
            for beta, p in outer.rho[mid].items():
                col[beta] = T.add(col.get(beta, {}), pure_tensor(P, Q, p, q))
        rho.append({b: v for b, v in col.items() if v})
    return Comeasuring(inner.source, outer.target, T, rho)


# ---------------------------------------------------------------------------
# algebra maps out of a universal quotient


class AlgebraMapToQuotient:
    """Algebra map from a presented algebra into a finite algebra.

    ``images[i]`` is the image of generator i.  With ``opposite`` set the map
    lands in the opposite algebra, so words are multiplied right to left.
    """

    def __init__(self, domain: Presentation, codomain: FiniteAlgebra, images, opposite=False,
                 source=None, label=None):
        self.domain = domain
        self.codomain = codomain
        self.images = [dict(v) for v in images]
        self.opposite = opposite
        self.source = source
        self.label = label

    def image_of_word(self, word):
        alg = self.codomain
        seq = reversed(word) if self.opposite else word
        return alg.product(self.images[i] for i in seq)

    def evaluate(self, poly: NCPoly):
        alg = self.codomain
        out = {}
        for w, c in poly.terms.items():
            img = self.image_of_word(w)
            if img:
                out = alg.add(out, alg.scale(c, img))
        return out

    def unkilled_relations(self):
        return [i for i, r in enumerate(self.domain.relations) if self.evaluate(r)]

    def check_relations(self):
        bad = self.unkilled_relations()
        if bad:
            raise RelationNotKilled(f"{len(bad)} relations survive under {self.label or 'the map'}", bad)
        return self

    def matrix(self):
        """Codomain x domain matrix on the domain's normal-word basis."""
        if self.source is None or not self.source.finite:
            raise InfiniteQuotient("the domain quotient is not finite")
        ctx, n = self.codomain.ctx, self.codomain.dim
        cols = [self.image_of_word(w) for w in self.source.words]
        return [[col.get(i, ctx.zero) for col in cols] for i in range(n)]

    def generator_strings(self):
        return [self.codomain.element_str(v) for v in self.images]

    def __repr__(self):
        return f"<AlgebraMapToQuotient {self.label or ''} op={self.opposite}>"


def factor_comeasuring(cm: Comeasuring, univ: Comeasuring) -> AlgebraMapToQuotient:
    """The unique algebra map phi with (B (x) phi) rho_univ = rho_cm."""
    if cm.source is not univ.source and cm.source.to_dict() != univ.source.to_dict():
        raise SignatureMismatch("comeasurings start at different algebras")
    if cm.target is not univ.target and cm.target.to_dict() != univ.target.to_dict():
        raise SignatureMismatch("comeasurings end at different algebras")
    if not cm.is_finite:
        raise InfiniteCodomain("factoring needs a finite comeasuring algebra")
    nA, nB = univ.source.dim, univ.target.dim
    images = [None] * (nA * nB)
    for beta in range(nB):
        for alpha in range(nA):
            images[gen_index(beta, alpha, nA)] = cm.rho[alpha].get(beta, {})
    src = univ.algebra if univ.is_finite else None
    phi = AlgebraMapToQuotient(univ.presentation, cm.algebra, images, False, src, "factor")
    return phi.check_relations()


# ---------------------------------------------------------------------------
# per-call cache of universal comeasurings


def algebra_key(alg: OmegaAlgebra):
    return json.dumps(alg.to_dict(), sort_keys=True)


@dataclass
class ComeasuringCache:
    degree: int = DEFAULT_DEGREE
    hard_cap: int = HARD_CAP
    max_terms: int | None = None
    store: dict = field(default_factory=dict)

    def get(self, A, B) -> Comeasuring:
        key = (algebra_key(A), algebra_key(B))
        if key not in self.store:
            _, cm = build_universal_comeasuring(A, B, self.degree, self.hard_cap, self.max_terms)
            self.store[key] = cm
        return self.store[key]

    def finite(self, A, B) -> Comeasuring:
        cm = self.get(A, B)
        if not cm.is_finite:
            raise InfiniteQuotient(
                f"Q({A.label}->{B.label}) is undetermined at degree {cm.degree}"
            )
        return cm


def universal_comeasuring(A, B, cache: ComeasuringCache | None = None) -> Comeasuring:
    return (cache or ComeasuringCache()).get(A, B)


def _finite_or_raise(cache, A, B, exc=InfiniteCodomain):
    cm = cache.get(A, B)
    if not cm.is_finite:
        raise exc(f"Q({A.label}->{B.label}) is undetermined at degree {cm.degree}")
    return cm


# ---------------------------------------------------------------------------
# op-category structure


def comeasuring_d(A, B, C, cache: ComeasuringCache | None = None) -> AlgebraMapToQuotient:
    """d: Q(A->C) -> Q(B->C) (x) Q(A->B), x^{AC}_{gamma alpha} -> sum_beta x^{BC}_{gamma beta} (x) x^{AB}_{beta alpha}."""
    cache = cache or ComeasuringCache()
    qac = cache.get(A, C)
    qab = _finite_or_raise(cache, A, B)
    qbc = _finite_or_raise(cache, B, C)
    P, Q = qbc.algebra, qab.algebra
    T = tensor_algebra(P, Q)
    nA, nB = A.dim, B.dim
    images = []
    for gamma in range(C.dim):
        for alpha in range(nA):
            img = {}
            for beta in range(nB):
                left = qbc.rho[beta].get(gamma, {})
                right = qab.rho[alpha].get(beta, {})
                if left and right:
                    img = T.add(img, pure_tensor(P, Q, left, right))
            images.append(img)
    src = qac.algebra if qac.is_finite else None
    d = AlgebraMapToQuotient(qac.presentation, T, images, False, src, "d")
    return d.check_relations()


def comeasuring_counit(A, cache: ComeasuringCache | None = None) -> AlgebraMapToQuotient:
    """The character e(x_{mu alpha}) = delta_{mu alpha} of Q(A->A)."""
    cache = cache or ComeasuringCache()
    cm = cache.get(A, A)
    k = FiniteAlgebra.trivial_field(A.ctx)
    n = A.dim
    images = [{0: A.ctx.one} if mu == alpha else {} for mu in range(n) for alpha in range(n)]
    src = cm.algebra if cm.is_finite else None
    e = AlgebraMapToQuotient(cm.presentation, k, images, False, src, "e")
    return e.check_relations()


def _nu_product(B: FrobeniusAlgebra, i, j):
    return B.nu(B.mul({i: B.ctx.one}, {j: B.ctx.one}))


def antipode_S(A: FrobeniusAlgebra, B: FrobeniusAlgebra, cache: ComeasuringCache | None = None):
    """S: Q(B->A) -> Q(A->B)^op.

    S(x^{BA}_{alpha beta}) = sum_{j, mu} c_{alpha j} nu_B(b_mu b_beta) x^{AB}_{mu j},
    with c the Casimir matrix of A.
    """
    return _antipode(A, B, cache, inverse=False)


def antipode_S_inverse(A: FrobeniusAlgebra, B: FrobeniusAlgebra, cache: ComeasuringCache | None = None):
    """S^{-1}: Q(A->B) -> Q(B->A)^op, built from rho' with the roles of A and B swapped.

    S'(x^{AB}_{beta alpha}) = sum_{i, mu} c^B_{i beta} nu_A(a_alpha a_mu) x^{BA}_{mu i}.
    """
    return _antipode(B, A, cache, inverse=True)


def _antipode(A, B, cache, inverse):
    A = FrobeniusAlgebra.from_omega(A)
    B = FrobeniusAlgebra.from_omega(B)
    cache = cache or ComeasuringCache()
    dom = cache.get(B, A)
    cod = _finite_or_raise(cache, A, B, InfiniteQuotient)
    if not dom.is_finite:
        raise InfiniteQuotient(f"Q({B.label}->{A.label}) is undetermined at degree {dom.degree}")
    ctx, Q = A.ctx, cod.algebra
    nA, nB = A.dim, B.dim
    images = [None] * (nA * nB)
    for alpha in range(nA):
        for beta in range(nB):
            img = {}
            for (i, j), c in A.casimir.items():
                if inverse:
                    # roles swapped: the Casimir is read at (i, alpha), nu_B(b_beta b_mu)
                    if j != alpha:
                        continue
                    col_gen = i
                else:
                    if i != alpha:
                        continue
                    col_gen = j
                for mu in range(nB):
                    w = _nu_product(B, beta, mu) if inverse else _nu_product(B, mu, beta)
                    if ctx.is_zero(w):
                        continue
                    q = cod.rho[col_gen].get(mu)
                    if q:
                        img = Q.add(img, Q.scale(ctx.mul(c, w), q))
            images[gen_index(alpha, beta, nB)] = img
    label = "S^-1" if inverse else "S"
    S = AlgebraMapToQuotient(dom.presentation, Q, images, True, dom.algebra, label)
    return S.check_relations()


def _composite_on_generators(outer: AlgebraMapToQuotient, inner: AlgebraMapToQuotient):
    """Images of the generators of inner's domain under outer after inner.

    inner lands in a finite quotient whose basis words are evaluated by outer.
    """
    src = inner.codomain
    out = []
    for img in inner.images:
        acc = {}
        for k, c in img.items():
            acc = outer.codomain.add(acc, outer.codomain.scale(c, outer.image_of_word(src.words[k])))
        out.append(acc)
    return out


def antipode_bijectivity(A, B, cache=None) -> dict:
    """S' after S and S after S' on generators, compared with the identity."""
    cache = cache or ComeasuringCache()
    S = antipode_S(A, B, cache)
    Si = antipode_S_inverse(A, B, cache)
    qba = cache.get(B, A).algebra
    qab = cache.get(A, B).algebra
    left = _composite_on_generators(Si, S)
    right = _composite_on_generators(S, Si)
    ok_left = all(v == qba.gen(i) for i, v in enumerate(left))
    ok_right = all(v == qab.gen(i) for i, v in enumerate(right))
    return {"inverse_after_S": ok_left, "S_after_inverse": ok_right}


def antipode_identities(A, B, cache=None) -> dict:
    """mu(Id (x) S) d_{B,A,B} = eta e_B and mu(S (x) Id) d_{A,B,A} = eta e_A on generators.

    S here is antipode_S(A, B): Q(B->A) -> Q(A->B)^op.
    """
    cache = cache or ComeasuringCache()
    S = antipode_S(A, B, cache)
    Q = cache.get(A, B).algebra
    out = {}
    # (I): generators of Q(B->B)
    d = comeasuring_d(B, A, B, cache)
    out["left"] = _convolve_check(d, S, Q, B, side="right_S")
    d2 = comeasuring_d(A, B, A, cache)
    out["right"] = _convolve_check(d2, S, Q, A, side="left_S")
    return out


def _convolve_check(d, S, Q, X, side):
    """Apply mu o (Id (x) S) or mu o (S (x) Id) to d of every generator of Q(X->X)."""
    T = d.codomain
    P1, P2 = T.factors
    m2 = P2.dim
    n = X.dim
    ctx = X.ctx
    for gamma in range(n):
        for alpha in range(n):
            img = d.images[gen_index(gamma, alpha, n)]
            acc = {}
            for k, c in img.items():
                u, v = P1.words[k // m2], P2.words[k % m2]
                if side == "right_S":
                    term = Q.mul(Q.element_of(NCPoly.monomial(ctx, u)), S.image_of_word(v))
                else:
                    term = Q.mul(S.image_of_word(u), Q.element_of(NCPoly.monomial(ctx, v)))
                acc = Q.add(acc, Q.scale(c, term))
            want = Q.one() if gamma == alpha else {}
            if acc != want:
                return False
    return True


# ---------------------------------------------------------------------------
# arithmetic oracle and scalar extension


def _divides(char, n):
    n = abs(n)
    if char == 0:
        return n == 0
    return n % char == 0


def triviality_oracle(spec_a, spec_b, char: int) -> str:
    """'Trivial' when a known arithmetic criterion forces Q(A->B) = 0, else 'Unknown'.

    Specs are ("group", n) or ("matrix", n).
    """
    (ka, na), (kb, nb) = spec_a, spec_b
    if ka == kb == "group":
        return "Trivial" if not _divides(char, na - nb) else "Unknown"
    if ka == kb == "matrix":
        return "Trivial" if not _divides(char, na - nb) else "Unknown"
    g, n = (na, nb) if ka == "group" else (nb, na)
    if not _divides(char, n - g) or not _divides(char, n - 1):
        return "Trivial"
    return "Unknown"


def extend_scalars(alg: OmegaAlgebra, new_ctx, embed) -> OmegaAlgebra:
    """Same basis, structure constants pushed through ``embed``."""
    tables = {}
    for name, table in alg.tables.items():
        tables[name] = {src: {tgt: embed(c) for tgt, c in row.items()} for src, row in table.items()}
    label = alg.label
    if isinstance(alg, FrobeniusAlgebra):
        return FrobeniusAlgebra(new_ctx, alg.basis, tables, label)
    return OmegaAlgebra(new_ctx, alg.basis, alg.signature, tables, label)


__all__ = [
    "AlgebraMapToQuotient",
    "Comeasuring",
    "ComeasuringCache",
    "antipode_S",
    "antipode_S_inverse",
    "antipode_bijectivity",
    "antipode_identities",
    "build_universal_comeasuring",
    "comeasuring_counit",
    "comeasuring_d",
    "comeasuring_from_morphism",
    "compose_comeasurings",
    "extend_scalars",
    "factor_comeasuring",
    "perturb_comeasuring",
    "triviality_oracle",
    "universal_comeasuring",
    "verify_comeasuring",
]
