"""Degree-truncated Buchberger completion in the free algebra, normal forms and quotient bases.

Order: deglex (degree, then left-to-right generator indices).  Basis
elements are kept monic.  Overlap pairs are processed by degree and, within
a degree, in discovery order.

Finiteness: once some degree d* has no normal word, every leading word of
the reduced basis has degree <= d*, so only finitely many overlaps remain.
They are processed regardless of the truncation degree, which makes the
resulting basis a genuine (untruncated) Groebner basis.
"""

from __future__ import annotations

import enum
import heapq
import random
from collections import deque
from dataclasses import dataclass, field

from ..errors import CapExceeded, DegreeOverflow, ResourceLimit
from ..scalar import FieldCtx, field_from_descriptor
from .poly import NCPoly, contains, deglex_key

DEFAULT_DEGREE = 8
HARD_CAP = 12
DEFAULT_MAX_TERMS = 2_000_000


class Presentation:
    """Generators with labels plus a list of relations (nonzero NCPoly)."""

    def __init__(self, ctx: FieldCtx, labels, relations, name=None):
        self.ctx = ctx
        self.labels = tuple(labels)
        rels = []
        for r in relations:
            if not isinstance(r, NCPoly):
                r = NCPoly(ctx, r)
            if r.ctx != ctx:
                raise ValueError("relation over a different field")
            if any(i >= len(self.labels) or i < 0 for w in r.terms for i in w):
                raise ValueError("relation uses an unknown generator")
            if not r.is_zero():
                rels.append(r)
        self.relations = tuple(rels)
        self.name = name

    @property
    def ngens(self):
        return len(self.labels)

    def max_degree(self):
        return max((r.degree() for r in self.relations), default=0)

    def gen(self, i) -> NCPoly:
        return NCPoly.gen(self.ctx, i)

    def permuted(self, perm) -> "Presentation":
        """Rename generator i to perm[i] (and move its label along)."""
        labels = [None] * self.ngens
        for i, j in enumerate(perm):
            labels[j] = self.labels[i]
        rels = [NCPoly(self.ctx, {tuple(perm[i] for i in w): c for w, c in r.terms.items()}) for r in self.relations]
        return Presentation(self.ctx, labels, rels, self.name)

    def to_dict(self):
        return {
            "field": self.ctx.descriptor(),
            "generators": list(self.labels),
            "relations": [r.to_records() for r in self.relations],
        }

    @classmethod
    def from_dict(cls, data):
        ctx = field_from_descriptor(data["field"])
        rels = [NCPoly.from_records(ctx, r) for r in data["relations"]]
        return cls(ctx, data["generators"], rels)

    def __repr__(self):
        return f"<Presentation {self.ngens} generators, {len(self.relations)} relations>"


class GBStatus(enum.Enum):
    COMPLETE_UP_TO = "complete_up_to"
    SATURATED_FINITE = "saturated_finite"
    TRIVIAL = "trivial"


def _word_key(word, base):
    k = 0
    for x in word:
        k = k * base + x + 1
    return k


class _Rules:
    """Leading word -> monic tail, with the lookups used by reduction."""

    def __init__(self, ctx, ngens):
        self.ctx = ctx
        self.base = ngens + 1
        self.tails = {}
        self.length_count = {}
        self.lengths = []

    def add(self, lm, tail):
        self.tails[lm] = tail
        n = len(lm)
        self.length_count[n] = self.length_count.get(n, 0) + 1
        if self.length_count[n] == 1:
            self.lengths = sorted(self.length_count)

    def remove(self, lm):
        del self.tails[lm]
        n = len(lm)
        self.length_count[n] -= 1
        if not self.length_count[n]:
            del self.length_count[n]
            self.lengths = sorted(self.length_count)

    def find(self, w, rightmost=False):
        tails, L = self.tails, len(w)
        positions = range(L - 1, -1, -1) if rightmost else range(L)
        for i in positions:
            for n in self.lengths:
                if i + n > L:
                    break
                t = tails.get(w[i:i + n])
                if t is not None:
                    return i, n, t
        return None

    def is_normal(self, w):
        return self.find(w) is None

    def reduce(self, terms: dict, rightmost=False) -> dict:
        """Full reduction, always rewriting the largest reducible term first."""
        if not self.tails:
            return dict(terms)
        ctx, base = self.ctx, self.base
        sub, mul, is_zero = ctx.sub, ctx.mul, ctx.is_zero
        p = dict(terms)
        heap = [(-_word_key(w, base), w) for w in p]
        heapq.heapify(heap)
        out = {}
        find = self.find
        while heap:
            w = heapq.heappop(heap)[1]
            c = p.pop(w, None)
            if c is None:
                continue
            hit = find(w, rightmost)
            if hit is None:
                out[w] = c
                continue
            i, n, tail = hit
            pre, suf = w[:i], w[i + n:]
            for tw, tc in tail:
                nw = pre + tw + suf
                v = mul(c, tc)
                old = p.get(nw)
                if old is None:
                    p[nw] = ctx.neg(v)
                    heapq.heappush(heap, (-_word_key(nw, base), nw))
                else:
                    s = sub(old, v)
                    if is_zero(s):
                        del p[nw]
                    else:
                        p[nw] = s
        return out


def _monic(ctx, terms):
    lm = max(terms, key=deglex_key)
    c = terms[lm]
    if ctx.is_one(c):
        return lm, terms
    inv = ctx.inv(c)
    return lm, {w: ctx.mul(inv, x) for w, x in terms.items()}


def _tail(terms, lm):
    return [(w, c) for w, c in terms.items() if w != lm]


def _overlaps(u, v):
    """Proper overlaps: suffixes of u equal to prefixes of v, as overlap lengths."""
    m = min(len(u), len(v))
    return [k for k in range(1, m) if u[-k:] == v[:k]]


@dataclass
class GBStats:
    pairs_processed: int = 0
    pairs_skipped: int = 0
    reductions_to_zero: int = 0
    insertions: int = 0
    deferred_pairs: int = 0
    max_pair_degree: int = 0


class _Completion:
    def __init__(self, ctx, ngens, degree, max_terms):
        self.ctx = ctx
        self.ngens = ngens
        self.degree = degree
        self.max_terms = max_terms
        self.rules = _Rules(ctx, ngens)
        self.elems = []  # [lm, terms, alive]
        self.by_lm = {}
        self.pairs = []
        self.counter = 0
        self.trivial = False
        self.saturated_at = None
        self.stats = GBStats()
        self.term_total = 0

    # -- insertion -----------------------------------------------------
    def absorb(self, polys):
        work = deque(polys)
        while work and not self.trivial:
            terms = self.rules.reduce(work.popleft())
            if not terms:
                self.stats.reductions_to_zero += 1
                continue
            work.extend(self._insert(terms))

    def _insert(self, terms):
        ctx = self.ctx
        lm, terms = _monic(ctx, terms)
        if lm == ():
            self.trivial = True
            return []
        self.stats.insertions += 1
        displaced = []
        for idx in list(self.by_lm.values()):
            old = self.elems[idx]
            if contains(old[0], lm):
                old[2] = False
                self.rules.remove(old[0])
                del self.by_lm[old[0]]
                self.term_total -= len(old[1])
                displaced.append(old[1])
        idx = len(self.elems)
        self.elems.append([lm, terms, True])
        self.by_lm[lm] = idx
        self.rules.add(lm, _tail(terms, lm))
        self.term_total += len(terms)
        if self.term_total > self.max_terms:
            raise ResourceLimit(
                f"relation store exceeded {self.max_terms} terms at {len(self.by_lm)} basis elements"
            )
        for j in list(self.by_lm.values()):
            other = self.elems[j][0]
            for k in _overlaps(lm, other):
                self._push_pair(len(lm) + len(other) - k, idx, j, k)
            if j != idx:
                for k in _overlaps(other, lm):
                    self._push_pair(len(lm) + len(other) - k, j, idx, k)
        return displaced

    def _push_pair(self, deg, a, b, k):
        heapq.heappush(self.pairs, (deg, self.counter, a, b, k))
        self.counter += 1

    # -- main loop -----------------------------------------------------
    def spoly(self, a, b, k):
        ctx = self.ctx
        lma, ta = self.elems[a][0], self.elems[a][1]
        lmb, tb = self.elems[b][0], self.elems[b][1]
        right = lmb[k:]
        left = lma[:-k]
        out = {}
        for w, c in ta.items():
            out[w + right] = c
        for w, c in tb.items():
            key = left + w
            cur = out.get(key)
            v = ctx.neg(c) if cur is None else ctx.sub(cur, c)
            if ctx.is_zero(v):
                out.pop(key, None)
            else:
                out[key] = v
        return out

    def run(self):
        while not self.trivial:
            if not self.pairs or (self.pairs[0][0] > self.degree and self.saturated_at is None):
                if self.saturated_at is None:
                    self.saturated_at = self.saturation_degree()
                if self.saturated_at is None or not self.pairs:
                    self.stats.deferred_pairs = len(self.pairs)
                    return
                continue
            deg, _, a, b, k = heapq.heappop(self.pairs)
            if not (self.elems[a][2] and self.elems[b][2]):
                self.stats.pairs_skipped += 1
                continue
            self.stats.pairs_processed += 1
            self.stats.max_pair_degree = max(self.stats.max_pair_degree, deg)
            self.absorb([self.spoly(a, b, k)])

    def saturation_degree(self):
        counts = count_normal_words(list(self.by_lm), self.ngens, self.degree)
        for d, c in enumerate(counts):
            if c == 0:
                return d
        return None

    def interreduce(self):
        for lm in sorted(self.by_lm, key=deglex_key):
            idx = self.by_lm[lm]
            terms = self.elems[idx][1]
            tail = self.rules.reduce({w: c for w, c in terms.items() if w != lm})
            tail[lm] = self.ctx.one
            self.elems[idx][1] = tail
            self.rules.tails[lm] = _tail(tail, lm)

    def basis(self):
        if self.trivial:
            return [NCPoly.one(self.ctx)]
        lms = sorted(self.by_lm, key=deglex_key)
        return [NCPoly(self.ctx, self.elems[self.by_lm[lm]][1]) for lm in lms]


class GBState:
    """A completed (possibly truncated) Groebner basis and its status."""

    def __init__(self, ctx, labels, degree, basis, status, certificate=None, stats=None, presentation=None,
                 complete_basis=False):
        self.ctx = ctx
        # True when no overlap was left unprocessed, so the basis is a full Groebner basis
        self.complete_basis = complete_basis or status is not GBStatus.COMPLETE_UP_TO
        self.labels = tuple(labels)
        self.degree = degree
        self.basis = tuple(basis)
        self.status = status
        self.certificate = certificate
        self.stats = stats or GBStats()
        self.presentation = presentation
        self._rules = None

    @property
    def ngens(self):
        return len(self.labels)

    @property
    def leading_words(self):
        return [g.leading_word() for g in self.basis]

    @property
    def rules(self) -> _Rules:
        if self._rules is None:
            rules = _Rules(self.ctx, self.ngens)
            for g in self.basis:
                lm = g.leading_word()
                inv = self.ctx.inv(g.terms[lm])
                rules.add(lm, [(w, self.ctx.mul(inv, c)) for w, c in g.terms.items() if w != lm])
            self._rules = rules
        return self._rules

    @property
    def is_trivial(self):
        return self.status is GBStatus.TRIVIAL

    @property
    def is_finite(self):
        return self.status in (GBStatus.SATURATED_FINITE, GBStatus.TRIVIAL)

    def normal_form(self, p, strategy="leftmost", rng=None):
        return normal_form(p, self, strategy, rng)

    def normal_words(self, max_degree=None):
        """Normal words in deglex order (all of them when the quotient is finite)."""
        if self.is_trivial:
            return []
        if max_degree is None:
            if self.status is not GBStatus.SATURATED_FINITE:
                raise DegreeOverflow("quotient not certified finite; pass max_degree")
            max_degree = self.certificate
        rules = self.rules
        level = [()]
        out = [()]
        for _ in range(max_degree):
            nxt = []
            for w in level:
                for x in range(self.ngens):
                    v = w + (x,)
                    if all(v[-n:] not in rules.tails for n in rules.lengths if n <= len(v)):
                        nxt.append(v)
            if not nxt:
                break
            out.extend(nxt)
            level = nxt
        return out

    def normal_word_counts(self, max_degree=None):
        if self.is_trivial:
            return [0]
        return count_normal_words(self.leading_words, self.ngens, self.degree if max_degree is None else max_degree)

    # -- serialization -------------------------------------------------
    def to_dict(self):
        return {
            "field": self.ctx.descriptor(),
            "generators": list(self.labels),
            "order": "deglex",
            "degree": self.degree,
            "status": self.status.value,
            "certificate": self.certificate,
            "complete_basis": self.complete_basis,
            "basis": [g.to_records() for g in self.basis],
        }

    @classmethod
    def from_dict(cls, data):
        ctx = field_from_descriptor(data["field"])
        basis = [NCPoly.from_records(ctx, r) for r in data["basis"]]
        return cls(ctx, data["generators"], data["degree"], basis, GBStatus(data["status"]), data.get("certificate"),
                   complete_basis=data.get("complete_basis", False))

    def __repr__(self):
        return f"<GBState {self.status.value} D={self.degree} |basis|={len(self.basis)}>"


def complete(pres: Presentation, degree: int = DEFAULT_DEGREE, hard_cap: int = HARD_CAP,
             max_terms: int = DEFAULT_MAX_TERMS) -> GBState:
    """Overlap completion of the relations up to total overlap degree ``degree``."""
    if degree > hard_cap:
        raise CapExceeded(f"degree {degree} is above the hard cap {hard_cap}")
    if degree < pres.max_degree():
        raise ValueError(f"degree {degree} is below the relation degree {pres.max_degree()}")
    eng = _Completion(pres.ctx, pres.ngens, degree, max_terms)
    eng.absorb([dict(r.terms) for r in pres.relations])
    eng.run()
    if eng.trivial:
        status, cert = GBStatus.TRIVIAL, 0
    else:
        eng.interreduce()
        if eng.saturated_at is not None:
            status, cert = GBStatus.SATURATED_FINITE, eng.saturated_at
        else:
            status, cert = GBStatus.COMPLETE_UP_TO, None
    return GBState(pres.ctx, pres.labels, degree, eng.basis(), status, cert, eng.stats, pres,
                   complete_basis=not eng.pairs)


def normal_form(p: NCPoly, gb: GBState, strategy: str = "leftmost", rng=None) -> NCPoly:
    """Reduce p by the basis.  Strategies pick which occurrence is rewritten.

    ``leftmost``/``rightmost`` rewrite the largest reducible term at its
    leftmost/rightmost occurrence; ``random`` rewrites a random reducible
    term at a random occurrence (slow, for confluence tests).
    """
    ctx = gb.ctx
    if gb.is_trivial:
        return NCPoly.zero(ctx)
    if gb.status is GBStatus.COMPLETE_UP_TO and p.degree() > gb.degree:
        raise DegreeOverflow(f"degree {p.degree()} exceeds the truncation degree {gb.degree}")
    rules = gb.rules
    if strategy in ("leftmost", "rightmost"):
        return NCPoly(ctx, rules.reduce(p.terms, rightmost=(strategy == "rightmost")))
    if strategy != "random":
        raise ValueError(f"unknown strategy {strategy!r}")
    rng = rng or random.Random(0)
    terms = dict(p.terms)
    while True:
        hits = []
        for w in terms:
            for i in range(len(w)):
                for n in rules.lengths:
                    if i + n <= len(w) and w[i:i + n] in rules.tails:
                        hits.append((w, i, n))
        if not hits:
            return NCPoly(ctx, terms)
        w, i, n = hits[rng.randrange(len(hits))]
        c = terms.pop(w)
        for tw, tc in rules.tails[w[i:i + n]]:
            nw = w[:i] + tw + w[i + n:]
            v = ctx.sub(terms.get(nw, ctx.zero), ctx.mul(c, tc))
            if ctx.is_zero(v):
                terms.pop(nw, None)
            else:
                terms[nw] = v


# ---------------------------------------------------------------------------
# counting normal words with an Aho-Corasick automaton

def _avoidance_automaton(patterns, ngens):
    """Aho-Corasick automaton: transitions between states that have not matched a pattern."""
    goto = [{}]
    terminal = [False]
    for pat in patterns:
        s = 0
        for x in pat:
            nxt = goto[s].get(x)
            if nxt is None:
                goto.append({})
                terminal.append(False)
                nxt = len(goto) - 1
                goto[s][x] = nxt
            s = nxt
        terminal[s] = True
    if terminal[0]:
        return {}
    fail = [0] * len(goto)
    queue = deque()
    for x, s in goto[0].items():
        queue.append(s)
    while queue:
        s = queue.popleft()
        for x, t in goto[s].items():
            f = fail[s]
            while f and x not in goto[f]:
                f = fail[f]
            fail[t] = goto[f].get(x, 0)
            terminal[t] = terminal[t] or terminal[fail[t]]
            queue.append(t)

    def step(s, x):
        while s and x not in goto[s]:
            s = fail[s]
        return goto[s].get(x, 0)

    states = [s for s in range(len(goto)) if not terminal[s]]
    return {s: [t for t in (step(s, x) for x in range(ngens)) if not terminal[t]] for s in states}


def count_normal_words(patterns, ngens, max_degree):
    """Number of words of each degree 0..max_degree avoiding every pattern as a subword."""
    trans = _avoidance_automaton(patterns, ngens)
    if not trans:
        return [0] * (max_degree + 1)
    counts = [1]
    current = {0: 1}
    for _ in range(max_degree):
        nxt = {}
        for s, c in current.items():
            for t in trans[s]:
                nxt[t] = nxt.get(t, 0) + c
        current = nxt
        counts.append(sum(current.values()))
    return counts


def has_infinitely_many_normal_words(patterns, ngens) -> bool:
    """True iff the avoidance automaton has a cycle reachable from the start state."""
    trans = _avoidance_automaton(patterns, ngens)
    if not trans:
        return False
    color = {}
    stack = [(0, iter(trans[0]))]
    color[0] = 1
    while stack:
        s, it = stack[-1]
        t = next(it, None)
        if t is None:
            color[s] = 2
            stack.pop()
        elif color.get(t) == 1:
            return True
        elif t not in color:
            color[t] = 1
            stack.append((t, iter(trans[t])))
    return False


# ---------------------------------------------------------------------------
# quotient dimension reports

@dataclass(frozen=True)
class QuotientBasis:
    words: tuple
    finite: bool
    certificate: int | None = None
    index: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if not self.index:
            object.__setattr__(self, "index", {w: i for i, w in enumerate(self.words)})

    def __len__(self):
        return len(self.words)

    def __iter__(self):
        return iter(self.words)

    def is_subword_closed(self):
        ws = set(self.words)
        return all(w[i:j] in ws for w in self.words for i in range(len(w) + 1) for j in range(i, len(w) + 1))


@dataclass(frozen=True)
class Finite:
    dimension: int
    basis: QuotientBasis
    kind: str = "finite"


@dataclass(frozen=True)
class Trivial:
    dimension: int = 0
    kind: str = "trivial"


@dataclass(frozen=True)
class UndeterminedAtDegree:
    degree: int
    count: int
    per_degree: tuple = ()
    # the basis is complete and the normal words never run out: dim Q is infinite
    quotient_infinite: bool = False
    kind: str = "undetermined"


def quotient_basis(gb: GBState) -> QuotientBasis:
    if gb.is_trivial:
        return QuotientBasis((), True, 0)
    if gb.status is GBStatus.SATURATED_FINITE:
        return QuotientBasis(tuple(gb.normal_words()), True, gb.certificate)
    return QuotientBasis(tuple(gb.normal_words(gb.degree)), False, None)


def quotient_dimension(gb: GBState):
    if gb.is_trivial:
        return Trivial()
    if gb.status is GBStatus.SATURATED_FINITE:
        basis = quotient_basis(gb)
        return Finite(len(basis), basis)
    counts = gb.normal_word_counts()
    infinite = gb.complete_basis and has_infinitely_many_normal_words(gb.leading_words, gb.ngens)
    return UndeterminedAtDegree(gb.degree, sum(counts), tuple(counts), infinite)


def multiplication_table(gb: GBState, basis: QuotientBasis):
    """Entry (i, j) is the normal form of w_i w_j as a sparse {k: coefficient} dict."""
    if not basis.finite:
        raise DegreeOverflow("multiplication table needs a finite quotient basis")
    rules = gb.rules
    index = basis.index
    table = []
    for u in basis.words:
        row = []
        for v in basis.words:
            nf = rules.reduce({u + v: gb.ctx.one})
            row.append({index[w]: c for w, c in nf.items()})
        table.append(row)
    return table
