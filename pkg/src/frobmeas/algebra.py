"""Associative unital algebras used as comeasuring targets.

Elements are sparse dicts.  ``FiniteAlgebra`` holds a multiplication table on
a basis ``{index: payload}``; ``PresentedQuotient`` works on normal forms of a
Groebner basis ``{word: payload}`` and is used when the quotient is not
certified finite.
"""

from __future__ import annotations

from .errors import DimensionMismatch, NotFinite
from .ncgb import GBState, NCPoly, multiplication_table, quotient_basis
from .omega import _add_into


class _SparseOps:
    ctx = None

    def zero(self):
        return {}

    def add(self, u, v):
        out = dict(u)
        for k, c in v.items():
            _add_into(self.ctx, out, k, c)
        return out

    def sub(self, u, v):
        return self.add(u, self.scale(self.ctx.neg(self.ctx.one), v))

    def scale(self, c, u):
        ctx = self.ctx
        if ctx.is_zero(c):
            return {}
        return {k: ctx.mul(c, x) for k, x in u.items()}

    def is_zero(self, u):
        return not u

    def product(self, elems):
        out = self.one()
        for e in elems:
            out = self.mul(out, e)
        return out


class FiniteAlgebra(_SparseOps):
    """Structure constants: ``table[i][j]`` is the sparse product of basis i and j."""

    finite = True

    def __init__(self, ctx, labels, table, unit, words=None, gb=None):
        self.ctx = ctx
        self.labels = tuple(labels)
        self.table = table
        self.unit = dict(unit)
        self.words = tuple(words) if words is not None else None
        self.gb = gb
        n = len(self.labels)
        if len(table) != n or any(len(row) != n for row in table):
            raise DimensionMismatch("multiplication table does not match the basis")

    @property
    def dim(self):
        return len(self.labels)

    def one(self):
        return dict(self.unit)

    def basis_vector(self, i):
        return {i: self.ctx.one}

    def mul(self, u, v):
        ctx, table = self.ctx, self.table
        out = {}
        for i, a in u.items():
            row = table[i]
            for j, b in v.items():
                ab = ctx.mul(a, b)
                for k, c in row[j].items():
                    _add_into(ctx, out, k, ctx.mul(ab, c))
        return out

    def opposite(self):
        n = self.dim
        table = [[self.table[j][i] for j in range(n)] for i in range(n)]
        return FiniteAlgebra(self.ctx, self.labels, table, self.unit, self.words, self.gb)

    def to_vector(self, u):
        return [u.get(i, self.ctx.zero) for i in range(self.dim)]

    def element_of(self, poly: NCPoly):
        """Image of a free-algebra element; needs the backing Groebner basis."""
        if self.gb is None:
            raise NotFinite("this algebra has no presentation attached")
        if self.dim == 0:
            return {}
        nf = self.gb.normal_form(poly)
        index = {w: i for i, w in enumerate(self.words)}
        return {index[w]: c for w, c in nf.terms.items()}

    def gen(self, i):
        return self.element_of(NCPoly.gen(self.ctx, i))

    def element_str(self, u):
        return format_combination(self.ctx, [(self.labels[i], u[i]) for i in sorted(u)])

    def __repr__(self):
        return f"<FiniteAlgebra dim={self.dim} over {self.ctx}>"

    @classmethod
    def from_gb(cls, gb: GBState, labels=None):
        if not gb.is_finite:
            raise NotFinite(f"quotient is {gb.status.value} at degree {gb.degree}")
        basis = quotient_basis(gb)
        words = basis.words
        table = multiplication_table(gb, basis) if words else []
        unit = {basis.index[()]: gb.ctx.one} if words else {}
        if labels is None:
            labels = [_word_label(w, gb.labels) for w in words]
        return cls(gb.ctx, labels, table, unit, words, gb)

    @classmethod
    def trivial_field(cls, ctx):
        """The ground field as a one-dimensional algebra."""
        return cls(ctx, ["1"], [[{0: ctx.one}]], {0: ctx.one}, [()])


def format_combination(ctx, pairs):
    """Render sum c * label; the label "1" stands for the unit."""
    parts = []
    for label, c in pairs:
        cs = ctx.coeff_str(c)
        if ctx.is_one(c):
            parts.append(label)
        elif c == ctx.neg(ctx.one):
            parts.append("-1" if label == "1" else "-" + label)
        elif label == "1":
            parts.append(cs)
        else:
            parts.append(f"({cs})*{label}" if any(ch in cs[1:] for ch in "+-") else f"{cs}*{label}")
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


def _word_label(word, gen_labels):
    return "1" if not word else "".join(gen_labels[i] for i in word)


def tensor_algebra(P: FiniteAlgebra, Q: FiniteAlgebra) -> FiniteAlgebra:
    """P (x) Q with basis pairs (i, j) at index i * dim Q + j."""
    ctx = P.ctx
    m = Q.dim
    labels = [f"{p}(x){q}" for p in P.labels for q in Q.labels]
    n = P.dim * m
    table = [[None] * n for _ in range(n)]
    for i1 in range(P.dim):
        for j1 in range(m):
            for i2 in range(P.dim):
                left = P.table[i1][i2]
                for j2 in range(m):
                    right = Q.table[j1][j2]
                    out = {}
                    for a, x in left.items():
                        for b, y in right.items():
                            out[a * m + b] = ctx.mul(x, y)
                    table[i1 * m + j1][i2 * m + j2] = out
    unit = {}
    for a, x in P.unit.items():
        for b, y in Q.unit.items():
            unit[a * m + b] = ctx.mul(x, y)
    alg = FiniteAlgebra(ctx, labels, table, unit)
    alg.factors = (P, Q)
    return alg


def pure_tensor(P: FiniteAlgebra, Q: FiniteAlgebra, u, v):
    ctx, m = P.ctx, Q.dim
    return {i * m + j: ctx.mul(a, b) for i, a in u.items() for j, b in v.items()}


class PresentedQuotient(_SparseOps):
    """Arithmetic on normal forms modulo a (possibly truncated) Groebner basis."""

    finite = False

    def __init__(self, gb: GBState):
        self.gb = gb
        self.ctx = gb.ctx

    def one(self):
        return {} if self.gb.is_trivial else {(): self.ctx.one}

    def mul(self, u, v):
        ctx = self.ctx
        prod = {}
        for w1, a in u.items():
            for w2, b in v.items():
                _add_into(ctx, prod, w1 + w2, ctx.mul(a, b))
        return self.gb.normal_form(NCPoly(ctx, prod)).terms

    def element_of(self, poly: NCPoly):
        return dict(self.gb.normal_form(poly).terms)

    def gen(self, i):
        return self.element_of(NCPoly.gen(self.ctx, i))

    def element_str(self, u):
        return NCPoly(self.ctx, u).to_str(self.gb.labels)

    def __repr__(self):
        return f"<PresentedQuotient {self.gb!r}>"
