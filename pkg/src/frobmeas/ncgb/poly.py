"""Sparse noncommutative polynomials: dicts from words (tuples of generator indices) to payloads."""

from __future__ import annotations

from ..scalar import FieldCtx


def deglex_key(word):
    """Degree first, then left-to-right comparison of generator indices."""
    return (len(word), word)


def leading_word(terms: dict):
    return max(terms, key=deglex_key)


def contains(word, sub) -> bool:
    n, m = len(word), len(sub)
    if m > n:
        return False
    return any(word[i:i + m] == sub for i in range(n - m + 1))


def _clean(ctx, terms):
    return {w: c for w, c in terms.items() if not ctx.is_zero(c)}


class NCPoly:
    """Element of the free algebra k<x_0, ..., x_{n-1}>."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: FieldCtx, terms=None):
        self.ctx = ctx
        self.terms = _clean(ctx, {tuple(w): c for w, c in (terms or {}).items()})

    @classmethod
    def zero(cls, ctx):
        return cls(ctx)

    @classmethod
    def one(cls, ctx):
        return cls(ctx, {(): ctx.one})

    @classmethod
    def gen(cls, ctx, i):
        return cls(ctx, {(i,): ctx.one})

    @classmethod
    def monomial(cls, ctx, word, coeff=None):
        return cls(ctx, {tuple(word): ctx.one if coeff is None else coeff})

    @classmethod
    def constant(cls, ctx, c):
        return cls(ctx, {(): c})

    def copy(self):
        out = NCPoly.__new__(NCPoly)
        out.ctx, out.terms = self.ctx, dict(self.terms)
        return out

    # -- inspection ----------------------------------------------------
    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(w == () for w in self.terms)

    def degree(self):
        return max((len(w) for w in self.terms), default=-1)

    def leading_word(self):
        return leading_word(self.terms)

    def leading_coeff(self):
        return self.terms[self.leading_word()]

    def monic(self):
        if not self.terms:
            return self
        inv = self.ctx.inv(self.leading_coeff())
        return self.scale(inv)

    def words(self):
        return sorted(self.terms, key=deglex_key, reverse=True)

    # -- arithmetic ----------------------------------------------------
    def _combine(self, other, sign):
        ctx = self.ctx
        if not isinstance(other, NCPoly):
            other = NCPoly.constant(ctx, ctx.coerce(other))
        out = dict(self.terms)
        for w, c in other.terms.items():
            cur = out.get(w)
            v = c if sign > 0 else ctx.neg(c)
            v = v if cur is None else ctx.add(cur, v)
            if ctx.is_zero(v):
                out.pop(w, None)
            else:
                out[w] = v
        res = NCPoly.__new__(NCPoly)
        res.ctx, res.terms = ctx, out
        return res

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    __radd__ = __add__

    def __rsub__(self, other):
        return (-self)._combine(other, 1)

    def __neg__(self):
        return self.scale(self.ctx.neg(self.ctx.one))

    def scale(self, c):
        ctx = self.ctx
        if ctx.is_zero(c):
            return NCPoly(ctx)
        res = NCPoly.__new__(NCPoly)
        res.ctx = ctx
        res.terms = {w: ctx.mul(c, x) for w, x in self.terms.items()}
        return res

    def __mul__(self, other):
        if not isinstance(other, NCPoly):
            return self.scale(self.ctx.coerce(other))
        ctx = self.ctx
        out = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                w = u + v
                c = ctx.mul(a, b)
                cur = out.get(w)
                out[w] = c if cur is None else ctx.add(cur, c)
        return NCPoly(ctx, out)

    def __rmul__(self, other):
        return self.scale(self.ctx.coerce(other))

    def __pow__(self, n):
        out = NCPoly.one(self.ctx)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, NCPoly):
            return self.ctx == other.ctx and self.terms == other.terms
        if isinstance(other, int):
            return self == NCPoly.constant(self.ctx, self.ctx.from_int(other))
        return NotImplemented

    __hash__ = None

    # -- display / serialization ----------------------------------------
    def to_str(self, labels=None) -> str:
        if not self.terms:
            return "0"
        ctx = self.ctx
        parts = []
        for w in self.words():
            c = self.terms[w]
            mono = "*".join(labels[i] if labels else f"x{i}" for i in w)
            cs = ctx.coeff_str(c)
            if not mono:
                parts.append(cs)
            elif ctx.is_one(c):
                parts.append(mono)
            elif c == ctx.neg(ctx.one):
                parts.append("-" + mono)
            else:
                parts.append(f"({cs})*{mono}" if any(ch in cs[1:] for ch in "+-") else f"{cs}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self):
        return f"NCPoly({self.to_str()})"

    def to_records(self) -> list:
        return [{"word": list(w), "c": self.ctx.to_str(self.terms[w])} for w in self.words()]

    @classmethod
    def from_records(cls, ctx, records) -> "NCPoly":
        return cls(ctx, {tuple(r["word"]): ctx.coerce(r["c"]) for r in records})
