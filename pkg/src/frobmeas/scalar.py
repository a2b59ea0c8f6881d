"""Exact fields: the rationals, prime fields and simple extensions K[t]/(f).

Arithmetic is domain style: a :class:`FieldCtx` owns the operations and the
elements are raw payloads (``gmpy2.mpq`` for Q, ``int`` in ``[0, p)`` for
F_p, tuples of base payloads for extensions).  The inner loops of the
Groebner engine use the payloads directly; :class:`Scalar` wraps a payload
together with its context for the public API.
"""

from __future__ import annotations

import itertools
import json
import re
import warnings
from fractions import Fraction
from typing import Any, Iterator

import gmpy2
from gmpy2 import mpq

from .errors import ContextMismatch, DivisionByZero, EmbedUndefined, FieldError

PRIME_BOUND = 2**31
MAX_DEPTH = 2


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class FieldCtx:
    """Common interface.  Subclasses set ``zero``, ``one`` and ``characteristic``."""

    kind = "abstract"
    depth = 0
    order: int | None = None
    zero: Any
    one: Any
    characteristic: int

    # -- identity ------------------------------------------------------
    def key(self):
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return self.name()

    # -- derived arithmetic -------------------------------------------
    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == self.zero

    def is_one(self, a) -> bool:
        return a == self.one

    def pow(self, a, n: int):
        if n < 0:
            a, n = self.inv(a), -n
        result = self.one
        while n:
            if n & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            n >>= 1
        return result

    def sum(self, values):
        total = self.zero
        for v in values:
            total = self.add(total, v)
        return total

    def from_fraction(self, num: int, den: int = 1):
        if den == 0:
            raise DivisionByZero("zero denominator")
        return self.div(self.from_int(num), self.from_int(den))

    # -- conversion ----------------------------------------------------
    def coerce(self, obj):
        """Turn ints, fractions, strings, coefficient lists or Scalars into a payload."""
        if isinstance(obj, Scalar):
            if obj.ctx != self:
                raise ContextMismatch(f"{obj.ctx} vs {self}")
            return obj.value
        if isinstance(obj, bool):
            raise FieldError("booleans are not scalars")
        if isinstance(obj, int):
            return self.from_int(obj)
        if isinstance(obj, Fraction):
            return self.from_fraction(obj.numerator, obj.denominator)
        if type(obj) is type(mpq()):
            return self.from_fraction(int(obj.numerator), int(obj.denominator))
        if isinstance(obj, str):
            return self.parse(obj)
        if isinstance(obj, (list, tuple)):
            return self._coerce_sequence(obj)
        raise FieldError(f"cannot interpret {obj!r} as an element of {self}")

    def _coerce_sequence(self, seq):
        raise FieldError(f"coefficient lists are only meaningful in extensions, got {seq!r}")

    def parse(self, text: str):
        m = re.fullmatch(r"\s*(.*\S)\s+mod\s+(\d+)\s*", text)
        if m:
            if int(m.group(2)) != self.characteristic:
                raise ContextMismatch(f"{text!r} is not an element of {self}")
            text = m.group(1)
        return _ExprParser(self, text).parse()

    def lookup_var(self, name: str):
        raise FieldError(f"unknown symbol {name!r} in {self}")

    def to_str(self, a) -> str:
        return self.coeff_str(a)

    def coeff_str(self, a) -> str:
        raise NotImplementedError

    def descriptor(self) -> dict:
        raise NotImplementedError

    def elements(self) -> Iterator:
        raise FieldError(f"{self} is infinite")

    def random(self, rng):
        raise NotImplementedError

    def embed_base(self, a):
        return a


class Rationals(FieldCtx):
    kind = "Q"
    characteristic = 0

    def __init__(self):
        self.zero = mpq(0)
        self.one = mpq(1)

    def key(self):
        return ("Q",)

    def name(self):
        return "Q"

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if not a:
            raise DivisionByZero("inverse of 0 in Q")
        return 1 / a

    def div(self, a, b):
        if not b:
            raise DivisionByZero("division by 0 in Q")
        return a / b

    def is_zero(self, a):
        return not a

    def from_int(self, n):
        return mpq(n)

    def from_fraction(self, num, den=1):
        if den == 0:
            raise DivisionByZero("zero denominator")
        return mpq(num, den)

    def coeff_str(self, a):
        return str(a)

    def descriptor(self):
        return {"field": "Q"}

    def random(self, rng):
        return mpq(rng.randint(-60, 60), rng.randint(1, 25))


class PrimeField(FieldCtx):
    kind = "Fp"

    def __init__(self, p: int):
        if not isinstance(p, int) or p < 2 or p >= PRIME_BOUND:
            raise FieldError(f"prime field size must be a prime below 2^31, got {p!r}")
        if not gmpy2.is_prime(p):
            raise FieldError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.order = p
        self.zero = 0
        self.one = 1

    def key(self):
        return ("Fp", self.p)

    def name(self):
        return f"F{self.p}"

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a == 0:
            raise DivisionByZero(f"inverse of 0 in F{self.p}")
        return pow(a, -1, self.p)

    def is_zero(self, a):
        return a == 0

    def from_int(self, n):
        return n % self.p

    def from_fraction(self, num, den=1):
        if den % self.p == 0:
            raise DivisionByZero(f"denominator {den} vanishes in F{self.p}")
        return (num * pow(den, -1, self.p)) % self.p

    def to_str(self, a):
        return f"{a} mod {self.p}"

    def coeff_str(self, a):
        return str(a)

    def descriptor(self):
        return {"field": "Fp", "p": self.p}

    def elements(self):
        return iter(range(self.p))

    def random(self, rng):
        return rng.randrange(self.p)


# ---------------------------------------------------------------------------
# dense univariate polynomials over a FieldCtx (constant coefficient first)

def _trim(ctx, f):
    f = list(f)
    while f and ctx.is_zero(f[-1]):
        f.pop()
    return f


def _poly_mul(ctx, f, g):
    if not f or not g:
        return []
    out = [ctx.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if ctx.is_zero(a):
            continue
        for j, b in enumerate(g):
            out[i + j] = ctx.add(out[i + j], ctx.mul(a, b))
    return _trim(ctx, out)


def _poly_sub(ctx, f, g):
    n = max(len(f), len(g))
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else ctx.zero
        b = g[i] if i < len(g) else ctx.zero
        out.append(ctx.sub(a, b))
    return _trim(ctx, out)


def _poly_divmod(ctx, f, g):
    f = _trim(ctx, f)
    g = _trim(ctx, g)
    if not g:
        raise DivisionByZero("polynomial division by zero")
    lead_inv = ctx.inv(g[-1])
    q = [ctx.zero] * max(len(f) - len(g) + 1, 0)
    r = list(f)
    while len(r) >= len(g):
        c = ctx.mul(r[-1], lead_inv)
        shift = len(r) - len(g)
        q[shift] = c
        for i, b in enumerate(g):
            r[shift + i] = ctx.sub(r[shift + i], ctx.mul(c, b))
        r = _trim(ctx, r)
    return _trim(ctx, q), r


def _poly_gcd(ctx, f, g):
    f, g = _trim(ctx, f), _trim(ctx, g)
    while g:
        f, g = g, _poly_divmod(ctx, f, g)[1]
    if f:
        lead = ctx.inv(f[-1])
        f = [ctx.mul(lead, c) for c in f]
    return f


def _poly_powmod(ctx, base, e, mod):
    result = [ctx.one]
    base = _poly_divmod(ctx, base, mod)[1]
    while e:
        if e & 1:
            result = _poly_divmod(ctx, _poly_mul(ctx, result, base), mod)[1]
        base = _poly_divmod(ctx, _poly_mul(ctx, base, base), mod)[1]
        e >>= 1
    return result


def _rational_roots(coeffs):
    """Rational roots of a polynomial with rational coefficients (constant first)."""
    den = 1
    for c in coeffs:
        den = gmpy2.lcm(den, mpq(c).denominator)
    ints = [int(mpq(c) * den) for c in coeffs]
    while ints and ints[0] == 0:
        ints.pop(0)
        yield mpq(0)
    if len(ints) < 2:
        return
    a0, an = abs(ints[0]), abs(ints[-1])

    def divisors(n):
        return [d for d in range(1, n + 1) if n % d == 0]

    seen = set()
    for num in divisors(a0):
        for dd in divisors(an):
            for sign in (1, -1):
                r = mpq(sign * num, dd)
                if r in seen:
                    continue
                seen.add(r)
                if sum(mpq(c) * r**i for i, c in enumerate(ints)) == 0:
                    yield r


def _quartic_splits_over_q(coeffs) -> bool:
    """True if a monic rational quartic factors into two rational quadratics."""
    # substitute x = y / L so the polynomial in y is monic with integer coefficients
    L = 1
    for c in coeffs:
        L = gmpy2.lcm(L, mpq(c).denominator)
    c0, c1, c2, c3 = (int(mpq(coeffs[i]) * L ** (4 - i)) for i in range(4))
    if c0 == 0:
        return True

    def divisors(n):
        n = abs(n)
        ds = [d for d in range(1, n + 1) if n % d == 0]
        return ds + [-d for d in ds]

    for b in divisors(c0):
        d = c0 // b
        # (y^2 + a y + b)(y^2 + c y + d): a + c = c3, ac + b + d = c2, ad + bc = c1
        if b != d:
            num = c1 - b * c3
            if num % (d - b):
                continue
            a = num // (d - b)
            c = c3 - a
            if a * c + b + d == c2:
                return True
        else:
            if b * c3 != c1:
                continue
            disc = c3 * c3 - 4 * (c2 - 2 * b)
            if disc >= 0 and gmpy2.is_square(disc):
                return True
    return False


class Extension(FieldCtx):
    """K[t]/(f) for a monic irreducible f over the base field K."""

    kind = "ext"

    def __init__(self, base: FieldCtx, min_poly, var: str | None = None, check: bool = True):
        if base.depth + 1 > MAX_DEPTH:
            raise FieldError(f"extension nesting deeper than {MAX_DEPTH}")
        f = [base.coerce(c) for c in min_poly]
        f = _trim(base, f)
        if len(f) < 3:
            raise FieldError("minimal polynomial must have degree at least 2")
        if not base.is_one(f[-1]):
            raise FieldError("minimal polynomial must be monic")
        self.base = base
        self.min_poly = tuple(f)
        self.degree = len(f) - 1
        self.depth = base.depth + 1
        self.var = var or ("t" if self.depth == 1 else "s")
        if isinstance(base, Extension) and self.var == base.var:
            raise FieldError(f"variable {self.var!r} already used by the base field")
        self.characteristic = base.characteristic
        self.order = base.order ** self.degree if base.order else None
        d = self.degree
        self.zero = (base.zero,) * d
        self.one = (base.one,) + (base.zero,) * (d - 1)
        self.gen = (base.zero, base.one) + (base.zero,) * (d - 2)
        if check:
            self._check_irreducible()

    def _check_irreducible(self):
        base, f, d = self.base, list(self.min_poly), self.degree
        if base.order is not None:
            # Rabin: f | x^(q^d) - x and gcd(f, x^(q^(d/r)) - x) = 1 for primes r | d
            q = base.order
            x = [base.zero, base.one]

            def frob(k):
                y = x
                for _ in range(k):
                    y = _poly_powmod(base, y, q, f)
                return y

            if _trim(base, _poly_sub(base, frob(d), x)):
                raise FieldError(f"minimal polynomial {self._poly_str(f)} is reducible")
            for r in _prime_factors(d):
                g = _poly_gcd(base, f, _poly_sub(base, frob(d // r), x))
                if len(g) > 1:
                    raise FieldError(f"minimal polynomial {self._poly_str(f)} is reducible")
            return
        if isinstance(base, Rationals) and d <= 4:
            if next(iter(_rational_roots(f)), None) is not None:
                raise FieldError(f"minimal polynomial {self._poly_str(f)} has a rational root")
            if d == 4 and _quartic_splits_over_q(f):
                raise FieldError(f"minimal polynomial {self._poly_str(f)} splits into quadratics")
            return
        warnings.warn(
            f"irreducibility of {self._poly_str(f)} over {base} is not checked; "
            "the caller asserts it",
            stacklevel=3,
        )

    def _poly_str(self, f):
        return self.to_str_poly(f)

    def key(self):
        return ("ext", self.base.key(), self.min_poly, self.var)

    def name(self):
        return f"{self.base.name()}[{self.var}]/({self.to_str_poly(self.min_poly)})"

    # -- arithmetic ----------------------------------------------------
    def add(self, a, b):
        badd = self.base.add
        return tuple(badd(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        bsub = self.base.sub
        return tuple(bsub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        bneg = self.base.neg
        return tuple(bneg(x) for x in a)

    def mul(self, a, b):
        base, d, f = self.base, self.degree, self.min_poly
        bz = base.zero
        prod = [bz] * (2 * d - 1)
        for i, x in enumerate(a):
            if base.is_zero(x):
                continue
            for j, y in enumerate(b):
                if base.is_zero(y):
                    continue
                prod[i + j] = base.add(prod[i + j], base.mul(x, y))
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k]
            if base.is_zero(c):
                continue
            prod[k] = bz
            for i in range(d):
                prod[k - d + i] = base.sub(prod[k - d + i], base.mul(c, f[i]))
        return tuple(prod[:d])

    def inv(self, a):
        base = self.base
        if self.is_zero(a):
            raise DivisionByZero(f"inverse of 0 in {self}")
        # extended Euclid on (f, a)
        r0, r1 = list(self.min_poly), _trim(base, a)
        s0, s1 = [], [base.one]
        while len(r1) > 1:
            q, r = _poly_divmod(base, r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(base, s0, _poly_mul(base, q, s1))
        c = base.inv(r1[0])
        s = [base.mul(c, x) for x in s1]
        s = _poly_divmod(base, s, list(self.min_poly))[1]
        return tuple(s + [base.zero] * (self.degree - len(s)))

    def from_int(self, n):
        return (self.base.from_int(n),) + self.zero[1:]

    def from_fraction(self, num, den=1):
        return (self.base.from_fraction(num, den),) + self.zero[1:]

    def embed_base(self, c):
        return (c,) + self.zero[1:]

    def lookup_var(self, name):
        if name == self.var:
            return self.gen
        return self.embed_base(self.base.lookup_var(name))

    def _coerce_sequence(self, seq):
        if len(seq) > self.degree:
            raise FieldError(f"coefficient list longer than the degree of {self}")
        coeffs = [self.base.coerce(c) for c in seq]
        return tuple(coeffs + [self.base.zero] * (self.degree - len(coeffs)))

    # -- display -------------------------------------------------------
    def to_str_poly(self, coeffs) -> str:
        base, var = self.base, self.var
        terms = []
        for k in reversed(range(len(coeffs))):
            c = coeffs[k]
            if base.is_zero(c):
                continue
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if not mono:
                terms.append(base.coeff_str(c))
            elif base.is_one(c):
                terms.append(mono)
            elif c == base.neg(base.one):
                terms.append("-" + mono)
            else:
                cs = base.coeff_str(c)
                if re.search(r"[+\-]", cs[1:]):
                    cs = f"({cs})"
                terms.append(f"{cs}*{mono}")
        if not terms:
            return "0"
        out = terms[0]
        for t in terms[1:]:
            out += t if t.startswith("-") else "+" + t
        return out

    def coeff_str(self, a):
        return self.to_str_poly(a)

    def descriptor(self):
        base = self.base

        def enc(c):
            if isinstance(base, Extension):
                return base.to_str(c)
            if isinstance(base, Rationals) and c.denominator == 1:
                return int(c)
            return int(c) if isinstance(base, PrimeField) else str(c)

        return {
            "field": "ext",
            "base": base.descriptor(),
            "min_poly": [enc(c) for c in self.min_poly],
            "var": self.var,
        }

    def elements(self):
        if self.order is None:
            raise FieldError(f"{self} is infinite")
        for coeffs in itertools.product(list(self.base.elements()), repeat=self.degree):
            yield tuple(reversed(coeffs))

    def random(self, rng):
        return tuple(self.base.random(rng) for _ in range(self.degree))


# ---------------------------------------------------------------------------
# expression parser shared by scalars and minimal polynomials

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\S))")


class _ExprParser:
    """Recursive descent over + - * / ^ ( ) with integers and variable names.

    ``arith`` is anything with add/sub/neg/mul/div/pow/from_int/lookup_var.
    """

    def __init__(self, arith, text: str):
        self.arith = arith
        self.text = text
        self.tokens = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m:
                break
            if m.group(1):
                self.tokens.append(("num", int(m.group(1))))
            elif m.group(2):
                self.tokens.append(("name", m.group(2)))
            else:
                self.tokens.append(("op", m.group(3)))
            pos = m.end()
        self.i = 0

    def fail(self, msg):
        raise FieldError(f"cannot parse {self.text!r}: {msg}")

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self):
        if not self.tokens:
            self.fail("empty expression")
        value = self.expr()
        if self.i != len(self.tokens):
            self.fail(f"unexpected token {self.peek()[1]!r}")
        return value

    def expr(self):
        a = self.arith
        value = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            value = a.add(value, rhs) if op == "+" else a.sub(value, rhs)
        return value

    def term(self):
        a = self.arith
        value = self.unary()
        while True:
            kind, tok = self.peek()
            if (kind, tok) in (("op", "*"), ("op", "/")):
                self.take()
                rhs = self.unary()
                value = a.mul(value, rhs) if tok == "*" else a.div(value, rhs)
            elif kind in ("num", "name") or (kind, tok) == ("op", "("):
                value = a.mul(value, self.unary())
            else:
                return value

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return self.arith.neg(self.unary())
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        value = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            sign = 1
            if self.peek() == ("op", "-"):
                self.take()
                sign = -1
            kind, tok = self.take()
            if kind != "num":
                self.fail("exponent must be an integer")
            value = self.arith.pow(value, sign * tok)
        return value

    def atom(self):
        kind, tok = self.take()
        if kind == "num":
            return self.arith.from_int(tok)
        if kind == "name":
            return self.arith.lookup_var(tok)
        if (kind, tok) == ("op", "("):
            value = self.expr()
            if self.take() != ("op", ")"):
                self.fail("missing ')'")
            return value
        self.fail(f"unexpected token {tok!r}")


class _PolyArith:
    """Polynomials in one variable over a field, for parsing minimal polynomials."""

    def __init__(self, base: FieldCtx, var: str):
        self.base, self.var = base, var

    def add(self, f, g):
        return _poly_sub(self.base, f, self.neg(g))

    def sub(self, f, g):
        return _poly_sub(self.base, f, g)

    def neg(self, f):
        return [self.base.neg(c) for c in f]

    def mul(self, f, g):
        return _poly_mul(self.base, f, g)

    def div(self, f, g):
        if len(g) != 1:
            raise FieldError("can only divide polynomials by constants")
        inv = self.base.inv(g[0])
        return [self.base.mul(inv, c) for c in f]

    def pow(self, f, n):
        if n < 0:
            raise FieldError("negative power of a polynomial")
        out = [self.base.one]
        for _ in range(n):
            out = self.mul(out, f)
        return out

    def from_int(self, n):
        return _trim(self.base, [self.base.from_int(n)])

    def lookup_var(self, name):
        if name == self.var:
            return [self.base.zero, self.base.one]
        return _trim(self.base, [self.base.lookup_var(name)])


# ---------------------------------------------------------------------------
# public helpers

QQ = Rationals()


def field_from_descriptor(desc) -> FieldCtx:
    """Build a context from the JSON descriptor or a short string like ``"F5"``."""
    if isinstance(desc, FieldCtx):
        return desc
    if isinstance(desc, str):
        return parse_field(desc)
    if not isinstance(desc, dict) or "field" not in desc:
        raise FieldError(f"bad field descriptor {desc!r}")
    kind = desc["field"]
    if kind == "Q":
        return QQ
    if kind == "Fp":
        return PrimeField(int(desc["p"]))
    if kind == "ext":
        base = field_from_descriptor(desc["base"])
        return Extension(base, desc["min_poly"], desc.get("var"))
    raise FieldError(f"unknown field kind {kind!r}")


def parse_field(text: str) -> FieldCtx:
    """Short forms: Q, F7, Fp7, GF(7), Fp:7, Q[t]/(t^2+1), F5[t]/(t^2+2), or JSON."""
    if isinstance(text, FieldCtx):
        return text
    s = text.strip()
    if s.startswith("{"):
        return field_from_descriptor(json.loads(s))
    m = re.fullmatch(r"(.+)\[(\w+)\]\s*/\s*\((.+)\)", s)
    if m:
        base = parse_field(m.group(1))
        poly = _ExprParser(_PolyArith(base, m.group(2)), m.group(3)).parse()
        return Extension(base, poly, m.group(2))
    if s in ("Q", "QQ"):
        return QQ
    m = re.fullmatch(r"(?:F|Fp|GF|Fp:)\(?(\d+)\)?", s)
    if m:
        return PrimeField(int(m.group(1)))
    raise FieldError(f"unrecognized field {text!r}")


class Scalar:
    """A field element tagged with its context."""

    __slots__ = ("ctx", "value")

    def __init__(self, ctx: FieldCtx, value):
        self.ctx = ctx
        self.value = ctx.coerce(value) if not _is_payload(ctx, value) else value

    @classmethod
    def parse(cls, ctx: FieldCtx, text: str) -> "Scalar":
        return cls(ctx, ctx.parse(text))

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.ctx != self.ctx:
                raise ContextMismatch(f"{self.ctx} vs {other.ctx}")
            return other.value
        if isinstance(other, int):
            return self.ctx.from_int(other)
        return NotImplemented

    def _wrap(self, v):
        return Scalar(self.ctx, v)

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.ctx.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.ctx.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.ctx.sub(o, self.value))

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.ctx.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.ctx.div(self.value, o))

    def __rtruediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.ctx.div(o, self.value))

    def __neg__(self):
        return self._wrap(self.ctx.neg(self.value))

    def __pow__(self, n: int):
        return self._wrap(self.ctx.pow(self.value, n))

    def inv(self):
        return self._wrap(self.ctx.inv(self.value))

    def is_zero(self):
        return self.ctx.is_zero(self.value)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.ctx == other.ctx and self.value == other.value
        if isinstance(other, int):
            return self.value == self.ctx.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, self.value))

    def __str__(self):
        return self.ctx.to_str(self.value)

    def __repr__(self):
        return f"Scalar({self.ctx!r}, {str(self)!r})"


def _is_payload(ctx, value) -> bool:
    if isinstance(ctx, Rationals):
        return type(value) is type(mpq())
    if isinstance(ctx, PrimeField):
        return type(value) is int and 0 <= value < ctx.p
    if isinstance(ctx, Extension):
        return (
            isinstance(value, tuple)
            and len(value) == ctx.degree
            and all(_is_payload(ctx.base, c) for c in value)
        )
    return False


def field_arith(op: str, x: Scalar, y: Scalar | None = None) -> Scalar:
    """Dispatch ``add``, ``mul``, ``neg`` or ``inv`` on scalars of one context."""
    ctx = x.ctx
    if y is not None and y.ctx != ctx:
        raise ContextMismatch(f"{ctx} vs {y.ctx}")
    if op == "add":
        return Scalar(ctx, ctx.add(x.value, y.value))
    if op == "mul":
        return Scalar(ctx, ctx.mul(x.value, y.value))
    if op == "neg":
        return Scalar(ctx, ctx.neg(x.value))
    if op == "inv":
        return Scalar(ctx, ctx.inv(x.value))
    raise ValueError(f"unknown field operation {op!r}")


def is_primitive_root(ctx: FieldCtx, x, n: int) -> bool:
    if ctx.pow(x, n) != ctx.one:
        return False
    return all(ctx.pow(x, n // q) != ctx.one for q in _prime_factors(n))


def _small_rationals():
    vals = []
    for den in (1, 2, 3):
        for num in range(-3, 4):
            v = mpq(num, den)
            if v not in vals:
                vals.append(v)
    return sorted(vals, key=lambda v: (abs(v.numerator) + v.denominator, v < 0, v))


def _bounded_elements(ctx: FieldCtx, limit: int = 200_000):
    """Finite prefix of an enumeration of ctx, smallest coefficients first."""
    if ctx.order is not None:
        return itertools.islice(ctx.elements(), limit)
    if isinstance(ctx, Rationals):
        return iter(_small_rationals())
    base_elems = list(_bounded_elements(ctx.base, limit))
    return itertools.islice(
        (tuple(reversed(c)) for c in itertools.product(base_elems, repeat=ctx.degree)), limit
    )


def find_root_of_unity(ctx: FieldCtx, n: int) -> Scalar | None:
    """A primitive n-th root of unity in ctx, or None when none is found."""
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return Scalar(ctx, ctx.one)
    if isinstance(ctx, Rationals):
        return Scalar(ctx, ctx.neg(ctx.one)) if n == 2 else None
    if ctx.order is not None:
        q = ctx.order
        if (q - 1) % n:
            return None
        if q > 10**6:
            # every x^((q-1)/n) is an n-th root; scan x until one is primitive
            for x in ctx.elements():
                if ctx.is_zero(x):
                    continue
                y = ctx.pow(x, (q - 1) // n)
                if is_primitive_root(ctx, y, n):
                    return Scalar(ctx, y)
            return None
    for x in _bounded_elements(ctx):
        if not ctx.is_zero(x) and is_primitive_root(ctx, x, n):
            return Scalar(ctx, x)
    return None


def rational_to_prime(p: int):
    """Homomorphism from integral rationals into F_p; refuses denominators divisible by p."""
    target = PrimeField(p)

    def embed(value):
        value = mpq(value)
        if value.denominator % p == 0:
            raise EmbedUndefined(f"denominator of {value} is divisible by {p}")
        return target.from_fraction(int(value.numerator), int(value.denominator))

    return target, embed


def base_to_extension(ext: Extension):
    return ext, ext.embed_base


def identity_embedding(ctx: FieldCtx):
    return ctx, lambda v: v
