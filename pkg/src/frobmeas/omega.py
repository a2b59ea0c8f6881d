"""Omega-algebras: finite-dimensional spaces with multilinear operations A^{(x)s} -> A^{(x)t}.

Structure constants are sparse: for every operation a dict maps a source
multi-index to a dict {target multi-index: coefficient}.  Nullary operations
have the single source key ``()``; operations with no outputs have target
key ``()``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import DimensionMismatch, SignatureMismatch, UnknownOp
from .linalg import is_identity, mat_mul
from .scalar import FieldCtx, _is_payload, field_from_descriptor

MAX_ARITY = 4


@dataclass(frozen=True)
class Operation:
    name: str
    source: int
    target: int


class Signature:
    def __init__(self, ops: Iterable):
        parsed = []
        for op in ops:
            op = op if isinstance(op, Operation) else Operation(*op)
            if op.source < 0 or op.target < 0:
                raise ValueError(f"negative arity in {op}")
            if op.source > MAX_ARITY or op.target > MAX_ARITY:
                raise ValueError(f"arity above {MAX_ARITY} in {op}")
            parsed.append(op)
        names = [op.name for op in parsed]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate operation names in {names}")
        self.ops = tuple(parsed)
        self._by_name = {op.name: op for op in parsed}

    def __iter__(self):
        return iter(self.ops)

    def __len__(self):
        return len(self.ops)

    def __contains__(self, name):
        return name in self._by_name

    def __getitem__(self, name) -> Operation:
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownOp(name) from None

    def __eq__(self, other):
        return isinstance(other, Signature) and self.ops == other.ops

    def __hash__(self):
        return hash(self.ops)

    def __repr__(self):
        return "Signature(" + ", ".join(f"{o.name}:{o.source}->{o.target}" for o in self.ops) + ")"

    def to_list(self):
        return [{"name": o.name, "in": o.source, "out": o.target} for o in self.ops]

    @classmethod
    def from_list(cls, items):
        return cls(Operation(d["name"], int(d["in"]), int(d["out"])) for d in items)


FROBENIUS_SIGNATURE = Signature([("mu", 2, 1), ("eta", 0, 1), ("delta", 1, 2), ("nu", 1, 0)])


def _add_into(ctx, acc: dict, key, value):
    cur = acc.get(key)
    new = value if cur is None else ctx.add(cur, value)
    if ctx.is_zero(new):
        acc.pop(key, None)
    else:
        acc[key] = new


class OmegaAlgebra:
    """A finite-dimensional carrier with one structure tensor per operation."""

    def __init__(self, ctx: FieldCtx, basis, signature: Signature, tables: Mapping, label=None):
        self.ctx = ctx
        self.basis = tuple(str(b) for b in basis)
        if not self.basis:
            raise DimensionMismatch("an algebra needs at least one basis element")
        self.signature = signature
        self.label = label
        n = len(self.basis)
        clean = {}
        for op in signature:
            raw = tables.get(op.name, {})
            table = {}
            for src, row in raw.items():
                src = tuple(src)
                self._check_index(src, op.source, n, op.name)
                out = {}
                for tgt, c in row.items():
                    tgt = tuple(tgt)
                    self._check_index(tgt, op.target, n, op.name)
                    _add_into(ctx, out, tgt, ctx.coerce(c) if not _raw(ctx, c) else c)
                if out:
                    table[src] = out
            clean[op.name] = table
        unknown = set(tables) - {op.name for op in signature}
        if unknown:
            raise UnknownOp(f"tables for operations outside the signature: {sorted(unknown)}")
        self.tables = clean

    @staticmethod
    def _check_index(idx, arity, n, name):
        if len(idx) != arity:
            raise DimensionMismatch(f"{name}: multi-index {idx} should have length {arity}")
        if any(not (0 <= i < n) for i in idx):
            raise DimensionMismatch(f"{name}: index out of range in {idx}")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def table(self, name) -> dict:
        self.signature[name]
        return self.tables[name]

    def constant(self, name, src, tgt):
        return self.tables[name].get(tuple(src), {}).get(tuple(tgt), self.ctx.zero)

    def index(self, label) -> int:
        return self.basis.index(label)

    def basis_vector(self, i) -> dict:
        return {i: self.ctx.one}

    def __repr__(self):
        name = self.label or "OmegaAlgebra"
        return f"<{name} dim={self.dim} over {self.ctx}>"

    # -- serialization -------------------------------------------------
    def to_dict(self) -> dict:
        ctx = self.ctx
        ops = {}
        for op in self.signature:
            records = []
            for src in sorted(self.tables[op.name]):
                row = self.tables[op.name][src]
                records.append(
                    {
                        "in": list(src),
                        "out": [{"idx": list(t), "c": ctx.to_str(row[t])} for t in sorted(row)],
                    }
                )
            ops[op.name] = records
        out = {
            "field": ctx.descriptor(),
            "basis": list(self.basis),
            "signature": self.signature.to_list(),
            "ops": ops,
        }
        if self.label:
            out["label"] = self.label
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "OmegaAlgebra":
        ctx = field_from_descriptor(data["field"])
        signature = (
            Signature.from_list(data["signature"]) if "signature" in data else FROBENIUS_SIGNATURE
        )
        tables = {}
        for name, records in data["ops"].items():
            t = {}
            for rec in records:
                row = t.setdefault(tuple(rec["in"]), {})
                for entry in rec["out"]:
                    row[tuple(entry["idx"])] = ctx.coerce(entry["c"])
            tables[name] = t
        return cls(ctx, data["basis"], signature, tables, data.get("label"))


def _raw(ctx, c) -> bool:
    return _is_payload(ctx, c)


# ---------------------------------------------------------------------------
# tensors are sparse dicts {multi-index: payload}

def as_sparse(ctx, vec, n) -> dict:
    if isinstance(vec, dict):
        if any(not (0 <= i < n) for i in vec):
            raise DimensionMismatch(f"vector index out of range for dimension {n}")
        return {i: c for i, c in vec.items() if not ctx.is_zero(c)}
    vec = list(vec)
    if len(vec) != n:
        raise DimensionMismatch(f"vector of length {len(vec)} for dimension {n}")
    return {i: c for i, c in enumerate(vec) if not ctx.is_zero(c)}


def tensor_of(ctx, vectors) -> dict:
    """Sparse tensor product of sparse vectors."""
    out = {(): ctx.one}
    for v in vectors:
        nxt = {}
        for key, c in out.items():
            for i, x in v.items():
                nxt[key + (i,)] = ctx.mul(c, x)
        out = {k: c for k, c in nxt.items() if not ctx.is_zero(c)}
    return out


def apply_op(alg: OmegaAlgebra, name: str, inputs) -> dict:
    """Evaluate an operation on a tensor (dict) or on a list of s vectors."""
    op = alg.signature[name]
    ctx, n = alg.ctx, alg.dim
    if isinstance(inputs, dict):
        tensor = {}
        for key, c in inputs.items():
            key = tuple(key)
            if len(key) != op.source or any(not (0 <= i < n) for i in key):
                raise DimensionMismatch(f"{name}: bad input multi-index {key}")
            if not ctx.is_zero(c):
                tensor[key] = c
    else:
        vectors = list(inputs)
        if len(vectors) != op.source:
            raise DimensionMismatch(f"{name} takes {op.source} inputs, got {len(vectors)}")
        tensor = tensor_of(ctx, [as_sparse(ctx, v, n) for v in vectors])
    table = alg.tables[name]
    out: dict = {}
    for key, c in tensor.items():
        row = table.get(key)
        if not row:
            continue
        for tgt, d in row.items():
            _add_into(ctx, out, tgt, ctx.mul(c, d))
    return out


class LinearMap:
    """Matrix of a linear map between two carriers: rows index the codomain basis."""

    def __init__(self, domain: OmegaAlgebra, codomain: OmegaAlgebra, matrix):
        if domain.ctx != codomain.ctx:
            raise SignatureMismatch("domain and codomain live over different fields")
        ctx = domain.ctx
        matrix = [[ctx.coerce(x) if not _raw(ctx, x) else x for x in row] for row in matrix]
        if len(matrix) != codomain.dim or any(len(r) != domain.dim for r in matrix):
            raise DimensionMismatch(
                f"matrix shape should be {codomain.dim}x{domain.dim}"
            )
        self.domain = domain
        self.codomain = codomain
        self.matrix = matrix
        self.ctx = ctx

    @classmethod
    def identity(cls, alg):
        ctx = alg.ctx
        return cls(alg, alg, [[ctx.one if i == j else ctx.zero for j in range(alg.dim)] for i in range(alg.dim)])

    def column(self, j) -> dict:
        ctx = self.ctx
        return {i: row[j] for i, row in enumerate(self.matrix) if not ctx.is_zero(row[j])}

    def apply(self, vec) -> dict:
        ctx = self.ctx
        out: dict = {}
        for j, c in as_sparse(ctx, vec, self.domain.dim).items():
            for i, row in enumerate(self.matrix):
                if not ctx.is_zero(row[j]):
                    _add_into(ctx, out, i, ctx.mul(c, row[j]))
        return out

    def apply_tensor(self, tensor: dict) -> dict:
        ctx = self.ctx
        cols = [self.column(j) for j in range(self.domain.dim)]
        out: dict = {}
        for key, c in tensor.items():
            for img_key, x in tensor_of(ctx, [cols[j] for j in key]).items():
                _add_into(ctx, out, img_key, ctx.mul(c, x))
        return out

    def compose(self, inner: "LinearMap") -> "LinearMap":
        """self after inner."""
        if inner.codomain.dim != self.domain.dim:
            raise DimensionMismatch("maps do not compose")
        return LinearMap(inner.domain, self.codomain, mat_mul(self.ctx, self.matrix, inner.matrix))

    def is_identity(self) -> bool:
        return self.domain.dim == self.codomain.dim and is_identity(self.ctx, self.matrix)

    def __eq__(self, other):
        return isinstance(other, LinearMap) and self.matrix == other.matrix

    def __repr__(self):
        return f"<LinearMap {self.domain.dim}->{self.codomain.dim}>"


def check_omega_morphism(f: LinearMap) -> list:
    """All (operation, source multi-index) pairs where f fails to intertwine.

    An empty list means f is a morphism.
    """
    A, B = f.domain, f.codomain
    if A.signature != B.signature:
        raise SignatureMismatch(f"{A.signature} vs {B.signature}")
    violations = []
    for op in A.signature:
        for src in itertools.product(range(A.dim), repeat=op.source):
            lhs = f.apply_tensor(A.tables[op.name].get(src, {}))
            imgs = f.apply_tensor({src: A.ctx.one})
            rhs = apply_op(B, op.name, imgs)
            if lhs != rhs:
                violations.append((op.name, src))
    return violations
