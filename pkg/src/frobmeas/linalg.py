"""Dense exact linear algebra over a FieldCtx.  Matrices are lists of rows of payloads."""

from __future__ import annotations

from .errors import DimensionMismatch, EngineError


def zeros(ctx, rows, cols):
    return [[ctx.zero] * cols for _ in range(rows)]


def identity(ctx, n):
    m = zeros(ctx, n, n)
    for i in range(n):
        m[i][i] = ctx.one
    return m


def transpose(m, cols=None):
    if not m:
        return [[] for _ in range(cols or 0)]
    return [list(col) for col in zip(*m)]


def mat_mul(ctx, a, b, inner=None):
    """a (r x k) times b (k x c)."""
    k = len(b) if inner is None else inner
    if a and len(a[0]) != k:
        raise DimensionMismatch(f"cannot multiply {len(a)}x{len(a[0])} by {k}x?")
    cols = len(b[0]) if b else 0
    out = zeros(ctx, len(a), cols)
    add, mul, is_zero = ctx.add, ctx.mul, ctx.is_zero
    for i, row in enumerate(a):
        acc = out[i]
        for t, x in enumerate(row):
            if is_zero(x):
                continue
            for j, y in enumerate(b[t]):
                if not is_zero(y):
                    acc[j] = add(acc[j], mul(x, y))
    return out


def mat_vec(ctx, m, v):
    out = []
    for row in m:
        acc = ctx.zero
        for x, y in zip(row, v):
            if not ctx.is_zero(x) and not ctx.is_zero(y):
                acc = ctx.add(acc, ctx.mul(x, y))
        out.append(acc)
    return out


def is_identity(ctx, m):
    return all(
        (x == ctx.one) if i == j else ctx.is_zero(x)
        for i, row in enumerate(m)
        for j, x in enumerate(row)
    ) and all(len(row) == len(m) for row in m)


def rref(ctx, m):
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    a = [list(r) for r in m]
    rows = len(a)
    cols = len(a[0]) if a else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if not ctx.is_zero(a[i][c])), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = ctx.inv(a[r][c])
        a[r] = [ctx.mul(inv, x) for x in a[r]]
        for i in range(rows):
            if i != r and not ctx.is_zero(a[i][c]):
                f = a[i][c]
                a[i] = [ctx.sub(x, ctx.mul(f, y)) for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(ctx, m):
    return len(rref(ctx, m)[1]) if m else 0


def nullspace(ctx, m, cols=None):
    """Basis of {x : m x = 0} as a list of vectors."""
    ncols = len(m[0]) if m else (cols or 0)
    if not m:
        return [[ctx.one if i == j else ctx.zero for i in range(ncols)] for j in range(ncols)]
    r, pivots = rref(ctx, m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [ctx.zero] * ncols
        v[f] = ctx.one
        for row, pc in zip(r, pivots):
            v[pc] = ctx.neg(row[f])
        basis.append(v)
    return basis


def inverse(ctx, m):
    n = len(m)
    if any(len(row) != n for row in m):
        raise DimensionMismatch("only square matrices are invertible")
    aug = [list(row) + [ctx.one if i == j else ctx.zero for j in range(n)] for i, row in enumerate(m)]
    r, pivots = rref(ctx, aug)
    if pivots[:n] != list(range(n)):
        raise EngineError("matrix is singular")
    return [row[n:] for row in r]


def solve_in_span(ctx, vectors, target):
    """Coefficients c with sum c_i vectors[i] = target, or None."""
    if not vectors:
        return [] if all(ctx.is_zero(x) for x in target) else None
    cols = len(vectors)
    aug = [[vectors[j][i] for j in range(cols)] + [target[i]] for i in range(len(target))]
    r, pivots = rref(ctx, aug)
    if cols in pivots:
        return None
    coeffs = [ctx.zero] * cols
    for row, pc in zip(r, pivots):
        coeffs[pc] = row[cols]
    return coeffs


def mat_equal(a, b):
    return len(a) == len(b) and all(list(x) == list(y) for x, y in zip(a, b))
