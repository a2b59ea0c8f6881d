"""Brute-force references written with plain integers mod p.

Nothing here imports the engine, so agreement with it is a real cross-check.
"""

import itertools


def cyclic_cayley(n):
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def klein_cayley():
    # index i + 2j for (g^i, g^j)
    return [[((a % 2) ^ (b % 2)) + 2 * ((a // 2) ^ (b // 2)) for b in range(4)] for a in range(4)]


def _inverse(cayley):
    n = len(cayley)
    return [next(b for b in range(n) if cayley[a][b] == 0) for a in range(n)]


def _group_mul(cayley, u, v, p):
    n = len(cayley)
    out = [0] * n
    for i, a in enumerate(u):
        if a:
            for j, b in enumerate(v):
                if b:
                    k = cayley[i][j]
                    out[k] = (out[k] + a * b) % p
    return out


def is_group_frobenius_morphism(cayley_a, cayley_b, cols, p):
    """cols[g] is the image of the basis element g as a length-|B| list mod p."""
    nA, nB = len(cayley_a), len(cayley_b)
    inv_a, inv_b = _inverse(cayley_a), _inverse(cayley_b)
    unit_b = [1] + [0] * (nB - 1)
    if cols[0] != unit_b:
        return False
    for g in range(nA):
        if cols[g][0] % p != (1 if g == 0 else 0):  # counit: coefficient of the identity
            return False
        for h in range(nA):
            if _group_mul(cayley_b, cols[g], cols[h], p) != cols[cayley_a[g][h]]:
                return False
    # Delta(f(g)) = (f (x) f) Delta(g), with Delta(g) = sum_h g h^-1 (x) h
    for g in range(nA):
        lhs = {}
        for x, c in enumerate(cols[g]):
            if c:
                for h in range(nB):
                    key = (cayley_b[x][inv_b[h]], h)
                    lhs[key] = (lhs.get(key, 0) + c) % p
        rhs = {}
        for h in range(nA):
            left, right = cols[cayley_a[g][inv_a[h]]], cols[h]
            for i, a in enumerate(left):
                for j, b in enumerate(right):
                    if a and b:
                        rhs[(i, j)] = (rhs.get((i, j), 0) + a * b) % p
        if {k: v for k, v in lhs.items() if v} != {k: v for k, v in rhs.items() if v}:
            return False
    return True


def group_frobenius_morphisms(cayley_a, cayley_b, p):
    """Every Frobenius morphism k[A] -> k[B] over F_p as a tuple of columns.

    The unit column is fixed, every other column ranges over all of F_p^|B|.
    """
    nA, nB = len(cayley_a), len(cayley_b)
    unit = [1] + [0] * (nB - 1)
    found = []
    for rest in itertools.product(itertools.product(range(p), repeat=nB), repeat=nA - 1):
        cols = [unit] + [list(c) for c in rest]
        if is_group_frobenius_morphism(cayley_a, cayley_b, cols, p):
            found.append(tuple(tuple(c) for c in cols))
    return found


def brute_grouplikes(comul, counit, p):
    """All v in F_p^n with Delta v = v (x) v and eps(v) = 1 by full enumeration.

    comul[i] is {(j, k): c} with c an int mod p.
    """
    n = len(counit)
    found = []
    for v in itertools.product(range(p), repeat=n):
        if sum(a * e for a, e in zip(v, counit)) % p != 1:
            continue
        delta = {}
        for i, a in enumerate(v):
            if a:
                for jk, c in comul[i].items():
                    delta[jk] = (delta.get(jk, 0) + a * c) % p
        if all(delta.get((j, k), 0) == (v[j] * v[k]) % p for j in range(n) for k in range(n)):
            found.append(v)
    return found


def rank_mod_p(rows, p):
    rows = [list(r) for r in rows]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def primitive_dimension(comul, g, h, p):
    """dim {x : Delta x = g (x) x + x (x) h} from the linear system, mod p."""
    n = len(g)
    rows = []
    for j in range(n):
        for k in range(n):
            row = [comul[i].get((j, k), 0) % p for i in range(n)]
            row[k] = (row[k] - g[j]) % p
            row[j] = (row[j] - h[k]) % p
            rows.append(row)
    return n - rank_mod_p(rows, p)
