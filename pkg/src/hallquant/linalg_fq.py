"""Small dense linear algebra over prime fields F_p.

Matrices are lists (or tuples) of row tuples with entries in range(p).
Vectors are tuples.  Everything here is deliberately naive: sizes are tiny.
"""
from __future__ import annotations

from itertools import product


def inv(a: int, p: int) -> int:
    return pow(a, p - 2, p)


def rref(rows, ncols: int, p: int):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        piv = next((k for k in range(r, len(m)) if m[k][c] % p), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        f = inv(m[r][c] % p, p)
        m[r] = [(x * f) % p for x in m[r]]
        for k in range(len(m)):
            if k != r and m[k][c] % p:
                g = m[k][c]
                m[k] = [(x - g * y) % p for x, y in zip(m[k], m[r])]
        pivots.append(c)
        r += 1
    return [tuple(x % p for x in row) for row in m[:r]], pivots


def rank(rows, ncols: int, p: int) -> int:
    if not rows or not ncols:
        return 0
    return len(rref(rows, ncols, p)[1])


def nullspace(rows, ncols: int, p: int):
    """Basis of {x : M x = 0} as a list of column vectors (tuples), in RREF-derived order."""
    if not rows:
        return [tuple(1 if k == c else 0 for k in range(ncols)) for c in range(ncols)]
    red, pivots = rref(rows, ncols, p)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [0] * ncols
        x[f] = 1
        for r, pc in enumerate(pivots):
            x[pc] = (-red[r][f]) % p
        basis.append(tuple(x))
    return basis


def matvec(m, x, p: int):
    return tuple(sum(a * b for a, b in zip(row, x)) % p for row in m)


def matmul(a, b, p: int):
    if not a:
        return []
    cols = list(zip(*b)) if b else []
    if not cols:
        return [() for _ in a]
    return [tuple(sum(x * y for x, y in zip(row, col)) % p for col in cols) for row in a]


def transpose(m, nrows: int, ncols: int):
    """Transpose an ``nrows x ncols`` matrix (shape given so empty matrices behave)."""
    return [tuple(m[r][c] for r in range(nrows)) for c in range(ncols)]


def zeros(nrows: int, ncols: int):
    return [tuple([0] * ncols) for _ in range(nrows)]


def identity(n: int):
    return [tuple(1 if r == c else 0 for c in range(n)) for r in range(n)]


def rref_subspaces(n: int, k: int, p: int):
    """All k-dimensional subspaces of F_p^n, each as its RREF basis (k row tuples)."""
    if k == 0:
        yield ()
        return
    if k > n:
        return
    from itertools import combinations

    for pivots in combinations(range(n), k):
        # free positions: row r, column c > pivot r, c not a pivot
        free = [(r, c) for r in range(k) for c in range(pivots[r] + 1, n) if c not in pivots]
        for vals in product(range(p), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for r, pc in enumerate(pivots):
                rows[r][pc] = 1
            for (r, c), x in zip(free, vals):
                rows[r][c] = x
            yield tuple(tuple(r) for r in rows)


def reduce_mod(basis_rref, pivots, x, p: int):
    """Reduce vector x modulo the span of an RREF basis; returns (coords in basis, residue)."""
    x = list(x)
    coords = []
    for row, pc in zip(basis_rref, pivots):
        c = x[pc] % p
        coords.append(c)
        if c:
            x = [(a - c * b) % p for a, b in zip(x, row)]
    return tuple(coords), tuple(v % p for v in x)


def primitive_root(p: int) -> int:
    if p == 2:
        return 1
    phi = p - 1
    factors = {f for f in range(2, phi + 1) if phi % f == 0 and all(f % d for d in range(2, f))}
    for g in range(2, p):
        if all(pow(g, phi // f, p) != 1 for f in factors):
            return g
    raise ValueError(f"{p} is not prime")


def is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


def gl_order(d: int, p: int) -> int:
    out = 1
    for k in range(d):
        out *= p ** d - p ** k
    return out
