from itertools import product

from hypothesis import given, strategies as st

from hallquant import linalg_fq as la


def brute_rank(rows, ncols, p):
    # size of the row space, counted by enumerating all combinations
    span = {tuple(sum(c * r[k] for c, r in zip(cs, rows)) % p for k in range(ncols))
            for cs in product(range(p), repeat=len(rows))}
    size, r = len(span), 0
    while p ** r < size:
        r += 1
    return r


matrices = st.integers(1, 3).flatmap(lambda nr: st.integers(1, 3).flatmap(
    lambda nc: st.tuples(st.just(nc), st.lists(
        st.lists(st.integers(0, 2), min_size=nc, max_size=nc).map(tuple), min_size=nr, max_size=nr))))


@given(matrices)
def test_rank_against_enumeration(m):
    nc, rows = m
    assert la.rank(rows, nc, 3) == brute_rank(rows, nc, 3)


@given(matrices)
def test_nullspace(m):
    nc, rows = m
    basis = la.nullspace(rows, nc, 3)
    assert len(basis) == nc - la.rank(rows, nc, 3)
    for x in basis:
        assert all(v == 0 for v in la.matvec(rows, x, 3))


def test_gl_orders():
    assert la.gl_order(2, 2) == 6
    assert la.gl_order(2, 3) == 48
    assert la.gl_order(3, 2) == 168


def test_primes():
    assert [p for p in range(12) if la.is_prime(p)] == [2, 3, 5, 7, 11]
    assert la.primitive_root(7) in (3, 5)


def test_subspace_counts():
    # Gaussian binomials at q=2: [4 choose 2]_2 = 35
    assert len(list(la.rref_subspaces(4, 2, 2))) == 35
    assert len(list(la.rref_subspaces(3, 1, 3))) == 13
