from itertools import product
import math

import pytest
from hypothesis import given, settings, strategies as st

from hallquant import linalg_fq as la
from hallquant.quiverrep import CapExceeded, Representation, ValuedQuiver, category

A2 = ValuedQuiver(2, [(0, 1)])
A3 = ValuedQuiver(3, [(0, 1), (1, 2)])


def all_matrices(r, c, q):
    for flat in product(range(q), repeat=r * c):
        yield tuple(tuple(flat[k * c:(k + 1) * c]) for k in range(r))


def subspaces(d, q):
    vecs = list(product(range(q), repeat=d))
    out = set()
    for gens in product(vecs, repeat=d):
        span = {tuple(sum(a * g[k] for a, g in zip(cs, gens)) % q for k in range(d))
                for cs in product(range(q), repeat=d)}
        out.add(frozenset(span))
    return out


def rank_of(m, q):
    return la.rank(m, len(m[0]) if m else 0, q)


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("dims", [(1, 1), (2, 1), (1, 2), (2, 2)])
def test_a2_classes_against_orbit_count(q, dims):
    # an A2 representation is one matrix; classes are ranks
    cat = category(A2, q)
    m, n = dims
    by_rank = {}
    for mat in all_matrices(n, m, q):
        r = rank_of(mat, q)
        by_rank[r] = by_rank.get(r, 0) + 1
    group = la.gl_order(m, q) * la.gl_order(n, q)
    expect = sorted(group // size for size in by_rank.values())
    got = sorted(c.aut for c in cat.classes(dims))
    assert got == expect
    assert sum(c.orbit_size for c in cat.classes(dims)) == q ** (m * n)


def test_frozen_small_values():
    cat = category(A2, 2)
    assert len(cat.classes((2, 2))) == 3
    assert cat.simple(0, 2).aut == 6
    assert cat.simple(0).endo_dim == 1
    assert category(A2, 3).simple(1, 2).aut == 48


def test_a3_has_six_indecomposables():
    cat = category(A3, 2, 3)
    ind = [c for c in cat.classify() if c.total_dim and c.endo_dim == 1]
    assert sorted(c.dimvec for c in ind) == sorted(
        [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (0, 1, 1), (1, 1, 1)])


def test_euler_example():
    assert A2.euler((1, 0), (0, 1)) == -1
    assert A2.euler((0, 1), (1, 0)) == 0
    assert A2.symform((1, 0), (0, 1)) == -1


def brute_hom(V, W, q):
    count = 0
    (m,) = V.maps
    (n,) = W.maps
    for f0 in all_matrices(W.dims[0], V.dims[0], q):
        for f1 in all_matrices(W.dims[1], V.dims[1], q):
            lhs = la.matmul(f1, m, q) if m and f1 else None
            rhs = la.matmul(n, f0, q) if n and f0 else None
            if lhs == rhs or V.dims[1] * W.dims[1] == 0 or V.dims[0] * W.dims[0] == 0:
                count += 1
    return round(math.log(count, q))


def test_hom_dim_against_enumeration():
    cat = category(A2, 2)
    classes = cat.classify(2)
    for V, W in product(classes, repeat=2):
        if V.rep.dims[0] and V.rep.dims[1] and W.rep.dims[0] and W.rep.dims[1]:
            assert cat.hom_dim(V.rep, W.rep) == brute_hom(V.rep, W.rep, 2)


def test_euler_is_hom_minus_ext():
    cat = category(A3, 2, 3)
    cls = cat.classify(3)
    for V, W in product(cls, repeat=2):
        if V.total_dim + W.total_dim <= 3:
            assert (cat.hom_dim(V.rep, W.rep) - cat.ext_dim(V.rep, W.rep)
                    == cat.euler(V.dimvec, W.dimvec))


def brute_subreps(L, ndim, q):
    (phi,) = L.maps
    count = 0
    for U0 in subspaces(L.dims[0], q):
        if round(math.log(len(U0), q)) != ndim[0]:
            continue
        for U1 in subspaces(L.dims[1], q):
            if round(math.log(len(U1), q)) != ndim[1]:
                continue
            if all(la.matvec(phi, u, q) in U1 for u in U0) if phi else True:
                count += 1
    return count


@pytest.mark.parametrize("q", [2, 3])
def test_subrepresentation_counts(q):
    cat = category(A2, q)
    for L in cat.classify(3):
        if not all(L.dimvec):
            continue
        for ndim in product(range(L.dimvec[0] + 1), range(L.dimvec[1] + 1)):
            assert cat.invariant_subspace_count(L, ndim) == brute_subreps(L.rep, ndim, q)


def test_hall_numbers_frozen():
    cat = category(A2, 2)
    s1, s2 = cat.simple(0), cat.simple(1)
    split, ind = sorted(cat.classes((1, 1)), key=lambda c: c.endo_dim, reverse=True)
    assert ind.endo_dim == 1
    # g^L_{MN}: N submodule, M quotient
    assert cat.hall_number(ind, s1, s2) == 1
    assert cat.hall_number(ind, s2, s1) == 0
    assert cat.hall_number(split, s1, s2) == 1
    assert cat.hall_number(split, s2, s1) == 1
    assert cat.hall_number(cat.simple(0, 2), s1, s1) == 3


def test_direct_sum_and_split():
    cat = category(A2, 2)
    p = next(c for c in cat.classes((1, 1)) if c.endo_dim == 1)
    lam = cat.direct_sum(p, cat.simple(1, 2))
    assert cat.split_simple(1, lam) == (2, p)
    assert not cat.has_simple_summand(0, lam)


def test_class_of_roundtrip():
    cat = category(A3, 2, 3)
    for c in cat.classify(3):
        assert cat.class_of(c.rep) is c
        assert cat.by_id(c.id) is c


def test_cap():
    cat = category(A2, 2, 2)
    with pytest.raises(CapExceeded):
        cat.classes((2, 1))


@pytest.mark.parametrize("arrows", [[(0, 0)], [(0, 1), (1, 0)], [(0, 1), (1, 2), (2, 0)]])
def test_bad_quivers(arrows):
    n = 1 + max(max(a) for a in arrows)
    with pytest.raises(ValueError):
        ValuedQuiver(n, arrows)


def test_disconnected_rejected():
    with pytest.raises(ValueError):
        ValuedQuiver(2, [])


def test_representation_shape_checked():
    with pytest.raises(ValueError):
        Representation(A2, 2, (1, 2), [((1, 0),)])


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(0, 1), min_size=4, max_size=4))
def test_class_invariant_under_base_change(flat):
    # conjugating the map by invertible matrices keeps the class
    cat = category(A2, 2)
    m = ((flat[0], flat[1]), (flat[2], flat[3]))
    V = Representation(A2, 2, (2, 2), [m])
    g = ((1, 1), (0, 1))
    W = Representation(A2, 2, (2, 2), [la.matmul(g, m, 2)])
    assert cat.class_of(V) is cat.class_of(W)
