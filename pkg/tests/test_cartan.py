import pytest
from hypothesis import given, strategies as st

from hallquant.cartan import PRESETS, CartanDatum, preset

RANK2 = ["A1xA1", "A2", "B2", "G2"]
coeffs = st.lists(st.integers(-3, 3), min_size=2, max_size=2)


def test_presets_braid_orders():
    assert [preset(n).braid_order(0, 1) for n in RANK2] == [2, 3, 4, 6]


def test_symmetrizer_checked():
    with pytest.raises(ValueError):
        CartanDatum([[2, -2], [-1, 2]], [1, 1])
    with pytest.raises(ValueError):
        CartanDatum([[2, 1], [1, 2]], [1, 1])
    CartanDatum([[2, -2], [-1, 2]], [1, 2])


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_eps_symmetrizes(name):
    cd = preset(name)
    for i in range(cd.n):
        for j in range(cd.n):
            assert cd.eps[i] * cd.matrix[i][j] == cd.eps[j] * cd.matrix[j][i]


@pytest.mark.parametrize("name", RANK2)
@given(x=coeffs, y=coeffs)
def test_reflection_preserves_form(name, x, y):
    cd = preset(name)
    for i in range(cd.n):
        assert cd.symform(cd.reflect_root(i, x), cd.reflect_root(i, y)) == cd.symform(x, y)


@pytest.mark.parametrize("name", RANK2)
def test_coxeter_relation_on_weights(name):
    cd = preset(name)
    m = cd.braid_order(0, 1)
    for k in range(cd.dim):
        lam = tuple(1 if c == k else 0 for c in range(cd.dim))
        w = lam
        for _ in range(m):
            w = cd.reflect(0, cd.reflect(1, w))
        assert w == lam


def test_reflect_simple_root():
    cd = preset("B2")
    assert cd.reflect_root(0, (1, 0)) == (-1, 0)
    # a_12 = -2: s_1(alpha_2) = alpha_2 + 2 alpha_1
    assert cd.reflect_root(0, (0, 1)) == (2, 1)
    assert cd.reflect_root(1, (1, 0)) == (1, 1)


def test_degenerate_matrix_gets_extra_coordinates():
    cd = CartanDatum([[2, -2], [-2, 2]], [1, 1])
    assert cd.corank == 1
    assert cd.dim == 3
    assert len(set(cd.simple_roots)) == 2
    assert cd.weight((1, 0)) == (1, 0, 0)


def test_weight_and_root():
    cd = preset("A2")
    assert cd.root((1, 1)) == (1, 1)
    assert cd.add((0, 0), (1, 0)) == (2, -1)
    assert cd.reflect(0, (1, 0)) == (-1, 1)
    assert cd.coweight_reflect(0, (1, 0)) == (-1, 0)


def test_unknown_preset():
    with pytest.raises(KeyError):
        preset("E8")
