from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from hallquant.cartan import preset
from hallquant.coeffring import RONE
from hallquant.fquot import FAlgebra, format_word, parse_word


def kostant(roots, nu):
    # number of ways to write nu as a multiset of positive roots
    if not roots:
        return int(not any(nu))
    r, rest = roots[0], roots[1:]
    total, k = 0, 0
    while all(k * a <= b for a, b in zip(r, nu)):
        total += kostant(rest, tuple(b - k * a for a, b in zip(r, nu)))
        k += 1
    return total


ROOTS = {
    "A2": [(1, 0), (0, 1), (1, 1)],
    "B2": [(1, 0), (0, 1), (1, 1), (2, 1)],
    "G2": [(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)],
    "A1xA1": [(1, 0), (0, 1)],
}


@pytest.mark.parametrize("name", sorted(ROOTS))
def test_dimension_is_kostant_partition_count(name):
    f = FAlgebra(preset(name))
    for nu in product(range(4), repeat=2):
        assert f.dim(nu) == kostant(ROOTS[name], nu), nu


def test_serre_elements_vanish():
    for name in ("A2", "B2", "G2"):
        f = FAlgebra(preset(name))
        for i, j in ((0, 1), (1, 0)):
            assert f.is_zero(f.serre(i, j))


def test_commuting_letters():
    f = FAlgebra(preset("A1xA1"))
    assert f.word((1, 0)) == f.word((0, 1))


words = st.lists(st.integers(0, 1), max_size=3).map(tuple)


@settings(max_examples=40, deadline=None)
@given(words, words, words)
def test_mul_associative(a, b, c):
    f = FAlgebra(preset("B2"))
    x, y, z = f.word(a), f.word(b), f.word(c)
    assert f.mul(f.mul(x, y), z) == f.mul(x, f.mul(y, z))


@settings(max_examples=40, deadline=None)
@given(words)
def test_normal_form_idempotent(w):
    f = FAlgebra(preset("A2"))
    x = f.word(w)
    assert f.normal_form(x) == x


def test_word_format():
    assert format_word((0, 1, 0)) == "t1 t2 t1"
    assert parse_word("t1 t2 t1") == (0, 1, 0)
    assert parse_word("1,2") == (0, 1)
    assert parse_word("1") == ()


def test_divided_power():
    f = FAlgebra(preset("A2"))
    d = f.divided_power(0, 2)
    assert f.mul(d, {(): RONE}) == f.normal_form(d)
