from itertools import product

import pytest

from hallquant.composition import CompositionBridge
from hallquant.hdot import hdot_algebra
from hallquant.quiverrep import ValuedQuiver, category

A2 = ValuedQuiver(2, [(0, 1)])


@pytest.fixture(scope="module")
def bridge():
    return CompositionBridge(hdot_algebra(category(A2, 2)))


def test_class_in_f_inverts_transport(bridge):
    for lam in bridge.cat.classify(3):
        if lam.total_dim:
            assert bridge.f_to_hall(bridge.class_in_f(lam)) == {lam: 1}


def test_transport_is_multiplicative(bridge):
    # straightening in U-dot and in H-dot agree on generator products
    U, A = bridge.udot, bridge.hdot
    for g1, g2 in product(["E1", "E2", "F1", "F2"], repeat=2):
        for zeta in product(range(-2, 3), repeat=2):
            y = U.generator(g2, zeta)
            (key,) = y.terms
            x = U.generator(g1, U.left_weight(key))
            hx, hy = bridge.udot_to_hdot(x), bridge.udot_to_hdot(y)
            assert bridge.udot_to_hdot(x * y) == A.mul(hx, hy)


def test_straighten_two_routes(bridge):
    A = bridge.hdot
    classes = [c for c in bridge.cat.classify(2)]
    for lm, lp in product(classes, repeat=2):
        for kappa in [(0, 0), (1, -1), (-2, 1)]:
            assert A.straighten(lm, kappa, lp) == bridge.straighten(lm, kappa, lp)
