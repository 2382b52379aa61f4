"""The acceptance suite: fourteen exhaustive checks at desk scale.

Each check returns a report ``{"id", "name", "passed", "checked", "failures"}``
where ``failures`` lists at most a handful of counterexamples.
"""
from __future__ import annotations

import math
import time
from fractions import Fraction
from itertools import product

from .bgp import reflect_minus_class, reflect_plus_class, reflected_category
from .cartan import preset
from .coeffring import qbinom
from .fquot import FAlgebra
from .hdot import (DoubleMonomial, ReflectionMap, coincidence_check, hdot_algebra,
                   psi_invariance_check)
from .quiverrep import ValuedQuiver, category
from .udot import UdotAlgebra

__all__ = ["SUITES", "run_suite", "run_all"]

A2 = ValuedQuiver(2, [(0, 1)], name="A2")
A2_REV = ValuedQuiver(2, [(1, 0)], name="A2")
A3 = ValuedQuiver(3, [(0, 1), (1, 2)], name="A3")
MAX_FAILURES = 5


class _Report:
    def __init__(self, cid: int, name: str):
        self.cid = cid
        self.name = name
        self.checked = 0
        self.failures: list = []
        self.failed = 0
        self.extra: dict = {}

    def check(self, ok: bool, info=None):
        self.checked += 1
        if not ok:
            self.failed += 1
            if len(self.failures) < MAX_FAILURES:
                self.failures.append(info)

    def done(self) -> dict:
        out = {"id": self.cid, "name": self.name, "passed": self.failed == 0 and self.checked > 0,
               "checked": self.checked, "failed": self.failed, "failures": self.failures}
        out.update(self.extra)
        return out


def _weights(n: int, bound: int):
    return list(product(range(-bound, bound + 1), repeat=n))


def _sink(Q: ValuedQuiver) -> int:
    return next(i for i in range(Q.n) if Q.is_sink(i))


# 1 -------------------------------------------------------------------------------
def check_qbinom() -> dict:
    rep = _Report(1, "qbinom bar symmetry and v=1 value")
    for m in range(9):
        for t in range(m + 1):
            b = qbinom(m, t)
            rep.check(b.bar() == b and b.at_one() == math.comb(m, t), [m, t])
    return rep.done()


# 2 -------------------------------------------------------------------------------
def check_euler() -> dict:
    rep = _Report(2, "Euler form equals dim Hom - dim Ext")
    for Q in (A2, A3):
        cat = category(Q, 2, 6)
        classes = cat.classify(3)
        for a in classes:
            for b in classes:
                if a.total_dim + b.total_dim > 3:
                    continue
                h = cat.hom_dim(a.rep, b.rep)
                e = cat.ext_dim(a.rep, b.rep)
                rep.check(Q.euler(a.dimvec, b.dimvec) == h - e, [Q.n, a.id, b.id])
    return rep.done()


# 3 -------------------------------------------------------------------------------
def check_associativity() -> dict:
    rep = _Report(3, "Hall algebra associativity")
    for q in (2, 3):
        cat = category(A2, q)
        H = hdot_algebra(cat).H
        classes = cat.classify(3)
        for a, b, c in product(classes, repeat=3):
            if a.total_dim + b.total_dim + c.total_dim > 3:
                continue
            x, y, z = H.u(a), H.u(b), H.u(c)
            rep.check((x * y) * z == x * (y * z), [q, a.id, b.id, c.id])
    return rep.done()


# 4 -------------------------------------------------------------------------------
def check_serre() -> dict:
    rep = _Report(4, "quantum Serre relations in the Hall algebra")
    for q in (2, 3, 5):
        cat = category(A2, q)
        H = hdot_algebra(cat).H
        cd = A2.cartan()
        for i, j in ((0, 1), (1, 0)):
            b = 1 - cd.matrix[i][j]
            total = H.zero()
            for k in range(b + 1):
                term = H.prod([H.divided_power(i, k), H.simple(j), H.divided_power(i, b - k)])
                total = total + term * (-1 if k % 2 else 1)
            rep.check(total.is_zero(), [q, i + 1, j + 1])
    return rep.done()


# 5 -------------------------------------------------------------------------------
def indecomposable_sum(cat, i: int, j: int):
    """``(<lam>, sum_t (-1)^t v_i^-t u_i^(t) u_j u_i^(n-t))`` with n = -a_ij, i a sink."""
    H = hdot_algebra(cat).H
    cd = cat.quiver.cartan()
    n = -cd.matrix[i][j]
    dim = tuple((1 if k == j else 0) + (n if k == i else 0) for k in range(cat.n))
    indec = [c for c in cat.classes(dim) if c.endo_dim == 1]
    if len(indec) != 1:
        raise ValueError(f"expected one indecomposable of dimension {dim}")
    eps = cd.eps[i]
    total = H.zero()
    for t in range(n + 1):
        term = H.prod([H.divided_power(i, t), H.simple(j), H.divided_power(i, n - t)])
        total = total + term * (H.vpow(-eps * t) * (-1 if t % 2 else 1))
    return H.angle(indec[0]), total


def check_indecomposable_formula() -> dict:
    rep = _Report(5, "indecomposable symbol as a u_i, u_j polynomial at a sink")
    for q in (2, 3):
        for Q in (A2, A2_REV):
            cat = category(Q, q)
            i = _sink(Q)
            j = 1 - i
            lhs, rhs = indecomposable_sum(cat, i, j)
            rep.check(lhs == rhs, [q, Q.to_json()["edges"], str(lhs), str(rhs)])
    return rep.done()


# 6 -------------------------------------------------------------------------------
def check_bgp() -> dict:
    rep = _Report(6, "reflection functor dimension vectors and round trip")
    cases = [(A2, 2, 4), (A2_REV, 2, 4), (A2, 3, 3), (A3, 2, 3),
             (ValuedQuiver(3, [(0, 1), (2, 1)]), 2, 3)]
    for Q, q, dmax in cases:
        cat = category(Q, q)
        cd = Q.cartan()
        for i in range(Q.n):
            if not Q.is_sink(i):
                continue
            tgt = reflected_category(cat, i)
            for lam in cat.classify(dmax):
                t, lam0 = cat.split_simple(i, lam)
                if sum(cd.reflect_root(i, lam0.dimvec)) > tgt.cap:
                    continue
                img = reflect_plus_class(cat, i, lam)
                rep.check(img.dimvec == cd.reflect_root(i, lam0.dimvec), [q, i + 1, lam.id, "dim"])
                back = reflect_minus_class(tgt, i, img)
                rep.check(back == lam0, [q, i + 1, lam.id, "round trip"])
    return rep.done()


# 7 -------------------------------------------------------------------------------
def check_straightening_compatibility(dmax: int = 2, bound: int = 2) -> dict:
    rep = _Report(7, "sink symmetry respects straightening")
    cat = category(A2, 2)
    A = hdot_algebra(cat)
    T = ReflectionMap(A, _sink(A2))
    classes = cat.classify(dmax)
    for lm, lp in product(classes, repeat=2):
        for kappa in _weights(2, bound):
            lhs = T.apply_closed(A.straighten(lm, kappa, lp))
            rhs = T.closed_form(lp, kappa, lm, mixed=True)
            rep.check(lhs == rhs, [lm.id, list(kappa), lp.id])
    return rep.done()


# 8 -------------------------------------------------------------------------------
def check_coincidence(bound: int = 2) -> dict:
    rep = _Report(8, "reflection symmetry coincides with Lusztig's T_i")
    for Q in (A2, A2_REV):
        A = hdot_algebra(category(Q, 2))
        i = _sink(Q)
        for gen in ("E1", "E2", "F1", "F2"):
            for zeta in _weights(2, bound):
                r = coincidence_check(A, i, gen, zeta)
                rep.check(r["equal"], [Q.to_json()["edges"], gen, list(zeta)])
    return rep.done()


# 9 -------------------------------------------------------------------------------
def check_inverse(bound: int = 2, dmax: int = 2) -> dict:
    rep = _Report(9, "sink and source symmetries are mutually inverse")
    for Q in (A2, A2_REV):
        A = hdot_algebra(category(Q, 2))
        i = _sink(Q)
        T = ReflectionMap(A, i)
        B = T.tgt
        Tp = ReflectionMap(B, i, source=True)
        for alg, first, second in ((A, T, Tp), (B, Tp, T)):
            gens = []
            for lam in alg.cat.classify(dmax):
                if lam.total_dim == 0:
                    continue
                for zeta in _weights(2, bound):
                    gens.append((alg.plus(lam, zeta), ["+", lam.id, list(zeta)]))
                    gens.append((alg.minus(lam, zeta), ["-", lam.id, list(zeta)]))
            for x, info in gens:
                y = second.apply_closed(first.apply_closed(x))
                rep.check(y == x, [Q.to_json()["edges"], "source" if first.source else "sink"] + info)
    return rep.done()


# 10 ------------------------------------------------------------------------------
def check_braid(include_g2: bool = False, bound: int = 2) -> dict:
    rep = _Report(10, "braid relations of Lusztig's symmetries on U-dot")
    names = ["A1xA1", "A2", "B2"] + (["G2"] if include_g2 else [])
    for name in names:
        U = UdotAlgebra(preset(name))
        for gen in ("E1", "E2", "F1", "F2"):
            for zeta in _weights(2, bound):
                r = U.braid_check(0, 1, gen, zeta)
                rep.check(bool(r["equal"]), [name, gen, list(zeta)])
    rep.extra["types"] = names
    return rep.done()


# 11 ------------------------------------------------------------------------------
def check_projection(dmax: int = 3, bound: int = 2) -> dict:
    rep = _Report(11, "projection compatibility of the double Hall symmetry")
    for q in (2, 3):
        cat = category(A2, q, 6)
        A = hdot_algebra(cat)
        T = ReflectionMap(A, _sink(A2))
        B = T.tgt
        z0 = cat.zero()
        monos = []
        for lam in cat.classify(dmax):
            if lam.total_dim:
                monos.append(DoubleMonomial(lam, z0, (0, 0)))
                monos.append(DoubleMonomial(z0, lam, (0, 0)))
        monos += [DoubleMonomial(z0, z0, mu) for mu in _weights(2, bound)]
        for m in monos:
            img = T.tilde_image(m)
            for zeta in _weights(2, bound):
                lhs = B.project_pi(T.reflect_weight(zeta), img)
                rhs = T(A.project_pi(zeta, m))
                rep.check(lhs == rhs, [q, m.alpha_plus.id, m.beta_minus.id, list(m.mu), list(zeta)])
    return rep.done()


# 12 ------------------------------------------------------------------------------
def commutator_identities(A, i: int, lam, zeta) -> tuple:
    """Both sides of the two commutator formulas with u_i^{-+} against <lam>^{+-}."""
    H, cat = A.H, A.cat
    s, unit = cat.simple(i), cat.unit(i)
    x = H.angle(lam)
    c = A.vpow(cat.quiver.eps[i]) * Fraction(1, s.aut)
    zeta = A.weight(zeta)
    lhs1 = -(A.mul(A.minus(s, A.shift(zeta, lam.dimvec)), A.plus(lam, zeta))
             - A.mul(A.plus(lam, A.shift(zeta, unit, -1)), A.minus(s, zeta)))
    e1 = A.pairing(zeta, unit)
    e2 = -A.pairing(A.shift(A.shift(zeta, lam.dimvec), unit, -1), unit)
    rhs1 = (A.plus(H.green_r_map(s, x), zeta) * A.vpow(e1)
            - A.plus(H.green_r_prime_map(s, x), zeta) * A.vpow(e2)) * c
    lhs2 = -(A.mul(A.minus(lam, A.shift(zeta, unit)), A.plus(s, zeta))
             - A.mul(A.plus(s, A.shift(zeta, lam.dimvec, -1)), A.minus(lam, zeta)))
    e1 = A.pairing(A.shift(A.shift(zeta, lam.dimvec, -1), unit), unit)
    e2 = -A.pairing(zeta, unit)
    rhs2 = (A.minus(H.green_r_prime_map(s, x), zeta) * A.vpow(e1)
            - A.minus(H.green_r_map(s, x), zeta) * A.vpow(e2)) * c
    return (lhs1, rhs1), (lhs2, rhs2)


def check_section_identities(dmax: int = 3, bound: int = 2) -> dict:
    rep = _Report(12, "commutator formulas, Hall number transport and a_beta scaling")
    cat = category(A2, 2)
    A = hdot_algebra(cat)
    for i in range(2):
        for lam in cat.classify(dmax):
            for zeta in _weights(2, bound):
                (l1, r1), (l2, r2) = commutator_identities(A, i, lam, zeta)
                rep.check(l1 == r1, ["plus", i + 1, lam.id, list(zeta)])
                rep.check(l2 == r2, ["minus", i + 1, lam.id, list(zeta)])
    i = _sink(A2)
    tgt = reflected_category(cat, i)
    free = [c for c in cat.classify(4) if not cat.has_simple_summand(i, c)]
    si, ti = cat.simple(i), tgt.simple(i)
    for al, be in product(free, repeat=2):
        if tuple(a - b for a, b in zip(al.dimvec, be.dimvec)) != cat.unit(i):
            continue
        lhs = cat.hall_number(al, be, si)
        sa, sb = reflect_plus_class(cat, i, al), reflect_plus_class(cat, i, be)
        rhs = Fraction(al.aut, be.aut) * tgt.hall_number(sb, ti, sa)
        rep.check(lhs == rhs, ["transport", al.id, be.id])
    for bp in free:
        for t in (1, 2):
            if bp.total_dim + t > cat.cap:
                continue
            beta = cat.direct_sum(bp, cat.simple(i, t))
            e = cat.euler(cat.unit(i, t), bp.dimvec)
            rep.check(beta.aut == cat.q ** e * bp.aut * cat.simple(i, t).aut, ["scaling", bp.id, t])
    return rep.done()


# 13 ------------------------------------------------------------------------------
def check_psi(dmax: int = 3) -> dict:
    rep = _Report(13, "psi invariance on classes without S_i summands")
    cat = category(A2, 2)
    A = hdot_algebra(cat)
    i = _sink(A2)
    free = [c for c in cat.classify(dmax) if not cat.has_simple_summand(i, c) and c.total_dim]
    for b1, b2 in product(free, repeat=2):
        for sign in (1, -1):
            r = psi_invariance_check(A, i, b1, b2, (0, 0), sign)
            rep.check(r["equal"], [b1.id, b2.id, "+" if sign > 0 else "-", str(r["lhs"]), str(r["rhs"])])
    return rep.done()


# 14 ------------------------------------------------------------------------------
def check_dimensions(max_weight: int = 4) -> dict:
    rep = _Report(14, "dim f_nu equals the number of classes of dimension nu")
    f = FAlgebra(A2.cartan())
    for q in (2, 3):
        cat = category(A2, q, max(max_weight, 4))
        for nu in product(range(max_weight + 1), repeat=2):
            if sum(nu) > max_weight:
                continue
            rep.check(f.dim(nu) == len(cat.classes(nu)), [q, list(nu)])
    return rep.done()


SUITES = {
    "qbinom": check_qbinom,
    "euler": check_euler,
    "associativity": check_associativity,
    "serre": check_serre,
    "indecomposable": check_indecomposable_formula,
    "bgp": check_bgp,
    "straightening": check_straightening_compatibility,
    "coincidence": check_coincidence,
    "inverse": check_inverse,
    "braid": check_braid,
    "projection": check_projection,
    "identities": check_section_identities,
    "psi": check_psi,
    "dimensions": check_dimensions,
}

LIMITS = {1: 1, 2: 10, 3: 30, 4: 5, 5: 5, 6: 10, 7: 120, 8: 60, 9: 30, 10: 300, 11: 60, 12: 120,
          13: 30, 14: 10}


def run_suite(name: str, **kwargs) -> dict:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    t0 = time.perf_counter()
    out = SUITES[name](**kwargs)
    out["seconds"] = round(time.perf_counter() - t0, 3)
    out["suite"] = name
    return out


def run_all(include_g2: bool = False) -> list:
    out = []
    for name in SUITES:
        kwargs = {"include_g2": True} if name == "braid" and include_g2 else {}
        out.append(run_suite(name, **kwargs))
    return out
