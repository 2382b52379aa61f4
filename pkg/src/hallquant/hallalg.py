"""The twisted Ringel-Hall algebra of a simply-laced quiver over F_q.

Elements are stored in the basis ``u_[M]``; the normalised symbols
``<M> = v^(-dim M + dim End M) u_[M]`` are available through
:meth:`HallAlgebra.angle` and the conversion helpers.  Scalars live in
Q[v]/(v^2 - q).
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .coeffring import QuadraticScalar, qfact, specialize
from .quiverrep import IsoClass, RepCategory

__all__ = ["HallAlgebra", "HallElement"]


class HallElement:
    """Finite combination of ``u_[M]`` with QuadraticScalar coefficients."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: "HallAlgebra", terms=None):
        self.alg = alg
        clean = {}
        if terms:
            for k, c in terms.items():
                if not isinstance(c, QuadraticScalar):
                    c = alg.scalar(c)
                if c:
                    clean[k] = c
        self.terms = clean

    def _check(self, other):
        if not isinstance(other, HallElement):
            return NotImplemented
        if other.alg is not self.alg:
            raise ValueError("Hall elements from different instances")
        return other

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return HallElement(self.alg, out)

    def __neg__(self):
        return HallElement(self.alg, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, HallElement):
            return self.alg.mul(self, other)
        c = self.alg.scalar(other)
        return HallElement(self.alg, {k: x * c for k, x in self.terms.items()})

    def __rmul__(self, other):
        c = self.alg.scalar(other)
        return HallElement(self.alg, {k: c * x for k, x in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, HallElement):
            return NotImplemented
        return self.alg is other.alg and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def component(self, dimvec) -> "HallElement":
        dimvec = tuple(dimvec)
        return HallElement(self.alg, {k: c for k, c in self.terms.items() if k.dimvec == dimvec})

    def dimvecs(self) -> set:
        return {k.dimvec for k in self.terms}

    def angle_coeffs(self) -> dict:
        """Coefficients in the normalised basis ``<M>``."""
        return {k: c * self.alg.vpow(k.total_dim - k.endo_dim) for k, c in self.terms.items()}

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def to_json(self) -> list:
        return [[k.id, str(c)] for k, c in self.items()]

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*u[{k.id}]" for k, c in self.items())


class HallAlgebra:
    def __init__(self, cat: RepCategory):
        self.cat = cat
        self.q = cat.q
        self.quiver = cat.quiver
        self.n = cat.n
        self._prod: dict = {}

    def __repr__(self):
        return f"HallAlgebra({self.cat!r})"

    # scalars ---------------------------------------------------------------
    def scalar(self, c) -> QuadraticScalar:
        if isinstance(c, QuadraticScalar):
            if c.q != self.q:
                raise ValueError("scalar specialised at a different q")
            return c
        return specialize(c, self.q)

    def vpow(self, e: int) -> QuadraticScalar:
        return QuadraticScalar.vpow(self.q, e)

    # basis -------------------------------------------------------------------
    def zero(self) -> HallElement:
        return HallElement(self, {})

    def one(self) -> HallElement:
        return self.u(self.cat.zero())

    def u(self, lam: IsoClass, c=1) -> HallElement:
        return HallElement(self, {lam: self.scalar(c)})

    def angle(self, lam: IsoClass, c=1) -> HallElement:
        """The normalised symbol <M(lam)> = v^(-dim + dim End) u_lam."""
        return HallElement(self, {lam: self.scalar(c) * self.vpow(lam.endo_dim - lam.total_dim)})

    normalize = angle

    def from_angle(self, coeffs: dict) -> HallElement:
        out = {}
        for k, c in coeffs.items():
            c = self.scalar(c) * self.vpow(k.endo_dim - k.total_dim)
            out[k] = out[k] + c if k in out else c
        return HallElement(self, out)

    def simple(self, i: int) -> HallElement:
        return self.u(self.cat.simple(i))

    def euler(self, a, b) -> int:
        return self.quiver.euler(a, b)

    def symform(self, a, b) -> int:
        return self.quiver.symform(a, b)

    # product -----------------------------------------------------------------
    def _product_table(self, mdim, ndim) -> dict:
        key = (tuple(mdim), tuple(ndim))
        tab = self._prod.get(key)
        if tab is None:
            tab = {}
            ldim = tuple(a + b for a, b in zip(mdim, ndim))
            for L in self.cat.classes(ldim):
                for (M, N), g in self.cat.hall_table(L, ndim).items():
                    tab.setdefault((M, N), []).append((L, g))
            self._prod[key] = tab
        return tab

    def basis_mul(self, M: IsoClass, N: IsoClass) -> dict:
        """u_M * u_N as a dict of u-coefficients."""
        tab = self._product_table(M.dimvec, N.dimvec)
        tw = self.vpow(self.euler(M.dimvec, N.dimvec))
        return {L: tw * g for L, g in tab.get((M, N), ())}

    def mul(self, x: HallElement, y: HallElement) -> HallElement:
        if x.alg is not self or y.alg is not self:
            raise ValueError("Hall elements from different instances")
        out: dict = {}
        for M, a in x.terms.items():
            for N, b in y.terms.items():
                ab = a * b
                for L, c in self.basis_mul(M, N).items():
                    t = ab * c
                    out[L] = out[L] + t if L in out else t
        return HallElement(self, out)

    def prod(self, factors: Iterable[HallElement]) -> HallElement:
        out = self.one()
        for f in factors:
            out = self.mul(out, f)
        return out

    def power(self, x: HallElement, t: int) -> HallElement:
        out = self.one()
        for _ in range(t):
            out = self.mul(out, x)
        return out

    def divided_power(self, i: int, t: int) -> HallElement:
        """u_i^(t) = u_i^t / [t]_{v_i}!."""
        if t < 0:
            raise ValueError("divided power exponent must be nonnegative")
        e = self.quiver.eps[i]
        p = self.power(self.simple(i), t)
        return p * self.scalar(qfact(t, e)).inverse()

    # coproduct-type maps -----------------------------------------------------
    def _r_generic(self, alpha: IsoClass, x: HallElement, prime: bool, green: bool = False) -> HallElement:
        out: dict = {}
        source = x.terms if green else x.angle_coeffs()
        for lam, c in source.items():
            if prime:
                # quotient alpha, submodule beta
                sub_dim = tuple(a - b for a, b in zip(lam.dimvec, alpha.dimvec))
                if any(d < 0 for d in sub_dim):
                    continue
                table = self.cat.hall_table(lam, sub_dim)
                pairs = [(beta, g) for (m, beta), g in table.items() if m == alpha]
            else:
                if any(a > b for a, b in zip(alpha.dimvec, lam.dimvec)):
                    continue
                table = self.cat.hall_table(lam, alpha.dimvec)
                pairs = [(beta, g) for (beta, n), g in table.items() if n == alpha]
            for beta, g in pairs:
                if prime:
                    e = self.euler(alpha.dimvec, beta.dimvec)
                else:
                    e = self.euler(beta.dimvec, alpha.dimvec)
                if not green:
                    e += self.symform(beta.dimvec, alpha.dimvec)
                coef = c * self.vpow(e) * Fraction(g * beta.aut * alpha.aut, lam.aut)
                out[beta] = out[beta] + coef if beta in out else coef
        return HallElement(self, out) if green else self.from_angle(out)

    def r_map(self, alpha: IsoClass, x: HallElement) -> HallElement:
        """Remove a submodule isomorphic to alpha (angle-bracket basis formula)."""
        return self._r_generic(alpha, x, prime=False)

    def r_prime_map(self, alpha: IsoClass, x: HallElement) -> HallElement:
        """Remove a quotient isomorphic to alpha."""
        return self._r_generic(alpha, x, prime=True)

    def green_r_map(self, alpha: IsoClass, x: HallElement) -> HallElement:
        """Coproduct component removing a submodule alpha, in the u basis:
        u_lam -> sum_beta v^<beta,alpha> g^lam_{beta alpha} a_beta a_alpha / a_lam u_beta.

        For alpha = S_i this is the derivation r_i of f transported to the
        Hall algebra: r(xy) = x r(y) + v^(|y|, i) r(x) y.
        """
        return self._r_generic(alpha, x, prime=False, green=True)

    def green_r_prime_map(self, alpha: IsoClass, x: HallElement) -> HallElement:
        """Coproduct component removing a quotient alpha, in the u basis."""
        return self._r_generic(alpha, x, prime=True, green=True)

    def psi(self, x: HallElement, y: HallElement) -> QuadraticScalar:
        xa = x.angle_coeffs()
        ya = y.angle_coeffs()
        total = self.scalar(0)
        for k, c in xa.items():
            d = ya.get(k)
            if d is not None:
                total = total + c * d * Fraction(self.q ** k.total_dim, k.aut)
        return total
