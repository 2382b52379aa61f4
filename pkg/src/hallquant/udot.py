"""The modified quantum group U-dot in plus-left normal form.

A monomial ``(x, zeta, y)`` stands for ``x^+ 1_zeta y^-`` with ``x`` and
``y`` normal-form words of f.  Its left idempotent is ``zeta + |x|`` and
its right idempotent is ``zeta + |y|`` (weights of words embedded through
the simple roots).

Products are computed by straightening ``F_y E_x 1_eta`` with the
commutation rule

    F_j E_x 1_eta = E_x F_j 1_eta
                    - sum_k [j = x_k] [(eta + |x_{k+1..}|)(h_j)]_{v_j} E_{x without x_k} 1_eta,

applied one F letter at a time from the right, followed by reduction of
both words in f.
"""
from __future__ import annotations

from typing import Iterable, Mapping

from .cartan import CartanDatum
from .coeffring import RONE, RationalFn, as_rational_fn, format_laurent, qfact, qint, vpow
from .fquot import FAlgebra, _add_into, format_word

__all__ = ["UdotAlgebra", "UdotElement"]


class UdotElement:
    __slots__ = ("alg", "terms")

    def __init__(self, alg: "UdotAlgebra", terms: Mapping | None = None):
        self.alg = alg
        clean = {}
        if terms:
            for k, c in terms.items():
                c = as_rational_fn(c)
                if c:
                    clean[k] = c
        self.terms = clean

    def __add__(self, other):
        if not isinstance(other, UdotElement):
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(out, k, c)
        return UdotElement(self.alg, out)

    def __neg__(self):
        return UdotElement(self.alg, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, UdotElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, UdotElement):
            return self.alg.mul(self, other)
        c = as_rational_fn(other)
        if c is NotImplemented:
            return NotImplemented
        return UdotElement(self.alg, {k: x * c for k, x in self.terms.items()})

    def __rmul__(self, other):
        c = as_rational_fn(other)
        if c is NotImplemented:
            return NotImplemented
        return UdotElement(self.alg, {k: c * x for k, x in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, UdotElement):
            return NotImplemented
        if self.alg is not other.alg:
            return False
        diff = self - other
        return not diff.terms

    def __hash__(self):
        return hash(frozenset(self.terms))

    def is_zero(self) -> bool:
        return not self.terms

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0][0]) + len(kv[0][2]), kv[0]))

    def to_json(self) -> list:
        return [[format_word(x), list(z), format_word(y), str(c)] for (x, z, y), c in self.items()]

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (x, z, y), c in self.items():
            parts.append(f"({c}) E[{format_word(x)}] 1{list(z)} F[{format_word(y)}]")
        return " + ".join(parts)


class UdotAlgebra:
    def __init__(self, cartan: CartanDatum, weight_cap: int = 12):
        self.cartan = cartan
        self.n = cartan.n
        self.f = FAlgebra(cartan, weight_cap)
        self._straight: dict = {}
        self._nf_word: dict = {}
        self._T_gen: dict = {}
        self._T_mono: dict = {}

    def __repr__(self):
        return f"UdotAlgebra({self.cartan!r})"

    # weights ---------------------------------------------------------------
    def _shift(self, zeta, word, sign=1):
        out = list(zeta)
        for i in word:
            for k, x in enumerate(self.cartan.simple_roots[i]):
                out[k] += sign * x
        return tuple(out)

    def left_weight(self, key) -> tuple:
        x, z, _ = key
        return self._shift(z, x)

    def right_weight(self, key) -> tuple:
        _, z, y = key
        return self._shift(z, y)

    # constructors ------------------------------------------------------------
    def zero(self) -> UdotElement:
        return UdotElement(self, {})

    def idem(self, zeta) -> UdotElement:
        return UdotElement(self, {((), self.cartan.weight(zeta), ()): RONE})

    def _nf(self, word) -> dict:
        out = self._nf_word.get(word)
        if out is None:
            out = self.f.normal_form({word: RONE})
            self._nf_word[word] = out
        return out

    def from_free(self, pairs: Mapping) -> UdotElement:
        """Build from ``{(plus word, zeta, minus word): coeff}`` with unreduced words."""
        out: dict = {}
        for (x, z, y), c in pairs.items():
            c = as_rational_fn(c)
            if not c:
                continue
            for xw, a in self._nf(tuple(x)).items():
                ca = c * a
                for yw, b in self._nf(tuple(y)).items():
                    _add_into(out, (xw, z, yw), ca * b)
        return UdotElement(self, out)

    def plus(self, x: Mapping, zeta) -> UdotElement:
        """``x^+ 1_zeta`` for a free-algebra element x."""
        z = self.cartan.weight(zeta)
        return self.from_free({(tuple(w), z, ()): c for w, c in x.items()})

    def minus(self, y: Mapping, zeta) -> UdotElement:
        """``y^- 1_zeta`` (right idempotent zeta)."""
        z = self.cartan.weight(zeta)
        out = {}
        for w, c in y.items():
            w = tuple(w)
            out[((), self._shift(z, w, -1), w)] = c
        return self.from_free(out)

    def E(self, i: int, zeta, t: int = 1) -> UdotElement:
        """E_i^(t) 1_zeta."""
        return self.plus({(i,) * t: RationalFn(RONE.num, qfact(t, self.cartan.eps[i]))}, zeta)

    def F(self, i: int, zeta, t: int = 1) -> UdotElement:
        """F_i^(t) 1_zeta."""
        return self.minus({(i,) * t: RationalFn(RONE.num, qfact(t, self.cartan.eps[i]))}, zeta)

    def generator(self, name: str, zeta) -> UdotElement:
        kind = name[0].upper()
        i = int(name[1:]) - 1
        if not 0 <= i < self.n:
            raise ValueError(f"unknown generator {name!r}")
        if kind == "E":
            return self.E(i, zeta)
        if kind == "F":
            return self.F(i, zeta)
        raise ValueError(f"unknown generator {name!r}")

    # straightening -----------------------------------------------------------
    def _bracket(self, j: int, eta, suffix) -> RationalFn:
        val = eta[j]
        row = self.cartan.matrix[j]
        for l in suffix:
            val += row[l]
        return as_rational_fn(qint(val, self.cartan.eps[j]))

    def straighten_words(self, y: tuple, x: tuple, eta: tuple) -> dict:
        """``F_y E_x 1_eta`` as ``{(a, b): c}`` meaning ``sum c E_a 1_(eta-|b|) F_b`` (free words)."""
        key = (y, x, eta)
        out = self._straight.get(key)
        if out is not None:
            return out
        if not y or not x:
            out = {(x, y): RONE}
            self._straight[key] = out
            return out
        j = y[-1]
        rest = y[:-1]
        # F_j E_x 1_eta
        first: dict = {(x, (j,)): RONE}
        for k, xk in enumerate(x):
            if xk == j:
                c = self._bracket(j, eta, x[k + 1:])
                if c:
                    _add_into(first, (x[:k] + x[k + 1:], ()), -c)
        out = {}
        for (a, b), c in first.items():
            inner_eta = self._shift(eta, b, -1)
            for (a2, b2), c2 in self.straighten_words(rest, a, inner_eta).items():
                _add_into(out, (a2, b2 + b), c * c2)
        self._straight[key] = out
        return out

    def mul(self, u: UdotElement, w: UdotElement) -> UdotElement:
        if u.alg is not self or w.alg is not self:
            raise ValueError("U-dot elements from different algebras")
        acc: dict = {}
        for (a, z, b), c1 in u.terms.items():
            right = self._shift(z, b)
            for (cw, eta, d), c2 in w.terms.items():
                if self._shift(eta, cw) != right:
                    continue
                c12 = c1 * c2
                for (a2, b2), c3 in self.straighten_words(b, cw, eta).items():
                    key = (a + a2, self._shift(eta, b2, -1), b2 + d)
                    _add_into(acc, key, c12 * c3)
        return self.from_free(acc)

    def prod(self, factors: Iterable[UdotElement]) -> UdotElement:
        factors = list(factors)
        out = factors[0]
        for f in factors[1:]:
            out = self.mul(out, f)
        return out

    # Lusztig symmetries -------------------------------------------------------
    def _T_generator(self, i: int, kind: str, j: int, lam: tuple) -> UdotElement:
        key = (i, kind, j, lam)
        out = self._T_gen.get(key)
        if out is not None:
            return out
        cd = self.cartan
        e = cd.eps[i]
        slam = cd.reflect(i, lam)
        if j == i:
            if kind == "E":
                out = self.F(i, slam) * (-vpow(-e * lam[i]))
            else:
                out = self.E(i, slam) * (-vpow(-e * (2 - lam[i])))
        else:
            n = -cd.matrix[i][j]
            out = self.zero()
            for r in range(n + 1):
                s = n - r
                if kind == "E":
                    term = self.prod([self.E(i, self._shift(slam, (j,) + (i,) * r), s),
                                      self.E(j, self._shift(slam, (i,) * r), 1),
                                      self.E(i, slam, r)])
                    out = out + term * ((-1) ** r * vpow(-e * r))
                else:
                    term = self.prod([self.F(i, self._shift(slam, (j,) + (i,) * s, -1), r),
                                      self.F(j, self._shift(slam, (i,) * s, -1), 1),
                                      self.F(i, slam, s)])
                    out = out + term * ((-1) ** r * vpow(e * r))
        self._T_gen[key] = out
        return out

    def _T_monomial(self, i: int, key) -> UdotElement:
        ck = (i, key)
        out = self._T_mono.get(ck)
        if out is not None:
            return out
        x, z, y = key
        factors = []
        # E_{x_1} ... E_{x_k} 1_z: the idempotent to the right of E_{x_m}
        mu = z
        plus_factors = []
        for letter in reversed(x):
            plus_factors.append(self._T_generator(i, "E", letter, mu))
            mu = self._shift(mu, (letter,))
        factors.extend(reversed(plus_factors))
        if not x and not y:
            factors.append(self.idem(self.cartan.reflect(i, z)))
        kappa = z
        for letter in y:
            kappa = self._shift(kappa, (letter,))
            factors.append(self._T_generator(i, "F", letter, kappa))
        out = self.prod(factors)
        self._T_mono[ck] = out
        return out

    def lusztig_T(self, i: int, u: UdotElement) -> UdotElement:
        out: dict = {}
        for key, c in u.terms.items():
            for k2, c2 in self._T_monomial(i, key).terms.items():
                _add_into(out, k2, c * c2)
        return UdotElement(self, out)

    def braid_check(self, i: int, j: int, gen: str | UdotElement, zeta=None) -> dict:
        m = self.cartan.braid_order(i, j)
        if m == float("inf"):
            return {"applicable": False, "equal": None, "m": "inf"}
        x = self.generator(gen, zeta) if isinstance(gen, str) else gen
        lhs = x
        rhs = x
        # alternating words i j i ... and j i j ..., applied right to left
        word_l = [i if k % 2 == 0 else j for k in range(m)]
        word_r = [j if k % 2 == 0 else i for k in range(m)]
        for k in reversed(word_l):
            lhs = self.lusztig_T(k, lhs)
        for k in reversed(word_r):
            rhs = self.lusztig_T(k, rhs)
        return {"applicable": True, "m": m, "equal": lhs == rhs, "lhs": lhs, "rhs": rhs}
