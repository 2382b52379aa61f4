"""Transport between f (specialised at v = sqrt(q)) and the Hall algebra.

The map sends theta_i to u_i and a word to the ordered twisted product of
simple symbols.  For a Dynkin quiver it is a bijection in every degree, so
each normalised symbol <M> has a unique expression in the normal-form
basis of f.  This gives an independent route from the modified quantum
group U-dot to H-dot: straighten in U-dot, then transport both halves.
"""
from __future__ import annotations

from .coeffring import QuadraticScalar, specialize
from .fquot import FAlgebra
from .hallalg import HallAlgebra
from .hdot import HdotAlgebra, HdotElement, _acc
from .udot import UdotAlgebra, UdotElement

__all__ = ["CompositionBridge", "solve"]


def solve(matrix: list, rhs: list, q: int) -> list:
    """Solve a square system over Q(sqrt q); raises if singular."""
    n = len(matrix)
    m = [list(row) + [b] for row, b in zip(matrix, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular transport matrix")
        m[col], m[piv] = m[piv], m[col]
        inv = m[col][col].inverse()
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


class CompositionBridge:
    def __init__(self, hdot: HdotAlgebra, weight_cap: int = 12):
        self.hdot = hdot
        self.H: HallAlgebra = hdot.H
        self.cat = hdot.cat
        self.q = hdot.q
        self.udot = UdotAlgebra(hdot.cartan, weight_cap)
        self.f: FAlgebra = self.udot.f
        self._word_img: dict = {}
        self._inverse: dict = {}

    def word_image(self, word) -> dict:
        """Angle coefficients of u_{w1} * ... * u_{wk}."""
        word = tuple(word)
        out = self._word_img.get(word)
        if out is None:
            x = self.H.prod(self.H.simple(i) for i in word)
            out = x.angle_coeffs()
            self._word_img[word] = out
        return out

    def f_to_hall(self, x: dict) -> dict:
        out: dict = {}
        for w, c in x.items():
            c = specialize(c, self.q)
            for k, d in self.word_image(w).items():
                _acc(out, k, c * d)
        return out

    def class_in_f(self, lam) -> dict:
        """``<lam>`` written in the normal-form basis of f, coefficients in Q(sqrt q)."""
        out = self._inverse.get(lam)
        if out is not None:
            return out
        nu = lam.dimvec
        basis = self.f.basis(nu)
        classes = self.cat.classes(nu)
        if len(basis) != len(classes):
            raise ValueError(f"degree {nu}: {len(basis)} words but {len(classes)} classes")
        zero = QuadraticScalar(self.q, 0)
        cols = [self.word_image(w) for w in basis]
        matrix = [[col.get(k, zero) for col in cols] for k in classes]
        for k in classes:
            rhs = [QuadraticScalar(self.q, 1 if k2 == k else 0) for k2 in classes]
            sol = solve(matrix, rhs, self.q)
            self._inverse[k] = {w: c for w, c in zip(basis, sol) if c}
        return self._inverse[lam]

    # U-dot -> H-dot -----------------------------------------------------------
    def udot_to_hdot(self, u: UdotElement) -> HdotElement:
        acc: dict = {}
        for (x, z, y), c in u.terms.items():
            c = specialize(c, self.q)
            px = self.word_image(x)
            py = self.word_image(y)
            for a, ca in px.items():
                for b, cb in py.items():
                    _acc(acc, (a, z, b), c * ca * cb)
        return HdotElement(self.hdot, acc)

    def straighten(self, lam_minus, kappa, lam_plus) -> HdotElement:
        """``<lam_minus>^- 1_kappa <lam_plus>^+`` computed in U-dot and transported."""
        kappa = self.hdot.weight(kappa)
        ym = self.class_in_f(lam_minus)
        xp = self.class_in_f(lam_plus)
        inner = self.hdot.shift(kappa, lam_plus.dimvec, -1)
        out = self.hdot.zero()
        for y, cy in ym.items():
            fy = self.udot.minus({y: 1}, kappa)
            for x, cx in xp.items():
                fx = self.udot.plus({x: 1}, inner)
                out = out + self.udot_to_hdot(fy * fx) * (cy * cx)
        return out
