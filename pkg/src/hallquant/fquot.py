"""Lusztig's algebra f: the free algebra on theta_i modulo the quantum Serre ideal.

Normal forms are computed weight by weight.  The ideal component I_nu is
spanned by the Serre generators of weight nu together with theta_i I_{nu-i}
and I_{nu-i} theta_i, so each component is obtained from the smaller ones.
Rows are kept in reduced echelon form with the lexicographically largest
word of each row as its pivot; a pivot word rewrites to minus the rest of
its row.  Words are tuples of 0-based vertex indices.
"""
from __future__ import annotations

from itertools import permutations
from typing import Mapping

from .cartan import CartanDatum
from .coeffring import RONE, RZERO, RationalFn, as_rational_fn, qbinom, qfact

__all__ = ["FAlgebra", "WeightCapExceeded", "format_word", "parse_word"]


class WeightCapExceeded(ValueError):
    pass


def format_word(word) -> str:
    return " ".join(f"t{i + 1}" for i in word) if word else "1"


def parse_word(text: str) -> tuple:
    text = text.strip()
    if text in ("", "1"):
        return ()
    out = []
    for tok in text.replace(",", " ").split():
        tok = tok.lstrip("tθE F").lstrip("_") or tok
        out.append(int(tok) - 1)
    return tuple(out)


def _add_into(acc: dict, key, c):
    if key in acc:
        s = acc[key] + c
        if s:
            acc[key] = s
        else:
            del acc[key]
    elif c:
        acc[key] = c


class _WeightTable:
    __slots__ = ("rows", "basis", "rewrite")

    def __init__(self, rows, basis, rewrite):
        self.rows = rows          # pivot word -> reduced row (dict word -> coeff, pivot coeff 1)
        self.basis = basis        # sorted tuple of non-pivot words
        self.rewrite = rewrite    # pivot word -> dict of basis words


class FAlgebra:
    def __init__(self, cartan: CartanDatum, weight_cap: int = 12):
        self.cartan = cartan
        self.n = cartan.n
        self.weight_cap = weight_cap
        self._tables: dict = {}
        self._serre: dict = {}

    def __repr__(self):
        return f"FAlgebra({self.cartan!r})"

    def weight(self, word) -> tuple:
        out = [0] * self.n
        for i in word:
            out[i] += 1
        return tuple(out)

    def words(self, nu) -> list:
        letters = [i for i, c in enumerate(nu) for _ in range(c)]
        return sorted(set(permutations(letters)))

    # Serre generators ------------------------------------------------------
    def serre(self, i: int, j: int) -> dict:
        """sum_k (-1)^k theta_i^(k) theta_j theta_i^(b-k), b = 1 - a_ij, as a free element."""
        key = (i, j)
        out = self._serre.get(key)
        if out is None:
            b = 1 - self.cartan.matrix[i][j]
            e = self.cartan.eps[i]
            out = {}
            for k in range(b + 1):
                c = RationalFn(RONE.num.scale((-1) ** k), qfact(k, e) * qfact(b - k, e))
                _add_into(out, (i,) * k + (j,) + (i,) * (b - k), c)
            self._serre[key] = out
        return out

    def serre_scaled(self, i: int, j: int) -> dict:
        """The Serre generator multiplied by [b]_i!, with Laurent polynomial coefficients."""
        b = 1 - self.cartan.matrix[i][j]
        e = self.cartan.eps[i]
        return {
            (i,) * k + (j,) + (i,) * (b - k): as_rational_fn(qbinom(b, k, e).scale((-1) ** k))
            for k in range(b + 1)
        }

    # per-weight tables -----------------------------------------------------
    def _table(self, nu) -> _WeightTable:
        nu = tuple(nu)
        tab = self._tables.get(nu)
        if tab is not None:
            return tab
        if sum(nu) > self.weight_cap:
            raise WeightCapExceeded(f"weight {nu} exceeds the cap {self.weight_cap}")
        if any(c < 0 for c in nu):
            raise ValueError("negative weight")
        spanning = []
        for i in range(self.n):
            for j in range(self.n):
                if i == j:
                    continue
                b = 1 - self.cartan.matrix[i][j]
                w = tuple(b if k == i else (1 if k == j else 0) for k in range(self.n))
                if w == nu:
                    spanning.append(self.serre_scaled(i, j))
        for i in range(self.n):
            if nu[i] == 0:
                continue
            smaller = tuple(c - (1 if k == i else 0) for k, c in enumerate(nu))
            if sum(smaller) == 0:
                continue
            sub = self._table(smaller)
            for row in sub.rows.values():
                spanning.append({(i,) + w: c for w, c in row.items()})
                spanning.append({w + (i,): c for w, c in row.items()})
        rows: dict = {}
        for vec in spanning:
            vec = dict(vec)
            # reduce against existing rows, largest words first
            while vec:
                lead = max(vec)
                r = rows.get(lead)
                if r is None:
                    break
                c = vec[lead]
                for w, x in r.items():
                    _add_into(vec, w, -(c * x))
            if not vec:
                continue
            lead = max(vec)
            inv = vec[lead].inverse()
            new = {w: x * inv for w, x in vec.items()}
            new[lead] = RONE
            # eliminate the new pivot from the existing rows
            for p, r in rows.items():
                c = r.get(lead)
                if c:
                    for w, x in new.items():
                        _add_into(r, w, -(c * x))
            rows[lead] = new
        # finish the back substitution so non-pivot entries only mention basis words
        changed = True
        while changed:
            changed = False
            for p, r in rows.items():
                for w in list(r):
                    if w != p and w in rows and w in r:
                        c = r[w]
                        for w2, x in rows[w].items():
                            _add_into(r, w2, -(c * x))
                        changed = True
        basis = tuple(w for w in self.words(nu) if w not in rows)
        rewrite = {p: {w: -x for w, x in r.items() if w != p} for p, r in rows.items()}
        tab = _WeightTable(rows, basis, rewrite)
        self._tables[nu] = tab
        return tab

    def basis(self, nu) -> tuple:
        return self._table(nu).basis

    def dim(self, nu) -> int:
        return len(self._table(nu).basis)

    # elements ----------------------------------------------------------------
    def normal_form(self, x: Mapping) -> dict:
        """Canonical representative of a free-algebra element modulo the Serre ideal."""
        out: dict = {}
        for w, c in x.items():
            c = as_rational_fn(c)
            if not c:
                continue
            w = tuple(w)
            if len(w) < 2:
                _add_into(out, w, c)
                continue
            tab = self._table(self.weight(w))
            rw = tab.rewrite.get(w)
            if rw is None:
                _add_into(out, w, c)
            else:
                for u, d in rw.items():
                    _add_into(out, u, c * d)
        return out

    def mul(self, x: Mapping, y: Mapping) -> dict:
        prod: dict = {}
        for w1, c1 in x.items():
            for w2, c2 in y.items():
                _add_into(prod, tuple(w1) + tuple(w2), as_rational_fn(c1) * as_rational_fn(c2))
        return self.normal_form(prod)

    def word(self, word) -> dict:
        return self.normal_form({tuple(word): RONE})

    def divided_power(self, i: int, t: int) -> dict:
        return {(i,) * t: RationalFn(RONE.num, qfact(t, self.cartan.eps[i]))}

    def is_zero(self, x: Mapping) -> bool:
        return not self.normal_form(x)

    def to_json(self, x: Mapping) -> list:
        return [[format_word(w), str(c)] for w, c in sorted(x.items())]
