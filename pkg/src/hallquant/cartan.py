"""Cartan data: weights, simple roots as value tuples, reflections, braid orders."""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

__all__ = ["CartanDatum", "PRESETS", "preset"]

INFINITY = math.inf


def _rank(rows) -> int:
    m = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][c]:
                f = m[r][c] / m[rank][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


class CartanDatum:
    """A symmetrizable generalized Cartan matrix with a realisation.

    Weights are integer tuples giving their values on the coweight basis
    ``h_1..h_n, d_1..d_{n-r}``.  Vertex indices are 0-based.
    """

    def __init__(self, matrix: Sequence[Sequence[int]], eps: Sequence[int],
                 d_values: Sequence[Sequence[int]] | None = None, name: str = ""):
        a = tuple(tuple(int(x) for x in row) for row in matrix)
        n = len(a)
        if any(len(row) != n for row in a):
            raise ValueError("Cartan matrix must be square")
        eps = tuple(int(e) for e in eps)
        if len(eps) != n or any(e <= 0 for e in eps):
            raise ValueError("symmetrizers must be positive, one per vertex")
        for i in range(n):
            if a[i][i] != 2:
                raise ValueError(f"a_{i + 1}{i + 1} must be 2")
            for j in range(n):
                if i == j:
                    continue
                if a[i][j] > 0:
                    raise ValueError("off-diagonal entries must be nonpositive")
                if (a[i][j] == 0) != (a[j][i] == 0):
                    raise ValueError("a_ij = 0 must imply a_ji = 0")
                if eps[i] * a[i][j] != eps[j] * a[j][i]:
                    raise ValueError("matrix is not symmetrized by the given eps")
        self.n = n
        self.matrix = a
        self.eps = eps
        self.name = name
        self.corank = n - _rank(a)
        # alpha_j(d_s) for s < corank; default 0, completed to keep roots independent
        if d_values is None:
            d_values = self._default_d_values()
        d_values = tuple(tuple(int(x) for x in row) for row in d_values)
        if len(d_values) != self.corank or any(len(r) != n for r in d_values):
            raise ValueError("need one row of alpha_j(d_s) values per corank direction")
        if any(x not in (0, 1) for r in d_values for x in r):
            raise ValueError("alpha_j(d_s) must be 0 or 1")
        self.d_values = d_values
        self.dim = n + self.corank
        self.simple_roots = tuple(
            tuple(a[i][j] for i in range(n)) + tuple(d_values[s][j] for s in range(self.corank))
            for j in range(n)
        )
        if _rank(self.simple_roots) != n:
            raise ValueError("simple roots are not linearly independent")

    def _default_d_values(self):
        # greedily pick unit vectors so that the extended root matrix has rank n
        rows = [list(r) for r in self.matrix]
        chosen = []
        for j in range(self.n):
            if len(chosen) == self.corank:
                break
            cand = [1 if k == j else 0 for k in range(self.n)]
            if _rank(rows + chosen + [cand]) > _rank(rows + chosen):
                chosen.append(cand)
        return chosen

    # weights --------------------------------------------------------------
    def zero(self) -> tuple:
        return (0,) * self.dim

    def weight(self, values: Sequence[int]) -> tuple:
        values = tuple(int(x) for x in values)
        if len(values) == self.n and self.corank:
            values = values + (0,) * self.corank
        if len(values) != self.dim:
            raise ValueError(f"weight needs {self.dim} values")
        return values

    def root(self, nu: Sequence[int]) -> tuple:
        """The weight sum_j nu_j alpha_j."""
        out = [0] * self.dim
        for j, c in enumerate(nu):
            if c:
                for k, x in enumerate(self.simple_roots[j]):
                    out[k] += c * x
        return tuple(out)

    def add(self, lam: tuple, nu: Sequence[int], sign: int = 1) -> tuple:
        """``lam + sign * sum_j nu_j alpha_j``."""
        if not any(nu):
            return lam
        r = self.root(nu)
        return tuple(x + sign * y for x, y in zip(lam, r))

    def pair(self, lam: tuple, i: int) -> int:
        """lam(h_i)."""
        return lam[i]

    def reflect(self, i: int, lam: tuple) -> tuple:
        c = lam[i]
        if not c:
            return tuple(lam)
        a = self.simple_roots[i]
        return tuple(x - c * y for x, y in zip(lam, a))

    def reflect_root(self, i: int, nu: Sequence[int]) -> tuple:
        """s_i on root coordinates: nu - <nu, alpha_i^vee> alpha_i."""
        c = sum(self.matrix[i][j] * nu[j] for j in range(self.n))
        out = list(nu)
        out[i] -= c
        return tuple(out)

    # coweights ---------------------------------------------------------------
    def evaluate(self, lam: tuple, mu: Sequence[int]) -> int:
        """lam(mu) for a coweight mu given by coordinates on h_1..h_n, d_1..d_{n-r}."""
        return sum(x * y for x, y in zip(lam, mu))

    def coweight_reflect(self, i: int, mu: Sequence[int]) -> tuple:
        """s_i(mu) = mu - alpha_i(mu) h_i."""
        c = self.evaluate(self.simple_roots[i], mu)
        out = list(mu)
        out[i] -= c
        return tuple(out)

    def tilde_coweight(self, nu: Sequence[int]) -> tuple:
        """The coweight sum_i eps_i nu_i h_i."""
        return tuple(self.eps[k] * nu[k] for k in range(self.n)) + (0,) * self.corank

    def weight_form(self, lam: tuple, i: int) -> int:
        """(lam, alpha_i) = eps_i lam(h_i)."""
        return self.eps[i] * lam[i]

    def weight_form_root(self, lam: tuple, nu: Sequence[int]) -> int:
        """(lam, sum nu_i alpha_i)."""
        return sum(self.eps[i] * lam[i] * c for i, c in enumerate(nu) if c)

    def symform(self, x: Sequence[int], y: Sequence[int]) -> int:
        """Symmetric form on root coordinates, (alpha_i, alpha_j) = eps_i a_ij."""
        total = 0
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    if yj:
                        total += xi * yj * self.eps[i] * self.matrix[i][j]
        return total

    def braid_order(self, i: int, j: int):
        if i == j:
            raise ValueError("braid order needs distinct indices")
        d = self.matrix[i][j] * self.matrix[j][i]
        return {0: 2, 1: 3, 2: 4, 3: 6}.get(d, INFINITY)

    def is_simply_laced(self) -> bool:
        return all(e == 1 for e in self.eps) and all(
            self.matrix[i][j] in (0, -1) for i in range(self.n) for j in range(self.n) if i != j
        )

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "matrix": [list(r) for r in self.matrix],
            "eps": list(self.eps),
            "d_values": [list(r) for r in self.d_values],
        }

    def __eq__(self, other):
        return isinstance(other, CartanDatum) and (
            self.matrix, self.eps, self.d_values) == (other.matrix, other.eps, other.d_values)

    def __hash__(self):
        return hash((self.matrix, self.eps, self.d_values))

    def __repr__(self):
        return f"CartanDatum({self.name or list(map(list, self.matrix))})"


PRESETS = {
    "A1xA1": ([[2, 0], [0, 2]], [1, 1]),
    "A2": ([[2, -1], [-1, 2]], [1, 1]),
    "B2": ([[2, -2], [-1, 2]], [1, 2]),
    "G2": ([[2, -3], [-1, 2]], [1, 3]),
    "A3": ([[2, -1, 0], [-1, 2, -1], [0, -1, 2]], [1, 1, 1]),
}


def preset(name: str) -> CartanDatum:
    key = name.replace("×", "x").replace("*", "x")
    if key not in PRESETS:
        raise KeyError(f"unknown Cartan preset {name!r}")
    m, e = PRESETS[key]
    return CartanDatum(m, e, name=key)
