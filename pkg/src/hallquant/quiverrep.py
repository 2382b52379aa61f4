"""Valued quivers, representations over F_q and their isomorphism classes.

Classification is by brute force: every tuple of arrow matrices of a given
dimension vector is enumerated and the orbits of prod_i GL(d_i, F_q) are
found by breadth-first search over elementary generators.  Each state is
mapped to its class, so isomorphism testing of any representation is a
dictionary lookup.
"""
from __future__ import annotations

from collections import deque
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

from . import linalg_fq as la
from .cartan import CartanDatum

__all__ = [
    "ValuedQuiver",
    "Representation",
    "IsoClass",
    "RepCategory",
    "CapExceeded",
    "category",
    "default_cap",
]


class CapExceeded(ValueError):
    pass


def default_cap(q: int) -> int:
    return 6 if q == 2 else 4


class ValuedQuiver:
    """Vertices ``0..n-1``, arrows ``(src, dst, d_src_dst)``, symmetrizers ``eps``."""

    def __init__(self, n: int, arrows: Iterable[Sequence[int]], eps: Sequence[int] | None = None,
                 name: str = ""):
        self.n = int(n)
        self.eps = tuple(int(e) for e in eps) if eps is not None else (1,) * self.n
        if len(self.eps) != self.n or any(e <= 0 for e in self.eps):
            raise ValueError("need a positive symmetrizer per vertex")
        arr = []
        for a in arrows:
            s, t = int(a[0]), int(a[1])
            d = int(a[2]) if len(a) > 2 else 1
            if not (0 <= s < self.n and 0 <= t < self.n):
                raise ValueError(f"arrow {s}->{t} has an unknown vertex")
            if s == t:
                raise ValueError("loops are not allowed")
            if d <= 0:
                raise ValueError("edge values must be positive")
            if (d * self.eps[t]) % self.eps[s]:
                raise ValueError(f"no integer d_ji with d_ij eps_j = d_ji eps_i on edge {s}->{t}")
            arr.append((s, t, d))
        self.arrows = tuple(arr)
        self.name = name
        pairs = [frozenset((s, t)) for s, t, _ in self.arrows]
        if len(set(pairs)) != len(pairs):
            raise ValueError("at most one edge per pair of vertices")
        # underlying graph must be a tree (connected, no cycles)
        if self.n and len(pairs) != self.n - 1:
            raise ValueError("quiver must be connected without cycles")
        seen = {0} if self.n else set()
        stack = [0] if self.n else []
        while stack:
            v = stack.pop()
            for s, t, _ in self.arrows:
                for a, b in ((s, t), (t, s)):
                    if a == v and b not in seen:
                        seen.add(b)
                        stack.append(b)
        if len(seen) != self.n:
            raise ValueError("quiver must be connected without cycles")

    @property
    def key(self):
        return (self.n, self.arrows, self.eps)

    def __eq__(self, other):
        return isinstance(other, ValuedQuiver) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        arrows = ", ".join(f"{s + 1}->{t + 1}" for s, t, _ in self.arrows)
        return f"ValuedQuiver({arrows})"

    def simply_laced(self) -> bool:
        return all(e == 1 for e in self.eps) and all(d == 1 for _, _, d in self.arrows)

    def euler(self, a: Sequence[int], b: Sequence[int]) -> int:
        total = sum(e * x * y for e, x, y in zip(self.eps, a, b))
        for s, t, d in self.arrows:
            total -= d * self.eps[t] * a[s] * b[t]
        return total

    def symform(self, a, b) -> int:
        return self.euler(a, b) + self.euler(b, a)

    def cartan(self) -> CartanDatum:
        n = self.n
        unit = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
        m = [[self.symform(unit[i], unit[j]) // self.eps[i] for j in range(n)] for i in range(n)]
        return CartanDatum(m, self.eps, name=self.name)

    def is_sink(self, i: int) -> bool:
        return all(s != i for s, _, _ in self.arrows)

    def is_source(self, i: int) -> bool:
        return all(t != i for _, t, _ in self.arrows)

    def reoriented(self, i: int) -> "ValuedQuiver":
        """Reverse every arrow incident to ``i``."""
        arr = []
        for s, t, d in self.arrows:
            if i in (s, t):
                arr.append((t, s, d * self.eps[t] // self.eps[s]))
            else:
                arr.append((s, t, d))
        return ValuedQuiver(self.n, arr, self.eps, self.name)

    def to_json(self) -> dict:
        return {
            "vertices": self.n,
            "edges": [[s + 1, t + 1, d] for s, t, d in self.arrows],
            "eps": list(self.eps),
        }


class Representation:
    """Matrices over F_q, one per arrow; the arrow ``i -> j`` has a ``d_j x d_i`` matrix."""

    __slots__ = ("quiver", "q", "dims", "maps")

    def __init__(self, quiver: ValuedQuiver, q: int, dims: Sequence[int], maps: Sequence):
        self.quiver = quiver
        self.q = q
        self.dims = tuple(int(d) for d in dims)
        mm = []
        for (s, t, _), m in zip(quiver.arrows, maps):
            m = tuple(tuple(int(x) % q for x in row) for row in m)
            if len(m) != self.dims[t] or any(len(r) != self.dims[s] for r in m):
                raise ValueError(f"arrow {s + 1}->{t + 1} matrix has the wrong shape")
            mm.append(m)
        if len(mm) != len(quiver.arrows):
            raise ValueError("need one matrix per arrow")
        self.maps = tuple(mm)

    @classmethod
    def from_flat(cls, quiver, q, dims, flat):
        maps = []
        k = 0
        for s, t, _ in quiver.arrows:
            rows = []
            for _r in range(dims[t]):
                rows.append(tuple(flat[k:k + dims[s]]))
                k += dims[s]
            maps.append(tuple(rows))
        obj = cls.__new__(cls)
        obj.quiver = quiver
        obj.q = q
        obj.dims = tuple(dims)
        obj.maps = tuple(maps)
        return obj

    def flat(self) -> tuple:
        return tuple(x for m in self.maps for row in m for x in row)

    def total_dim(self) -> int:
        return sum(self.dims)

    def direct_sum(self, other: "Representation") -> "Representation":
        if self.quiver != other.quiver or self.q != other.q:
            raise ValueError("direct sum across different quivers or fields")
        dims = tuple(a + b for a, b in zip(self.dims, other.dims))
        maps = []
        for (s, t, _), m1, m2 in zip(self.quiver.arrows, self.maps, other.maps):
            rows = [tuple(r) + (0,) * other.dims[s] for r in m1]
            rows += [(0,) * self.dims[s] + tuple(r) for r in m2]
            maps.append(rows)
        return Representation(self.quiver, self.q, dims, maps)

    def __repr__(self):
        return f"Representation(dims={self.dims}, maps={self.maps})"


class IsoClass:
    """An isomorphism class with its canonical (lexicographically least) representative."""

    __slots__ = ("category", "dimvec", "index", "aut", "rep", "endo_dim", "orbit_size")

    def __init__(self, category, dimvec, index, aut, rep, endo_dim, orbit_size):
        self.category = category
        self.dimvec = dimvec
        self.index = index
        self.aut = aut
        self.rep = rep
        self.endo_dim = endo_dim
        self.orbit_size = orbit_size

    @property
    def id(self) -> str:
        return ",".join(map(str, self.dimvec)) + f":{self.index}"

    @property
    def total_dim(self) -> int:
        return sum(self.dimvec)

    def sort_key(self):
        return (sum(self.dimvec), self.dimvec, self.index)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __eq__(self, other):
        return (isinstance(other, IsoClass) and self.category is other.category
                and self.dimvec == other.dimvec and self.index == other.index)

    def __hash__(self):
        return hash((self.dimvec, self.index))

    def __repr__(self):
        return f"<{self.id}>"

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "dimvec": list(self.dimvec),
            "aut": self.aut,
            "endo_dim": self.endo_dim,
            "maps": [[list(r) for r in m] for m in self.rep.maps],
        }


class _DimTable:
    __slots__ = ("classes", "state_class")

    def __init__(self, classes, state_class):
        self.classes = classes
        self.state_class = state_class


class RepCategory:
    """Representations of a simply-laced quiver over F_q up to a total-dimension cap."""

    def __init__(self, quiver: ValuedQuiver, q: int, cap: int | None = None):
        if not la.is_prime(q):
            raise ValueError(f"field size {q} is not prime")
        if not quiver.simply_laced():
            raise ValueError("the Hall engine only supports simply-laced quivers")
        self.quiver = quiver
        self.q = q
        self.cap = default_cap(q) if cap is None else int(cap)
        self.n = quiver.n
        self._tables: dict = {}
        self._hall: dict = {}
        self._sums: dict = {}
        self._split: dict = {}
        self._omega = la.primitive_root(q)

    def __repr__(self):
        return f"RepCategory({self.quiver!r}, q={self.q})"

    # classification -------------------------------------------------------
    def _check_cap(self, dimvec):
        if any(d < 0 for d in dimvec):
            raise ValueError("negative dimension")
        if sum(dimvec) > self.cap:
            raise CapExceeded(f"total dimension {sum(dimvec)} exceeds cap {self.cap}")

    def _generators(self, dims):
        """Elementary group generators as functions on flat states."""
        q = self.q
        layout = []
        k = 0
        for s, t, _ in self.quiver.arrows:
            layout.append((s, t, k, dims[s]))
            k += dims[t] * dims[s]
        gens = []
        om = self._omega
        om_inv = la.inv(om, q) if q > 2 else 1
        for v in range(self.n):
            d = dims[v]
            ins = [(off, ncols, dims[s]) for s, t, off, ncols in layout if t == v]
            outs = [(off, ncols, dims[t]) for s, t, off, ncols in layout if s == v]
            ops = []
            for r in range(d):
                for s_ in range(d):
                    if r != s_:
                        ops.append(("T", r, s_))
                if q > 2:
                    ops.append(("D", r, None))
            for kind, r, s_ in ops:
                def g(state, kind=kind, r=r, s_=s_, ins=ins, outs=outs):
                    x = list(state)
                    if kind == "T":
                        # g = I + e_{r s}: rows r += row s on incoming; col s -= col r on outgoing
                        for off, ncols, _ in ins:
                            for c in range(ncols):
                                x[off + r * ncols + c] = (x[off + r * ncols + c] + x[off + s_ * ncols + c]) % q
                        for off, ncols, nrows in outs:
                            for rr in range(nrows):
                                x[off + rr * ncols + s_] = (x[off + rr * ncols + s_] - x[off + rr * ncols + r]) % q
                    else:
                        for off, ncols, _ in ins:
                            for c in range(ncols):
                                x[off + r * ncols + c] = (x[off + r * ncols + c] * om) % q
                        for off, ncols, nrows in outs:
                            for rr in range(nrows):
                                x[off + rr * ncols + r] = (x[off + rr * ncols + r] * om_inv) % q
                    return tuple(x)
                gens.append(g)
        return gens, k

    def _table(self, dimvec) -> _DimTable:
        dimvec = tuple(dimvec)
        tab = self._tables.get(dimvec)
        if tab is not None:
            return tab
        self._check_cap(dimvec)
        gens, nentries = self._generators(dimvec)
        group_order = 1
        for d in dimvec:
            group_order *= la.gl_order(d, self.q)
        state_class: dict = {}
        orbits = []
        for state in product(range(self.q), repeat=nentries):
            if state in state_class:
                continue
            marker = len(orbits)
            orbit = [state]
            state_class[state] = marker
            queue = deque([state])
            while queue:
                s = queue.popleft()
                for g in gens:
                    t = g(s)
                    if t not in state_class:
                        state_class[t] = marker
                        orbit.append(t)
                        queue.append(t)
            orbits.append(orbit)
        # states are enumerated in increasing lexicographic order, so the first
        # state of each orbit is its minimum and orbit order is canonical
        classes = []
        for idx, orbit in enumerate(orbits):
            rep = Representation.from_flat(self.quiver, self.q, dimvec, orbit[0])
            size = len(orbit)
            if group_order % size:
                raise AssertionError("orbit size does not divide the group order")
            classes.append(IsoClass(self, dimvec, idx, group_order // size, rep,
                                    self.hom_dim(rep, rep), size))
        lookup = {s: classes[m] for s, m in state_class.items()}
        tab = _DimTable(tuple(classes), lookup)
        self._tables[dimvec] = tab
        return tab

    def classes(self, dimvec) -> tuple:
        return self._table(dimvec).classes

    def dimvecs(self, max_total: int | None = None):
        cap = self.cap if max_total is None else min(max_total, self.cap)
        out = []
        for total in range(cap + 1):
            for dv in product(range(total + 1), repeat=self.n):
                if sum(dv) == total:
                    out.append(dv)
        return out

    def classify(self, max_total: int | None = None) -> list:
        out = []
        for dv in self.dimvecs(max_total):
            out.extend(self.classes(dv))
        return out

    def class_of(self, rep: Representation) -> IsoClass:
        if rep.quiver != self.quiver or rep.q != self.q:
            raise ValueError("representation belongs to a different quiver or field")
        return self._table(rep.dims).state_class[rep.flat()]

    def by_id(self, cid: str) -> IsoClass:
        dv, idx = cid.split(":")
        dimvec = tuple(int(x) for x in dv.split(","))
        if len(dimvec) != self.n:
            raise ValueError(f"class id {cid!r} has the wrong number of vertices")
        return self.classes(dimvec)[int(idx)]

    def zero(self) -> IsoClass:
        return self.classes((0,) * self.n)[0]

    def unit(self, i: int, t: int = 1) -> tuple:
        return tuple(t if k == i else 0 for k in range(self.n))

    def simple(self, i: int, t: int = 1) -> IsoClass:
        """The semisimple class t S_i."""
        return self.classes(self.unit(i, t))[0]

    def group_order(self, dimvec) -> int:
        out = 1
        for d in dimvec:
            out *= la.gl_order(d, self.q)
        return out

    def state_count(self, dimvec) -> int:
        e = sum(dimvec[s] * dimvec[t] for s, t, _ in self.quiver.arrows)
        return self.q ** e

    # morphisms --------------------------------------------------------------
    def _intertwiner_matrix(self, V: Representation, W: Representation):
        """Matrix of f -> (psi_a f_i - f_j phi_a)_a; returns (rows, n_unknowns, n_targets)."""
        q = self.q
        off = []
        k = 0
        for i in range(self.n):
            off.append(k)
            k += W.dims[i] * V.dims[i]
        nunk = k
        rows = []
        for (s, t, _), phi, psi in zip(self.quiver.arrows, V.maps, W.maps):
            vs, wt = V.dims[s], W.dims[t]
            ws, vt = W.dims[s], V.dims[t]
            for r in range(wt):
                for c in range(vs):
                    row = [0] * nunk
                    # (psi f_s)[r][c] = sum_k psi[r][k] f_s[k][c]
                    for kk in range(ws):
                        if psi[r][kk]:
                            idx = off[s] + kk * vs + c
                            row[idx] = (row[idx] + psi[r][kk]) % q
                    # -(f_t phi)[r][c] = -sum_k f_t[r][k] phi[k][c]
                    for kk in range(vt):
                        if phi[kk][c]:
                            idx = off[t] + r * vt + kk
                            row[idx] = (row[idx] - phi[kk][c]) % q
                    rows.append(tuple(row))
        return rows, nunk, len(rows)

    def hom_dim(self, V: Representation, W: Representation) -> int:
        self._same(V, W)
        rows, nunk, _ = self._intertwiner_matrix(V, W)
        return nunk - la.rank(rows, nunk, self.q)

    def ext_dim(self, V: Representation, W: Representation) -> int:
        self._same(V, W)
        rows, nunk, ntarget = self._intertwiner_matrix(V, W)
        return ntarget - la.rank(rows, nunk, self.q)

    def _same(self, V, W):
        if V.quiver != self.quiver or W.quiver != self.quiver or V.q != self.q or W.q != self.q:
            raise ValueError("representations from a different quiver or field")

    def euler(self, a, b) -> int:
        return self.quiver.euler(a, b)

    # direct sums ------------------------------------------------------------
    def direct_sum(self, a: IsoClass, b: IsoClass) -> IsoClass:
        key = (a.dimvec, a.index, b.dimvec, b.index)
        out = self._sums.get(key)
        if out is None:
            out = self.class_of(a.rep.direct_sum(b.rep))
            self._sums[key] = out
        return out

    def split_simple(self, i: int, lam: IsoClass):
        """Return ``(t, lam0)`` with lam = lam0 + t S_i and lam0 free of S_i summands."""
        key = (i, lam.dimvec, lam.index)
        out = self._split.get(key)
        if out is not None:
            return out
        for t in range(lam.dimvec[i], 0, -1):
            rest = tuple(d - (t if k == i else 0) for k, d in enumerate(lam.dimvec))
            si = self.simple(i, t)
            for c in self.classes(rest):
                if self.direct_sum(c, si) == lam:
                    out = (t, c)
                    break
            if out is not None:
                break
        if out is None:
            out = (0, lam)
        self._split[key] = out
        return out

    def has_simple_summand(self, i: int, lam: IsoClass) -> bool:
        return self.split_simple(i, lam)[0] > 0

    # Hall numbers -----------------------------------------------------------
    def _submodules(self, L: Representation, ndim):
        """Yield (sub-representation, quotient representation) for invariant W of dimvec ndim."""
        q = self.q
        arrows = self.quiver.arrows
        mdim = tuple(l - k for l, k in zip(L.dims, ndim))
        choices = [list(la.rref_subspaces(L.dims[i], ndim[i], q)) for i in range(self.n)]
        pivs_cache = {}

        def pivots_of(basis):
            p = pivs_cache.get(basis)
            if p is None:
                p = tuple(next(c for c, x in enumerate(row) if x) for row in basis)
                pivs_cache[basis] = p
            return p

        for ws in product(*choices):
            pivs = [pivots_of(w) for w in ws]
            sub_maps = []
            ok = True
            for (s, t, _), phi in zip(arrows, L.maps):
                cols = []
                for b in ws[s]:
                    img = la.matvec(phi, b, q)
                    coords, res = la.reduce_mod(ws[t], pivs[t], img, q)
                    if any(res):
                        ok = False
                        break
                    cols.append(coords)
                if not ok:
                    break
                sub_maps.append(cols)
            if not ok:
                continue
            quot_maps = []
            for (s, t, _), phi in zip(arrows, L.maps):
                free_s = [c for c in range(L.dims[s]) if c not in pivs[s]]
                free_t = [c for c in range(L.dims[t]) if c not in pivs[t]]
                cols = []
                for c in free_s:
                    img = tuple(row[c] for row in phi)
                    _, res = la.reduce_mod(ws[t], pivs[t], img, q)
                    cols.append(tuple(res[x] for x in free_t))
                quot_maps.append(cols)
            sub = Representation(self.quiver, q, ndim, [
                la.transpose(cols, len(cols), ndim[t]) if cols else la.zeros(ndim[t], 0)
                for (s, t, _), cols in zip(arrows, sub_maps)])
            quo = Representation(self.quiver, q, mdim, [
                la.transpose(cols, len(cols), mdim[t]) if cols else la.zeros(mdim[t], 0)
                for (s, t, _), cols in zip(arrows, quot_maps)])
            yield sub, quo

    def hall_table(self, L: IsoClass, ndim) -> dict:
        """``{(M, N): g^L_{MN}}`` over all classes N of dimvec ``ndim``."""
        ndim = tuple(ndim)
        key = (L.dimvec, L.index, ndim)
        tab = self._hall.get(key)
        if tab is not None:
            return tab
        tab = {}
        if all(0 <= k <= l for k, l in zip(ndim, L.dimvec)):
            for sub, quo in self._submodules(L.rep, ndim):
                pair = (self.class_of(quo), self.class_of(sub))
                tab[pair] = tab.get(pair, 0) + 1
        self._hall[key] = tab
        return tab

    def hall_number(self, L: IsoClass, M: IsoClass, N: IsoClass) -> int:
        """Number of submodules W of L with W = N and L/W = M (up to isomorphism)."""
        if tuple(a + b for a, b in zip(M.dimvec, N.dimvec)) != L.dimvec:
            return 0
        return self.hall_table(L, N.dimvec).get((M, N), 0)

    def invariant_subspace_count(self, L: IsoClass, ndim) -> int:
        return sum(self.hall_table(L, ndim).values())

    def to_json(self, max_total: int | None = None) -> dict:
        return {
            "quiver": self.quiver.to_json(),
            "field": self.q,
            "classes": [c.to_json() for c in self.classify(max_total)],
        }


_CATEGORIES: dict = {}


def category(quiver: ValuedQuiver, q: int, cap: int | None = None) -> RepCategory:
    """Shared category instance per (quiver, field, cap)."""
    key = (quiver.key, q, default_cap(q) if cap is None else cap)
    cat = _CATEGORIES.get(key)
    if cat is None:
        cat = RepCategory(quiver, q, cap)
        _CATEGORIES[key] = cat
    return cat
