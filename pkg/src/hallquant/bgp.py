"""Bernstein-Gelfand-Ponomarev reflection functors on representations and classes."""
from __future__ import annotations

from dataclasses import dataclass

from . import linalg_fq as la
from .quiverrep import IsoClass, Representation, RepCategory, ValuedQuiver, category

__all__ = [
    "ReflectionResult",
    "reflect_plus",
    "reflect_minus",
    "reflect_plus_class",
    "reflect_minus_class",
    "reflect_split",
    "no_simple_summand",
    "reflected_category",
]


@dataclass(frozen=True)
class ReflectionResult:
    image: Representation
    source: ValuedQuiver
    target: ValuedQuiver


def reflect_plus(i: int, V: Representation) -> ReflectionResult:
    """sigma_i^+ at a sink i: the new space at i is the kernel of the summed incoming maps."""
    Q = V.quiver
    if not Q.is_sink(i):
        raise ValueError(f"vertex {i + 1} is not a sink")
    q = V.q
    ins = [(k, s) for k, (s, t, _) in enumerate(Q.arrows) if t == i]
    total = sum(V.dims[s] for _, s in ins)
    # stacked map (+)_j V_j -> V_i, a d_i x total matrix
    big = []
    for r in range(V.dims[i]):
        row = []
        for k, s in ins:
            row.extend(V.maps[k][r])
        big.append(tuple(row))
    kernel = la.nullspace(big, total, q) if V.dims[i] else [
        tuple(1 if c == x else 0 for c in range(total)) for x in range(total)]
    w = len(kernel)
    target = Q.reoriented(i)
    dims = list(V.dims)
    dims[i] = w
    maps = list(V.maps)
    off = 0
    for k, s in ins:
        ds = V.dims[s]
        # new arrow i -> s: kernel inclusion followed by projection to V_s
        maps[k] = [tuple(kernel[c][off + r] for c in range(w)) for r in range(ds)]
        off += ds
    return ReflectionResult(Representation(target, q, dims, maps), Q, target)


def reflect_minus(i: int, V: Representation) -> ReflectionResult:
    """sigma_i^- at a source i: the new space at i is the cokernel of the summed outgoing maps."""
    Q = V.quiver
    if not Q.is_source(i):
        raise ValueError(f"vertex {i + 1} is not a source")
    q = V.q
    outs = [(k, t) for k, (s, t, _) in enumerate(Q.arrows) if s == i]
    total = sum(V.dims[t] for _, t in outs)
    # image of V_i in (+)_j V_j, spanned by the columns of the stacked matrix
    gens = []
    for c in range(V.dims[i]):
        vec = []
        for k, t in outs:
            vec.extend(V.maps[k][r][c] for r in range(V.dims[t]))
        gens.append(tuple(vec))
    if gens and total:
        basis, pivots = la.rref(gens, total, q)
    else:
        basis, pivots = [], []
    free = [c for c in range(total) if c not in pivots]
    w = len(free)
    target = Q.reoriented(i)
    dims = list(V.dims)
    dims[i] = w
    maps = list(V.maps)
    off = 0
    for k, t in outs:
        dt = V.dims[t]
        cols = []
        for r in range(dt):
            e = [0] * total
            e[off + r] = 1
            _, res = la.reduce_mod(basis, pivots, e, q)
            cols.append(tuple(res[f] for f in free))
        # new arrow t -> i, a w x dt matrix
        maps[k] = [tuple(cols[c][r] for c in range(dt)) for r in range(w)]
        off += dt
    return ReflectionResult(Representation(target, q, dims, maps), Q, target)


def reflected_category(cat: RepCategory, i: int) -> RepCategory:
    return category(cat.quiver.reoriented(i), cat.q, cat.cap)


def reflect_plus_class(cat: RepCategory, i: int, lam: IsoClass) -> IsoClass:
    """Image class of sigma_i^+ (kills S_i summands)."""
    img = reflect_plus(i, lam.rep).image
    return reflected_category(cat, i).class_of(img)


def reflect_minus_class(cat: RepCategory, i: int, lam: IsoClass) -> IsoClass:
    img = reflect_minus(i, lam.rep).image
    return reflected_category(cat, i).class_of(img)


def reflect_split(cat: RepCategory, i: int, lam: IsoClass, plus: bool = True):
    """Split lam = lam0 + t S_i and reflect lam0; returns ``(t, lam0, image of lam0)``."""
    t, lam0 = cat.split_simple(i, lam)
    img = reflect_plus_class(cat, i, lam0) if plus else reflect_minus_class(cat, i, lam0)
    return t, lam0, img


def no_simple_summand(cat: RepCategory, i: int, lam: IsoClass) -> bool:
    """True iff S_i is not a direct summand of lam.

    At a sink (source) this is joint surjectivity (injectivity) of the arrows at i;
    elsewhere the Krull-Schmidt splitting test is used.
    """
    Q = cat.quiver
    rep = lam.rep
    q = cat.q
    if Q.is_sink(i):
        rows = []
        for r in range(rep.dims[i]):
            row = []
            for k, (s, t, _) in enumerate(Q.arrows):
                if t == i:
                    row.extend(rep.maps[k][r])
            rows.append(tuple(row))
        ncols = sum(rep.dims[s] for s, t, _ in Q.arrows if t == i)
        return la.rank(rows, ncols, q) == rep.dims[i]
    if Q.is_source(i):
        gens = []
        for c in range(rep.dims[i]):
            vec = []
            for k, (s, t, _) in enumerate(Q.arrows):
                if s == i:
                    vec.extend(rep.maps[k][r][c] for r in range(rep.dims[t]))
            gens.append(tuple(vec))
        ncols = sum(rep.dims[t] for s, t, _ in Q.arrows if s == i)
        return la.rank(gens, ncols, q) == rep.dims[i]
    return not cat.has_simple_summand(i, lam)
