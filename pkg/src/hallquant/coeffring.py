"""Exact scalars: Laurent polynomials and rational functions in ``v`` over Q,
quantum integers, and the quadratic rings Q[v]/(v^2 - q).

All values are immutable.  Rational functions are kept reduced (polynomial
gcd over Q), which keeps coefficient growth in check during long
eliminations; equality is still decided by cross multiplication.
"""
from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from functools import lru_cache
from numbers import Rational

__all__ = [
    "LaurentPoly",
    "RationalFn",
    "QuadraticScalar",
    "qint",
    "qfact",
    "qbinom",
    "specialize",
    "parse_laurent",
    "parse_scalar",
    "as_rational_fn",
]


def _num(c):
    """Exact rational coefficient, kept as ``int`` whenever it is integral."""
    t = type(c)
    if t is int:
        return c
    if t is Fraction:
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, Rational):
        c = Fraction(c)
        return c.numerator if c.denominator == 1 else c
    raise TypeError(f"not an exact rational: {c!r}")


def _div(a, b):
    """Exact quotient of two rationals, integral results returned as ``int``."""
    if type(a) is int and type(b) is int:
        if a % b == 0:
            return a // b
        return Fraction(a, b)
    return _num(Fraction(a) / b)


def _frac(c) -> Fraction:
    return Fraction(c)


class LaurentPoly:
    """Finite sum of rational multiples of powers ``v**e`` (``e`` any integer)."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for e, c in dict(terms).items():
                c = _num(c)
                if c:
                    clean[int(e)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        c = _num(c)
        return cls._raw({0: c} if c else {})

    @classmethod
    def monomial(cls, e: int, c=1) -> "LaurentPoly":
        c = _num(c)
        return cls._raw({int(e): c} if c else {})

    @property
    def terms(self) -> dict:
        return {e: Fraction(c) for e, c in self._terms.items()}

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def is_const(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and 0 in self._terms)

    def const_value(self) -> Fraction:
        return Fraction(self._terms.get(0, 0))

    def min_exp(self) -> int:
        return min(self._terms) if self._terms else 0

    def max_exp(self) -> int:
        return max(self._terms) if self._terms else 0

    def lead(self):
        return self._terms[max(self._terms)]

    def is_integral(self) -> bool:
        return all(type(c) is int for c in self._terms.values())

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        other = _lp(other)
        if other is NotImplemented:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s if type(s) is int or s.denominator != 1 else s.numerator
            else:
                out.pop(e, None)
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = _lp(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _lp(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _lp(other)
        if other is NotImplemented:
            return NotImplemented
        if not self._terms or not other._terms:
            return LaurentPoly._raw({})
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly._raw({e: (c if type(c) is int or c.denominator != 1 else c.numerator)
                                 for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._terms) == 1:
                (e, c), = self._terms.items()
                return LaurentPoly._raw({e * n: _num(Fraction(c) ** n)})
            raise ValueError("negative power of a non-monomial Laurent polynomial")
        result = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``v**k``."""
        if not k:
            return self
        return LaurentPoly._raw({e + k: c for e, c in self._terms.items()})

    def scale(self, c) -> "LaurentPoly":
        c = _num(c)
        if not c:
            return LaurentPoly._raw({})
        if c == 1:
            return self
        return LaurentPoly._raw({e: _num(x * c) for e, x in self._terms.items()})

    def bar(self) -> "LaurentPoly":
        """The involution ``v -> v**-1``."""
        return LaurentPoly._raw({-e: c for e, c in self._terms.items()})

    def at_one(self) -> Fraction:
        return Fraction(sum(self._terms.values(), 0))

    def __call__(self, x):
        total = 0
        for e, c in self._terms.items():
            total = total + c * (x ** e)
        return total

    def divexact(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient; raises ``ArithmeticError`` if ``other`` does not divide."""
        q, r = _poly_divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("inexact Laurent polynomial division")
        return q

    # comparison -----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == ({0: other} if other else {})
        if isinstance(other, RationalFn):
            return other == self
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        return format_laurent(self)


def _lp(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly.const(x)
    return NotImplemented


V = LaurentPoly.monomial(1)
ONE = LaurentPoly.const(1)
ZERO = LaurentPoly.const(0)


def format_laurent(p: LaurentPoly) -> str:
    """Sparse ``coeff*v^exp`` sum in decreasing exponent order; ``"0"`` for zero."""
    if p.is_zero():
        return "0"
    parts = []
    for e in sorted(p._terms, reverse=True):
        c = p._terms[e]
        parts.append(f"{c}*v^{e}")
    return " + ".join(parts).replace("+ -", "- ")


_TERM = re.compile(r"^([+-]?\d+(?:/\d+)?)\*v\^(-?\d+)$")


def parse_laurent(text: str) -> LaurentPoly:
    """Inverse of :func:`format_laurent`."""
    text = text.strip()
    if text == "0":
        return ZERO
    text = text.replace(" - ", " + -")
    terms = {}
    for chunk in text.split(" + "):
        m = _TERM.match(chunk.strip())
        if not m:
            raise ValueError(f"bad Laurent term {chunk!r}")
        e = int(m.group(2))
        terms[e] = terms.get(e, 0) + Fraction(m.group(1))
    return LaurentPoly(terms)


# --------------------------------------------------------------------------
# univariate polynomial helpers (dense lists, constant term first)

def _to_dense(p: LaurentPoly):
    lo = p.min_exp()
    hi = p.max_exp()
    out = [0] * (hi - lo + 1)
    for e, c in p._terms.items():
        out[e - lo] = c
    return lo, out


def _from_dense(lo: int, coeffs) -> LaurentPoly:
    return LaurentPoly._raw({lo + k: _num(c) for k, c in enumerate(coeffs) if c})


def _dense_divmod(a, b):
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    if len(a) - 1 < db:
        return [0], a
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if c:
            f = _div(c, lb)
            q[k - db] = f
            for j in range(db + 1):
                if b[j]:
                    a[k - db + j] -= f * b[j]
    r = a[:db] if db > 0 else [0]
    while len(r) > 1 and not r[-1]:
        r.pop()
    return q, r


def _poly_divmod(a: LaurentPoly, b: LaurentPoly):
    if b.is_zero():
        raise ZeroDivisionError("division by zero Laurent polynomial")
    if a.is_zero():
        return ZERO, ZERO
    if len(b._terms) == 1:
        (e, c), = b._terms.items()
        return LaurentPoly._raw({k - e: _div(x, c) for k, x in a._terms.items()}), ZERO
    la, da = _to_dense(a)
    lb, db = _to_dense(b)
    q, r = _dense_divmod(da, db)
    return _from_dense(la - lb, q), _from_dense(la, r)


def _strip(c):
    while len(c) > 1 and not c[-1]:
        c.pop()
    return c


def _primitive_int(c):
    """Scale a dense rational coefficient list to a primitive integer list with positive lead."""
    den = 1
    for x in c:
        if type(x) is not int and x.denominator != 1:
            den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in c] if den != 1 else [int(x) for x in c]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    if ints[-1] < 0:
        ints = [-x for x in ints]
    return ints


def _int_prem(a, b):
    """Pseudo-remainder of integer lists (constant term first)."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and any(a):
        k = len(a) - 1
        c = a[k]
        if c:
            shift = k - db
            if lb != 1:
                a = [x * lb for x in a]
            for j in range(db + 1):
                a[shift + j] -= c * b[j]
        a.pop()
        while len(a) > 1 and not a[-1]:
            a.pop()
    return a


def _dense_gcd(a, b):
    """Primitive integer gcd via the primitive polynomial remainder sequence over Z."""
    a = _primitive_int(_strip(list(a)))
    b = _primitive_int(_strip(list(b)))
    if len(a) < len(b):
        a, b = b, a
    while True:
        if len(b) == 1:
            return [1] if b[0] else a
        r = _int_prem(a, b)
        while len(r) > 1 and not r[-1]:
            r.pop()
        if not any(r):
            return b
        a, b = b, _primitive_int(r)


def _poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Primitive integer gcd of the polynomial parts (min exponent 0, positive lead)."""
    if len(a._terms) == 1 or len(b._terms) == 1:
        return ONE
    _, da = _to_dense(a)
    _, db = _to_dense(b)
    return _from_dense(0, _dense_gcd(da, db))


# --------------------------------------------------------------------------

class RationalFn:
    """Element of Q(v) stored as a reduced fraction of Laurent polynomials.

    The denominator is a primitive integer polynomial with nonzero constant
    term and positive leading coefficient.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, _reduced: bool = False):
        num = _lp(num) if not isinstance(num, LaurentPoly) else num
        if num is NotImplemented:
            raise TypeError("numerator must be a Laurent polynomial or rational")
        if den is None:
            den = ONE
            _reduced = True
        elif not isinstance(den, LaurentPoly):
            den = _lp(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not _reduced:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def _make(cls, num: LaurentPoly, den: LaurentPoly) -> "RationalFn":
        obj = cls.__new__(cls)
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_laurent(self) -> bool:
        return self.den == ONE

    def __add__(self, other):
        other = as_rational_fn(other)
        if other is NotImplemented:
            return NotImplemented
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self.den == other.den:
            if self.den == ONE:
                return RationalFn._make(self.num + other.num, ONE)
            return RationalFn(self.num + other.num, self.den)
        if self.den == ONE:
            return RationalFn(self.num * other.den + other.num, other.den)
        if other.den == ONE:
            return RationalFn(self.num + other.num * self.den, self.den)
        return RationalFn(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFn._make(-self.num, self.den)

    def __sub__(self, other):
        other = as_rational_fn(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = as_rational_fn(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = as_rational_fn(other)
        if other is NotImplemented:
            return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return RZERO
        if self.den == ONE and other.den == ONE:
            return RationalFn._make(self.num * other.num, ONE)
        return RationalFn(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFn":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RationalFn(self.den, self.num)

    def __truediv__(self, other):
        other = as_rational_fn(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = as_rational_fn(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RationalFn(self.num ** n, self.den ** n, _reduced=True)

    def shift(self, k: int) -> "RationalFn":
        return RationalFn._make(self.num.shift(k), self.den)

    def bar(self) -> "RationalFn":
        return RationalFn(self.num.bar(), self.den.bar())

    def __eq__(self, other):
        other = as_rational_fn(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return not self.num.is_zero()

    def __repr__(self):
        return f"RationalFn({self})"

    def __str__(self):
        if self.den == ONE:
            return format_laurent(self.num)
        return f"({format_laurent(self.num)})/({format_laurent(self.den)})"


def _reduce(num: LaurentPoly, den: LaurentPoly):
    if num.is_zero():
        return ZERO, ONE
    # move the monomial part of den into num
    lo = den.min_exp()
    if lo:
        den = den.shift(-lo)
        num = num.shift(-lo)
    if len(den._terms) == 1:
        return num.scale(_div(1, den._terms[0])), ONE
    nlo = num.min_exp()
    g = _poly_gcd(num.shift(-nlo), den)
    if len(g._terms) > 1:
        num = num.divexact(g)
        den = den.divexact(g)
    # make den a primitive integer polynomial with positive lead
    _, dd = _to_dense(den)
    prim = _primitive_int(dd)
    # den = factor * prim with factor rational
    factor = _div(dd[-1], prim[-1])
    den = _from_dense(0, prim)
    if factor != 1:
        num = num.scale(_div(1, factor))
    if len(den._terms) == 1:
        return num.scale(_div(1, den._terms[0])), ONE
    return num, den


def as_rational_fn(x):
    if isinstance(x, RationalFn):
        return x
    if isinstance(x, LaurentPoly):
        return RationalFn._make(x, ONE)
    if isinstance(x, (int, Fraction)):
        return RationalFn._make(LaurentPoly.const(x), ONE)
    return NotImplemented


RZERO = RationalFn._make(ZERO, ONE)
RONE = RationalFn._make(ONE, ONE)


def vpow(e: int) -> RationalFn:
    return RationalFn._make(LaurentPoly.monomial(e), ONE)


# --------------------------------------------------------------------------
# quantum combinatorics

@lru_cache(maxsize=None)
def qint(n: int, d: int = 1) -> LaurentPoly:
    """The quantum integer [n] in the variable v**d."""
    if d < 1:
        raise ValueError("d must be a positive integer")
    if n < 0:
        return -qint(-n, d)
    # v^{d(n-1)} + v^{d(n-3)} + ... + v^{-d(n-1)}
    return LaurentPoly({d * (n - 1 - 2 * k): 1 for k in range(n)})


@lru_cache(maxsize=None)
def qfact(n: int, d: int = 1) -> LaurentPoly:
    if n < 0:
        raise ValueError("quantum factorial of a negative integer")
    out = ONE
    for k in range(1, n + 1):
        out = out * qint(k, d)
    return out


@lru_cache(maxsize=None)
def qbinom(m: int, t: int, d: int = 1) -> LaurentPoly:
    """Generalised Gaussian binomial prod_{s=1..t} [m-s+1] / [t]!; m may be negative."""
    if t < 0:
        raise ValueError("lower index must be nonnegative")
    top = ONE
    for s in range(1, t + 1):
        top = top * qint(m - s + 1, d)
    return top.divexact(qfact(t, d))


# --------------------------------------------------------------------------

class QuadraticScalar:
    """``a + b*v`` in Q[v]/(v**2 - q) for a prime ``q``; a field since sqrt(q) is irrational."""

    __slots__ = ("q", "a", "b")

    def __init__(self, q: int, a=0, b=0):
        self.q = int(q)
        self.a = _num(a)
        self.b = _num(b)

    def _coerce(self, other):
        if isinstance(other, QuadraticScalar):
            if other.q != self.q:
                raise ValueError(f"mixing scalars over q={self.q} and q={other.q}")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticScalar(self.q, other, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadraticScalar(self.q, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticScalar(self.q, -self.a, -self.b)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadraticScalar(self.q, self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadraticScalar(
            self.q, self.a * o.a + self.q * self.b * o.b, self.a * o.b + self.b * o.a
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadraticScalar":
        n = self.a * self.a - self.q * self.b * self.b
        if not n:
            raise ZeroDivisionError("inverse of zero quadratic scalar")
        return QuadraticScalar(self.q, _div(self.a, n), _div(-self.b, n))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = QuadraticScalar(self.q, 1, 0)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def is_zero(self) -> bool:
        return not self.a and not self.b

    def __bool__(self):
        return bool(self.a or self.b)

    def __eq__(self, other):
        if isinstance(other, QuadraticScalar):
            return (self.q, self.a, self.b) == (other.q, other.a, other.b)
        if isinstance(other, (int, Fraction)):
            return not self.b and self.a == other
        return NotImplemented

    def __hash__(self):
        return hash((self.q, self.a, self.b))

    def __repr__(self):
        return f"QuadraticScalar(q={self.q}, {self})"

    def __str__(self):
        return format_laurent(LaurentPoly({0: self.a, 1: self.b}))

    @classmethod
    def vpow(cls, q: int, e: int) -> "QuadraticScalar":
        """``v**e`` with ``v**2 = q``."""
        k, r = divmod(e, 2)
        c = _num(Fraction(q) ** k)
        return cls(q, 0, c) if r else cls(q, c, 0)


def parse_scalar(text: str, q: int) -> QuadraticScalar:
    p = parse_laurent(text)
    return specialize(p, q)


def specialize(x, q: int) -> QuadraticScalar:
    """Evaluate an element of Q(v) at ``v = sqrt(q)``."""
    if isinstance(x, QuadraticScalar):
        if x.q != q:
            raise ValueError("scalar already specialised at a different q")
        return x
    if isinstance(x, (int, Fraction)):
        return QuadraticScalar(q, x, 0)
    if isinstance(x, LaurentPoly):
        a = 0
        b = 0
        for e, c in x._terms.items():
            k, r = divmod(e, 2)
            f = c * q ** k if k >= 0 else Fraction(c, q ** -k)
            if r:
                b += f
            else:
                a += f
        return QuadraticScalar(q, _num(a), _num(b))
    if isinstance(x, RationalFn):
        den = specialize(x.den, q)
        if den.is_zero():
            raise ZeroDivisionError(f"denominator vanishes at v = sqrt({q})")
        return specialize(x.num, q) / den
    raise TypeError(f"cannot specialise {type(x).__name__}")
