"""Univariate polynomials over Q, over prime fields, and over number towers.

A :class:`UniPoly` is immutable: a tuple of coefficients (constant term
first) plus the domain they live in.  Domains are small objects exposing
``zero``, ``one``, ``convert``, ``add``, ``sub``, ``mul``, ``neg``, ``inv``,
``is_zero`` and ``format``; :data:`QQ`, :func:`GF` and
:class:`arborkit.tower.NumberTower` all qualify.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from gmpy2 import mpq

from ..errors import DomainMismatch, ZeroDivisionPoly
from . import dense


def to_rational(x) -> mpq:
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        return mpq(x.strip())
    return mpq(x)


def format_rational(x) -> str:
    return str(int(x)) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def rational_json(x):
    """JSON-friendly rational: an int when integral, else the string 'a/b'."""
    x = mpq(x)
    return int(x) if x.denominator == 1 else format_rational(x)


class RationalField:
    name = "QQ"
    characteristic = 0
    zero = mpq(0)
    one = mpq(1)

    def convert(self, x):
        return to_rational(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def is_zero(self, a):
        return not a

    def format(self, a):
        return format_rational(a)

    def __repr__(self):
        return "QQ"

    def __reduce__(self):
        return "QQ"


QQ = RationalField()


class PrimeField:
    def __init__(self, p: int):
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"
        self.zero = 0
        self.one = 1 % p

    def convert(self, x):
        if isinstance(x, (mpq, Fraction)) or (isinstance(x, str) and "/" in x):
            q = to_rational(x)
            return int(q.numerator) * pow(int(q.denominator), -1, self.p) % self.p
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        return pow(a, -1, self.p)

    def is_zero(self, a):
        return a == 0

    def format(self, a):
        return str(a)

    def __repr__(self):
        return self.name


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def _kind(dom):
    if dom is QQ:
        return "q"
    if isinstance(dom, PrimeField):
        return "p"
    return "g"


class UniPoly:
    """Dense univariate polynomial; ``coeffs[i]`` multiplies ``x**i``."""

    __slots__ = ("coeffs", "domain", "_hash")

    def __init__(self, coeffs=(), domain=QQ, *, _raw=False):
        if _raw:
            cs = list(coeffs)
        else:
            cs = [domain.convert(c) for c in coeffs]
        while cs and domain.is_zero(cs[-1]):
            cs.pop()
        self.coeffs = tuple(cs)
        self.domain = domain
        self._hash = None

    # -- constructors -------------------------------------------------------
    @classmethod
    def x(cls, domain=QQ):
        return cls((domain.zero, domain.one), domain, _raw=True)

    @classmethod
    def const(cls, c, domain=QQ):
        return cls((c,), domain)

    @classmethod
    def parse(cls, text: str, domain=QQ):
        from .parse import parse_poly
        return parse_poly(text).change_domain(domain)

    def _new(self, cs):
        return UniPoly(cs, self.domain, _raw=True)

    def change_domain(self, domain):
        if domain is self.domain:
            return self
        if isinstance(domain, PrimeField) and self.domain is QQ:
            return UniPoly([domain.convert(c) for c in self.coeffs], domain, _raw=True)
        return UniPoly([domain.convert(c) for c in self.coeffs], domain, _raw=True)

    # -- basic properties ---------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.domain.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.domain.zero

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.domain == other.domain and self.coeffs == other.coeffs
        if not self.coeffs:
            return other == 0
        return len(self.coeffs) == 1 and self.coeffs[0] == other

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((repr(self.domain), self.coeffs))
        return self._hash

    def _check(self, other):
        if not isinstance(other, UniPoly):
            return UniPoly((other,), self.domain)
        if other.domain is not self.domain and other.domain != self.domain:
            raise DomainMismatch(f"{self.domain!r} vs {other.domain!r}")
        return other

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = self._check(other)
        k = _kind(self.domain)
        if k == "q":
            return self._new(dense.qadd(list(self.coeffs), list(other.coeffs)))
        if k == "p":
            return self._new(dense.padd(list(self.coeffs), list(other.coeffs), self.domain.p))
        dom = self.domain
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = dom.add(out[i], c)
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        dom = self.domain
        return self._new([dom.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            c = self.domain.convert(other)
            return self._new([self.domain.mul(a, c) for a in self.coeffs])
        other = self._check(other)
        k = _kind(self.domain)
        if k == "q":
            return self._new(dense.qmul(list(self.coeffs), list(other.coeffs)))
        if k == "p":
            return self._new(dense.pmul(list(self.coeffs), list(other.coeffs), self.domain.p))
        return self._new(_generic_mul(self.domain, self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = self._new([self.domain.one])
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __divmod__(self, other):
        other = self._check(other)
        if other.is_zero():
            raise ZeroDivisionPoly("division by the zero polynomial")
        k = _kind(self.domain)
        if k == "q":
            q, r = dense.qdivmod(list(self.coeffs), list(other.coeffs))
        elif k == "p":
            q, r = dense.pdivmod(list(self.coeffs), list(other.coeffs), self.domain.p)
        else:
            q, r = _generic_divmod(self.domain, self.coeffs, other.coeffs)
        return self._new(q), self._new(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        dom = self.domain
        if isinstance(x, UniPoly):
            return self.compose(x)
        x = dom.convert(x)
        acc = dom.zero
        for c in reversed(self.coeffs):
            acc = dom.add(dom.mul(acc, x), c)
        return acc

    evaluate = __call__

    def compose(self, other: UniPoly) -> UniPoly:
        """self(other(x))."""
        other = self._check(other)
        if _kind(self.domain) == "q":
            return self._new(dense.qcompose(list(self.coeffs), list(other.coeffs)))
        out = self._new([])
        for c in reversed(self.coeffs):
            out = out * other + self._new([c])
        return out

    def monic(self) -> UniPoly:
        if not self.coeffs:
            return self
        inv = self.domain.inv(self.lc)
        return self._new([self.domain.mul(c, inv) for c in self.coeffs])

    def derivative(self) -> UniPoly:
        dom = self.domain
        return self._new([dom.mul(dom.convert(i), self.coeffs[i]) for i in range(1, len(self.coeffs))])

    def shift(self, k: int) -> UniPoly:
        """Multiply by x**k."""
        return self._new([self.domain.zero] * k + list(self.coeffs))

    # -- printing -----------------------------------------------------------
    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"UniPoly({format_poly(self)!r}, {self.domain!r})"


def _generic_mul(dom, a, b):
    if not a or not b:
        return []
    out = [dom.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if dom.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = dom.add(out[i + j], dom.mul(x, y))
    return out


def _generic_divmod(dom, a, b):
    r = list(a)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], r
    inv = dom.inv(b[-1])
    q = [dom.zero] * (len(r) - db)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i]
        if not dom.is_zero(c):
            c = dom.mul(c, inv)
            q[i - db] = c
            for j in range(db):
                r[i - db + j] = dom.sub(r[i - db + j], dom.mul(c, b[j]))
        r[i] = dom.zero
    r = r[:db]
    while r and dom.is_zero(r[-1]):
        r.pop()
    return q, r


def format_poly(f: UniPoly, var: str = "x") -> str:
    if f.is_zero():
        return "0"
    dom = f.domain
    parts = []
    for i in range(f.degree, -1, -1):
        c = f.coeffs[i]
        if dom.is_zero(c):
            continue
        s = dom.format(c)
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if _kind(dom) == "g" and mono:
            s = f"({s})" if s not in ("1", "-1") else s
        if mono:
            if s == "1":
                term = mono
            elif s == "-1":
                term = "-" + mono
            else:
                term = f"{s}*{mono}"
        else:
            term = s
        parts.append(term)
    out = parts[0]
    for t in parts[1:]:
        out += t if t.startswith("-") else "+" + t
    return out


# -- public operations ----------------------------------------------------------

def gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic greatest common divisor (zero only when both inputs are zero)."""
    b = a._check(b)
    k = _kind(a.domain)
    if k == "q":
        return a._new(dense.qgcd(list(a.coeffs), list(b.coeffs)))
    if k == "p":
        return a._new(dense.pgcd(list(a.coeffs), list(b.coeffs), a.domain.p))
    while b:
        a, b = b, a % b
    return a.monic()


def xgcd(a: UniPoly, b: UniPoly):
    """Return (g, s, t) with s*a + t*b = g and g monic."""
    b = a._check(b)
    r0, r1 = a, b
    one = a._new([a.domain.one])
    s0, s1 = one, a._new([])
    t0, t1 = a._new([]), one
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = a.domain.inv(r0.lc)
    return r0 * inv, s0 * inv, t0 * inv


def resultant(a: UniPoly, b: UniPoly):
    """Resultant via the Euclidean remainder sequence (any field domain)."""
    b = a._check(b)
    if a.is_zero() or b.is_zero():
        raise ZeroDivisionPoly("resultant of a zero polynomial")
    if _kind(a.domain) == "q":
        return dense.qresultant(list(a.coeffs), list(b.coeffs))
    dom = a.domain
    res = dom.one
    while True:
        da, db = a.degree, b.degree
        if db == 0:
            return dom.mul(res, _dpow(dom, b.coeffs[0], da))
        if da < db:
            if (da * db) % 2:
                res = dom.neg(res)
            a, b = b, a
            continue
        r = a % b
        if r.is_zero():
            return dom.zero
        if (da * db) % 2:
            res = dom.neg(res)
        res = dom.mul(res, _dpow(dom, b.lc, da - r.degree))
        a, b = b, r


def _dpow(dom, x, e):
    out = dom.one
    for _ in range(e):
        out = dom.mul(out, x)
    return out


def discriminant(a: UniPoly):
    """(-1)^(d(d-1)/2) * resultant(a, a') / lc(a)."""
    if a.is_zero():
        raise ZeroDivisionPoly("discriminant of the zero polynomial")
    dom = a.domain
    d = a.degree
    if d < 1:
        raise ZeroDivisionPoly("discriminant of a constant")
    if d == 1:
        return dom.one
    r = resultant(a, a.derivative())
    r = dom.mul(r, dom.inv(a.lc))
    return dom.neg(r) if (d * (d - 1) // 2) % 2 else r


def squarefree_part(a: UniPoly) -> UniPoly:
    """a / gcd(a, a'), monic (characteristic-zero domains)."""
    if a.degree < 1:
        return a.monic() if a else a
    return (a // gcd(a, a.derivative())).monic()
