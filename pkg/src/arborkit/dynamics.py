"""Unicritical maps x^(p^n) + c over Q: critical orbits, PCF certificates,
post-critical tests, and good-reduction screening."""

from __future__ import annotations

import re
from dataclasses import dataclass

import gmpy2
from gmpy2 import mpq

from .arith.parse import parse_poly
from .arith.poly import QQ, UniPoly, format_rational, rational_json, to_rational
from .errors import NotPCFError, ParseError

INFINITY = "inf"


def prime_power(d: int):
    """(p, n) with d == p**n, or None."""
    if d < 2:
        return None
    for p in range(2, d + 1):
        if d % p == 0:
            n = 0
            while d % p == 0:
                d //= p
                n += 1
            return (p, n) if d == 1 else None
    return None


@dataclass(frozen=True)
class UnicriticalMap:
    p: int
    n: int
    c: mpq

    def __post_init__(self):
        if not gmpy2.is_prime(self.p) or self.n < 1:
            raise ValueError(f"need a prime p and n >= 1, got p={self.p}, n={self.n}")
        object.__setattr__(self, "c", to_rational(self.c))

    @property
    def d(self) -> int:
        return self.p ** self.n

    def __call__(self, z):
        return z ** self.d + self.c

    def iterate(self, z, k: int):
        for _ in range(k):
            z = self(z)
        return z

    def poly(self) -> UniPoly:
        return UniPoly([self.c] + [0] * (self.d - 1) + [1], QQ)

    def iterate_poly(self, k: int) -> UniPoly:
        """f^k(x) as a polynomial over Q."""
        out = UniPoly.x(QQ)
        f = self.poly()
        for _ in range(k):
            out = f.compose(out)
        return out

    def preimage_poly(self, k: int, alpha) -> UniPoly:
        """f^k(x) - alpha."""
        return self.iterate_poly(k) - to_rational(alpha)

    def label(self) -> str:
        c = self.c
        if c == 0:
            return f"x^{self.d}"
        sign = "-" if c < 0 else "+"
        return f"x^{self.d}{sign}{format_rational(abs(c))}"

    def to_json(self):
        return {"p": self.p, "n": self.n, "c": rational_json(self.c)}

    @classmethod
    def parse(cls, text: str) -> UnicriticalMap:
        """Accepts ``"p=2,n=1,c=-1"`` or a polynomial such as ``"x^2-1"``."""
        text = text.strip()
        if "=" in text:
            kv = {}
            for part in text.split(","):
                if "=" not in part:
                    raise ParseError(f"bad map field {part!r}")
                k, v = part.split("=", 1)
                kv[k.strip()] = v.strip()
            try:
                return cls(int(kv["p"]), int(kv.get("n", 1)), to_rational(kv.get("c", "0")))
            except (KeyError, ValueError) as exc:
                raise ParseError(f"bad map specification {text!r}: {exc}") from None
        f = parse_poly(text)
        d = f.degree
        pn = prime_power(d)
        if pn is None or f.lc != 1 or any(f.coeffs[1:d]):
            raise ParseError(f"{text!r} is not of the form x^(p^n) + c")
        return cls(pn[0], pn[1], f.coeffs[0])


@dataclass(frozen=True)
class CriticalOrbit:
    """Orbit 0, f(0), f^2(0), ... of the finite critical point."""

    points: tuple
    tail_length: int
    cycle_length: int

    @property
    def N(self) -> int:
        return self.tail_length + self.cycle_length

    def to_json(self):
        return {
            "points": [rational_json(z) for z in self.points],
            "tail": self.tail_length,
            "cycle": self.cycle_length,
            "N": self.N,
            "pcf": True,
        }


@dataclass(frozen=True)
class NotPCF:
    """Certificate that the critical orbit is infinite.

    kind 'archimedean': |f^index(0)| > max(2, |c| + 1), so the orbit escapes.
    kind 'nonintegral': c has a prime q in its denominator; the q-adic
    absolute value of f^i(0) is |c|_q^(d^(i-1)), strictly increasing.
    """

    kind: str
    index: int
    value: mpq
    bound: mpq | None = None
    prime: int | None = None

    def to_json(self):
        out = {"pcf": False, "kind": self.kind, "index": self.index, "value": rational_json(self.value)}
        if self.bound is not None:
            out["bound"] = rational_json(self.bound)
        if self.prime is not None:
            out["prime"] = self.prime
        return out


def escape_bound(f: UnicriticalMap) -> mpq:
    return max(mpq(2), abs(f.c) + 1)


def critical_orbit(f: UnicriticalMap) -> CriticalOrbit | NotPCF:
    c = f.c
    if c.denominator != 1:
        q = int(next(iter(_prime_factors(int(c.denominator)))))
        return NotPCF("nonintegral", 1, c, prime=q)
    bound = escape_bound(f)
    seen = {}
    pts = []
    z = mpq(0)
    i = 0
    # integral orbit inside [-bound, bound] is finite, so this terminates
    while True:
        if abs(z) > bound:
            return NotPCF("archimedean", i, z, bound=bound)
        if z in seen:
            tail = seen[z]
            return CriticalOrbit(tuple(pts), tail, i - tail)
        seen[z] = i
        pts.append(z)
        z = f(z)
        i += 1


def require_pcf(f: UnicriticalMap) -> CriticalOrbit:
    orb = critical_orbit(f)
    if isinstance(orb, NotPCF):
        raise NotPCFError(f"{f.label()} is not post-critically finite", certificate=orb.to_json())
    return orb


def _prime_factors(m: int):
    out = []
    q = 2
    while q * q <= m:
        if m % q == 0:
            out.append(q)
            while m % q == 0:
                m //= q
        q += 1
    if m > 1:
        out.append(m)
    return out


def strictly_post_critical(f: UnicriticalMap, alpha) -> bool:
    """alpha == f^i(0) for some i >= 1."""
    alpha = to_rational(alpha)
    orb = require_pcf(f)
    return alpha in orb.points[1:] or (orb.tail_length == 0 and alpha == orb.points[0])


def collision_condition(f: UnicriticalMap):
    """None when f^i(a) != f^j(b) for a = 0, b in {0, inf}, 0 <= i, j <= N
    unless a = b = 0 and i = j; otherwise the lexicographically first
    violating tuple (a, b, i, j)."""
    orb = require_pcf(f)
    N = orb.N
    vals = [f.iterate(mpq(0), i) for i in range(N + 1)]
    for b in (0, INFINITY):
        for i in range(N + 1):
            for j in range(N + 1):
                if b == INFINITY:
                    continue  # f^j(inf) = inf is never a finite orbit point
                if i != j and vals[i] == vals[j]:
                    return (0, b, i, j)
    return None


def primes_up_to(bound: int):
    out = []
    q = 2
    while q <= bound:
        out.append(q)
        q = int(gmpy2.next_prime(q))
    return out


def good_reduction_primes(f: UnicriticalMap, bound: int) -> set:
    """Primes <= bound at which explicit good separable reduction fails."""
    den = int(f.c.denominator)
    return {q for q in primes_up_to(bound) if den % q == 0 or q == f.p}
