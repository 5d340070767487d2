"""Public factorization entry points returning :class:`FactorList`."""

from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq

from ..errors import DomainMismatch, ZeroDivisionPoly
from . import dense, modp, zassenhaus
from .poly import GF, QQ, PrimeField, UniPoly

DEFAULT_SEED = 42


@dataclass(frozen=True)
class FactorList:
    """unit * prod(f**m for f, m in factors), factors monic and irreducible."""

    factors: tuple
    unit: object
    domain: object = None

    def expand(self) -> UniPoly:
        dom = self.domain or self.factors[0][0].domain
        unit = self.unit.rep if hasattr(self.unit, "rep") else self.unit
        out = UniPoly([unit], dom, _raw=True)
        for f, m in self.factors:
            out = out * f ** m
        return out

    def degrees(self):
        """Multiset of factor degrees, repeated by multiplicity, ascending."""
        return sorted(d for f, m in self.factors for d in [f.degree] * m)

    def is_irreducible(self):
        return len(self.factors) == 1 and self.factors[0][1] == 1

    def __len__(self):
        return len(self.factors)

    def __iter__(self):
        return iter(self.factors)

    def __str__(self):
        parts = [f"({f})" + (f"^{m}" if m > 1 else "") for f, m in self.factors]
        return " * ".join([str(self.unit)] + parts)


def factor_mod_p(a: UniPoly, p: int | None = None, *, seed: int = DEFAULT_SEED) -> FactorList:
    """Cantor-Zassenhaus factorization over GF(p).

    ``a`` may be given over QQ (reduced mod p) or over GF(p) already.
    """
    if p is None:
        if not isinstance(a.domain, PrimeField):
            raise DomainMismatch("factor_mod_p needs a prime-field polynomial or an explicit p")
        p = a.domain.p
    dom = GF(p)
    a = a.change_domain(dom)
    if a.is_zero():
        raise ZeroDivisionPoly("cannot factor the zero polynomial")
    unit, fl = modp.factor(list(a.coeffs), p, seed=seed)
    return FactorList(tuple((UniPoly(g, dom, _raw=True), m) for g, m in fl), unit, dom)


def factor_over_rationals(a: UniPoly, *, seed: int = DEFAULT_SEED,
                          subset_cap: int = zassenhaus.SUBSET_CAP) -> FactorList:
    """Complete factorization over Q into monic irreducibles times a rational unit."""
    if a.domain is not QQ:
        raise DomainMismatch("factor_over_rationals needs a polynomial over QQ")
    if a.is_zero():
        raise ZeroDivisionPoly("cannot factor the zero polynomial")
    unit = a.lc
    out = []
    cs = list(a.monic().coeffs)
    k = 0
    while cs[k] == 0:
        k += 1
    if k:
        out.append(([mpq(0), mpq(1)], k))
        cs = cs[k:]
    for part, mult in dense.qsquarefree(cs):
        ints, _ = dense.rat_to_int(part)
        prim = dense.zprimitive(ints)
        for g in zassenhaus.factor_squarefree_integer(prim, seed=seed, subset_cap=subset_cap):
            out.append((dense.qmonic([mpq(c) for c in g]), mult))
    facs = [(UniPoly(g, QQ, _raw=True), m) for g, m in out]
    facs.sort(key=lambda t: (t[0].degree, t[0].coeffs[::-1], t[1]))
    return FactorList(tuple(facs), unit, QQ)
