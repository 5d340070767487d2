"""Zassenhaus factorization of squarefree integer polynomials.

Pipeline: pick a good prime q, factor mod q (Cantor-Zassenhaus), Hensel-lift
the factors to q^k above twice the Mignotte bound, then recombine subsets of
lifted factors by exact trial division.
"""

from itertools import combinations
from math import isqrt

import gmpy2

from ..errors import CapExceeded
from . import dense, modp
from .dense import madd, mdivmod_monic, mmul, msub, symmetric

SUBSET_CAP = 2 ** 20
PRIMES_TRIED = 5


def _subset_sums(degs):
    reach = 1
    for d in degs:
        reach |= reach << d
    return {i for i in range(reach.bit_length()) if reach >> i & 1}


def _good_primes(f):
    q = 3
    while True:
        if f[-1] % q and modp.is_squarefree(f, q):
            yield q
        q = int(gmpy2.next_prime(q))


def _hensel_step(f, g, h, s, t, m2):
    e = msub(f, mmul(g, h, m2), m2)
    q, r = mdivmod_monic(mmul(s, e, m2), h, m2)
    g2 = madd(g, madd(mmul(t, e, m2), mmul(q, g, m2), m2), m2)
    h2 = madd(h, r, m2)
    b = msub(madd(mmul(s, g2, m2), mmul(t, h2, m2), m2), [1], m2)
    c, d = mdivmod_monic(mmul(s, b, m2), h2, m2)
    s2 = msub(s, d, m2)
    t2 = msub(t, madd(mmul(t, b, m2), mmul(c, g2, m2), m2), m2)
    return g2, h2, s2, t2


def _lift_pair(f, g, h, q, M):
    _, s, t = dense.pxgcd(g, h, q)
    m = q
    while m < M:
        m2 = min(m * m, M)
        g, h, s, t = _hensel_step([c % m2 for c in f], g, h, s, t, m2)
        m = m2
    return g, h


def _prod_mod(polys, m):
    out = [1]
    for p in polys:
        out = mmul(out, p, m)
    return out


def hensel_lift(f, factors, q, M):
    """Lift monic factors of f mod q to monic factors mod M (a power of q)."""
    if len(factors) == 1:
        inv = pow(f[-1], -1, M)
        return [[c * inv % M for c in f]]
    k = len(factors) // 2
    g0 = dense.pscale(_prod_mod(factors[:k], q), f[-1], q)
    h0 = _prod_mod(factors[k:], q)
    g, h = _lift_pair([c % M for c in f], g0, h0, q, M)
    return hensel_lift(g, factors[:k], q, M) + hensel_lift(h, factors[k:], q, M)


def mignotte_bound(f):
    n = len(f) - 1
    norm2 = isqrt(sum(c * c for c in f)) + 1
    return norm2 * (1 << n) * abs(f[-1])


def _recombine(f, lifted, M, allowed, subset_cap):
    found = []
    live = list(range(len(lifted)))
    degs = [len(u) - 1 for u in lifted]
    tested = 0
    s = 1
    while 2 * s <= len(live):
        hit = None
        for S in combinations(live, s):
            if 2 * s == len(live) and S[0] != live[0]:
                break
            tested += 1
            if tested > subset_cap:
                raise CapExceeded(
                    "Zassenhaus recombination exceeded the subset cap",
                    cap=subset_cap, lifted_factors=len(lifted))
            if sum(degs[i] for i in S) not in allowed:
                continue
            b = f[-1]
            if f[0]:
                tc = b
                for i in S:
                    tc = tc * lifted[i][0] % M
                tc = symmetric([tc], M)[0]
                if not tc or (b * f[0]) % tc:
                    continue
            cand = _prod_mod([lifted[i] for i in S], M)
            cand = dense.zprimitive(symmetric([c * b for c in cand], M))
            quo = dense.zdivexact(f, cand)
            if quo is None:
                continue
            hit = S
            found.append(cand)
            f = quo
            break
        if hit is None:
            s += 1
        else:
            live = [i for i in live if i not in hit]
    if len(f) > 1:
        found.append(f)
    return found


def factor_squarefree_integer(f, *, seed=0, subset_cap=SUBSET_CAP):
    """Irreducible factors of a primitive squarefree integer polynomial.

    ``f`` is a coefficient list with positive leading coefficient and
    f(0) != 0 (or f == x).  Returned factors are primitive with positive
    leading coefficients.
    """
    n = len(f) - 1
    if n <= 1:
        return [f]
    allowed = set(range(n + 1))
    trials = []
    for q in _good_primes(f):
        degs = modp.factor_degrees([c % q for c in f], q)
        allowed &= _subset_sums(degs)
        trials.append((len(degs), q))
        if allowed <= {0, n}:
            return [f]
        if len(trials) >= PRIMES_TRIED:
            break
    _, q = min(trials)
    _, fl = modp.factor([c % q for c in f], q, seed=seed)
    factors = [g for g, _ in fl]
    B = 2 * mignotte_bound(f) + 1
    M = q
    while M <= B:
        M *= q
    lifted = hensel_lift(f, factors, q, M)
    return _recombine(f, lifted, M, allowed, subset_cap)
