"""Cantor-Zassenhaus factorization over prime fields, on raw coefficient lists."""

import random

from . import dense
from .dense import _nbytes, _upack, _uunpack, pdivmod, pgcd, pmonic, pmul, prem, psub


class Frobenius:
    """Precomputed x^(p*i) mod f, so h -> h^p mod f is one matrix-vector product."""

    def __init__(self, f, p):
        self.f = f
        self.p = p
        n = len(f) - 1
        self.n = n
        xp = dense.ppowmod([0, 1], p, f, p)
        rows = [[1]]
        for _ in range(1, n):
            rows.append(prem(pmul(rows[-1], xp, p), f, p))
        self.nb = _nbytes(n * (p - 1) * (p - 1) + 1)
        self.packed = [_upack(r, self.nb) for r in rows]

    def __call__(self, h):
        acc = 0
        for c, row in zip(h, self.packed):
            if c:
                acc += c * row
        if not acc:
            return []
        p = self.p
        return dense.trim([c % p for c in _uunpack(acc, self.n, self.nb)])


def _pth_root(f, p):
    return [f[i] for i in range(0, len(f), p)]


def squarefree_decomposition(f, p):
    """Monic f -> [(monic squarefree g, multiplicity)] in characteristic p."""
    f = pmonic(f, p)
    if len(f) <= 1:
        return []
    fd = dense.pderiv(f, p)
    if not fd:
        return [(g, m * p) for g, m in squarefree_decomposition(_pth_root(f, p), p)]
    out = []
    c = pgcd(f, fd, p)
    w = pdivmod(f, c, p)[0]
    i = 1
    while len(w) > 1:
        y = pgcd(w, c, p)
        z = pdivmod(w, y, p)[0]
        if len(z) > 1:
            out.append((z, i))
        i += 1
        w = y
        c = pdivmod(c, y, p)[0]
    if len(c) > 1:
        out.extend((g, m * p) for g, m in squarefree_decomposition(_pth_root(c, p), p))
    return out


def distinct_degree(f, p):
    """Squarefree monic f -> [(product of all degree-i factors, i)]."""
    out = []
    if len(f) <= 2:
        return [(f, 1)] if len(f) == 2 else []
    frob = Frobenius(f, p)
    g = f
    h = [0, 1]
    i = 0
    while len(g) - 1 >= 2 * (i + 1):
        i += 1
        h = frob(h)
        d = pgcd(g, psub(h, [0, 1], p), p)
        if len(d) > 1:
            out.append((d, i))
            g = pdivmod(g, d, p)[0]
    if len(g) > 1:
        out.append((g, len(g) - 1))
    return out


def equal_degree(g, i, p, rng):
    """Split a product of distinct degree-i irreducibles (Cantor-Zassenhaus)."""
    n = len(g) - 1
    if n == i:
        return [g]
    frob = Frobenius(g, p)
    while True:
        a = dense.trim([rng.randrange(p) for _ in range(n)])
        if len(a) < 2:
            continue
        if p == 2:
            b, t = list(a), list(a)
            for _ in range(i - 1):
                t = frob(t)
                b = dense.padd(b, t, p)
        else:
            norm, t = list(a), list(a)
            for _ in range(i - 1):
                t = frob(t)
                norm = prem(pmul(norm, t, p), g, p)
            b = psub(dense.ppowmod(norm, (p - 1) // 2, g, p), [1], p)
        d = pgcd(g, b, p)
        if 1 < len(d) < len(g):
            other = pdivmod(g, d, p)[0]
            return equal_degree(d, i, p, rng) + equal_degree(other, i, p, rng)


def factor_squarefree(f, p, rng):
    out = []
    for g, i in distinct_degree(f, p):
        out.extend(equal_degree(g, i, p, rng))
    return out


def factor(f, p, seed=0):
    """Full factorization of a nonzero list f over GF(p).

    Returns (unit, [(monic irreducible, multiplicity), ...]) in canonical
    order (degree, then coefficients from the top).
    """
    f = dense.pnorm(list(f), p)
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    unit = f[-1]
    rng = random.Random(seed)
    out = []
    for g, m in squarefree_decomposition(f, p):
        out.extend((h, m) for h in factor_squarefree(g, p, rng))
    out.sort(key=lambda t: (len(t[0]), t[0][::-1], t[1]))
    return unit, out


def factor_degrees(f, p, seed=0):
    """Degrees of the irreducible factors of a squarefree f (with repetition)."""
    degs = []
    for g, i in distinct_degree(pmonic(f, p), p):
        degs.extend([i] * ((len(g) - 1) // i))
    return sorted(degs)


def is_squarefree(f, p):
    f = dense.pnorm(list(f), p)
    if len(f) <= 1:
        return bool(f)
    fd = dense.pderiv(f, p)
    return bool(fd) and len(pgcd(f, fd, p)) == 1
