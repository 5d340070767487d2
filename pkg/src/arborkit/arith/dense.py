"""Low-level kernels on dense coefficient lists (constant term first).

Integer and mod-p products go through Kronecker substitution: the
coefficient list is packed into one big integer, multiplied by CPython's
Karatsuba, and unpacked again.  That keeps the pure-Python cost of the
factorization and tower code tolerable at degree ~100.
"""

from math import lcm

from gmpy2 import mpq

_SCHOOLBOOK = 12


def trim(a):
    while a and not a[-1]:
        a.pop()
    return a


def _nbytes(bound):
    return (bound.bit_length() + 9) // 8


def _upack(a, nb):
    return int.from_bytes(b"".join(int(c).to_bytes(nb, "little") for c in a), "little")


def _uunpack(x, n, nb):
    bs = x.to_bytes(n * nb, "little")
    return [int.from_bytes(bs[i * nb:(i + 1) * nb], "little") for i in range(n)]


def _school(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def umul(a, b):
    """Product of two lists of non-negative integers."""
    if not a or not b:
        return []
    if min(len(a), len(b)) < _SCHOOLBOOK:
        return _school(a, b)
    bound = max(max(a), 1) * max(max(b), 1) * min(len(a), len(b))
    nb = _nbytes(bound)
    return _uunpack(_upack(a, nb) * _upack(b, nb), len(a) + len(b) - 1, nb)


def _spack(a, nb):
    pos = _upack([c if c > 0 else 0 for c in a], nb)
    neg = _upack([-c if c < 0 else 0 for c in a], nb)
    return pos - neg


def zmul(a, b):
    """Product of two lists of (signed) integers."""
    if not a or not b:
        return []
    if min(len(a), len(b)) < _SCHOOLBOOK:
        return _school(a, b)
    bound = max(max(map(abs, a)), 1) * max(max(map(abs, b)), 1) * min(len(a), len(b))
    nb = _nbytes(2 * bound)
    n = len(a) + len(b) - 1
    w = 8 * nb
    half = 1 << (w - 1)
    offset = (((1 << (w * n)) - 1) // ((1 << w) - 1)) * half
    vals = _uunpack(_spack(a, nb) * _spack(b, nb) + offset, n, nb)
    return [v - half for v in vals]


# -- integer polynomials ------------------------------------------------------

def zcontent(a):
    from math import gcd
    g = 0
    for c in a:
        g = gcd(g, c)
        if g == 1:
            break
    return g


def zprimitive(a):
    """Primitive part with positive leading coefficient."""
    g = zcontent(a)
    if a and a[-1] < 0:
        g = -g
    return [c // g for c in a] if g not in (0, 1) else list(a)


def zdivexact(a, b):
    """Exact quotient a / b over Z, or None when b does not divide a."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    if len(a) - 1 < db:
        return None if any(a) else []
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            qc, r = divmod(c, lb)
            if r:
                return None
            q[i - db] = qc
            for j in range(db + 1):
                a[i - db + j] -= qc * b[j]
    if any(a[:db]):
        return None
    return q


def rat_to_int(a):
    """Clear denominators: returns (integer list, common denominator)."""
    den = 1
    for c in a:
        d = int(c.denominator)
        if d != 1:
            den = lcm(den, d)
    if den == 1:
        return [int(c.numerator) for c in a], 1
    return [int(c.numerator) * (den // int(c.denominator)) for c in a], den


# -- rational polynomials (lists of mpq) ---------------------------------------

ZERO = mpq(0)
ONE = mpq(1)


def qadd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = out[i] + c
    return trim(out)


def qsub(a, b):
    n = max(len(a), len(b))
    out = [ZERO] * n
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = out[i] - c
    return trim(out)


def qscale(a, s):
    if not s:
        return []
    return [c * s for c in a]


def qmul(a, b):
    if not a or not b:
        return []
    if min(len(a), len(b)) < _SCHOOLBOOK:
        out = [ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return trim(out)
    ia, da = rat_to_int(a)
    ib, db = rat_to_int(b)
    den = da * db
    return trim([mpq(c, den) for c in zmul(ia, ib)])


def qdivmod(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], r
    inv = ONE / b[-1]
    q = [ZERO] * (len(r) - db)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i]
        if c:
            c = c * inv
            q[i - db] = c
            for j in range(db):
                r[i - db + j] -= c * b[j]
        r[i] = ZERO
    return trim(q), trim(r[:db])


def qrem(a, b):
    return qdivmod(a, b)[1]


def qmonic(a):
    if not a or a[-1] == 1:
        return list(a)
    inv = ONE / a[-1]
    return [c * inv for c in a]


def qgcd(a, b):
    a, b = list(a), list(b)
    while b:
        a, b = b, qrem(a, b)
    return qmonic(a)


def qxgcd(a, b):
    """Return (g, s, t) with s*a + t*b = g monic."""
    r0, r1 = list(a), list(b)
    s0, s1 = [ONE], []
    t0, t1 = [], [ONE]
    while r1:
        q, r = qdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, qsub(s0, qmul(q, s1))
        t0, t1 = t1, qsub(t0, qmul(q, t1))
    if not r0:
        return [], [], []
    inv = ONE / r0[-1]
    return qscale(r0, inv), qscale(s0, inv), qscale(t0, inv)


def qderiv(a):
    return trim([a[i] * i for i in range(1, len(a))])


def qeval(a, x):
    acc = ZERO
    for c in reversed(a):
        acc = acc * x + c
    return acc


def qcompose(a, b):
    out = []
    for c in reversed(a):
        out = qmul(out, b)
        out = qadd(out, [c]) if c else out
    return out


def qresultant(a, b):
    """Resultant over Q by the Euclidean remainder recurrence."""
    if not a or not b:
        return ZERO
    res = ONE
    a, b = list(a), list(b)
    while True:
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            return res * b[0] ** da
        if da < db:
            if (da * db) % 2:
                res = -res
            a, b = b, a
            continue
        r = qrem(a, b)
        if not r:
            return ZERO
        dr = len(r) - 1
        if (da * db) % 2:
            res = -res
        res *= b[-1] ** (da - dr)
        a, b = b, r


def qsquarefree(a):
    """Yun's algorithm: list of (monic squarefree part, multiplicity)."""
    a = qmonic(a)
    out = []
    if len(a) <= 1:
        return out
    da = qderiv(a)
    g = qgcd(a, da)
    b = qdivmod(a, g)[0]
    c = qdivmod(da, g)[0]
    d = qsub(c, qderiv(b))
    i = 1
    while len(b) > 1:
        g = qgcd(b, d)
        if len(g) > 1:
            out.append((g, i))
        b = qdivmod(b, g)[0]
        c = qdivmod(d, g)[0]
        d = qsub(c, qderiv(b))
        i += 1
    return out


# -- polynomials over Z/p (lists of ints in [0, p)) ---------------------------

def pnorm(a, p):
    return trim([c % p for c in a])


def padd(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return trim(out)


def psub(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return trim(out)


def pmul(a, b, p):
    return trim([c % p for c in umul(a, b)])


def pscale(a, s, p):
    s %= p
    if not s:
        return []
    return [c * s % p for c in a]


def pdivmod(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], r
    inv = pow(b[-1], -1, p)
    q = [0] * (len(r) - db)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i] % p
        if c:
            c = c * inv % p
            q[i - db] = c
            for j in range(db):
                r[i - db + j] -= c * b[j]
        r[i] = 0
    return trim(q), trim([c % p for c in r[:db]])


def prem(a, b, p):
    return pdivmod(a, b, p)[1]


def pmonic(a, p):
    if not a or a[-1] == 1:
        return list(a)
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def pgcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, prem(a, b, p)
    return pmonic(a, p)


def pxgcd(a, b, p):
    r0, r1 = list(a), list(b)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = pdivmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, psub(s0, pmul(q, s1, p), p)
        t0, t1 = t1, psub(t0, pmul(q, t1, p), p)
    inv = pow(r0[-1], -1, p)
    return pscale(r0, inv, p), pscale(s0, inv, p), pscale(t0, inv, p)


def presultant(a, b, p):
    """Resultant mod p, same recurrence as :func:`qresultant`.

    The remainder loop is inlined with one inverse per step and lazy
    reduction, since norms call this for every evaluation point and prime.
    """
    a, b = pnorm(a, p), pnorm(b, p)
    if not a or not b:
        return 0
    res = 1
    while True:
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            return res * pow(b[0], da, p) % p
        if da < db:
            if (da * db) % 2:
                res = -res
            a, b = b, a
            continue
        inv = pow(b[-1], -1, p)
        r = list(a)
        for i in range(da, db - 1, -1):
            c = r[i] % p * inv % p
            if c:
                off = i - db
                for j in range(db):
                    r[off + j] -= c * b[j]
        r = [x % p for x in r[:db]]
        while r and not r[-1]:
            r.pop()
        if not r:
            return 0
        if (da * db) % 2:
            res = -res
        res = res * pow(b[-1], da - (len(r) - 1), p) % p
        a, b = b, r


def pderiv(a, p):
    return trim([a[i] * i % p for i in range(1, len(a))])


def ppowmod(a, e, f, p):
    result = [1]
    base = prem(a, f, p)
    while e:
        if e & 1:
            result = prem(pmul(result, base, p), f, p)
        e >>= 1
        if e:
            base = prem(pmul(base, base, p), f, p)
    return result


def peval(a, x, p):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


# -- polynomials modulo an arbitrary integer m (used by Hensel lifting) -------

def mmul(a, b, m):
    return trim([c % m for c in umul(a, b)])


def msub(a, b, m):
    return psub(a, b, m)


def madd(a, b, m):
    return padd(a, b, m)


def mdivmod_monic(a, b, m):
    """Division by a monic divisor modulo m (m need not be prime)."""
    r = [c % m for c in a]
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], trim(r)
    q = [0] * (len(r) - db)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i] % m
        if c:
            q[i - db] = c
            for j in range(db):
                r[i - db + j] -= c * b[j]
        r[i] = 0
    return trim(q), trim([c % m for c in r[:db]])


def symmetric(a, m):
    h = m // 2
    return [c - m if c > h else c for c in (x % m for x in a)]
