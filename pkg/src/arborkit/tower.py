"""Absolute number fields Q(theta) grown by root adjunction.

Every tower keeps a single primitive element theta with an integral monic
minimal polynomial; elements are coordinate tuples in the power basis
1, theta, ..., theta^(D-1).  Polynomials over a tower are :class:`UniPoly`
objects whose domain is the tower itself.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import lcm

import gmpy2
from gmpy2 import mpq

from .arith import dense
from .arith.factor import DEFAULT_SEED, FactorList, factor_over_rationals
from .arith.modp import is_squarefree as _sqfree_mod
from .arith.parse import parse_poly
from .arith.poly import QQ, UniPoly, format_rational, to_rational
from .errors import ArborError, CapExceeded, DomainMismatch

DEGREE_CAP = 256

ZERO = mpq(0)
ONE = mpq(1)


@dataclass(frozen=True)
class AdjunctionRecord:
    """A polynomial (coefficients over the owning tower) and one of its roots."""

    poly: tuple
    root: tuple


class NumberTower:
    """Q(theta); acts as a coefficient domain for :class:`UniPoly`."""

    characteristic = 0

    def __init__(self, minpoly, history=(), parent=None, parent_image=None,
                 degree_cap=DEGREE_CAP):
        m = [to_rational(c) for c in minpoly]
        if not m or m[-1] != 1:
            raise ArborError("tower minimal polynomial must be monic")
        if any(c.denominator != 1 for c in m):
            raise ArborError("tower minimal polynomial must be integral")
        self.minpoly_coeffs = tuple(m)
        self.degree = len(m) - 1
        self._mint = [int(c) for c in m]
        self.history = tuple(history)
        self.parent = parent
        self.parent_image = parent_image
        self.degree_cap = degree_cap
        self.shift_lambda = None
        D = self.degree
        self.zero = (ZERO,) * D
        self.one = (ONE,) + (ZERO,) * (D - 1)
        self.name = f"Q[{D}]"
        # rows[k] = theta^(D+k) mod minpoly, as integer lists
        rows = []
        cur = [-c for c in self._mint[:-1]]
        for _ in range(D - 1):
            rows.append(cur)
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [c - top * mc for c, mc in zip(cur, self._mint[:-1])]
        self._rows = rows

    # -- construction helpers ----------------------------------------------
    @classmethod
    def rationals(cls, degree_cap=DEGREE_CAP):
        return cls([0, 1], degree_cap=degree_cap)

    @property
    def minpoly(self) -> UniPoly:
        return UniPoly(self.minpoly_coeffs, QQ, _raw=True)

    @property
    def generator(self):
        if self.degree == 1:
            return self.element(-self.minpoly_coeffs[0])
        return self.element((ZERO, ONE) + (ZERO,) * (self.degree - 2))

    def element(self, value) -> FieldElement:
        return FieldElement(self, self.convert(value))

    def poly(self, coeffs) -> UniPoly:
        """A polynomial over this tower from rationals, elements, or UniPoly over QQ/ancestors."""
        if isinstance(coeffs, UniPoly):
            if coeffs.domain is self:
                return coeffs
            if coeffs.domain is QQ:
                return UniPoly([self.convert(c) for c in coeffs.coeffs], self, _raw=True)
            return UniPoly([self.lift_rep(coeffs.domain, c) for c in coeffs.coeffs], self, _raw=True)
        return UniPoly([self.convert(c) for c in coeffs], self, _raw=True)

    # -- domain protocol ----------------------------------------------------
    def convert(self, x):
        if isinstance(x, FieldElement):
            if x.tower is self:
                return x.rep
            return self.lift_rep(x.tower, x.rep)
        if isinstance(x, tuple):
            if len(x) != self.degree:
                raise DomainMismatch("representation length does not match tower degree")
            return tuple(to_rational(c) for c in x)
        if isinstance(x, UniPoly):
            return self.reduce(list(x.coeffs))
        q = to_rational(x)
        if self.degree == 1 and self.minpoly_coeffs[0] != 0:
            raise DomainMismatch("degree-one tower must be Q itself")
        return (q,) + (ZERO,) * (self.degree - 1)

    def reduce(self, a) -> tuple:
        """Reduce a rational coefficient list modulo the minimal polynomial."""
        D = self.degree
        a = list(a)
        if len(a) > D:
            a = dense.qrem(a, list(self.minpoly_coeffs))
        return tuple(a) + (ZERO,) * (D - len(a))

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def is_zero(self, a):
        return not any(a)

    def mul(self, a, b):
        D = self.degree
        if D == 1:
            return (a[0] * b[0],)
        ia, da = dense.rat_to_int(a)
        ib, db = dense.rat_to_int(b)
        prod = dense.zmul(ia, ib)
        prod += [0] * (2 * D - 1 - len(prod))
        out = prod[:D]
        for k, row in enumerate(self._rows):
            c = prod[D + k]
            if c:
                for i, r in enumerate(row):
                    if r:
                        out[i] += c * r
        den = da * db
        if den == 1:
            return tuple(mpq(c) for c in out)
        return tuple(mpq(c, den) for c in out)

    def scale(self, a, q):
        return tuple(x * q for x in a)

    def inv(self, a):
        if not any(a):
            raise ZeroDivisionError("inverse of zero in a number tower")
        if self.degree == 1:
            return (1 / a[0],)
        g, s, _ = dense.qxgcd(dense.trim(list(a)), list(self.minpoly_coeffs))
        return self.reduce(s)

    def format(self, a):
        return format_element(a)

    def norm(self, a):
        """Absolute norm N_{K/Q}(a) = Res(minpoly, a)."""
        if self.degree == 1:
            return a[0]
        if not any(a):
            return ZERO
        return poly_norm(self, UniPoly([tuple(a)], self, _raw=True)).coeffs[0]

    def __repr__(self):
        return f"NumberTower(degree={self.degree}, minpoly={format_coeffs(self.minpoly_coeffs)!r})"

    # -- embeddings -----------------------------------------------------------
    def ancestors(self):
        t = self
        while t is not None:
            yield t
            t = t.parent

    def lift_rep(self, source, rep):
        """Image in this tower of an element of an ancestor tower."""
        if source is self:
            return rep
        if source.degree == 1 and source.minpoly_coeffs[0] == 0:
            return (rep[0],) + (ZERO,) * (self.degree - 1)
        if self.parent is None:
            raise DomainMismatch("element does not come from an ancestor of this tower")
        r = self.parent.lift_rep(source, rep)
        return self.compose_rep(r, self.parent_image)

    def compose_rep(self, rep, image):
        """rep(theta_old) evaluated at theta_old = image (a rep in this tower)."""
        acc = self.zero
        for c in reversed(rep):
            acc = self.mul(acc, image)
            if c:
                acc = (acc[0] + c,) + acc[1:]
        return acc

    # -- serialization ----------------------------------------------------------
    def to_record(self) -> dict:
        return {
            "minpoly": format_coeffs(self.minpoly_coeffs),
            "history": [
                {"poly": [format_element(c) for c in r.poly], "root": format_element(r.root)}
                for r in self.history
            ],
        }

    def serialize(self) -> str:
        return json.dumps(self.to_record(), separators=(",", ":"))

    @classmethod
    def from_record(cls, record, degree_cap=DEGREE_CAP) -> NumberTower:
        if isinstance(record, str):
            record = json.loads(record)
        m = parse_poly(record["minpoly"])
        t = cls(m.coeffs, degree_cap=degree_cap)
        hist = []
        for h in record["history"]:
            poly = tuple(t.convert(parse_poly(c, var="t")) for c in h["poly"])
            root = t.convert(parse_poly(h["root"], var="t"))
            hist.append(AdjunctionRecord(poly, root))
        t.history = tuple(hist)
        return t

    def check_history(self) -> bool:
        """Every recorded root is a root of its recorded polynomial."""
        for rec in self.history:
            acc = self.zero
            for c in reversed(rec.poly):
                acc = self.add(self.mul(acc, rec.root), c)
            if any(acc):
                return False
        return True


def format_coeffs(cs, var="x"):
    return str(UniPoly(cs, QQ, _raw=True)).replace("x", var) if var != "x" else str(UniPoly(cs, QQ, _raw=True))


def format_element(rep):
    """Element text as a polynomial in the generator 't'."""
    return str(UniPoly(dense.trim(list(rep)), QQ, _raw=True)).replace("x", "t")


class FieldElement:
    __slots__ = ("tower", "rep")

    def __init__(self, tower: NumberTower, rep: tuple):
        self.tower = tower
        self.rep = rep

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.tower is not self.tower:
                return self.tower.convert(other)
            return other.rep
        return self.tower.convert(other)

    def __add__(self, other):
        return FieldElement(self.tower, self.tower.add(self.rep, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.tower, self.tower.sub(self.rep, self._coerce(other)))

    def __rsub__(self, other):
        return FieldElement(self.tower, self.tower.sub(self._coerce(other), self.rep))

    def __neg__(self):
        return FieldElement(self.tower, self.tower.neg(self.rep))

    def __mul__(self, other):
        return FieldElement(self.tower, self.tower.mul(self.rep, self._coerce(other)))

    __rmul__ = __mul__

    def inverse(self):
        return FieldElement(self.tower, self.tower.inv(self.rep))

    def __truediv__(self, other):
        return self * FieldElement(self.tower, self.tower.inv(self._coerce(other)))

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        out = self.tower.one
        base = self.rep
        while e:
            if e & 1:
                out = self.tower.mul(out, base)
            e >>= 1
            if e:
                base = self.tower.mul(base, base)
        return FieldElement(self.tower, out)

    def __eq__(self, other):
        try:
            return self.rep == self._coerce(other)
        except (DomainMismatch, TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((id(self.tower), self.rep))

    def is_zero(self):
        return not any(self.rep)

    def is_rational(self):
        return not any(self.rep[1:])

    def norm(self):
        return self.tower.norm(self.rep)

    def __repr__(self):
        return f"FieldElement({self.tower.format(self.rep)!r})"

    def __str__(self):
        return self.tower.format(self.rep)


# -- polynomials over a tower ------------------------------------------------------

def _shift(tower, f: UniPoly, c) -> UniPoly:
    """f(x + c) for a tower element rep c (Taylor shift)."""
    lin = UniPoly([c, tower.one], tower, _raw=True)
    out = UniPoly([], tower, _raw=True)
    for a in reversed(f.coeffs):
        out = out * lin + UniPoly([a], tower, _raw=True)
    return out


_NORM_PRIME_START = 2 ** 61


def _interpolate_mod(n, ys, q):
    """Coefficients of the degree <= n polynomial through (i, ys[i]), i = 0..n, mod q."""
    coef = list(ys)
    for j in range(1, n + 1):
        for i in range(n, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) * pow(j, -1, q) % q
    out = [coef[n]]
    for i in range(n - 1, -1, -1):
        nxt = [0] * (len(out) + 1)
        for k, c in enumerate(out):
            nxt[k + 1] += c
            nxt[k] -= c * i
        nxt[0] += coef[i]
        out = [c % q for c in nxt]
    return out


def poly_norm(tower: NumberTower, f: UniPoly) -> UniPoly:
    """Norm of a polynomial over the tower down to Q: Res_theta(minpoly, f).

    Computed modulo word-size primes and recombined by CRT.  With F = L*f
    integral in (x, theta) and m the minimal polynomial, the norm of F is the
    product of F(x, sigma(theta)) over the D embeddings, so its coefficients
    are bounded by ||F||_1^D * M(m)^(D-1) <= ||F||_1^D * ||m||_2^(D-1).
    """
    D = tower.degree
    if D == 1:
        return UniPoly([c[0] for c in f.coeffs], QQ, _raw=True)
    L = 1
    for c in f.coeffs:
        for v in c:
            if v.denominator != 1:
                L = lcm(L, int(v.denominator))
    F = [[int(v * L) for v in c] for c in f.coeffs]
    m = tower._mint
    n = D * f.degree
    norm1 = sum(abs(v) for c in F for v in c)
    m2sq = sum(v * v for v in m)
    bound = norm1 ** D * gmpy2.isqrt(m2sq ** (D - 1)) + 1
    residues, modulus = None, 1
    q = _NORM_PRIME_START
    while modulus <= 2 * bound:
        q = int(gmpy2.next_prime(q))
        ys = []
        for x0 in range(n + 1):
            acc = [0] * D
            for c in reversed(F):
                acc = [(a * x0 + b) % q for a, b in zip(acc, c)]
            ys.append(dense.presultant(m, dense.trim(acc), q))
        vals = _interpolate_mod(n, ys, q)
        if residues is None:
            residues, modulus = vals, q
            continue
        inv = pow(modulus, -1, q)
        residues = [r + modulus * ((v - r) * inv % q) for r, v in zip(residues, vals)]
        modulus *= q
    half = modulus // 2
    scale = mpq(1, L) ** D
    coeffs = [mpq(r - modulus if r > half else r) * scale for r in residues]
    return UniPoly(dense.trim(coeffs), QQ, _raw=True)


def _is_squarefree_q(f: UniPoly) -> bool:
    """Squarefree over Q, decided modulo large primes.

    Squarefree mod q (q not dividing the leading coefficient) proves it over
    Q.  A "no" can only be wrong when every tried prime divides the
    discriminant, and callers treat "no" as "try another shift" anyway.
    """
    ints, _ = dense.rat_to_int(list(f.coeffs))
    lc = ints[-1]
    tried = 0
    q = _NORM_PRIME_START
    while tried < 3:
        q = int(gmpy2.next_prime(q))
        if lc % q:
            tried += 1
            if _sqfree_mod(ints, q):
                return True
    return False


def _shifts():
    yield 0
    k = 1
    while True:
        yield k
        yield -k
        k += 1


def _yun_tower(f: UniPoly):
    from .arith.poly import gcd
    f = f.monic()
    out = []
    if f.degree < 1:
        return out
    df = f.derivative()
    g = gcd(f, df)
    if g.degree == 0:
        return [(f, 1)]
    b = f // g
    c = df // g
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        g = gcd(b, d)
        if g.degree > 0:
            out.append((g, i))
        b = b // g
        c = d // g
        d = c - b.derivative()
        i += 1
    return out


def _trager(tower: NumberTower, f: UniPoly, seed):
    """Irreducible factors of a monic squarefree f over the tower."""
    from .arith.poly import gcd
    if f.degree <= 1:
        return [f]
    if tower.degree * f.degree > tower.degree_cap * 2:
        raise CapExceeded("norm degree exceeds twice the degree cap",
                          degree=tower.degree * f.degree, cap=tower.degree_cap)
    theta = tower.generator.rep
    for k in _shifts():
        shift = tower.scale(theta, mpq(-k))
        g = _shift(tower, f, shift) if k else f
        N = poly_norm(tower, g)
        if _is_squarefree_q(N):
            break
    fl = factor_over_rationals(N, seed=seed)
    if len(fl.factors) == 1:
        return [f]
    back = tower.scale(theta, mpq(k))
    out = []
    rest = g
    for Ni, _ in fl.factors:
        h = gcd(rest, tower.poly(Ni))
        if h.degree > 0:
            rest = rest // h
            out.append(_shift(tower, h, back) if k else h)
    return out


def factor_over_tower(tower: NumberTower, a, *, seed=DEFAULT_SEED) -> FactorList:
    """Complete factorization over the tower (Trager's norm method)."""
    a = tower.poly(a)
    if a.is_zero():
        raise ArborError("cannot factor the zero polynomial")
    unit = a.lc
    out = []
    for part, m in _yun_tower(a):
        for h in _trager(tower, part, seed):
            out.append((h.monic(), m))
    out.sort(key=lambda t: (t[0].degree, t[0].coeffs[::-1]))
    return FactorList(tuple(out), FieldElement(tower, unit), tower)


# -- adjunction ----------------------------------------------------------------

def _bareiss_solve(A, rhs):
    """Solve A u = b for several integer right-hand sides, or None if singular.

    A is a list of rows; rhs a list of columns.  Returns the solution columns
    as lists of mpq.
    """
    n = len(A)
    M = [list(A[i]) + [col[i] for col in rhs] for i in range(n)]
    w = len(M[0])
    prev = 1
    for k in range(n):
        piv = next((r for r in range(k, n) if M[r][k]), None)
        if piv is None:
            return None
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
        pk = M[k][k]
        rowk = M[k]
        for i in range(k + 1, n):
            rowi = M[i]
            a = rowi[k]
            for j in range(k + 1, w):
                rowi[j] = (pk * rowi[j] - a * rowk[j]) // prev
            rowi[k] = 0
        prev = pk
    sols = []
    for c in range(len(rhs)):
        col = n + c
        u = [ZERO] * n
        for i in range(n - 1, -1, -1):
            s = mpq(M[i][col])
            row = M[i]
            for j in range(i + 1, n):
                if row[j]:
                    s -= row[j] * u[j]
            u[i] = s / row[i]
        sols.append(u)
    return sols


def _extend(tower: NumberTower, g: UniPoly, seed=DEFAULT_SEED):
    """Adjoin a root of the monic irreducible g over the tower.

    Returns (new tower, rep of the root in the new tower).
    """
    D = tower.degree
    e = g.degree
    if D * e > tower.degree_cap:
        raise CapExceeded("tower degree cap exceeded", degree=D * e, cap=tower.degree_cap)
    # scale the root so it is integral: gt(x) = L^e g(x / L)
    L = 1
    for c in g.coeffs:
        for q in c:
            if q.denominator != 1:
                L = lcm(L, int(q.denominator))
    gt = [tower.scale(c, mpq(L) ** (e - i)) for i, c in enumerate(g.coeffs)]
    gint = [[int(q) for q in c] for c in gt]

    def rel_mul_theta_plus(v, lam):
        # v is a list of e integer K-vectors (coefficient of beta^j); return v * (theta + lam*beta)
        out = []
        for j in range(e):
            out.append(_int_mul_theta(tower, v[j]))
        shifted = [[0] * D] + [list(x) for x in v]  # multiply by beta
        top = shifted.pop()  # coefficient of beta^e -> reduce with gt
        if any(top):
            for j in range(e):
                prod = _int_mul(tower, top, gint[j])
                shifted[j] = [a - b for a, b in zip(shifted[j], prod)]
        return [[a + lam * b for a, b in zip(out[j], shifted[j])] for j in range(e)]

    n = D * e
    theta_vec = [[0] * D for _ in range(e)]
    if D > 1:
        theta_vec[0][1] = 1
    elif tower.minpoly_coeffs[0] != 0:
        raise DomainMismatch("degree-one tower must be Q itself")
    beta_vec = [[0] * D for _ in range(e)]
    if e > 1:
        beta_vec[1][0] = 1
    flat = lambda v: [c for part in v for c in part]
    lam = 1
    while True:
        powers = []
        cur = [[0] * D for _ in range(e)]
        cur[0][0] = 1
        for _ in range(n + 1):
            powers.append(flat(cur))
            cur = rel_mul_theta_plus(cur, lam)
        A = [[powers[j][i] for j in range(n)] for i in range(n)]
        sol = _bareiss_solve(A, [powers[n], flat(theta_vec), flat(beta_vec)])
        if sol is not None:
            break
        lam += 1
    cmin, theta_img, beta_img = sol
    minpoly = [-c for c in cmin] + [ONE]
    new = NumberTower(minpoly, parent=tower, degree_cap=tower.degree_cap)
    new.parent_image = tuple(theta_img)
    new.shift_lambda = lam
    root = tuple(c / L for c in beta_img)
    hist = [AdjunctionRecord(tuple(new.lift_rep(tower, c) for c in r.poly),
                             new.lift_rep(tower, r.root)) for r in tower.history]
    hist.append(AdjunctionRecord(tuple(new.lift_rep(tower, c) for c in g.coeffs), root))
    new.history = tuple(hist)
    return new, root


def _int_mul(tower, a, b):
    """Product of integer coordinate vectors in the tower (stays integral)."""
    D = tower.degree
    if D == 1:
        return [a[0] * b[0]]
    prod = dense.zmul(a, b)
    prod += [0] * (2 * D - 1 - len(prod))
    out = prod[:D]
    for k, row in enumerate(tower._rows):
        c = prod[D + k]
        if c:
            for i, r in enumerate(row):
                if r:
                    out[i] += c * r
    return out


def _int_mul_theta(tower, a):
    D = tower.degree
    if D == 1:
        return [a[0] * int(-tower.minpoly_coeffs[0])]
    top = a[-1]
    out = [0] + list(a[:-1])
    if top:
        out = [c - top * m for c, m in zip(out, tower._mint[:-1])]
    return out


def adjoin_root(tower: NumberTower, a, *, seed=DEFAULT_SEED):
    """Tower containing a root of an irreducible factor of a of maximal degree.

    Returns (new tower, root element in the new tower).
    """
    a = tower.poly(a)
    if a.degree < 1:
        raise ArborError("adjoin_root needs a nonconstant polynomial")
    fl = factor_over_tower(tower, a, seed=seed)
    g = max(fl.factors, key=lambda t: t[0].degree)[0]
    if g.degree == 1:
        root = tower.neg(g.coeffs[0])
        new = NumberTower(tower.minpoly_coeffs, parent=tower, parent_image=tower.generator.rep,
                          degree_cap=tower.degree_cap)
        new.history = tower.history + (AdjunctionRecord(g.coeffs, root),)
        return new, FieldElement(new, root)
    new, root = _extend(tower, g, seed=seed)
    return new, FieldElement(new, root)


def sqrt(tower: NumberTower, gamma, *, seed=DEFAULT_SEED):
    """A square root of gamma in the tower, or None."""
    g = tower.convert(gamma)
    if isinstance(tower, QuadraticTower):
        r = tower.sqrt_rep(g)
        return None if r is None else FieldElement(tower, r)
    if not any(g):
        return FieldElement(tower, tower.zero)
    if not any(g[1:]):
        q = g[0]
        if q > 0 and gmpy2.is_square(q.numerator) and gmpy2.is_square(q.denominator):
            return FieldElement(tower, tower.convert(mpq(gmpy2.isqrt(q.numerator), gmpy2.isqrt(q.denominator))))
        if tower.degree == 1:
            return None
    # N(b^2) = N(b)^2, so a non-square norm rules gamma out cheaply
    n = tower.norm(g)
    if n < 0 or not (gmpy2.is_square(n.numerator) and gmpy2.is_square(n.denominator)):
        return None
    f = UniPoly([tower.neg(g), tower.zero, tower.one], tower, _raw=True)
    fl = factor_over_tower(tower, f, seed=seed)
    for h, _ in fl.factors:
        if h.degree == 1:
            return FieldElement(tower, tower.neg(h.coeffs[0]))
    return None


def is_square(tower: NumberTower, gamma, *, seed=DEFAULT_SEED) -> bool:
    """True iff x^2 - gamma factors over the tower."""
    return sqrt(tower, gamma, seed=seed) is not None


def splitting_tower(a, base: NumberTower | None = None, *, degree_cap=DEGREE_CAP,
                    seed=DEFAULT_SEED, order=None):
    """Split a (over Q or over ``base``) completely.

    Returns (tower, degree, roots) where roots lists every root of the
    squarefree part of a as elements of the final tower.  ``order``
    optionally permutes which nonlinear factor is adjoined first.
    """
    tower = base if base is not None else NumberTower.rationals(degree_cap=degree_cap)
    f = tower.poly(a)
    if f.degree < 1:
        return tower, tower.degree, []
    from .arith.poly import gcd
    f = (f // gcd(f, f.derivative())).monic()
    pending = [h for h, _ in factor_over_tower(tower, f, seed=seed).factors]
    step = 0
    while True:
        roots = [h for h in pending if h.degree == 1]
        nonlinear = [h for h in pending if h.degree > 1]
        if not nonlinear:
            break
        if order is None:
            pick = max(range(len(nonlinear)), key=lambda i: (nonlinear[i].degree, -i))
        else:
            pick = order(step, nonlinear)
        step += 1
        g = nonlinear[pick]
        tower, _ = _extend(tower, g, seed=seed)
        pending = [tower.poly(h) for h in roots]
        for h in nonlinear:
            pending.extend(fh for fh, _ in factor_over_tower(tower, tower.poly(h), seed=seed).factors)
    roots = [FieldElement(tower, tower.neg(h.coeffs[0])) for h in pending]
    return tower, tower.degree, roots


# -- multi-quadratic towers ---------------------------------------------------------

def _rational_sqrt(q):
    if q < 0:
        return None
    num, den = gmpy2.mpz(q.numerator), gmpy2.mpz(q.denominator)
    if gmpy2.is_square(num) and gmpy2.is_square(den):
        return mpq(gmpy2.isqrt(num), gmpy2.isqrt(den))
    return None


class QuadraticTower:
    """Q(r_1, ..., r_k) with r_j^2 = d_j in the previous field, each step of degree 2.

    An element of level k is the pair (a, b) meaning a + b*r_k, stored flat as
    the concatenation of the two level-(k-1) tuples; bit j of a coordinate
    index records whether r_(j+1) occurs in that basis monomial.  Arithmetic
    and square roots recurse down the levels, which avoids the coefficient
    growth of a single primitive element for the Kummer towers of x^2 + c.
    """

    characteristic = 0

    def __init__(self, parent: QuadraticTower | None = None, radicand=None,
                 degree_cap=DEGREE_CAP):
        self.parent = parent
        self.degree_cap = degree_cap
        if parent is None:
            self.level, self.degree, self.radicand = 0, 1, None
        else:
            self.level = parent.level + 1
            self.degree = 2 * parent.degree
            self.radicand = tuple(radicand)
            if self.degree > degree_cap:
                raise CapExceeded("tower degree cap exceeded", degree=self.degree, cap=degree_cap)
        self.zero = (ZERO,) * self.degree
        self.one = (ONE,) + (ZERO,) * (self.degree - 1)
        self.name = f"Q[{self.degree}]"

    @classmethod
    def rationals(cls, degree_cap=DEGREE_CAP):
        return cls(degree_cap=degree_cap)

    @property
    def generator(self):
        """r_k, the most recently adjoined square root (1 for Q)."""
        if self.parent is None:
            return self.element(1)
        return FieldElement(self, self.parent.zero + self.parent.one)

    def radicands(self):
        """Radicands d_1..d_k as elements of their own levels, bottom first."""
        out = []
        t = self
        while t.parent is not None:
            out.append(FieldElement(t.parent, t.radicand))
            t = t.parent
        return out[::-1]

    def ancestors(self):
        t = self
        while t is not None:
            yield t
            t = t.parent

    def element(self, value) -> FieldElement:
        return FieldElement(self, self.convert(value))

    def lift_rep(self, source, rep):
        if not any(t is source for t in self.ancestors()):
            raise DomainMismatch("element does not come from a subfield of this tower")
        return tuple(rep) + (ZERO,) * (self.degree - len(rep))

    def convert(self, x):
        if isinstance(x, FieldElement):
            return x.rep if x.tower is self else self.lift_rep(x.tower, x.rep)
        if isinstance(x, tuple):
            if len(x) != self.degree:
                raise DomainMismatch("representation length does not match tower degree")
            return tuple(to_rational(c) for c in x)
        return (to_rational(x),) + (ZERO,) * (self.degree - 1)

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def is_zero(self, a):
        return not any(a)

    def scale(self, a, q):
        return tuple(x * q for x in a)

    def mul(self, x, y):
        F = self.parent
        if F is None:
            return (x[0] * y[0],)
        h = F.degree
        a, b, c, e = x[:h], x[h:], y[:h], y[h:]
        if not any(b):
            return F.mul(a, c) + F.mul(a, e)
        if not any(e):
            return F.mul(a, c) + F.mul(b, c)
        ac = F.mul(a, c)
        be = F.mul(b, e)
        cross = F.sub(F.sub(F.mul(F.add(a, b), F.add(c, e)), ac), be)
        return F.add(ac, F.mul(be, self.radicand)) + cross

    def conjugate(self, x):
        """a + b r  ->  a - b r."""
        h = self.degree // 2
        return x[:h] + tuple(-v for v in x[h:])

    def relative_norm(self, x):
        F = self.parent
        h = F.degree
        a, b = x[:h], x[h:]
        return F.sub(F.mul(a, a), F.mul(F.mul(b, b), self.radicand))

    def inv(self, x):
        if not any(x):
            raise ZeroDivisionError("inverse of zero in a number tower")
        F = self.parent
        if F is None:
            return (1 / x[0],)
        ninv = F.inv(self.relative_norm(x))
        return self.mul(self.conjugate(x), ninv + F.zero)

    def norm(self, x):
        t, r = self, tuple(x)
        while t.parent is not None:
            r = t.relative_norm(r)
            t = t.parent
        return r[0]

    def sqrt_rep(self, g):
        """A square root of g as a rep, or None when g is not a square."""
        F = self.parent
        if F is None:
            r = _rational_sqrt(g[0])
            return None if r is None else (r,)
        h = F.degree
        a, b = g[:h], g[h:]
        if not any(b):
            t = F.sqrt_rep(a)
            if t is not None:
                return t + F.zero
            t = F.sqrt_rep(F.mul(a, F.inv(self.radicand)))
            return None if t is None else F.zero + t
        # (x + y r)^2 = g forces x^2 - d y^2 = +-w with w^2 = N(g), x^2 = (a +- w)/2
        w = F.sqrt_rep(self.relative_norm(g))
        if w is None:
            return None
        for s in (w, F.neg(w)):
            x = F.sqrt_rep(F.scale(F.add(a, s), mpq(1, 2)))
            if x is not None and any(x):
                y = F.mul(b, F.inv(F.scale(x, 2)))
                return x + y
        return None

    def adjoin_sqrt(self, gamma):
        """(tower, root): the root of x^2 - gamma, extending only when needed."""
        g = self.convert(gamma)
        r = self.sqrt_rep(g)
        if r is not None:
            return self, FieldElement(self, r)
        new = QuadraticTower(self, g, degree_cap=self.degree_cap)
        return new, new.generator

    def format(self, a):
        terms = []
        for j, c in enumerate(a):
            if not c:
                continue
            mono = "*".join(f"r{i + 1}" for i in range(self.level) if j >> i & 1)
            if not mono:
                terms.append(format_rational(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{format_rational(c)}*{mono}")
        if not terms:
            return "0"
        return "+".join(terms).replace("+-", "-")

    def to_record(self) -> dict:
        return {"radicands": [[format_rational(c) for c in d.rep] for d in self.radicands()]}

    def serialize(self) -> str:
        return json.dumps(self.to_record(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_record(cls, record, degree_cap=DEGREE_CAP) -> QuadraticTower:
        if isinstance(record, str):
            record = json.loads(record)
        t = cls.rationals(degree_cap)
        for rad in record["radicands"]:
            t = QuadraticTower(t, tuple(to_rational(c) for c in rad), degree_cap=degree_cap)
        return t

    def __repr__(self):
        return f"QuadraticTower(degree={self.degree})"
