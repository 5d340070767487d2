"""Galois data for specializations f^n(x) = alpha of a unicritical map.

The level-i field K_{alpha,i} is built incrementally: every root s of
f^(i-1)(x) = alpha contributes the roots of x^d = s - c.  For d = 2 this is
a single square root, found or adjoined via :func:`tower.sqrt`; for larger d
the polynomial x^d - (s - c) is split over the current tower.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import lcm

import gmpy2
from gmpy2 import mpq

from . import tower as tw
from .arith.factor import DEFAULT_SEED, factor_mod_p
from .arith.poly import UniPoly, discriminant, format_rational, rational_json, to_rational
from .dynamics import UnicriticalMap, critical_orbit, NotPCF, strictly_post_critical
from .errors import ArborError, StrictlyPostCritical, Unsupported
from .treegroup import WreathDescriptor, group_order

DEFAULT_SAMPLES = (1, 2, 3, 5, 7)
CANDIDATES = (-1, 2, -2)


def euler_phi(m: int) -> int:
    out = m
    q = 2
    k = m
    while q * q <= k:
        if k % q == 0:
            out -= out // q
            while k % q == 0:
                k //= q
        q += 1
    if k > 1:
        out -= out // k
    return out


@dataclass
class LevelData:
    index: int
    degree: int
    tower: tw.NumberTower = field(repr=False)
    roots: list = field(repr=False)
    adjoined: list  # radicands (p = 2) or polynomials adjoined at this level

    def to_json(self):
        return {"level": self.index, "degree": self.degree, "adjoined": list(self.adjoined)}


@dataclass
class GaloisProfile:
    map: UnicriticalMap
    alpha: mpq
    levels: list

    @property
    def degrees(self):
        return [lv.degree for lv in self.levels]

    def tower(self, level: int) -> tw.NumberTower:
        return self.levels[level - 1].tower

    def to_json(self):
        return {
            "map": self.map.to_json(),
            "alpha": rational_json(self.alpha),
            "degrees": self.degrees,
            "levels": [lv.to_json() for lv in self.levels],
        }


def _check_basepoint(f: UnicriticalMap, alpha, depth):
    orb = critical_orbit(f)
    if isinstance(orb, NotPCF):
        bad = {f.iterate(mpq(0), j) for j in range(1, depth + 1)}
        post = alpha in bad
    else:
        post = strictly_post_critical(f, alpha)
    if post:
        raise StrictlyPostCritical(
            f"alpha={format_rational(alpha)} is strictly post-critical for {f.label()}; "
            "specializing there ramifies the preimage tree",
            alpha=rational_json(alpha))


def specialization_profile(f: UnicriticalMap, alpha, depth: int, *,
                           degree_cap=tw.DEGREE_CAP, seed=DEFAULT_SEED) -> GaloisProfile:
    """Exact degrees [K_{alpha,i} : Q] for i = 1..depth."""
    alpha = to_rational(alpha)
    _check_basepoint(f, alpha, depth)
    if f.d == 2:
        K = tw.QuadraticTower.rationals(degree_cap=degree_cap)
    else:
        K = tw.NumberTower.rationals(degree_cap=degree_cap)
    roots = [K.element(alpha)]
    levels = []
    for i in range(1, depth + 1):
        new_roots = []
        adjoined = []
        for s in roots:
            gamma = K.element(s) - f.c
            if f.d == 2:
                before = K
                K, r = K.adjoin_sqrt(gamma)
                if K is not before:
                    adjoined.append(str(gamma))
                new_roots += [r, -r]
            else:
                before = K
                g = UniPoly([K.neg(gamma.rep)] + [K.zero] * (f.d - 1) + [K.one], K, _raw=True)
                K, _, rts = tw.splitting_tower(g, base=K, seed=seed)
                if K is not before:
                    adjoined.append(str(g))
                new_roots = [K.element(x) for x in new_roots] + rts
        roots = [K.element(x) for x in new_roots]
        levels.append(LevelData(i, K.degree, K, roots, adjoined))
    # towers of earlier levels stay valid as subfields (parent chain)
    return GaloisProfile(f, alpha, levels)


@dataclass(frozen=True)
class FrobeniusSample:
    prime: int
    degrees: tuple

    @property
    def cycle_lcm(self) -> int:
        return lcm(*self.degrees)

    def to_json(self):
        return {"prime": self.prime, "degrees": list(self.degrees), "lcm": self.cycle_lcm}


def frobenius_samples(f: UnicriticalMap, alpha, n: int, prime_budget: int, *,
                      sieve_bound=100_000, seed=DEFAULT_SEED):
    """Factor-degree multisets of f^n(x) - alpha modulo admissible primes."""
    alpha = to_rational(alpha)
    P = f.preimage_poly(n, alpha)
    disc = discriminant(P)
    if disc == 0:
        raise ArborError("f^n(x) - alpha is not separable")
    bad = 2 * f.p * int(f.c.denominator) * int(alpha.denominator)
    bad *= abs(int(disc.numerator)) * int(disc.denominator)
    out = []
    q = 2
    while len(out) < prime_budget:
        if q > sieve_bound:
            raise ArborError("not enough admissible primes below the sieve bound",
                             found=len(out), bound=sieve_bound)
        if bad % q:
            fl = factor_mod_p(P, q, seed=seed)
            out.append(FrobeniusSample(q, tuple(fl.degrees())))
        q = int(gmpy2.next_prime(q))
    return out


@dataclass(frozen=True)
class GNBracket:
    N: int
    lower: int
    upper: int
    samples: tuple = ()  # (alpha, [K_{alpha,N} : Q]) pairs

    @property
    def certified(self) -> bool:
        return self.lower == self.upper

    def to_json(self):
        return {"lower": self.lower, "upper": self.upper, "certified": self.certified}


def wreath_upper_bound(f: UnicriticalMap, N: int) -> int:
    return group_order(WreathDescriptor(f.p, f.n, N)) * euler_phi(f.d)


def admissible_samples(f: UnicriticalMap, samples):
    return sorted({to_rational(a) for a in samples if not strictly_post_critical(f, a)})


class ProfileStore:
    """Memo of profiles keyed by (map, alpha); deeper requests recompute the entry.

    With a :class:`~arborkit.cache.JsonlCache`, quadratic profiles are also
    persisted as their final tower plus per-level metadata.  Profiles read
    back from the cache carry towers but no root lists.
    """

    def __init__(self, degree_cap=tw.DEGREE_CAP, seed=DEFAULT_SEED, cache=None):
        self.degree_cap = degree_cap
        self.seed = seed
        self.cache = cache
        self._profiles = {}

    def get(self, f: UnicriticalMap, alpha, depth: int) -> GaloisProfile:
        alpha = to_rational(alpha)
        key = (f, alpha)
        prof = self._profiles.get(key)
        if prof is not None and len(prof.levels) >= depth:
            return prof
        text = json.dumps([f.to_json(), rational_json(alpha), depth], sort_keys=True)
        if self.cache is not None and f.d == 2:
            hit = self.cache.get("profile", text)
            if hit is not None:
                prof = _profile_from_record(f, alpha, hit, self.degree_cap)
        if prof is None or len(prof.levels) < depth:
            prof = specialization_profile(f, alpha, depth, degree_cap=self.degree_cap, seed=self.seed)
            if self.cache is not None and f.d == 2:
                self.cache.put("profile", text, _profile_record(prof))
        self._profiles[key] = prof
        return prof


def _profile_record(prof: GaloisProfile) -> dict:
    return {"tower": prof.levels[-1].tower.to_record(),
            "levels": [lv.to_json() for lv in prof.levels]}


def _profile_from_record(f, alpha, rec, degree_cap) -> GaloisProfile:
    top = tw.QuadraticTower.from_record(rec["tower"], degree_cap=degree_cap)
    by_degree = {t.degree: t for t in top.ancestors()}
    levels = [LevelData(lv["level"], lv["degree"], by_degree[lv["degree"]], None, lv["adjoined"])
              for lv in rec["levels"]]
    return GaloisProfile(f, alpha, levels)


def gn_bracket(f: UnicriticalMap, alpha_samples, N: int, *, store: ProfileStore | None = None) -> GNBracket:
    store = store or ProfileStore()
    samples = admissible_samples(f, alpha_samples)
    upper = wreath_upper_bound(f, N)
    degs = tuple((a, store.get(f, a, N).degrees[N - 1]) for a in samples)
    lower = max((d for _, d in degs), default=1)
    if lower > upper:
        raise ArborError("sampled degree exceeds the wreath-product bound", lower=lower, upper=upper)
    return GNBracket(N, lower, upper, degs)


@dataclass(frozen=True)
class CandidateStatus:
    status: str  # supported | excluded | untested
    depth: int | None = None
    witness: mpq | None = None

    def to_json(self):
        out = {"status": self.status}
        if self.depth is not None:
            out["depth"] = self.depth
        if self.witness is not None:
            out["witness"] = rational_json(self.witness)
        if self.status == "supported":
            out["kind"] = "evidence"
        elif self.status == "excluded":
            out["kind"] = "certified"
        return out


@dataclass
class ConstantCandidates:
    depth: int
    statuses: dict  # d -> CandidateStatus
    presence: dict = field(default_factory=dict, repr=False)  # (d, alpha, level) -> bool

    def supported(self):
        return [d for d, s in self.statuses.items() if s.status == "supported"]

    def excluded(self):
        return [d for d, s in self.statuses.items() if s.status == "excluded"]

    def to_json(self):
        return {str(d): s.to_json() for d, s in self.statuses.items()}


def constant_candidates(f: UnicriticalMap, depth: int, alpha_samples, *,
                        store: ProfileStore | None = None, seed=DEFAULT_SEED) -> ConstantCandidates:
    """Ledger of which sqrt(d), d in {-1, 2, -2}, lie in every sampled K_{alpha,n}.

    A class is excluded when sqrt(d) is missing from K_{alpha,depth} for some
    sample: since k_depth is contained in K_{alpha,depth}, that certifies
    sqrt(d) is not in k_m for any m <= depth.  A class is supported (evidence
    only) at the least depth where every sample's tower contains sqrt(d).
    """
    if f.p != 2 or f.n != 1:
        raise Unsupported("constant-field candidates are only implemented for quadratic maps",
                          p=f.p, n=f.n)
    store = store or ProfileStore(seed=seed)
    samples = admissible_samples(f, alpha_samples)
    presence = {}
    statuses = {}
    for d in CANDIDATES:
        if not samples or depth < 1:
            statuses[d] = CandidateStatus("untested")
            continue
        for a in samples:
            prof = store.get(f, a, depth)
            for lvl in range(1, depth + 1):
                presence[(d, a, lvl)] = tw.is_square(prof.tower(lvl), d, seed=seed)
        missing = [a for a in samples if not presence[(d, a, depth)]]
        if missing:
            statuses[d] = CandidateStatus("excluded", depth, missing[0])
        else:
            first = min(l for l in range(1, depth + 1) if all(presence[(d, a, l)] for a in samples))
            statuses[d] = CandidateStatus("supported", first)
    return ConstantCandidates(depth, statuses, presence)


def check_profile(profile: GaloisProfile):
    """Raise if the profile violates its structural invariants."""
    f = profile.map
    degs = profile.degrees
    prev = 1
    for i, d in enumerate(degs, start=1):
        if d % prev:
            raise ArborError("level degrees must divide each other", degrees=degs)
        bound = group_order(WreathDescriptor(f.p, f.n, i)) * euler_phi(f.d)
        if bound % d:
            raise ArborError("level degree does not divide the wreath bound", level=i, degree=d)
        if f.p == 2 and (d // prev) & (d // prev - 1):
            raise ArborError("level ratio is not a power of two", level=i)
        prev = d
    return True
