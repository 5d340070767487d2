"""The finite surjectivity criterion for quadratic PCF maps, evaluated under
each hypothesis on the constant field k', and the JSON report built from it.

The criterion compares |Gal(k' K_{alpha,N} / Q)| with |G_N| [k' : Q]; since
k' is only known through the candidate ledger, every subgroup of the
square classes <-1, 2> is evaluated and the verdict is reported per
hypothesis.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from gmpy2 import mpq

from . import tower as tw
from .arboreal import (DEFAULT_SAMPLES, ConstantCandidates, GNBracket, ProfileStore,
                       admissible_samples, constant_candidates, gn_bracket)
from .arith.factor import DEFAULT_SEED
from .cache import JsonlCache
from .arith.poly import UniPoly, rational_json, to_rational
from .dynamics import UnicriticalMap, require_pcf, strictly_post_critical
from .errors import StrictlyPostCritical, Unsupported

SCHEMA = "arbor-kit/1"

# square classes of -1, 2, -2 as exponent vectors over (sign, 2) in Q*/Q*^2
_CLASS_VECTORS = {-1: (1, 0), 2: (0, 1), -2: (1, 1)}


def square_class_rank(basis) -> int:
    """Dimension over F_2 of the span of the given classes."""
    vecs = {_CLASS_VECTORS[d] for d in basis}
    vecs.discard((0, 0))
    if not vecs:
        return 0
    if len(vecs) == 1:
        return 1
    return 2


@dataclass(frozen=True)
class KPrimeHypothesis:
    """k' = Q(sqrt(d) : d in basis)."""

    basis: tuple

    def __post_init__(self):
        bad = [d for d in self.basis if d not in _CLASS_VECTORS]
        if bad:
            raise Unsupported("candidate square classes are -1, 2 and -2", got=bad)
        object.__setattr__(self, "basis", tuple(sorted(set(self.basis))))

    @property
    def rank(self) -> int:
        return square_class_rank(self.basis)

    @property
    def classes(self) -> frozenset:
        """Every nontrivial class in the subgroup generated by the basis."""
        vecs = {_CLASS_VECTORS[d] for d in self.basis}
        span = {(0, 0)}
        for v in vecs:
            span |= {((a + v[0]) % 2, (b + v[1]) % 2) for a, b in span}
        return frozenset(d for d, v in _CLASS_VECTORS.items() if v in span)

    def to_json(self):
        return list(self.basis)


HYPOTHESES = (
    KPrimeHypothesis(()),
    KPrimeHypothesis((-1,)),
    KPrimeHypothesis((2,)),
    KPrimeHypothesis((-2,)),
    KPrimeHypothesis((-1, 2)),
)


@dataclass
class HypothesisResult:
    hypothesis: KPrimeHypothesis
    lhs: int
    rhs: object  # int when the bracket is certified, else (lower, upper)
    verdict: str  # equal | unequal | interval
    endpoints: dict | None = None
    status: str = "open"  # open | evidence | pruned | contradicted

    def to_json(self):
        out = {
            "basis": self.hypothesis.to_json(),
            "rank": self.hypothesis.rank,
            "lhs": self.lhs,
            "rhs": list(self.rhs) if isinstance(self.rhs, tuple) else self.rhs,
            "verdict": self.verdict,
            "status": self.status,
        }
        if self.endpoints is not None:
            out["endpoints"] = self.endpoints
        return out


def _require_quadratic(f: UnicriticalMap):
    if f.d != 2:
        raise Unsupported(
            f"the criterion needs k_1 = Q; for x^{f.d} + c the base field would be "
            f"Q(zeta_{f.d}), which is not supported", p=f.p, n=f.n)


def compositum_degree(base, basis) -> int:
    """[base(sqrt(d) : d in basis) : Q] for a quadratic tower ``base``."""
    K = base
    for d in basis:
        K, _ = K.adjoin_sqrt(d)
    return K.degree


def evaluate_criterion(f: UnicriticalMap, alpha, hyp: KPrimeHypothesis, bracket: GNBracket, *,
                       store: ProfileStore | None = None) -> HypothesisResult:
    _require_quadratic(f)
    alpha = to_rational(alpha)
    if strictly_post_critical(f, alpha):
        raise StrictlyPostCritical("alpha is strictly post-critical", alpha=rational_json(alpha))
    store = store or ProfileStore()
    K = store.get(f, alpha, bracket.N).tower(bracket.N)
    lhs = compositum_degree(K, hyp.basis)
    factor = 2 ** hyp.rank
    if bracket.certified:
        rhs = bracket.upper * factor
        return HypothesisResult(hyp, lhs, rhs, "equal" if lhs == rhs else "unequal")
    lo, hi = bracket.lower * factor, bracket.upper * factor
    ends = {"lower": "equal" if lhs == lo else "unequal",
            "upper": "equal" if lhs == hi else "unequal"}
    return HypothesisResult(hyp, lhs, (lo, hi), "interval", ends)


def frattini_depth(f):
    """Depth m at which the Frattini reduction applies: N for x^(p^n) + c.

    Anything that is not a unicritical map (a polynomial of another shape)
    gets ``"exists-unspecified"``: such an m exists but is not made explicit.
    """
    if isinstance(f, UniPoly):
        try:
            f = UnicriticalMap.parse(str(f))
        except Exception:
            return "exists-unspecified"
    if not isinstance(f, UnicriticalMap):
        return "exists-unspecified"
    return require_pcf(f).N


@dataclass
class RunConfig:
    samples: tuple = DEFAULT_SAMPLES
    constants_depth: int = 3
    prime_budget: int = 25
    seed: int = DEFAULT_SEED
    degree_cap: int = tw.DEGREE_CAP
    cache: str | None = None
    json: bool = True


@dataclass
class CriterionReport:
    map: UnicriticalMap
    alpha: mpq
    N: int
    bracket: GNBracket
    constants: ConstantCandidates
    results: list
    overall: str
    conditions: list = field(default_factory=list)

    def result(self, basis) -> HypothesisResult:
        key = KPrimeHypothesis(tuple(basis))
        return next(r for r in self.results if r.hypothesis == key)

    def to_json(self):
        out = {
            "schema": SCHEMA,
            "map": self.map.to_json(),
            "alpha": rational_json(self.alpha),
            "N": self.N,
            "bracket": self.bracket.to_json(),
            "constants": self.constants.to_json(),
            "hypotheses": [r.to_json() for r in self.results],
            "overall": self.overall,
        }
        if self.overall == "Conditional":
            out["conditions"] = self.conditions
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)


def criterion_report(f: UnicriticalMap, alpha, config: RunConfig | None = None, *,
                     store: ProfileStore | None = None) -> CriterionReport:
    config = config or RunConfig()
    _require_quadratic(f)
    alpha = to_rational(alpha)
    N = require_pcf(f).N
    if strictly_post_critical(f, alpha):
        raise StrictlyPostCritical("alpha is strictly post-critical", alpha=rational_json(alpha))
    if store is None:
        cache = JsonlCache(config.cache) if config.cache else None
        store = ProfileStore(degree_cap=config.degree_cap, seed=config.seed, cache=cache)
    samples = admissible_samples(f, config.samples)
    bracket = gn_bracket(f, samples, N, store=store)
    consts = constant_candidates(f, config.constants_depth, samples, store=store, seed=config.seed)
    excluded = set(consts.excluded())
    supported = set(consts.supported())

    results = []
    for hyp in HYPOTHESES:
        res = evaluate_criterion(f, alpha, hyp, bracket, store=store)
        classes = hyp.classes
        if classes & excluded:
            res.status = "pruned"
        elif not supported <= classes:
            res.status = "contradicted"
        elif classes == _closure(supported):
            res.status = "evidence"
        results.append(res)

    live = [r for r in results if r.status in ("evidence", "open")]
    verdicts = {r.verdict for r in live}
    conditions = []
    if bracket.certified and len(verdicts) == 1 and verdicts <= {"equal", "unequal"}:
        overall = "CertifiedEqual" if verdicts == {"equal"} else "CertifiedNotEqual"
    else:
        overall = "Conditional"
        conditions = [{"basis": r.hypothesis.to_json(), "verdict": r.verdict,
                       **({"endpoints": r.endpoints} if r.endpoints else {})} for r in live]
    return CriterionReport(f, alpha, N, bracket, consts, results, overall, conditions)


def _closure(classes) -> frozenset:
    return KPrimeHypothesis(tuple(classes)).classes
