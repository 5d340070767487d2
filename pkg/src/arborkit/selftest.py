"""Built-in acceptance checks, runnable as ``arborkit selftest``.

Each check returns a JSON-safe detail payload and a pass flag.  Nothing
time-dependent goes into the payload, so equal seeds give equal bytes.
"""

from __future__ import annotations

import time

from . import oracles
from . import tower as tw
from .arboreal import ProfileStore, constant_candidates, frobenius_samples, gn_bracket, specialization_profile
from .arith.poly import UniPoly
from .criterion import KPrimeHypothesis, RunConfig, criterion_report, evaluate_criterion
from .dynamics import CriticalOrbit, NotPCF, UnicriticalMap, collision_condition, critical_orbit, escape_bound
from .treegroup import (WreathDescriptor, brute_force_frattini, free_group_index_p_normal_count, group_order,
                        maximal_subgroup_count, verify_free_group_count)


def _quad(c) -> UnicriticalMap:
    return UnicriticalMap(2, 1, c)


def check_pcf(seed):
    t0 = time.perf_counter()
    detail, ok = {}, True
    for c, N in ((0, 1), (-1, 2), (-2, 3)):
        orb = critical_orbit(_quad(c))
        good = isinstance(orb, CriticalOrbit) and orb.N == N
        detail[str(c)] = orb.to_json()
        ok &= good
    for c in (1, -3):
        f = _quad(c)
        cert = critical_orbit(f)
        good = isinstance(cert, NotPCF) and abs(f.iterate(0, cert.index)) > escape_bound(f)
        good = good and all(abs(f.iterate(0, i)) <= escape_bound(f) for i in range(cert.index))
        detail[str(c)] = cert.to_json()
        ok &= good
    ok &= time.perf_counter() - t0 < 1.0
    return ok, detail


def check_wreath_orders(seed):
    expected = [2, 8, 128, 32768]
    orders = [group_order(WreathDescriptor(2, 1, k)) for k in range(1, 5)]
    counts = [sum(1 for _ in WreathDescriptor(2, 1, k).elements()) for k in range(1, 5)]
    return orders == expected and counts == expected, {"orders": orders, "enumerated": counts}


def check_frattini(seed):
    out = {}
    ok = True
    for depth in (2, 3):
        rank, count = brute_force_frattini(WreathDescriptor(2, 1, depth))
        formula = maximal_subgroup_count(2, 1, depth)
        out[str(depth)] = {"rank": rank, "maximal": count, "formula": formula}
        ok &= rank == depth and count == formula
    return ok, out


def check_free_group(seed):
    out = {}
    ok = True
    for s, p in ((1, 2), (2, 2), (3, 2), (4, 2), (1, 3), (2, 3), (3, 3)):
        brute, closed = verify_free_group_count(s, p), free_group_index_p_normal_count(s, p)
        out[f"{s},{p}"] = [brute, closed]
        ok &= brute == closed
    return ok, out


def check_splitting(seed):
    _, deg, _ = tw.splitting_tower(UniPoly.parse("x^4-2*x^2-1"), seed=seed)
    p1 = specialization_profile(_quad(-1), 1, 2, seed=seed).degrees
    p3 = specialization_profile(_quad(-1), 3, 1, seed=seed).degrees
    return deg == 8 and p1 == [2, 8] and p3 == [1], {"splitting": deg, "profile_1": p1, "profile_3": p3}


def check_power_map(seed):
    out = {}
    ok = True
    for a in (3, 5):
        got = specialization_profile(_quad(0), a, 3, seed=seed).degrees
        want = [oracles.power_map_level_degree(i) for i in range(1, 4)]
        out[str(a)] = {"engine": got, "oracle": want}
        ok &= got == want
    return ok, out


def check_constants(seed):
    f = _quad(0)
    store = ProfileStore(seed=seed)
    c2 = constant_candidates(f, 2, [3, 5], store=store, seed=seed)
    c3 = constant_candidates(f, 3, [3, 5], store=store, seed=seed)
    ok = c2.statuses[-1].status == "supported" and c2.statuses[-1].depth <= 2
    ok &= sorted(c3.supported()) == [-2, -1, 2]
    for cands in (c2, c3):
        for d in cands.supported():
            at = cands.statuses[d].depth
            ok &= all(tw.is_square(store.get(f, a, at).tower(at), d) for a in (3, 5))
    return ok, {"depth2": c2.to_json(), "depth3": c3.to_json()}


def check_criterion(seed):
    cfg = RunConfig(seed=seed)
    r3 = criterion_report(_quad(0), 3, cfg)
    r2 = criterion_report(_quad(0), 2, cfg)
    full = KPrimeHypothesis((-1, 2))
    f1 = _quad(-1)
    store = ProfileStore(seed=seed)
    b1 = gn_bracket(f1, [1, 2], 2, store=store)
    e1 = evaluate_criterion(f1, 1, KPrimeHypothesis(()), b1, store=store)
    ok = r3.overall == "CertifiedEqual" and r3.result(full.basis).lhs == 8 == r3.result(full.basis).rhs
    ok &= r2.overall == "CertifiedNotEqual" and r2.result(full.basis).lhs == 4
    ok &= r2.result(full.basis).rhs == 8
    ok &= e1.verdict == "equal" and e1.lhs == 8
    detail = {
        "x^2,3": {"overall": r3.overall, "lhs": r3.result(full.basis).lhs, "rhs": r3.result(full.basis).rhs},
        "x^2,2": {"overall": r2.overall, "lhs": r2.result(full.basis).lhs, "rhs": r2.result(full.basis).rhs},
        "x^2-1,1,empty": {"verdict": e1.verdict, "lhs": e1.lhs, "rhs": e1.rhs},
    }
    return ok, detail


def check_anomaly(seed):
    w1 = collision_condition(_quad(-1))
    w2 = collision_condition(_quad(-2))
    f = _quad(-2)
    store = ProfileStore(seed=seed)
    br = gn_bracket(f, [1, 3, 5, 7], 3, store=store)
    measured = max(store.get(f, a, 3).degrees[2] for a in (1, 3, 5, 7))
    rep = criterion_report(f, 1, RunConfig(seed=seed))
    ok = w1 is not None and w2 is not None
    ok &= not br.certified and br.upper == 128 and br.lower == measured <= br.upper
    ok &= rep.overall == "Conditional"
    return ok, {"witness_x^2-1": list(w1 or ()), "witness_x^2-2": list(w2 or ()),
                "bracket": br.to_json(), "overall": rep.overall}


def check_frobenius(seed):
    f = _quad(-1)
    exact = specialization_profile(f, 1, 2, seed=seed).degrees[-1]
    samples = frobenius_samples(f, 1, 2, 25, seed=seed)
    ok = len(samples) == 25 and all(exact % s.cycle_lcm == 0 and sum(s.degrees) == 4 for s in samples)
    return ok, {"exact": exact, "primes": [s.prime for s in samples], "lcms": sorted({s.cycle_lcm for s in samples})}


def check_determinism(seed):
    a = criterion_report(_quad(0), 3, RunConfig(seed=seed)).dumps()
    b = criterion_report(_quad(0), 3, RunConfig(seed=seed)).dumps()
    return a == b, {"identical": a == b}


CHECKS = (
    (1, "pcf-classification", check_pcf),
    (2, "wreath-orders", check_wreath_orders),
    (3, "frattini-oracle", check_frattini),
    (4, "free-group-counts", check_free_group),
    (5, "splitting-degrees", check_splitting),
    (6, "power-map-oracle", check_power_map),
    (7, "constant-containment", check_constants),
    (8, "criterion", check_criterion),
    (9, "anomaly-handling", check_anomaly),
    (10, "frobenius-consistency", check_frobenius),
    (11, "determinism", check_determinism),
)


def run_selftest(seed: int = 42) -> dict:
    results = []
    for number, name, fn in CHECKS:
        ok, detail = fn(seed)
        results.append({"criterion": number, "name": name, "passed": bool(ok), "detail": detail})
    return {"schema": "arbor-kit/1", "seed": seed, "passed": all(r["passed"] for r in results),
            "criteria": results}
