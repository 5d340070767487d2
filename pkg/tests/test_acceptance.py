"""Acceptance criteria 1-11, one pass/fail line each on the terminal."""

import json
import subprocess
import sys
import time

import pytest

from arborkit import oracles
from arborkit import tower as tw
from arborkit.arboreal import ProfileStore, constant_candidates, frobenius_samples, gn_bracket, specialization_profile
from arborkit.arith import UniPoly
from arborkit.criterion import KPrimeHypothesis, criterion_report, evaluate_criterion
from arborkit.dynamics import CriticalOrbit, NotPCF, UnicriticalMap, collision_condition, critical_orbit, escape_bound
from arborkit.treegroup import (WreathDescriptor, brute_force_frattini, free_group_index_p_normal_count, group_order,
                                maximal_subgroup_count, verify_free_group_count)


def quad(c):
    return UnicriticalMap(2, 1, c)


@pytest.fixture
def report(capsys):
    def emit(number, name, ok, detail=""):
        with capsys.disabled():
            print(f"\n[acceptance {number:2d}] {'PASS' if ok else 'FAIL'} {name} {detail}".rstrip())
        assert ok
    return emit


def test_c01_pcf_classification(report):
    t0 = time.perf_counter()
    ok = True
    for c, N in ((0, 1), (-1, 2), (-2, 3)):
        orb = critical_orbit(quad(c))
        ok &= isinstance(orb, CriticalOrbit) and orb.N == N
    for c in (1, -3):
        f = quad(c)
        cert = critical_orbit(f)
        ok &= isinstance(cert, NotPCF)
        ok &= abs(f.iterate(0, cert.index)) > escape_bound(f)
        ok &= all(abs(f.iterate(0, i)) <= escape_bound(f) for i in range(cert.index))
    elapsed = time.perf_counter() - t0
    report(1, "PCF classification", ok and elapsed < 1.0, f"({elapsed:.3f}s)")


def test_c02_wreath_orders(report):
    orders = [group_order(WreathDescriptor(2, 1, k)) for k in range(1, 5)]
    counts = [sum(1 for _ in WreathDescriptor(2, 1, k).elements()) for k in range(1, 5)]
    report(2, "wreath orders", orders == counts == [2, 8, 128, 32768], f"{orders}")


def test_c03_frattini(report):
    got = [brute_force_frattini(WreathDescriptor(2, 1, k)) for k in (2, 3)]
    want = [(k, maximal_subgroup_count(2, 1, k)) for k in (2, 3)]
    report(3, "Frattini oracle vs formula", got == want == [(2, 3), (3, 7)], f"{got}")


def test_c04_free_group(report):
    pairs = [(1, 2), (2, 2), (3, 2), (4, 2), (1, 3), (2, 3), (3, 3)]
    brute = [verify_free_group_count(s, p) for s, p in pairs]
    closed = [free_group_index_p_normal_count(s, p) for s, p in pairs]
    report(4, "free-group counts", brute == closed, f"{brute}")


def test_c05_splitting(report):
    deg = tw.splitting_tower(UniPoly.parse("x^4-2*x^2-1"))[1]
    a = specialization_profile(quad(-1), 1, 2).degrees
    b = specialization_profile(quad(-1), 3, 1).degrees
    report(5, "splitting degrees", (deg, a, b) == (8, [2, 8], [1]), f"{deg} {a} {b}")


def test_c06_power_map_oracle(report):
    ok = True
    for alpha in (3, 5):
        engine = specialization_profile(quad(0), alpha, 3).degrees
        ok &= engine == [oracles.power_map_level_degree(i) for i in (1, 2, 3)]
    report(6, "closed-form x^2 oracle", ok)


def test_c07_containment(report):
    store = ProfileStore()
    c2 = constant_candidates(quad(0), 2, [3, 5], store=store)
    c3 = constant_candidates(quad(0), 3, [3, 5], store=store)
    ok = c2.statuses[-1].status == "supported" and c2.statuses[-1].depth <= 2
    ok &= sorted(c3.supported()) == [-2, -1, 2]
    for cands in (c2, c3):
        for d in cands.supported():
            depth = cands.statuses[d].depth
            ok &= all(tw.is_square(store.get(quad(0), a, depth).tower(depth), d) for a in (3, 5))
    report(7, "constant-field containment", ok)


def test_c08_criterion(report):
    full = (-1, 2)
    r3 = criterion_report(quad(0), 3)
    r2 = criterion_report(quad(0), 2)
    store = ProfileStore()
    e = evaluate_criterion(quad(-1), 1, KPrimeHypothesis(()), gn_bracket(quad(-1), [1, 2], 2, store=store),
                           store=store)
    ok = r3.overall == "CertifiedEqual" and r3.result(full).lhs == r3.result(full).rhs == 8
    ok &= r2.overall == "CertifiedNotEqual" and r2.result(full).lhs == 4 < r2.result(full).rhs == 8
    ok &= e.verdict == "equal" and e.lhs == 8
    report(8, "finite criterion", ok)


def test_c09_anomaly(report):
    store = ProfileStore()
    br = gn_bracket(quad(-2), [1, 3, 5, 7], 3, store=store)
    measured = max(store.get(quad(-2), a, 3).degrees[2] for a in (1, 3, 5, 7))
    ok = collision_condition(quad(-1)) is not None and collision_condition(quad(-2)) is not None
    ok &= not br.certified and br.upper == 128 and br.lower == measured and br.lower <= br.upper
    ok &= criterion_report(quad(-2), 1).overall == "Conditional"
    report(9, "anomaly handling", ok, f"bracket=[{br.lower}, {br.upper}]")


def test_c10_frobenius(report):
    exact = specialization_profile(quad(-1), 1, 2).degrees[-1]
    samples = frobenius_samples(quad(-1), 1, 2, 25)
    ok = exact == 8 and len(samples) == 25
    ok &= all(exact % s.cycle_lcm == 0 and sum(s.degrees) == 4 for s in samples)
    report(10, "Frobenius consistency", ok)


def test_c11_determinism(report):
    cmd = [sys.executable, "-m", "arborkit", "selftest", "--seed", "42", "--json"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    ok = a == b and json.loads(a)["passed"]
    report(11, "determinism", ok)
