import json

import pytest

from arborkit.arboreal import GNBracket, ProfileStore, gn_bracket
from arborkit.arith import UniPoly
from arborkit.criterion import (HYPOTHESES, KPrimeHypothesis, RunConfig, criterion_report, evaluate_criterion,
                                frattini_depth, square_class_rank)
from arborkit.dynamics import UnicriticalMap
from arborkit.errors import NotPCFError, StrictlyPostCritical, Unsupported


def quad(c):
    return UnicriticalMap(2, 1, c)


FULL = KPrimeHypothesis((-1, 2))


class TestHypotheses:
    def test_rank_is_exact(self):
        assert square_class_rank(()) == 0
        assert square_class_rank((-1,)) == 1
        assert square_class_rank((-1, 2)) == 2
        assert square_class_rank((-1, 2, -2)) == 2
        assert KPrimeHypothesis((-1, 2, -2)).rank == 2

    def test_lattice_is_the_five_subgroups(self):
        spans = {h.classes for h in HYPOTHESES}
        assert len(spans) == 5
        assert FULL.classes == {-1, 2, -2}
        assert KPrimeHypothesis((-2,)).classes == {-2}

    def test_bad_class(self):
        with pytest.raises(Unsupported):
            KPrimeHypothesis((3,))


class TestEvaluate:
    def test_examples(self):
        store = ProfileStore()
        b = gn_bracket(quad(0), [3], 1, store=store)
        r = evaluate_criterion(quad(0), 3, FULL, b, store=store)
        assert (r.lhs, r.rhs, r.verdict) == (8, 8, "equal")
        r = evaluate_criterion(quad(0), 2, FULL, b, store=store)
        assert (r.lhs, r.rhs, r.verdict) == (4, 8, "unequal")
        b1 = gn_bracket(quad(-1), [1, 2], 2, store=store)
        r = evaluate_criterion(quad(-1), 1, KPrimeHypothesis(()), b1, store=store)
        assert (r.lhs, r.rhs, r.verdict) == (8, 8, "equal")

    def test_interval(self):
        b = GNBracket(3, 32, 128)
        r = evaluate_criterion(quad(-2), 3, KPrimeHypothesis(()), b)
        assert r.verdict == "interval" and r.rhs == (32, 128)
        assert r.endpoints == {"lower": "equal", "upper": "unequal"}

    def test_refusals(self):
        b = GNBracket(1, 2, 2)
        with pytest.raises(Unsupported):
            evaluate_criterion(UnicriticalMap(3, 1, 0), 2, FULL, b)
        with pytest.raises(StrictlyPostCritical):
            evaluate_criterion(quad(0), 0, FULL, b)


@pytest.fixture(scope="module")
def reports():
    return {(c, a): criterion_report(quad(c), a) for c, a in ((0, 3), (0, 2), (-2, 1), (-1, 1))}


class TestReport:
    def test_overall(self, reports):
        assert reports[0, 3].overall == "CertifiedEqual"
        assert reports[0, 2].overall == "CertifiedNotEqual"
        assert reports[-2, 1].overall == "Conditional"

    def test_schema(self, reports):
        doc = reports[0, 3].to_json()
        assert doc["schema"] == "arbor-kit/1"
        assert {"schema", "map", "alpha", "N", "bracket", "constants", "hypotheses", "overall"} <= doc.keys()
        assert doc["map"] == {"p": 2, "n": 1, "c": 0}
        assert set(doc["bracket"]) == {"lower", "upper", "certified"}
        for h in doc["hypotheses"]:
            assert {"basis", "rank", "lhs", "rhs", "verdict"} <= h.keys()
        json.loads(reports[0, 3].dumps())

    def test_conditional_payload(self, reports):
        doc = reports[-2, 1].to_json()
        assert doc["bracket"] == {"lower": 32, "upper": 128, "certified": False}
        assert doc["conditions"] and all(c["verdict"] == "interval" for c in doc["conditions"])

    def test_lhs_never_exceeds_upper(self, reports):
        for rep in reports.values():
            for r in rep.results:
                hi = r.rhs[1] if isinstance(r.rhs, tuple) else r.rhs
                assert r.lhs <= hi
                assert hi % r.lhs == 0

    def test_pruning_is_sound(self, reports):
        for rep in reports.values():
            excluded = set(rep.constants.excluded())
            for r in rep.results:
                assert (r.status == "pruned") == bool(r.hypothesis.classes & excluded)

    def test_monotone_consistency(self, reports):
        rep = reports[0, 3]
        store = ProfileStore()
        for i in range(1, rep.N + 1):
            assert store.get(quad(0), 3, i).degrees[i - 1] == gn_bracket(quad(0), [3], i).upper

    def test_determinism(self):
        a = criterion_report(quad(-1), 1, RunConfig(seed=7)).dumps()
        b = criterion_report(quad(-1), 1, RunConfig(seed=7)).dumps()
        assert a == b

    def test_refuses_higher_degree_and_non_pcf(self):
        with pytest.raises(Unsupported):
            criterion_report(UnicriticalMap(2, 2, -1), 3)
        with pytest.raises(NotPCFError):
            criterion_report(quad(1), 3)


class TestFrattiniDepth:
    def test_family(self):
        assert frattini_depth(quad(-1)) == 2
        assert frattini_depth(quad(0)) == 1
        assert frattini_depth(quad(-2)) == 3
        assert frattini_depth(UnicriticalMap(2, 2, -1)) == 2

    def test_outside_family(self):
        assert frattini_depth(UniPoly.parse("x^3+x")) == "exists-unspecified"
        assert frattini_depth(UniPoly.parse("x^2-1")) == 2
