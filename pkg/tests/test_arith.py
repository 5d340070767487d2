from functools import reduce

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from arborkit.arith import (GF, QQ, UniPoly, discriminant, factor_mod_p, factor_over_rationals, gcd,
                            parse_poly, resultant, squarefree_part, xgcd)
from arborkit.arith import dense
from arborkit.errors import CapExceeded, DomainMismatch, ParseError, ZeroDivisionPoly

small_ints = st.integers(min_value=-9, max_value=9)
polys = st.lists(small_ints, min_size=1, max_size=6).map(lambda cs: UniPoly(cs, QQ))
nonzero_polys = polys.filter(lambda f: not f.is_zero())


def P(text):
    return UniPoly.parse(text)


class TestParsing:
    def test_round_trip_examples(self):
        for text in ["x^4-2*x^2-1", "3*x^3-1/2*x+7", "x", "-x^2", "0", "5"]:
            assert str(P(text)) == text

    def test_implicit_multiplication_and_powers(self):
        assert P("2x^2 + 3x") == P("2*x**2+3*x")
        assert P("(x+1)^3") == P("x^3+3*x^2+3*x+1")
        assert P("-(x-1)(x+1)") == P("1-x^2")
        assert P("x/2 + 1/3") == UniPoly([mpq(1, 3), mpq(1, 2)])

    @pytest.mark.parametrize("bad", ["x^", "x^-1", "(x+1", "x/(x+1)", "x+y", "1/0", ""])
    def test_rejects_bad_input(self, bad):
        with pytest.raises((ParseError, ZeroDivisionError)):
            parse_poly(bad)

    @given(polys)
    def test_str_parse_round_trip(self, f):
        assert P(str(f)) == f


class TestArithmetic:
    def test_basic_examples(self):
        assert gcd(P("x^2-1"), P("x-1")) == P("x-1")
        assert P("x^2-1").compose(P("x^2-1")) == P("x^4-2*x^2")
        assert P("x^2-1")(0) == -1
        q, r = divmod(P("x^3+2*x+5"), P("x^2+1"))
        assert (q, r) == (P("x"), P("x+5"))

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionPoly):
            divmod(P("x+1"), P("0"))

    def test_domain_mismatch(self):
        with pytest.raises(DomainMismatch):
            P("x") + P("x").change_domain(GF(5))

    def test_resultant_and_discriminant(self):
        assert discriminant(P("x^2-2")) == 8
        assert resultant(P("x-1"), P("x+1")) == 2
        assert discriminant(P("x^4-2*x^2-1")) == -1024
        assert discriminant(P("x^3-2")) == -108
        assert resultant(P("x^2+1"), P("x^2-2")) == 9

    def test_mod_p_arithmetic(self):
        f = P("x^2-1").change_domain(GF(5))
        assert str(f) == "x^2+4"
        assert gcd(f, P("x+4").change_domain(GF(5))) == P("x-1").change_domain(GF(5))

    @given(polys, polys, polys)
    def test_ring_axioms(self, a, b, c):
        assert (a + b) * c == a * c + b * c
        assert (a * b) * c == a * (b * c)

    @given(polys, nonzero_polys)
    def test_division_identity(self, a, b):
        q, r = divmod(a, b)
        assert q * b + r == a
        assert r.degree < b.degree

    @given(nonzero_polys, nonzero_polys)
    def test_xgcd_bezout(self, a, b):
        g, s, t = xgcd(a, b)
        assert s * a + t * b == g
        assert g == gcd(a, b)

    @given(nonzero_polys, nonzero_polys)
    def test_resultant_vanishes_iff_common_factor(self, a, b):
        if a.degree < 1 or b.degree < 1:
            return
        assert (resultant(a, b) == 0) == (gcd(a, b).degree > 0)

    @given(polys, polys, st.integers(-5, 5))
    def test_compose_matches_evaluation(self, a, b, x):
        assert a.compose(b)(x) == a(b(x))

    @given(st.lists(small_ints, min_size=1, max_size=40), st.lists(small_ints, min_size=1, max_size=40))
    def test_kronecker_product_matches_schoolbook(self, a, b):
        assert dense.zmul(a, b) == dense._school(a, b)
        ua, ub = [abs(x) for x in a], [abs(x) for x in b]
        assert dense.umul(ua, ub) == dense._school(ua, ub)

    def test_kronecker_with_zero_operand(self):
        big = [10 ** 40] * 20
        assert dense.zmul(big, [0] * 20) == [0] * 39


class TestFactorModP:
    def test_examples(self):
        fl = factor_mod_p(P("x^2-1"), 5)
        assert [str(f) for f, _ in fl] == ["x+1", "x+4"]
        assert factor_mod_p(P("x^2+1"), 3).is_irreducible()
        assert factor_mod_p(P("x^4-2*x^2-1"), 7).degrees() == [1, 1, 2]
        assert factor_mod_p(P("x^6-1"), 7).degrees() == [1] * 6

    def test_repeated_factors(self):
        fl = factor_mod_p(P("(x+1)^3*(x^2+1)"), 3)
        assert [(str(f), m) for f, m in fl] == [("x+1", 3), ("x^2+1", 1)]

    def test_characteristic_two(self):
        fl = factor_mod_p(P("x^4+x+1"), 2)
        assert fl.is_irreducible()
        assert factor_mod_p(P("x^2+1"), 2).factors[0][1] == 2

    @given(nonzero_polys, st.sampled_from([2, 3, 5, 7, 101]))
    def test_product_recovers_input(self, f, p):
        g = f.change_domain(GF(p))
        if g.is_zero():
            return
        fl = factor_mod_p(g)
        assert fl.expand() == g
        for h, _ in fl:
            assert h.lc == 1

    @given(nonzero_polys, nonzero_polys)
    def test_factorization_of_product_is_merge(self, a, b):
        p = 11
        ga, gb = a.change_domain(GF(p)), b.change_domain(GF(p))
        if ga.is_zero() or gb.is_zero():
            return
        merged = {}
        for fl in (factor_mod_p(ga), factor_mod_p(gb)):
            for h, m in fl:
                merged[h] = merged.get(h, 0) + m
        assert dict(factor_mod_p(ga * gb).factors) == merged


class TestFactorOverRationals:
    def test_examples(self):
        assert str(factor_over_rationals(P("x^4-2*x^2"))) == "1 * (x)^2 * (x^2-2)"
        assert factor_over_rationals(P("x^4-2*x^2-1")).is_irreducible()
        assert str(factor_over_rationals(P("x^2-4"))) == "1 * (x-2) * (x+2)"
        assert str(factor_over_rationals(P("x^6-1"))) == "1 * (x-1) * (x+1) * (x^2-x+1) * (x^2+x+1)"

    def test_unit_and_rational_coefficients(self):
        fl = factor_over_rationals(P("3*x^2-3/4"))
        assert fl.unit == 3
        assert [str(f) for f, _ in fl] == ["x-1/2", "x+1/2"]

    def test_swinnerton_dyer_like_input_stays_irreducible(self):
        # x^8 - 40x^6 + 352x^4 - 960x^2 + 576 is the minimal polynomial of sqrt2+sqrt3+sqrt5
        f = P("x^8-40*x^6+352*x^4-960*x^2+576")
        assert factor_over_rationals(f).is_irreducible()

    def test_degree_forty_product(self):
        pieces = [P(f"x^2-{k}") for k in (2, 3, 5, 6, 7)] + [P("x^10+x+1"), P("x^20-x^3+2")]
        f = reduce(lambda a, b: a * b, pieces)
        fl = factor_over_rationals(f)
        assert fl.expand() == f
        assert fl.degrees() == [2, 2, 2, 2, 2, 10, 20]

    def test_subset_cap(self):
        f = P("x^8-40*x^6+352*x^4-960*x^2+576")
        with pytest.raises(CapExceeded):
            factor_over_rationals(f, subset_cap=1)

    def test_zero_rejected(self):
        with pytest.raises(ZeroDivisionPoly):
            factor_over_rationals(P("0"))

    @given(st.lists(nonzero_polys, min_size=1, max_size=3))
    def test_expand_recovers_input(self, fs):
        f = reduce(lambda a, b: a * b, fs)
        fl = factor_over_rationals(f)
        assert fl.expand() == f
        for h, _ in fl:
            assert h.lc == 1 and factor_over_rationals(h).is_irreducible()

    @given(nonzero_polys)
    def test_squarefree_part_has_simple_roots(self, f):
        s = squarefree_part(f * f)
        if s.degree > 0:
            assert gcd(s, s.derivative()).degree == 0
