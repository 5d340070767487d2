import pytest

from arborkit import oracles
from arborkit import tower as tw
from arborkit.arboreal import (ProfileStore, check_profile, constant_candidates, euler_phi, frobenius_samples,
                               gn_bracket, specialization_profile, wreath_upper_bound)
from arborkit.cache import JsonlCache
from arborkit.dynamics import UnicriticalMap
from arborkit.errors import CapExceeded, StrictlyPostCritical, Unsupported


def quad(c):
    return UnicriticalMap(2, 1, c)


class TestProfiles:
    @pytest.mark.parametrize("c,alpha,degrees", [
        (-1, 1, [2, 8, 64]),
        (-1, 2, [2, 8]),
        (-1, 3, [1]),
        (0, 3, [2, 8, 32]),
        (0, 5, [2, 8, 32]),
        (0, 2, [2, 8, 16]),  # sqrt2 already lies in Q(zeta_8)
        (-2, 1, [2, 4, 8]),
        (-2, 3, [2, 8, 32]),
        (-2, 5, [2, 8, 32]),
        (-2, 7, [1, 4, 16]),
    ])
    def test_frozen_degrees(self, c, alpha, degrees):
        prof = specialization_profile(quad(c), alpha, len(degrees))
        assert prof.degrees == degrees
        assert check_profile(prof)

    def test_power_map_matches_closed_form(self):
        for a in (3, 5):
            got = specialization_profile(quad(0), a, 3).degrees
            assert got == [oracles.power_map_level_degree(i) for i in (1, 2, 3)]

    def test_level_one_matches_generic_splitting(self):
        for c, a in ((-1, 1), (-2, 3), (0, 5), (-1, 2)):
            f = quad(c)
            for n in (1, 2):
                want = tw.splitting_tower(f.preimage_poly(n, a))[1]
                assert specialization_profile(f, a, n).degrees[-1] == want

    def test_roots_are_roots(self):
        f = quad(-1)
        prof = specialization_profile(f, 2, 2)
        for lvl in prof.levels:
            assert len(lvl.roots) == 2 ** lvl.index
            for r in lvl.roots:
                z = r
                for _ in range(lvl.index):
                    z = z * z + f.c
                assert z == 2

    def test_adjoined_generators(self):
        prof = specialization_profile(quad(-1), 1, 2)
        assert prof.levels[0].adjoined == ["2"]
        assert prof.levels[1].adjoined == ["1+r1", "1-r1"]
        assert prof.to_json()["degrees"] == [2, 8]

    def test_generic_degree(self):
        assert specialization_profile(UnicriticalMap(3, 1, 0), 2, 1).degrees == [6]
        assert specialization_profile(UnicriticalMap(2, 2, 0), 3, 1).degrees == [8]

    def test_refuses_post_critical(self):
        with pytest.raises(StrictlyPostCritical):
            specialization_profile(quad(-1), -1, 2)
        with pytest.raises(StrictlyPostCritical):
            specialization_profile(quad(-2), 2, 1)

    def test_cap(self):
        with pytest.raises(CapExceeded):
            specialization_profile(quad(0), 3, 4, degree_cap=64)


class TestFrobenius:
    def test_examples(self):
        samples = {s.prime: s.degrees for s in frobenius_samples(quad(-1), 1, 1, 4)}
        assert samples[7] == (1, 1)
        assert samples[5] == (2,)
        assert 2 not in samples

    def test_lcm_divides_exact_degree(self):
        exact = specialization_profile(quad(-1), 1, 2).degrees[-1]
        samples = frobenius_samples(quad(-1), 1, 2, 25)
        assert len(samples) == 25
        for s in samples:
            assert exact % s.cycle_lcm == 0
            assert sum(s.degrees) == 4

    def test_bad_primes_skipped(self):
        # disc(x^2 - 2 - 1) for x^2-1 at alpha=2 is 12
        primes = [s.prime for s in frobenius_samples(quad(-1), 2, 1, 5)]
        assert 2 not in primes and 3 not in primes


class TestBracket:
    def test_certified(self):
        br = gn_bracket(quad(-1), [1, 2], 2)
        assert (br.lower, br.upper, br.certified) == (8, 8, True)
        br = gn_bracket(quad(0), [3], 1)
        assert (br.lower, br.upper, br.certified) == (2, 2, True)

    def test_uncertified_x2_minus_2(self):
        store = ProfileStore()
        br = gn_bracket(quad(-2), [1, 3, 5], 3, store=store)
        assert br.upper == 128 and not br.certified
        assert br.lower == max(store.get(quad(-2), a, 3).degrees[2] for a in (1, 3, 5)) == 32

    def test_post_critical_samples_dropped(self):
        br = gn_bracket(quad(-1), [0, -1, 1], 2)
        assert [a for a, _ in br.samples] == [1]

    def test_upper_bound_formula(self):
        assert wreath_upper_bound(quad(-1), 2) == 8
        assert wreath_upper_bound(UnicriticalMap(2, 2, 0), 1) == 4 * euler_phi(4) == 8
        assert euler_phi(9) == 6


class TestConstants:
    def test_power_map(self):
        store = ProfileStore()
        c2 = constant_candidates(quad(0), 2, [3, 5], store=store)
        assert c2.statuses[-1].status == "supported" and c2.statuses[-1].depth == 2
        c3 = constant_candidates(quad(0), 3, [3, 5], store=store)
        assert sorted(c3.supported()) == [-2, -1, 2]
        for d in c3.supported():
            at = c3.statuses[d].depth
            for a in (3, 5):
                assert tw.is_square(store.get(quad(0), a, at).tower(at), d)

    def test_basilica_depth_two(self):
        c = constant_candidates(quad(-1), 2, [1, 2])
        assert c.statuses[-1].status == "excluded" and c.statuses[-1].witness == 2
        assert c.statuses[2].status == "excluded" and c.statuses[2].witness == 2
        # sqrt(1+sqrt3) * sqrt(1-sqrt3) = sqrt(-2), and K_{1,2} holds i and sqrt2
        assert c.statuses[-2].status == "supported"

    def test_minus_two_cross_checked_with_generic_engine(self):
        f = quad(-1)
        K, deg, _ = tw.splitting_tower(f.preimage_poly(2, 2))
        assert deg == 8
        assert tw.is_square(K, -2)
        assert not tw.is_square(K, -1)
        assert not tw.is_square(K, 2)

    def test_exclusion_needs_witness(self):
        c = constant_candidates(quad(-2), 3, [1, 3])
        for d in c.excluded():
            st = c.statuses[d]
            prof = specialization_profile(quad(-2), st.witness, st.depth)
            assert not tw.is_square(prof.tower(st.depth), d)

    def test_untested_without_samples(self):
        c = constant_candidates(quad(-1), 2, [-1, 0])
        assert {s.status for s in c.statuses.values()} == {"untested"}

    def test_unsupported_degree(self):
        with pytest.raises(Unsupported):
            constant_candidates(UnicriticalMap(3, 1, 0), 1, [2])


class TestCache:
    def test_profiles_persist(self, tmp_path):
        path = tmp_path / "cache.jsonl"
        first = ProfileStore(cache=JsonlCache(path)).get(quad(-1), 1, 2)
        lines = path.read_text().splitlines()
        assert len(lines) == 1
        second = ProfileStore(cache=JsonlCache(path)).get(quad(-1), 1, 2)
        assert second.degrees == first.degrees
        assert second.levels[0].roots is None  # came from the cache
        assert tw.is_square(second.tower(2), -1)
        ProfileStore(cache=JsonlCache(path)).get(quad(-1), 1, 2)
        assert path.read_text().splitlines() == lines

    def test_torn_line_ignored(self, tmp_path):
        path = tmp_path / "cache.jsonl"
        cache = JsonlCache(path)
        cache.put("k", "a", {"x": 1})
        with path.open("a") as fh:
            fh.write('{"key": "trunc')
        assert JsonlCache(path).get("k", "a") == {"x": 1}
