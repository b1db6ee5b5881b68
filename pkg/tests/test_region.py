import unittest
from fractions import Fraction

from hypothesis import given, strategies as st

from region import DerivationPath, Move, START, asymptotic_ratio, derivation_path, enumerate_region, g_min_even, \
    g_min_odd, in_region, move_first, move_second, move_third, region_rows, region_tags, rho_increment
from exceptions import InvalidParameterError, NotApplicableError
from numerics import PairGK, bn_gap, default_q, rho, strict_semistable_excluded


class TestRegion(unittest.TestCase):

    def test_moves(self):
        assert move_first(START, 1) == PairGK(19, 9)
        assert move_second(START) == PairGK(12, 7)
        assert move_third(START) == PairGK(15, 8)

    def test_rho_increment(self):
        assert rho_increment("first", 2, 1) == 9
        assert rho_increment("second", 2) == 5
        assert rho_increment("third", 2) == 6
        self.assertRaises(InvalidParameterError, rho_increment, "fourth", 2)

    def test_lower_bounds(self):
        assert g_min_odd(2) == 6
        assert g_min_odd(3) == 12
        assert g_min_odd(5) == 29
        assert g_min_even(4) == 15
        assert g_min_even(5) == 24

    def test_move_parse(self):
        assert Move.parse("first(q=2)") == Move("first", 2)
        assert Move.parse(" second ") == Move("second")
        assert repr(Move("first")) == "first(q=1)"
        assert Move("second", 3).q == 1
        self.assertRaises(InvalidParameterError, Move.parse, "fourth")
        self.assertRaises(InvalidParameterError, Move, "first", 0)

    def test_move_apply(self):
        assert Move("second").apply(START) == PairGK(12, 7)
        self.assertRaises(InvalidParameterError, Move("first", 2).apply, START)
        self.assertRaises(InvalidParameterError, Move("second").apply, PairGK(15, 8))

    def test_region_tags(self):
        assert region_tags(PairGK(12, 7)) == ["S1", "S3"]
        assert region_tags(PairGK(15, 8)) == ["T1"]
        assert region_tags(PairGK(19, 9)) == ["S2"]
        assert region_tags(PairGK(16, 8)) == ["T1", "prior"]
        assert region_tags(PairGK(5, 5)) == []

    def test_in_region(self):
        verdict = in_region(PairGK(15, 8))
        assert verdict
        assert verdict.constructible
        assert verdict.to_dict()["tags"] == ["T1"]

        verdict = in_region(PairGK(19, 9))
        assert not verdict
        assert verdict.constructible
        assert verdict.flags

        verdict = in_region(PairGK(14, 8))
        assert not verdict.constructible
        assert verdict.flags

        assert not in_region(PairGK(16, 8)).constructible
        assert not in_region(PairGK(10, 6)).constructible

    def test_enumerate_region(self):
        pairs = enumerate_region(8)

        assert pairs[:2] == [PairGK(6, 5), PairGK(12, 7)]
        assert [p.g for p in pairs if p.k == 8] == [15, 16, 17, 18, 19, 20]
        assert region_rows(8) == [{"k": 5, "g_min": 6, "g_max": 6, "count": 1},
                                  {"k": 7, "g_min": 12, "g_max": 12, "count": 1},
                                  {"k": 8, "g_min": 15, "g_max": 20, "count": 6}]
        self.assertRaises(InvalidParameterError, enumerate_region, 4)

    def test_asymptotic_ratio(self):
        assert asymptotic_ratio(2) == Fraction(3, 2)
        assert asymptotic_ratio(3) == Fraction(4, 3)
        self.assertRaises(InvalidParameterError, asymptotic_ratio, 1)

    def test_asymptotic_ratio_approaches_eleven_twelfths(self):
        for k1 in range(20, 501):
            gap = asymptotic_ratio(k1) - Fraction(11, 12)
            assert 0 < gap < Fraction(2, k1)

    def test_region_excludes_strictly_semistable(self):
        for p in enumerate_region(21):
            if "prior" not in in_region(p).tags:
                assert strict_semistable_excluded(p)[0]

    def test_derivation_path(self):
        assert derivation_path(START).moves == []
        assert derivation_path(PairGK(12, 7)).moves == [Move("second")]
        assert derivation_path(PairGK(15, 8)).moves == [Move("third")]
        assert derivation_path(PairGK(19, 9)).moves == [Move("first", 1)]
        assert derivation_path(PairGK(20, 9)).moves == [Move("second"), Move("second")]
        assert derivation_path(PairGK(12, 7)).to_dict() == {"start": [6, 5], "moves": ["second"], "end": [12, 7]}

    def test_derivation_path_rejected(self):
        self.assertRaises(NotApplicableError, derivation_path, PairGK(16, 8))
        self.assertRaises(InvalidParameterError, derivation_path, PairGK(5, 5))

    def test_derivation_paths_cover_region(self):
        memo = {}
        for p in enumerate_region(15):
            try:
                path = derivation_path(p, memo)
            except NotApplicableError:
                assert bn_gap(p) >= 0
                continue
            assert path.end == p
            assert [q.k for q in path.pairs] == sorted(q.k for q in path.pairs)

    def test_path_validate(self):
        self.assertRaises(InvalidParameterError, DerivationPath(START, [Move("third"), Move("second")]).validate)
        self.assertRaises(InvalidParameterError, DerivationPath(PairGK(5, 5), []).validate)

    @given(st.integers(min_value=2, max_value=100), st.integers(min_value=0, max_value=200), st.data())
    def test_rho_increments(self, k1, extra, data):
        p = PairGK(k1 * k1 + k1 + extra, 2 * k1 + 1)
        q = data.draw(st.integers(min_value=1, max_value=default_q(k1)))

        assert rho(move_first(p, q)) - rho(p) == rho_increment("first", k1, q)
        assert rho(move_second(p)) - rho(p) == rho_increment("second", k1)
        assert rho(move_third(p)) - rho(p) == rho_increment("third", k1)
        assert bn_gap(move_second(p)) == bn_gap(p)
        assert bn_gap(move_first(p, q)) == bn_gap(p) - 2 * q
        assert bn_gap(move_third(p)) == bn_gap(p) - 1
