import unittest

from hypothesis import given, strategies as st

from exceptions import InvalidParameterError
from numerics import PairGK, bn_gap, boundary_sequence, boundary_sequence_rev, classical_rho, default_q, q_limit, \
    rho, strict_semistable_excluded


class TestNumerics(unittest.TestCase):

    def test_pair(self):
        p = PairGK(12, 7)

        assert p.k1 == 3
        assert p.is_odd
        assert p == PairGK(12, 7)
        assert p != PairGK(12, 8)
        assert p != (12, 7)
        assert str(p) == "(12,7)"
        assert sorted([PairGK(15, 8), PairGK(6, 5), PairGK(12, 7)]) == [PairGK(6, 5), PairGK(12, 7), PairGK(15, 8)]

    def test_pair_invalid(self):
        self.assertRaises(InvalidParameterError, PairGK, 0, 5)
        self.assertRaises(InvalidParameterError, PairGK, 6, 1)

    def test_rho(self):
        assert rho(PairGK(6, 5)) == 0
        assert rho(PairGK(12, 7)) == 5
        assert rho(PairGK(15, 8)) == 6
        assert rho(PairGK(19, 9)) == 9

    def test_bn_gap(self):
        assert bn_gap(PairGK(6, 5)) == -1
        assert bn_gap(PairGK(12, 7)) == -1
        assert bn_gap(PairGK(15, 8)) == -2
        assert bn_gap(PairGK(16, 8)) == 0

    def test_boundary_sequence(self):
        assert boundary_sequence(5) == [0, 0, 1, 1, 2]
        assert boundary_sequence(4) == [0, 0, 1, 1]
        assert boundary_sequence_rev(5) == [2, 1, 1, 0, 0]
        self.assertRaises(InvalidParameterError, boundary_sequence, 1)

    def test_strict_semistable_excluded(self):
        excluded, reason = strict_semistable_excluded(PairGK(6, 5))
        assert excluded
        assert classical_rho(3, 5, 6) == -3

        excluded, reason = strict_semistable_excluded(PairGK(16, 8))
        assert not excluded
        assert "not negative" in reason

    def test_q_bounds(self):
        assert default_q(2) == 1
        assert default_q(6) == 2
        assert q_limit(13) == 2
        assert q_limit(5) == 1

    @given(st.integers(min_value=1, max_value=500), st.integers(min_value=2, max_value=60))
    def test_bn_gap_parity(self, g, k):
        gap = bn_gap(PairGK(g, k))
        assert gap % 2 == (1 if k % 2 == 1 else 0)

    @given(st.integers(min_value=1, max_value=40))
    def test_q_limit_matches_default(self, k1):
        assert q_limit(2 * k1 + 1) == default_q(k1)
