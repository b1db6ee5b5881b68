import itertools
import random
import unittest

from hypothesis import assume, given, settings, strategies as st

from exceptions import CapExceededError, InvalidParameterError, NotApplicableError
from lstab import ComponentType, LChain, SubsheafProfile, chain_from_json, chain_to_json, chi_interval, chi_rank1, \
    from_degrees, is_l_semistable_bruteforce, mu_reference, ssimple_criterion, twist_equivalence


SMALL_OFFSETS = [(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)]


@st.composite
def chains(draw, max_components=5):
    """Chains without summand gaps and with at most two unstable components"""
    offsets = draw(st.lists(st.sampled_from(SMALL_OFFSETS), min_size=1,
                            max_size=max_components).filter(lambda o: len([e for e in o if e[0] != e[1]]) <= 2))
    n = len(offsets)
    glued = draw(st.sets(st.tuples(st.integers(1, max(1, n - 1)), st.sampled_from([1, 2]), st.sampled_from([1, 2]))))
    doubles = draw(st.sets(st.integers(1, n)))

    isomorphic = [j for j in doubles if offsets[j - 1][0] == offsets[j - 1][1]]
    return LChain(offsets, [x for x in glued if x[0] < n], isomorphic)


class TestLStab(unittest.TestCase):

    def test_component_types(self):
        chain = LChain([(1, 1), (1, 1), (0, 1), (0, 2)], isomorphic=[2])

        assert chain.n == 4
        assert chain.f == [2, 2, 1, 2]
        assert chain.component_type(1) is ComponentType.SEMISTABLE
        assert chain.component_type(2) is ComponentType.DOUBLE
        assert chain.component_type(3) is ComponentType.UNSTABLE
        assert chain.component_type(4) is ComponentType.GAP
        assert chain.unstable == [3]

    def test_chain_invalid(self):
        self.assertRaises(InvalidParameterError, LChain, [])
        self.assertRaises(InvalidParameterError, LChain, [(2, 1)])
        self.assertRaises(InvalidParameterError, LChain, [(1, 1)], [(1, 1, 2)])
        self.assertRaises(InvalidParameterError, LChain, [(0, 1)], isomorphic=[1])

    def test_flags(self):
        assert LChain([(2, 2), (1, 1)]).flags == ["component 1 has f=4"]
        assert LChain([(1, 1)]).flags == []

    def test_euler_characteristic(self):
        assert LChain([(1, 1)]).euler_characteristic(0) == 2
        assert LChain([(1, 1), (0, 1)]).euler_characteristic(1) == 4 + 3 - 2

    def test_profile(self):
        p = SubsheafProfile([2], [1, 1, 0], start=1)

        assert p.end == 3
        assert p.m == 2
        assert p.intervals == [(1, 2), (3, 3)]

    def test_chi_interval(self):
        chain = LChain([(1, 1), (1, 1)], [(1, 1, 1)])

        assert chi_rank1(chain, SubsheafProfile([], [1, 1]), 0) == 1
        assert chi_interval(chain, SubsheafProfile([], [1], start=2), 0) == 0
        self.assertRaises(InvalidParameterError, chi_rank1, chain, SubsheafProfile([], [1], start=2), 0)
        self.assertRaises(InvalidParameterError, chi_interval, chain, SubsheafProfile([], [5, 1]), 0)

    def test_bruteforce_semistable(self):
        assert is_l_semistable_bruteforce(LChain([(1, 1)])) == (True, None)
        assert is_l_semistable_bruteforce(LChain([(0, 1), (0, 1)]))[0]

    def test_bruteforce_destabilized(self):
        semistable, witness = is_l_semistable_bruteforce(LChain([(0, 1)]))

        assert not semistable
        assert witness.eps == [1]

        semistable, witness = is_l_semistable_bruteforce(LChain([(0, 1), (0, 1)], [(1, 2, 2)]))
        assert not semistable
        assert witness.m == 1

    def test_bruteforce_cap(self):
        self.assertRaises(CapExceededError, is_l_semistable_bruteforce, LChain([(1, 1)] * 3), 2)

    def test_ssimple_criterion(self):
        assert ssimple_criterion(LChain([(1, 1), (1, 1)]))
        assert not ssimple_criterion(LChain([(0, 1)]))
        assert ssimple_criterion(LChain([(0, 1), (0, 1)]))
        assert not ssimple_criterion(LChain([(0, 1), (0, 1)], [(1, 2, 2)]))
        assert not ssimple_criterion(LChain([(0, 1), (1, 1), (0, 1)], [(2, 1, 2)], [2]))

    def test_ssimple_not_applicable(self):
        self.assertRaises(NotApplicableError, ssimple_criterion, LChain([(0, 2)]))
        self.assertRaises(NotApplicableError, ssimple_criterion, LChain([(0, 1)] * 3))

    def test_twist_equivalence(self):
        twisted = twist_equivalence(LChain([(1, 1), (1, 1)], [(1, 1, 2)]), 1, 1)

        assert twisted.offsets == [(2, 2), (0, 0)]
        assert twisted.glued == {(1, 1, 2)}
        self.assertRaises(InvalidParameterError, twist_equivalence, twisted, 2, 1)

    def test_gap_chain_l_semistable_but_not_mu_semistable(self):
        chain = LChain([(0, 2), (0, 0)])

        assert chain.euler_characteristic(0) == 0
        assert is_l_semistable_bruteforce(chain) == (True, None)

        semistable, witness = mu_reference(chain)
        assert not semistable
        assert (witness.start, witness.end, witness.eps) == (1, 1, [2])
        assert chi_interval(chain, witness, 0) == 1

    def test_gap_chain_glued(self):
        semistable, witness = is_l_semistable_bruteforce(LChain([(0, 2), (0, 0)], [(1, 2, 1)]))

        assert not semistable
        assert witness.m == 1
        assert witness.eps == [2, 0]

    def test_mu_reference(self):
        assert mu_reference(LChain([(0, 0)])) == (True, None)
        self.assertRaises(NotApplicableError, mu_reference, LChain([(0, 1)]))

    def test_from_degrees(self):
        chain = from_degrees([2, 1, 2], ["semistable", "unstable", "double"])

        assert chain.offsets == [(1, 1), (0, 1), (1, 1)]
        assert chain.component_type(3) is ComponentType.DOUBLE
        self.assertRaises(InvalidParameterError, from_degrees, [1], ["semistable"])
        self.assertRaises(InvalidParameterError, from_degrees, [2], ["unstable"])
        self.assertRaises(InvalidParameterError, from_degrees, [2], ["stable"])
        self.assertRaises(InvalidParameterError, from_degrees, [2, 2], ["semistable"])

    def test_chain_json(self):
        chain = chain_from_json({"f": [2, 2], "stability": ["semistable", "double"], "glued": [[1, 1, 2]]})

        assert chain.component_type(2) is ComponentType.DOUBLE
        assert chain_from_json(chain_to_json(chain)) == chain
        self.assertRaises(InvalidParameterError, chain_from_json, {"f": [2]})

    @settings(max_examples=200)
    @given(chains())
    def test_ssimple_agrees_with_bruteforce(self, chain):
        assert ssimple_criterion(chain) == is_l_semistable_bruteforce(chain)[0]

    @given(chains(max_components=4), st.integers(-3, 3))
    def test_twist_keeps_total_offset(self, chain, amount):
        if chain.n < 2:
            return
        assert sum(twist_equivalence(chain, 1, amount).f) == sum(chain.f)

    @settings(max_examples=1000)
    @given(chains(max_components=6), st.integers(-3, 3), st.data())
    def test_twist_keeps_bruteforce_verdict(self, chain, amount, data):
        assume(chain.n >= 2)
        node = data.draw(st.integers(1, chain.n - 1))

        assert is_l_semistable_bruteforce(twist_equivalence(chain, node, amount))[0] == \
            is_l_semistable_bruteforce(chain)[0]

    def test_small_chains_exhaustive(self):
        for n in range(1, 4):
            gluings = [(node, left, right) for node in range(1, n) for left in (1, 2) for right in (1, 2)]
            for offsets in itertools.product(SMALL_OFFSETS, repeat=n):
                balanced = [j for j, (e1, e2) in enumerate(offsets, 1) if e1 == e2]
                for mask in range(2 ** len(gluings)):
                    glued = [x for bit, x in enumerate(gluings) if mask >> bit & 1]
                    for size in range(len(balanced) + 1):
                        for isomorphic in itertools.combinations(balanced, size):
                            chain = LChain(list(offsets), glued, isomorphic)
                            verdict = is_l_semistable_bruteforce(chain)[0]
                            if len(chain.unstable) <= 2:
                                assert ssimple_criterion(chain) == verdict, chain
                            if n > 1:
                                assert is_l_semistable_bruteforce(twist_equivalence(chain, 1, 1))[0] == verdict

    def test_longer_chains_against_criterion(self):
        rng = random.Random(11)
        for _ in range(1000):
            n = rng.randint(4, 6)
            offsets = [rng.choice(SMALL_OFFSETS) for _ in range(n)]
            if len([o for o in offsets if o[0] != o[1]]) > 2:
                continue
            glued = [(node, left, right) for node in range(1, n) for left in (1, 2) for right in (1, 2)
                     if rng.random() < 0.5]
            isomorphic = [j for j, (e1, e2) in enumerate(offsets, 1) if e1 == e2 and rng.random() < 0.3]
            chain = LChain(offsets, glued, isomorphic)

            assert ssimple_criterion(chain) == is_l_semistable_bruteforce(chain)[0], chain
