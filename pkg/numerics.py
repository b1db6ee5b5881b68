from __future__ import annotations

from typing import List, Tuple

from exceptions import InvalidParameterError


class PairGK:
    """A genus and section count (g, k), with k1 = floor(k/2)"""

    def __init__(self, g: int, k: int):
        if g < 1:
            raise InvalidParameterError("Genus must be positive, got {0}".format(g))
        if k < 2:
            raise InvalidParameterError("Section count must be at least 2, got {0}".format(k))
        self.g = g
        self.k = k

    @property
    def k1(self) -> int:
        return self.k // 2

    @property
    def is_odd(self) -> bool:
        return self.k % 2 == 1

    def __eq__(self, other):
        if not isinstance(other, PairGK):
            return False

        return self.g == other.g and self.k == other.k

    def __hash__(self):
        return hash((self.g, self.k))

    def __lt__(self, other: PairGK) -> bool:
        return (self.k, self.g) < (other.k, other.g)

    def __repr__(self):
        return "({0},{1})".format(self.g, self.k)

    def to_tuple(self) -> Tuple[int, int]:
        return self.g, self.k


def rho(p: PairGK) -> int:
    return 3 * p.g - 3 - p.k * (p.k + 1) // 2


def bn_gap(p: PairGK) -> int:
    """L(g,k): 2(g - k1^2) for even k, 2(g - k1^2 - k1) - 1 for odd k. Always an integer."""
    if p.is_odd:
        return 2 * p.g - 2 * p.k1 * p.k1 - 2 * p.k1 - 1

    return 2 * (p.g - p.k1 * p.k1)


def boundary_sequence(k: int) -> List[int]:
    """([0]_2, [1]_2, ..., [k1-1]_2, k1) for odd k, without the final k1 for even k"""
    if k < 2:
        raise InvalidParameterError("Section count must be at least 2, got {0}".format(k))

    return [i // 2 for i in range(k)]


def boundary_sequence_rev(k: int) -> List[int]:
    return list(reversed(boundary_sequence(k)))


def classical_rho(k: int, d: int, g: int) -> int:
    return k * (d - k + 1) - (k - 1) * g


def strict_semistable_excluded(p: PairGK) -> Tuple[bool, str]:
    """True when L(g,k) < 0 and the classical number controlling strictly semistable limits is negative"""

    gap = bn_gap(p)
    if gap >= 0:
        return False, "L(g,k) = {0} is not negative".format(gap)

    rank = p.k1 + 1 if p.is_odd else p.k1
    classical = classical_rho(rank, p.g - 1, p.g)
    if classical >= 0:
        return False, "rho({0},{1},{2}) = {3} is not negative".format(rank, p.g - 1, p.g, classical)

    return True, "L(g,k) = {0} and rho({1},{2},{3}) = {4}".format(gap, rank, p.g - 1, p.g, classical)


def default_q(k1: int) -> int:
    """Largest admissible speed parameter of the first construction"""
    return max(1, k1 // 3)


def q_limit(k: int) -> int:
    """The same bound written in terms of an odd k"""
    return max(1, (k - 1) // 6)
