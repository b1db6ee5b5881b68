from __future__ import annotations

import itertools
from enum import Enum
from typing import Dict, Iterable, List, Optional, Set, Tuple

from exceptions import CapExceededError, InvalidParameterError, NotApplicableError

ANY_LINE = "any"


class ComponentType(Enum):
    SEMISTABLE = "semistable"
    DOUBLE = "double"
    UNSTABLE = "unstable"
    GAP = "gap"


class LChain:
    """
    A rank-two bundle on a chain of n components, each a sum of two line bundles with Euler characteristics
    A+e1 <= A+e2. glued lists (node, left_line, right_line): the summand line_left of component node meets
    the summand line_right of component node+1 at their common point. Nothing else glues.
    """

    def __init__(self, offsets: List[Tuple[int, int]], glued: Iterable[Tuple[int, int, int]] = (),
                 isomorphic: Iterable[int] = ()):
        if not offsets:
            raise InvalidParameterError("A chain needs at least one component")
        for j, (e1, e2) in enumerate(offsets, 1):
            if e1 > e2:
                raise InvalidParameterError("Component {0} lists offsets ({1},{2}) out of order".format(j, e1, e2))

        self.offsets = [tuple(o) for o in offsets]
        self.glued = set()
        for node, left, right in glued:
            if not 1 <= node < len(offsets) or left not in (1, 2) or right not in (1, 2):
                raise InvalidParameterError("Invalid gluing ({0},{1},{2})".format(node, left, right))
            self.glued.add((node, left, right))

        self.isomorphic = set(isomorphic)
        for j in self.isomorphic:
            if not 1 <= j <= len(offsets) or offsets[j - 1][0] != offsets[j - 1][1]:
                raise InvalidParameterError("Component {0} cannot have isomorphic summands".format(j))

    @property
    def n(self) -> int:
        return len(self.offsets)

    @property
    def f(self) -> List[int]:
        return [e1 + e2 for e1, e2 in self.offsets]

    def component_type(self, j: int) -> ComponentType:
        e1, e2 = self.offsets[j - 1]
        if e1 == e2:
            return ComponentType.DOUBLE if j in self.isomorphic else ComponentType.SEMISTABLE
        if e2 == e1 + 1:
            return ComponentType.UNSTABLE
        return ComponentType.GAP

    @property
    def unstable(self) -> List[int]:
        return [j for j in range(1, self.n + 1) if self.component_type(j) is ComponentType.UNSTABLE]

    @property
    def flags(self) -> List[str]:
        return ["component {0} has f=4".format(j) for j, f in enumerate(self.f, 1) if f == 4]

    def euler_characteristic(self, A: int) -> int:
        return sum(2 * A + f for f in self.f) - 2 * (self.n - 1)

    def options(self, j: int) -> List[Tuple[int, Optional[object]]]:
        """(epsilon, line) choices on component j; line None means a general line of lower degree"""
        e1, e2 = self.offsets[j - 1]
        kind = self.component_type(j)
        if kind is ComponentType.SEMISTABLE:
            return [(e2, 1), (e2, 2), (e1 - 1, None)]
        if kind is ComponentType.DOUBLE:
            return [(e2, ANY_LINE), (e1 - 1, None)]
        return [(e2, 2), (e1, None)]

    def glues(self, node: int, left, right) -> bool:
        if left is None or right is None or ANY_LINE in (left, right):
            return True
        return (node, left, right) in self.glued

    def __eq__(self, other):
        if not isinstance(other, LChain):
            return False

        return self.offsets == other.offsets and self.glued == other.glued and self.isomorphic == other.isomorphic

    def __repr__(self):
        return "LChain({0}, glued={1})".format(self.offsets, sorted(self.glued))


class SubsheafProfile:
    """A rank-one subsheaf on components start..start+len(eps)-1, breaking at the listed nodes"""

    def __init__(self, breaks: Iterable[int], eps: Iterable[int], lines: Optional[Iterable] = None, start: int = 1):
        self.breaks = sorted(set(breaks))
        self.eps = list(eps)
        self.lines = list(lines) if lines is not None else None
        self.start = start

    @property
    def end(self) -> int:
        return self.start + len(self.eps) - 1

    @property
    def m(self) -> int:
        return len(self.breaks) + 1

    @property
    def intervals(self) -> List[Tuple[int, int]]:
        bounds = [self.start - 1] + self.breaks + [self.end]
        return [(bounds[i] + 1, bounds[i + 1]) for i in range(len(bounds) - 1)]

    def to_dict(self) -> Dict:
        return {"start": self.start, "end": self.end, "breaks": self.breaks, "eps": self.eps,
                "lines": self.lines, "m": self.m}


def from_offsets(offsets: List[Tuple[int, int]], glued: Iterable[Tuple[int, int, int]] = (),
                 isomorphic: Iterable[int] = ()) -> LChain:
    return LChain([tuple(o) for o in offsets], [tuple(x) for x in glued], isomorphic)


def from_degrees(f: List[int], stability: List[str], glued: Iterable[Tuple[int, int, int]] = ()) -> LChain:
    """A chain from normalized Euler offsets f_j and a stability class per component"""
    if len(f) != len(stability):
        raise InvalidParameterError("Offsets and stability classes differ in length")

    offsets, isomorphic = [], []
    for j, (value, kind) in enumerate(zip(f, stability), 1):
        if kind in (ComponentType.SEMISTABLE.value, ComponentType.DOUBLE.value):
            if value % 2 == 1:
                raise InvalidParameterError("Semistable component {0} needs an even offset, got {1}".format(j, value))
            offsets.append((value // 2, value // 2))
            if kind == ComponentType.DOUBLE.value:
                isomorphic.append(j)
        elif kind == ComponentType.UNSTABLE.value:
            if value % 2 == 0:
                raise InvalidParameterError("Unstable component {0} needs an odd offset, got {1}".format(j, value))
            offsets.append(((value - 1) // 2, (value + 1) // 2))
        else:
            raise InvalidParameterError("Unknown stability class '{0}'".format(kind))

    return LChain(offsets, glued, isomorphic)


def _check_profile(chain: LChain, p: SubsheafProfile) -> None:
    if p.start < 1 or p.end > chain.n or not p.eps:
        raise InvalidParameterError("Profile covers components {0}..{1} of {2}".format(p.start, p.end, chain.n))
    if any(not p.start <= b < p.end for b in p.breaks):
        raise InvalidParameterError("Breaks {0} fall outside the profile".format(p.breaks))
    for j, eps in enumerate(p.eps, p.start):
        allowed = {value for value, _ in chain.options(j)}
        if eps not in allowed:
            raise InvalidParameterError("Component {0} cannot take epsilon {1}, allowed {2}"
                                        .format(j, eps, sorted(allowed)))


def chi_interval(chain: LChain, p: SubsheafProfile, A: int) -> int:
    """Euler characteristic of a rank-one subsheaf supported on a subchain, vanishing where the support ends"""
    _check_profile(chain, p)
    length = len(p.eps)
    boundary = (1 if p.start > 1 else 0) + (1 if p.end < chain.n else 0)

    return length * A + sum(p.eps) - p.m - length + 2 - boundary


def chi_rank1(chain: LChain, p: SubsheafProfile, A: int) -> int:
    if p.start != 1 or p.end != chain.n:
        raise InvalidParameterError("A constant-rank profile must cover the whole chain")
    return chi_interval(chain, p, A)


def _profiles(chain: LChain, start: int, end: int):
    for choice in itertools.product(*[chain.options(j) for j in range(start, end + 1)]):
        breaks = [node for node in range(start, end)
                  if not chain.glues(node, choice[node - start][1], choice[node - start + 1][1])]
        yield SubsheafProfile(breaks, [eps for eps, _ in choice], [line for _, line in choice], start)


def is_l_semistable_bruteforce(chain: LChain, cap: int = 12) -> Tuple[bool, Optional[SubsheafProfile]]:
    """Search every rank-one profile for one with 2(sum eps - (m-1)) > sum f"""
    if chain.n > cap:
        raise CapExceededError("Chain has {0} components, cap is {1}".format(chain.n, cap))

    total = sum(chain.f)
    for p in _profiles(chain, 1, chain.n):
        if 2 * (sum(p.eps) - (p.m - 1)) > total:
            return False, p

    return True, None


def _maximal_path_exists(chain: LChain) -> bool:
    """Whether maximal summand lines can be chosen on every component so that all of them glue"""
    reachable: Set = {line for value, line in chain.options(1) if line is not None}
    for node in range(1, chain.n):
        following = [line for value, line in chain.options(node + 1) if line is not None]
        reachable = {right for right in following if any(chain.glues(node, left, right) for left in reachable)}
        if not reachable:
            return False

    return True


def ssimple_criterion(chain: LChain) -> bool:
    unstable = chain.unstable
    if any(chain.component_type(j) is ComponentType.GAP for j in range(1, chain.n + 1)):
        raise NotApplicableError("Components with summand gap two or more are outside the criterion")
    if len(unstable) > 2:
        raise NotApplicableError("{0} unstable components, at most 2 allowed".format(len(unstable)))
    if not unstable:
        return True

    return not _maximal_path_exists(chain)


def twist_equivalence(chain: LChain, node: int, amount: int) -> LChain:
    """Twist up by amount on component node and down by amount on component node+1"""
    if not 1 <= node < chain.n:
        raise InvalidParameterError("Node {0} is not interior to a chain of {1}".format(node, chain.n))

    offsets = list(chain.offsets)
    e1, e2 = offsets[node - 1]
    offsets[node - 1] = (e1 + amount, e2 + amount)
    e1, e2 = offsets[node]
    offsets[node] = (e1 - amount, e2 - amount)

    return LChain(offsets, chain.glued, chain.isomorphic)


def mu_reference(chain: LChain) -> Tuple[bool, Optional[SubsheafProfile]]:
    """Slope semistability for a chain with Euler characteristic zero, over rank-one subsheaves of subchains"""
    numerator = 2 * (chain.n - 1) - sum(chain.f)
    if numerator % (2 * chain.n) != 0:
        raise NotApplicableError("No normalization gives Euler characteristic zero")
    A = numerator // (2 * chain.n)

    for start in range(1, chain.n + 1):
        for end in range(start, chain.n + 1):
            for p in _profiles(chain, start, end):
                if chi_interval(chain, p, A) > 0:
                    return False, p

    return True, None


def chain_from_json(data: Dict) -> LChain:
    try:
        glued = [tuple(x) for x in data.get("glued", [])]
        if "components" in data:
            return from_offsets(data["components"], glued, data.get("isomorphic", []))
        return from_degrees(data["f"], data["stability"], glued)
    except (KeyError, TypeError, ValueError) as e:
        raise InvalidParameterError("Malformed chain: {0}".format(e))


def chain_to_json(chain: LChain) -> Dict:
    return {"components": [list(o) for o in chain.offsets], "glued": [list(x) for x in sorted(chain.glued)],
            "isomorphic": sorted(chain.isomorphic)}
