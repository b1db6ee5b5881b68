from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from exceptions import NotApplicableError, InvalidParameterError
from vanishing import odd_nodes


class DetTarget:
    """Twist coefficients (left at P_j, right at P_{j+1}) of a determinant on component j"""

    def __init__(self, left: int, right: int):
        self.left = left
        self.right = right

    def __eq__(self, other):
        if not isinstance(other, DetTarget):
            return False

        return self.left == other.left and self.right == other.right

    def __hash__(self):
        return hash((self.left, self.right))

    def __repr__(self):
        return "({0},{1})".format(self.left, self.right)

    def to_tuple(self) -> Tuple[int, int]:
        return self.left, self.right


class DetCheck:
    def __init__(self, j: int, expected: DetTarget, actual: DetTarget):
        self.j = j
        self.expected = expected
        self.actual = actual

    @property
    def passed(self) -> bool:
        return self.expected == self.actual

    def to_dict(self) -> Dict:
        return {"j": self.j, "expected": list(self.expected.to_tuple()), "actual": list(self.actual.to_tuple()),
                "pass": self.passed}


def odd_blocks(d_vec: List[int]) -> List[Tuple[int, int]]:
    """The half-open intervals (j_{2s-1}, j_{2s}] between paired odd-degree components"""
    g = len(d_vec)
    nodes = odd_nodes(d_vec)

    if len(nodes) % 2 == 1:
        raise NotApplicableError("Odd degrees do not pair up in {0}".format(d_vec))
    for t, j in enumerate(nodes, 1):
        if d_vec[j - 1] != (2 * g - 1 if t % 2 == 1 else 2 * g - 3):
            raise NotApplicableError("Odd degrees of {0} do not alternate between {1} and {2}"
                                     .format(d_vec, 2 * g - 1, 2 * g - 3))

    return [(nodes[s], nodes[s + 1]) for s in range(0, len(nodes), 2)]


def canonical_det_target(j: int, d_vec: List[int], blocks: Optional[List[Tuple[int, int]]] = None) -> DetTarget:
    if not 1 <= j <= len(d_vec):
        raise InvalidParameterError("Component {0} out of range".format(j))
    if blocks is None:
        blocks = odd_blocks(d_vec)

    left = 2 * j - 3 if any(start < j <= end for start, end in blocks) else 2 * j - 2
    return DetTarget(left, d_vec[j - 1] - left)


def check_canonical_chain(ledger) -> List[DetCheck]:
    """Compare det(E_j) with the canonical target on every component of a ledger"""
    blocks = odd_blocks(ledger.d_vec)
    checks = []
    for j, bundle in enumerate(ledger.bundles, 1):
        checks.append(DetCheck(j, canonical_det_target(j, ledger.d_vec, blocks), DetTarget(*bundle.det)))

    return checks


def fixed_det_target(j: int, d_vec: List[int], w_vec: List[int]) -> DetTarget:
    """Twist of the target line bundle making det(E_j) agree with it, for multidegrees d and w"""
    if len(d_vec) != len(w_vec):
        raise InvalidParameterError("Degree vectors differ in length")
    if not 1 <= j <= len(d_vec):
        raise InvalidParameterError("Component {0} out of range".format(j))

    left = -sum(w - d for d, w in zip(d_vec[:j - 1], w_vec[:j - 1]))
    right = sum(d - w for d, w in zip(d_vec[:j], w_vec[:j]))
    return DetTarget(left, right)
