from __future__ import annotations

import csv
import logging
from collections import Counter
from enum import Enum
from typing import Dict, Iterable, List, Optional, Tuple

from ordered_set import OrderedSet

from exceptions import InvalidTableError, InvalidBundleError, InfeasibleDegreeError, FeasibilityError, \
    DecodeMismatchError, InvalidParameterError
from numerics import boundary_sequence, boundary_sequence_rev


class ViolationType(Enum):
    SHAPE = "shape"
    MONOTONICITY = "monotonicity"
    NEGATIVE_ENTRY = "negative-entry"
    SUM_RANGE = "sum-range"
    SPECIAL_COUNT = "special-count"
    REPETITION = "repetition"
    SPECIAL_SHADOW = "special-shadow"
    ELL_COUNT = "ell-count"
    REPEATED_PAIR = "repeated-pair"
    PAIR_MULTIPLICITY = "pair-multiplicity"
    DOMINANCE = "dominance"
    ADJACENT_DEFICIT = "adjacent-deficit"
    DEGREE_PATTERN = "degree-pattern"
    COMPLEMENTARITY = "complementarity"
    LAST_ROW_SUM = "last-row-sum"
    LAST_ROW_ORDER = "last-row-order"
    LAST_ROW_RUN = "last-row-run"
    SEED_ROWS = "seed-rows"
    PAIR_TYPE = "pair-type"
    UNSTABLE_SUM = "unstable-sum"
    ANCHOR_SUM = "anchor-sum"
    BLOCK_SHAPE = "block-shape"


class Violation:
    def __init__(self, violation_type: ViolationType, message: str, row: Optional[int] = None,
                 component: Optional[int] = None):
        self.violation_type = violation_type
        self.message = message
        self.row = row
        self.component = component

    def __eq__(self, other):
        if not isinstance(other, Violation):
            return False

        return self.violation_type == other.violation_type and self.message == other.message \
            and self.row == other.row and self.component == other.component

    def __hash__(self):
        return hash((self.violation_type, self.message, self.row, self.component))

    def __str__(self):
        locus = []
        if self.component is not None:
            locus.append("j={0}".format(self.component))
        if self.row is not None:
            locus.append("i={0}".format(self.row))
        locus_str = " [{0}]".format(", ".join(locus)) if locus else ""

        return "{0}: {1}{2}".format(self.violation_type.value, self.message, locus_str)

    def to_dict(self) -> Dict:
        return {"code": self.violation_type.value, "message": self.message, "row": self.row,
                "component": self.component}

    def located(self, component: int) -> Violation:
        return Violation(self.violation_type, self.message, self.row, component)


class Stability(Enum):
    SEMISTABLE = "semistable"
    UNSTABLE = "unstable"
    DOUBLE = "double"


class BundleSpec:
    """O(left1 P + right1 Q) + O(left2 P + right2 Q) on one elliptic component, P and Q its two nodes"""

    def __init__(self, left1: int, right1: int, left2: int, right2: int):
        if min(left1, right1, left2, right2) < 0:
            raise InvalidBundleError("Negative twist in O({0},{1})+O({2},{3})"
                                     .format(left1, right1, left2, right2))
        if abs((left1 + right1) - (left2 + right2)) > 1:
            raise InvalidBundleError("Summand degrees of O({0},{1})+O({2},{3}) differ by more than one"
                                     .format(left1, right1, left2, right2))

        self.left1 = left1
        self.right1 = right1
        self.left2 = left2
        self.right2 = right2

    @property
    def summands(self) -> Tuple[Tuple[int, int], Tuple[int, int]]:
        first, second = sorted([(self.left1, self.right1), (self.left2, self.right2)])
        return first, second

    @property
    def degree(self) -> int:
        return self.left1 + self.right1 + self.left2 + self.right2

    @property
    def det(self) -> Tuple[int, int]:
        return self.left1 + self.left2, self.right1 + self.right2

    @property
    def stability(self) -> Stability:
        if (self.left1, self.right1) == (self.left2, self.right2):
            return Stability.DOUBLE
        if self.left1 + self.right1 != self.left2 + self.right2:
            return Stability.UNSTABLE

        return Stability.SEMISTABLE

    @property
    def destabilizing(self) -> Tuple[int, int]:
        """The higher-degree summand of an unstable bundle"""
        if self.stability is not Stability.UNSTABLE:
            raise InvalidBundleError("{0} has no destabilizing summand".format(self))
        return max(self.summands, key=lambda s: s[0] + s[1])

    @property
    def other(self) -> Tuple[int, int]:
        if self.stability is not Stability.UNSTABLE:
            raise InvalidBundleError("{0} has no destabilizing summand".format(self))
        return min(self.summands, key=lambda s: s[0] + s[1])

    def __eq__(self, other):
        if not isinstance(other, BundleSpec):
            return False

        return self.summands == other.summands

    def __hash__(self):
        return hash(self.summands)

    def __repr__(self):
        return "O({0},{1})+O({2},{3})".format(self.left1, self.right1, self.left2, self.right2)

    def to_dict(self) -> Dict:
        return {"l1": self.left1, "r1": self.right1, "l2": self.left2, "r2": self.right2,
                "stability": self.stability.value}

    @classmethod
    def from_dict(cls, data: Dict) -> BundleSpec:
        return cls(data["l1"], data["r1"], data["l2"], data["r2"])


class ConciseTriple:
    """A bundle, its a-sequence and a tau-set, which together determine the b-sequence"""

    def __init__(self, bundle: BundleSpec, a_seq: List[int], tau_star: Iterable[int] = ()):
        self.bundle = bundle
        self.a_seq = list(a_seq)

        counts = Counter(self.a_seq)
        tau = sorted(set(tau_star))
        for i in tau:
            if not 1 <= i <= len(self.a_seq):
                raise DecodeMismatchError("tau index {0} outside rows 1..{1}".format(i, len(self.a_seq)))
            if counts[self.a_seq[i - 1]] != 1:
                raise DecodeMismatchError("tau index {0} points at the repeated order {1}".format(
                    i, self.a_seq[i - 1]))
        self.tau_star = OrderedSet(tau)


class BalancedPair:
    def __init__(self, i1: Optional[int], i2: Optional[int], violations: List[Violation]):
        self.i1 = i1
        self.i2 = i2
        self.violations = violations

    @property
    def passed(self) -> bool:
        return not self.violations


class UnbalancedPair:
    def __init__(self, ell: Optional[int], i_star: Optional[int], tau_star: OrderedSet,
                 violations: List[Violation]):
        self.ell = ell
        self.i_star = i_star
        self.tau_star = tau_star
        self.violations = violations

    @property
    def passed(self) -> bool:
        return not self.violations


class VanishingTable:
    """
    A k x (2g-2) matrix of vanishing orders at the nodes of a chain of g components. Column 2j-2 holds the
    orders of component j at its left node and column 2j-1 those at its right node; columns 0 and 2g-1 are
    virtual and kept outside the matrix.
    """

    def __init__(self, g: int, k: int, columns: List[List[int]], d_vec: List[int],
                 left_boundary: Optional[List[int]] = None, right_boundary: Optional[List[int]] = None):
        if g < 1 or k < 2:
            raise InvalidTableError("Invalid table dimensions g={0}, k={1}".format(g, k))
        if len(columns) != 2 * g - 2:
            raise InvalidTableError("Expected {0} columns, got {1}".format(2 * g - 2, len(columns)))
        if len(d_vec) != g:
            raise InvalidTableError("Expected {0} degrees, got {1}".format(g, len(d_vec)))

        self.g = g
        self.k = k
        self.columns = [list(col) for col in columns]
        self.d_vec = list(d_vec)
        self.left_boundary = list(left_boundary) if left_boundary is not None else boundary_sequence(k)
        self.right_boundary = list(right_boundary) if right_boundary is not None else boundary_sequence_rev(k)

        for col in self.columns + [self.left_boundary, self.right_boundary]:
            if len(col) != k:
                raise InvalidTableError("Every column needs {0} rows, got {1}".format(k, len(col)))

    @classmethod
    def from_rows(cls, g: int, k: int, rows: List[List[int]], d_vec: List[int], **kwargs) -> VanishingTable:
        if len(rows) != k:
            raise InvalidTableError("Expected {0} rows, got {1}".format(k, len(rows)))
        for i, row in enumerate(rows, 1):
            if len(row) != 2 * g - 2:
                raise InvalidTableError("Row {0} has {1} entries, expected {2}".format(i, len(row), 2 * g - 2))
        columns = [[row[c] for row in rows] for c in range(2 * g - 2)]
        return cls(g, k, columns, d_vec, **kwargs)

    def column(self, c: int) -> List[int]:
        """Column c in 0..2g-1, virtual boundaries included"""
        if c == 0:
            return self.left_boundary
        if c == 2 * self.g - 1:
            return self.right_boundary
        if not 0 < c < 2 * self.g - 1:
            raise InvalidParameterError("Column {0} out of range".format(c))
        return self.columns[c - 1]

    def a_col(self, j: int) -> List[int]:
        return self.column(2 * j - 2)

    def b_col(self, j: int) -> List[int]:
        return self.column(2 * j - 1)

    def rows(self) -> List[List[int]]:
        return [[col[i] for col in self.columns] for i in range(self.k)]

    def truncated(self, k: int) -> VanishingTable:
        return VanishingTable(self.g, k, [col[:k] for col in self.columns], self.d_vec,
                              self.left_boundary[:k], self.right_boundary[:k])

    def structure_violations(self) -> List[Violation]:
        violations = []
        for c in range(2 * self.g):
            col = self.column(c)
            j = c // 2 + 1
            non_increasing = c % 2 == 1
            for i in range(self.k - 1):
                if (col[i] < col[i + 1]) if non_increasing else (col[i] > col[i + 1]):
                    violations.append(Violation(ViolationType.MONOTONICITY,
                                                "column {0} is not {1}".format(
                                                    c, "non-increasing" if non_increasing else "non-decreasing"),
                                                i + 1, j))
            for i, value in enumerate(col):
                if value < 0:
                    violations.append(Violation(ViolationType.NEGATIVE_ENTRY,
                                                "column {0} has entry {1}".format(c, value), i + 1, j))
        return violations

    def __eq__(self, other):
        if not isinstance(other, VanishingTable):
            return False

        return self.g == other.g and self.k == other.k and self.columns == other.columns \
            and self.d_vec == other.d_vec and self.left_boundary == other.left_boundary \
            and self.right_boundary == other.right_boundary

    def __hash__(self):
        return hash((self.g, self.k, tuple(tuple(col) for col in self.columns), tuple(self.d_vec)))


class StandardReport:
    def __init__(self, violations: List[Violation], bundles: List[Optional[BundleSpec]], odd_nodes: List[int]):
        self.violations = violations
        self.bundles = bundles
        self.odd_nodes = odd_nodes

    @property
    def passed(self) -> bool:
        return not self.violations


def _check_lengths(a_seq: List[int], b_seq: List[int]) -> None:
    if len(a_seq) != len(b_seq) or not a_seq:
        raise InvalidParameterError("Vanishing sequences must be non-empty and of equal length")


def _order_violations(a_seq: List[int], b_seq: List[int]) -> List[Violation]:
    violations = []
    for i in range(len(a_seq) - 1):
        if a_seq[i] > a_seq[i + 1]:
            violations.append(Violation(ViolationType.MONOTONICITY, "a-sequence decreases", i + 1))
        if b_seq[i] < b_seq[i + 1]:
            violations.append(Violation(ViolationType.MONOTONICITY, "b-sequence increases", i + 1))
    return violations


def _repetition_violations(a_seq: List[int], b_seq: List[int]) -> List[Violation]:
    violations = []
    for name, seq in (("a", a_seq), ("b", b_seq)):
        for value, count in sorted(Counter(seq).items()):
            if count > 2:
                violations.append(Violation(ViolationType.REPETITION,
                                            "{0} appears {1} times in the {2}-sequence".format(value, count, name)))
    return violations


def common_lower_bound(a_seq: List[int], b_seq: List[int], t: int) -> int:
    """Number of rows whose orders dominate those of row t at both points"""
    _check_lengths(a_seq, b_seq)
    if not 1 <= t <= len(a_seq):
        raise InvalidParameterError("Row {0} out of range".format(t))

    a_t, b_t = a_seq[t - 1], b_seq[t - 1]
    return len([i for i in range(len(a_seq)) if a_seq[i] >= a_t and b_seq[i] >= b_t])


def check_balanced_pair(a_seq: List[int], b_seq: List[int], d: int) -> BalancedPair:
    """Feasibility of a column pair on a component of degree 2d, returning its two special rows"""
    _check_lengths(a_seq, b_seq)
    violations = _order_violations(a_seq, b_seq)

    sums = [a + b for a, b in zip(a_seq, b_seq)]
    for i, s in enumerate(sums, 1):
        if not d - 1 <= s <= d:
            violations.append(Violation(ViolationType.SUM_RANGE, "order sum {0} outside [{1},{2}]"
                                        .format(s, d - 1, d), i))

    specials = [i for i, s in enumerate(sums, 1) if s == d]
    if len(specials) != 2:
        violations.append(Violation(ViolationType.SPECIAL_COUNT, "{0} rows reach order sum {1}, expected 2"
                                    .format(len(specials), d)))

    violations += _repetition_violations(a_seq, b_seq)

    if len(specials) != 2:
        return BalancedPair(None, None, violations)

    i1, i2 = specials
    for i in range(1, len(a_seq) + 1):
        if i not in specials and a_seq[i - 1] == a_seq[i1 - 1] and b_seq[i - 1] == b_seq[i2 - 1]:
            violations.append(Violation(ViolationType.SPECIAL_SHADOW,
                                        "row shares a-order of row {0} and b-order of row {1}".format(i1, i2), i))

    return BalancedPair(i1, i2, violations)


def check_unbalanced_pair(a_seq: List[int], b_seq: List[int], d: int) -> UnbalancedPair:
    """Feasibility of a column pair on a component of degree 2d+1, returning ell, i* and the maximal tau-set"""
    _check_lengths(a_seq, b_seq)
    violations = _order_violations(a_seq, b_seq)
    n = len(a_seq)

    sums = [a + b for a, b in zip(a_seq, b_seq)]
    for i, s in enumerate(sums, 1):
        if not d - 1 <= s <= d + 1:
            violations.append(Violation(ViolationType.SUM_RANGE, "order sum {0} outside [{1},{2}]"
                                        .format(s, d - 1, d + 1), i))

    ells = [i for i, s in enumerate(sums, 1) if s == d + 1]
    ell = ells[0] if len(ells) == 1 else None
    if ell is None:
        violations.append(Violation(ViolationType.ELL_COUNT, "{0} rows reach order sum {1}, expected 1"
                                    .format(len(ells), d + 1)))

    i_star = next((i for i in range(1, n) if a_seq[i - 1] == a_seq[i] and sums[i - 1] == sums[i] == d), None)
    if i_star is None:
        violations.append(Violation(ViolationType.REPEATED_PAIR, "no repeated row pair with order sum {0}"
                                    .format(d)))
    star_pair = (a_seq[i_star - 1], b_seq[i_star - 1]) if i_star is not None else None

    violations += _repetition_violations(a_seq, b_seq)

    for pair, count in sorted(Counter(zip(a_seq, b_seq)).items()):
        if count > 1 and pair != star_pair:
            violations.append(Violation(ViolationType.PAIR_MULTIPLICITY,
                                        "pair {0} occurs {1} times".format(pair, count)))

    for a in sorted(set(a_seq) | {x - 1 for x in a_seq}):
        if (a, d - a) == star_pair:
            continue
        count = len([i for i in range(n) if a_seq[i] >= a and b_seq[i] >= d - a])
        if count > 1:
            violations.append(Violation(ViolationType.DOMINANCE,
                                        "{0} rows dominate ({1},{2})".format(count, a, d - a)))

    a_counts = Counter(a_seq)
    b_counts = Counter(b_seq)
    for i in range(n - 1):
        if sums[i] == sums[i + 1] == d - 1 and a_seq[i + 1] == a_seq[i] + 1 \
                and all(a_counts[a_seq[t]] == 1 and b_counts[b_seq[t]] == 1 for t in (i, i + 1)):
            violations.append(Violation(ViolationType.ADJACENT_DEFICIT,
                                        "adjacent non-repeated rows both reach order sum {0}".format(d - 1), i + 1))

    tau_star = OrderedSet(i for i in range(1, n + 1)
                          if a_counts[a_seq[i - 1]] == 1 and sums[i - 1] == d and i != ell)

    return UnbalancedPair(ell, i_star, tau_star, violations)


def infer_bundle(a_seq: List[int], b_seq: List[int], deg: int) -> BundleSpec:
    _check_lengths(a_seq, b_seq)
    d = deg // 2
    top = max(a + b for a, b in zip(a_seq, b_seq))

    if deg % 2 == 0:
        if top > d:
            raise InfeasibleDegreeError("Order sum {0} needs degree at least {1}, got {2}".format(top, 2 * top, deg))
        pair = check_balanced_pair(a_seq, b_seq, d)
        if not pair.passed:
            raise FeasibilityError(pair.violations)
        a1, a2 = a_seq[pair.i1 - 1], a_seq[pair.i2 - 1]
        return BundleSpec(a1, d - a1, a2, d - a2)

    if top > d + 1:
        raise InfeasibleDegreeError("Order sum {0} needs degree at least {1}, got {2}"
                                    .format(top, 2 * top - 1, deg))
    pair = check_unbalanced_pair(a_seq, b_seq, d)
    if not pair.passed:
        raise FeasibilityError(pair.violations)
    a_ell, a_star = a_seq[pair.ell - 1], a_seq[pair.i_star - 1]
    return BundleSpec(a_ell, d + 1 - a_ell, a_star, d - a_star)


def encode_concise(a_seq: List[int], b_seq: List[int], deg: int) -> ConciseTriple:
    bundle = infer_bundle(a_seq, b_seq, deg)
    if bundle.stability is Stability.UNSTABLE:
        return ConciseTriple(bundle, a_seq, check_unbalanced_pair(a_seq, b_seq, deg // 2).tau_star)
    return ConciseTriple(bundle, a_seq)


def _first_index(seq: List[int], value: int, start: int = 0) -> int:
    try:
        return seq.index(value, start)
    except ValueError:
        raise DecodeMismatchError("Order {0} does not occur in {1}".format(value, seq))


def decode_concise(t: ConciseTriple, d: int) -> List[int]:
    """Rebuild the b-sequence of a component from its bundle, a-sequence and tau-set"""
    a = t.a_seq
    n = len(a)
    bundle = t.bundle

    if bundle.stability is Stability.UNSTABLE:
        if bundle.degree != 2 * d + 1:
            raise DecodeMismatchError("{0} does not have degree {1}".format(bundle, 2 * d + 1))
        ell = _first_index(a, bundle.destabilizing[0])
        y = bundle.other[0]
        i_star = next((i for i in range(n - 1) if a[i] == a[i + 1] == y), None)
        if i_star is None:
            raise DecodeMismatchError("Order {0} is not repeated in {1}".format(y, a))

        b_seq = []
        for i in range(n):
            if i == ell:
                b_seq.append(d + 1 - a[i])
            elif i + 1 in t.tau_star or (i < n - 1 and a[i] == a[i + 1]) or i == i_star + 1:
                b_seq.append(d - a[i])
            else:
                b_seq.append(d - 1 - a[i])
        return b_seq

    if bundle.degree != 2 * d:
        raise DecodeMismatchError("{0} does not have degree {1}".format(bundle, 2 * d))

    (x, _), (y, _) = bundle.summands
    first = _first_index(a, x)
    second = _first_index(a, y, first + 1) if x == y else _first_index(a, y)
    specials = {first, second}

    return [d - a[i] if i in specials else d - 1 - a[i] for i in range(n)]


def odd_nodes(d_vec: List[int]) -> List[int]:
    """Components j_1 < j_2 < ... of odd degree"""
    return [j for j, d in enumerate(d_vec, 1) if d % 2 == 1]


def degree_pattern_violations(g: int, d_vec: List[int]) -> List[Violation]:
    violations = []
    for j, d in enumerate(d_vec, 1):
        if d not in (2 * g - 3, 2 * g - 2, 2 * g - 1):
            violations.append(Violation(ViolationType.DEGREE_PATTERN, "degree {0} outside [{1},{2}]"
                                        .format(d, 2 * g - 3, 2 * g - 1), component=j))
    for j in {1, g}:
        if d_vec[j - 1] != 2 * g - 2:
            violations.append(Violation(ViolationType.DEGREE_PATTERN, "end component needs degree {0}"
                                        .format(2 * g - 2), component=j))

    nodes = odd_nodes(d_vec)
    if nodes and nodes[0] != 2:
        violations.append(Violation(ViolationType.DEGREE_PATTERN, "first odd degree must sit at component 2",
                                    component=nodes[0]))
    for t, j in enumerate(nodes, 1):
        expected = 2 * g - 1 if t % 2 == 1 else 2 * g - 3
        if d_vec[j - 1] != expected:
            violations.append(Violation(ViolationType.DEGREE_PATTERN, "odd degree number {0} must be {1}"
                                        .format(t, expected), component=j))
    if len(nodes) % 2 == 1:
        violations.append(Violation(ViolationType.DEGREE_PATTERN, "odd degrees must come in pairs"))

    return violations


def check_pair(table: VanishingTable, j: int) -> Tuple[Optional[BundleSpec], List[Violation]]:
    """Run the feasibility check matching the degree of component j and infer its bundle"""
    a_seq, b_seq = table.a_col(j), table.b_col(j)
    deg = table.d_vec[j - 1]

    if deg % 2 == 0:
        pair = check_balanced_pair(a_seq, b_seq, deg // 2)
    else:
        pair = check_unbalanced_pair(a_seq, b_seq, deg // 2)

    violations = [v.located(j) for v in pair.violations]
    if violations:
        return None, violations

    return infer_bundle(a_seq, b_seq, deg), violations


def check_standard(t: VanishingTable, per_column_only: bool = False) -> StandardReport:
    """
    Check a table for (g,k)-standardness: the degree pattern, complementarity across nodes, feasibility of
    every column pair and the conditions on the last row. per_column_only stops after feasibility.
    """
    g, k, k1 = t.g, t.k, t.k // 2
    violations = t.structure_violations()
    violations += degree_pattern_violations(g, t.d_vec)

    for j in range(1, g):
        for i, (b, a) in enumerate(zip(t.b_col(j), t.a_col(j + 1)), 1):
            if a + b != g - 1:
                violations.append(Violation(ViolationType.COMPLEMENTARITY, "b+a = {0}, expected {1}"
                                            .format(a + b, g - 1), i, j))

    bundles = []
    for j in range(1, g + 1):
        bundle, pair_violations = check_pair(t, j)
        bundles.append(bundle)
        violations += pair_violations

    nodes = odd_nodes(t.d_vec)
    if per_column_only or g < 2:
        return StandardReport(violations, bundles, nodes)

    if t.a_col(2)[k - 1] + t.b_col(2)[k - 1] != g - 1:
        violations.append(Violation(ViolationType.LAST_ROW_SUM, "last row of component 2 must sum to {0}"
                                    .format(g - 1), k, 2))

    for t_index, j in enumerate(nodes, 1):
        a_col, b_col = t.a_col(j), t.b_col(j)
        a_k, b_k = a_col[k - 1], b_col[k - 1]
        bound = k1 + j - 1

        if a_k > bound:
            violations.append(Violation(ViolationType.LAST_ROW_ORDER, "a-order {0} exceeds {1}".format(a_k, bound),
                                        k, j))
        elif a_k == bound - 1:
            if t_index % 2 == 1 and 2 * (a_k + b_k) != t.d_vec[j - 1] - 1:
                violations.append(Violation(ViolationType.LAST_ROW_ORDER,
                                            "a-order {0} needs an even position or order sum {1}"
                                            .format(a_k, (t.d_vec[j - 1] - 1) // 2), k, j))
        elif a_k == bound:
            if t_index % 2 == 0 or a_col[k - 2] >= a_k:
                violations.append(Violation(ViolationType.LAST_ROW_ORDER,
                                            "a-order {0} needs an odd position and a strict rise".format(a_k), k, j))

        if b_k == g - 1 - k1 - j and t_index < len(nodes):
            for between in range(j + 1, nodes[t_index]):
                total = t.a_col(between)[k - 1] + t.b_col(between)[k - 1]
                if total != g - 2:
                    violations.append(Violation(ViolationType.LAST_ROW_RUN, "last row sums to {0}, expected {1}"
                                                .format(total, g - 2), k, between))

    return StandardReport(violations, bundles, nodes)


def table_to_json(table: VanishingTable) -> Dict:
    return {"g": table.g, "k": table.k, "d_vec": table.d_vec, "matrix": table.rows(),
            "boundaries": {"left": table.left_boundary, "right": table.right_boundary}}


def table_from_json(data: Dict) -> VanishingTable:
    try:
        boundaries = data.get("boundaries", {})
        return VanishingTable.from_rows(data["g"], data["k"], data["matrix"], data["d_vec"],
                                        left_boundary=boundaries.get("left"),
                                        right_boundary=boundaries.get("right"))
    except (KeyError, TypeError, IndexError) as e:
        raise InvalidTableError("Malformed table: {0}".format(e))


def write_table_csv(table: VanishingTable, path: str) -> None:
    """One line per row, columns 0..2g-1 with both virtual boundaries"""
    with open(path, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        for i, row in enumerate(table.rows()):
            writer.writerow([table.left_boundary[i]] + row + [table.right_boundary[i]])
    logging.getLogger(__name__).info("Wrote {0}x{1} table to {2}".format(table.k, 2 * table.g, path))


def read_table_csv(path: str, d_vec: List[int]) -> VanishingTable:
    with open(path, newline="") as f:
        try:
            rows = [[int(x) for x in row] for row in csv.reader(f) if row]
        except ValueError as e:
            raise InvalidTableError("Non-integer cell in {0}: {1}".format(path, e))

    if not rows:
        raise InvalidTableError("Empty table file: {0}".format(path))
    width = len(rows[0])
    if width < 4 or width % 2 == 1:
        raise InvalidTableError("{0} has {1} columns, expected an even count of at least 4".format(path, width))
    ragged = [i for i, row in enumerate(rows, 1) if len(row) != width]
    if ragged:
        raise InvalidTableError("Rows {0} of {1} do not have {2} cells".format(ragged, path, width))

    return VanishingTable.from_rows(width // 2, len(rows), [row[1:-1] for row in rows], d_vec,
                                    left_boundary=[row[0] for row in rows],
                                    right_boundary=[row[-1] for row in rows])
