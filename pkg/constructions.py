from __future__ import annotations

import logging
from collections import Counter
from typing import Dict, Iterable, List, Optional, Tuple

from ordered_set import OrderedSet

from determinant import check_canonical_chain
from exceptions import ConstructionError, InvalidParameterError, InvalidTableError, FeasibilityError, \
    InfeasibleDegreeError, DecodeMismatchError, InvalidBundleError
from numerics import PairGK, boundary_sequence, boundary_sequence_rev, default_q
from vanishing import VanishingTable, BundleSpec, Stability, ConciseTriple, Violation, ViolationType, check_pair, \
    check_standard, check_unbalanced_pair, decode_concise, infer_bundle, odd_nodes, table_to_json, table_from_json

BASE_MATRIX = [
    [5, 0, 5, 0, 5, 0, 4, 1, 3, 2],
    [5, 0, 5, 0, 4, 1, 4, 1, 2, 3],
    [3, 2, 4, 1, 3, 2, 2, 3, 2, 3],
    [3, 2, 2, 3, 2, 3, 1, 4, 0, 5],
    [2, 3, 2, 3, 1, 4, 1, 4, 0, 5],
]
BASE_DEGREES = [10, 11, 10, 10, 9, 10]


class StepParams:
    """Twist amount N, half the number of added rows m, and the speed parameter q"""

    def __init__(self, N: int, m: int, q: int = 1):
        if N < 1 or m < 1 or q < 1:
            raise InvalidParameterError("Step parameters must be positive: N={0}, m={1}, q={2}".format(N, m, q))
        self.N = N
        self.m = m
        self.q = q

    def check_for(self, k1: int) -> None:
        if self.N <= k1 + self.m:
            raise InvalidParameterError("Twist N={0} must exceed k1+m={1}".format(self.N, k1 + self.m))

    def __eq__(self, other):
        if not isinstance(other, StepParams):
            return False

        return (self.N, self.m, self.q) == (other.N, other.m, other.q)

    def __hash__(self):
        return hash((self.N, self.m, self.q))

    def __repr__(self):
        return "StepParams(N={0}, m={1}, q={2})".format(self.N, self.m, self.q)


class LedgerEntry:
    def __init__(self, bundle: BundleSpec, tau: Iterable[int] = (), note: str = ""):
        self.bundle = bundle
        self.tau = list(tau)
        self.note = note


class ChainLedger:
    """Bundles, tau-sets and the vanishing table of a whole chain, together with how it was built"""

    def __init__(self, g: int, k: int, bundles: List[BundleSpec], tau_sets: Dict[int, OrderedSet],
                 table: VanishingTable, provenance: List[str], construction: str = "base",
                 parent: Optional[ChainLedger] = None, params: Optional[StepParams] = None,
                 notes: Optional[List[str]] = None):
        self.g = g
        self.k = k
        self.bundles = bundles
        self.tau_sets = tau_sets
        self.table = table
        self.provenance = provenance
        self.construction = construction
        self.parent = parent
        self.params = params
        self.notes = notes or []

    @property
    def d_vec(self) -> List[int]:
        return self.table.d_vec

    @property
    def pair(self) -> PairGK:
        return PairGK(self.g, self.k)

    def bundle(self, j: int) -> BundleSpec:
        return self.bundles[j - 1]

    def __repr__(self):
        return "ChainLedger{0} via {1}".format(self.pair, " -> ".join(self.provenance))


class GoldenCheck:
    def __init__(self, formula: str, column: int, expected: Optional[List[int]], actual: List[int]):
        self.formula = formula
        self.column = column
        self.expected = expected
        self.actual = actual

    @property
    def skipped(self) -> bool:
        return self.expected is None

    @property
    def passed(self) -> bool:
        return self.expected is None or self.expected == self.actual

    @property
    def first_mismatch(self) -> Optional[int]:
        if self.passed:
            return None
        return next((i for i, (x, y) in enumerate(zip(self.expected, self.actual), 1) if x != y),
                    min(len(self.expected), len(self.actual)) + 1)

    def to_dict(self) -> Dict:
        return {"formula": self.formula, "column": self.column, "expected": self.expected, "actual": self.actual,
                "status": "skipped" if self.skipped else ("match" if self.passed else "mismatch"),
                "row": self.first_mismatch}


def _inferred_taus(table: VanishingTable, bundles: List[BundleSpec]) -> Dict[int, OrderedSet]:
    tau_sets = {}
    for j, bundle in enumerate(bundles, 1):
        if bundle.stability is Stability.UNSTABLE:
            tau_sets[j] = check_unbalanced_pair(table.a_col(j), table.b_col(j), table.d_vec[j - 1] // 2).tau_star
    return tau_sets


def base_case() -> ChainLedger:
    """The (6,5) chain every construction starts from"""
    table = VanishingTable.from_rows(6, 5, BASE_MATRIX, BASE_DEGREES)
    bundles = [infer_bundle(table.a_col(j), table.b_col(j), table.d_vec[j - 1]) for j in range(1, 7)]

    return ChainLedger(6, 5, bundles, _inferred_taus(table, bundles), table, ["base"])


def terminal_sequence(N: int, k1: int, m: int) -> List[int]:
    """Vanishing orders at the far node of an extended chain"""
    if N <= k1 + m:
        raise InvalidParameterError("Twist N={0} must exceed k1+m={1}".format(N, k1 + m))

    seq = [N + k1] + [v for v in range(N + k1 - 1, N - 1, -1) for _ in range(2)]
    seq += [N - 1 - k1] + [v for v in range(N - 2 - k1, N - m - k1 - 1, -1) for _ in range(2)]
    seq.append(N - m - k1 - 1)

    return seq


def step1_extend(t: VanishingTable, p: StepParams) -> VanishingTable:
    """
    Twist every component by N at its right node and add 2m rows, keeping complementarity with g+N-1.
    New rows reach order sum d-1 on balanced components; on the t-th odd-degree component the sum is
    (d-1)/2 when the row parity matches the parity of t, and one less otherwise.
    """
    g, k, k1 = t.g, t.k, t.k // 2
    if k % 2 == 0:
        raise InvalidParameterError("Extension needs an odd row count, got k={0}".format(k))
    p.check_for(k1)

    report = check_standard(t)
    if not report.passed:
        raise InvalidTableError("Seed table is not standard: {0}".format(report.violations[0]))

    N, m = p.N, p.m
    g_new = g + N
    k_new = k + 2 * m
    d_new = [d + 2 * N for d in t.d_vec]
    position = {j: index for index, j in enumerate(odd_nodes(t.d_vec), 1)}

    columns = []
    for c in range(1, 2 * g - 1):
        col = t.column(c)
        columns.append([x + N for x in col] if c % 2 == 1 else list(col))

    for i in range(k + 1, k_new + 1):
        values = {1: (g_new - 2) - (i - 1) // 2}
        for j in range(1, g):
            values[2 * j] = g_new - 1 - values[2 * j - 1]
            nxt = j + 1
            if nxt > g - 1:
                continue
            if d_new[nxt - 1] % 2 == 0:
                values[2 * nxt - 1] = g_new - 2 - values[2 * j]
            else:
                top = (d_new[nxt - 1] - 1) // 2
                total = top if (i % 2 == 1) == (position[nxt] % 2 == 1) else top - 1
                values[2 * nxt - 1] = total - values[2 * j]
        for c in range(1, 2 * g - 1):
            columns[c - 1].append(values[c])

    logging.getLogger(__name__).info("Extended {0}x{1} table by N={2}, m={3}".format(k, 2 * g - 2, N, m))

    return VanishingTable(g, k_new, columns, d_new, boundary_sequence(k_new), terminal_sequence(N, k1, m))


class ExtensionReport:
    def __init__(self, seed: VanishingTable, extended: VanishingTable, params: StepParams,
                 violations: List[Violation]):
        self.seed = seed
        self.extended = extended
        self.params = params
        self.violations = violations

    @property
    def passed(self) -> bool:
        return not self.violations


def _new_row_offsets(m: int, rising: bool, late: bool) -> List[int]:
    """Offsets of the 2m added rows from the first one: (0,1,1,..,m) when late, (0,0,1,1,..,m-1,m-1) otherwise"""
    steps = [(r + 1) // 2 if late else r // 2 for r in range(2 * m)]
    return steps if rising else [-s for s in steps]


def check_extension(seed: VanishingTable, extended: VanishingTable, params: StepParams) -> ExtensionReport:
    """Check an extended table against its seed: kept rows, complementarity, pair types, new-row sums and shapes"""
    violations = []
    N, m = params.N, params.m
    g, k, k1 = seed.g, seed.k, seed.k // 2
    g_new = g + N

    def flag(violation_type: ViolationType, message: str, row: Optional[int] = None, j: Optional[int] = None):
        violations.append(Violation(violation_type, message, row, j))

    if extended.g != g or extended.k != k + 2 * m:
        flag(ViolationType.SHAPE, "extension of a {0}-row table by m={1} has g={2}, k={3}".format(
            k, m, extended.g, extended.k))
        return ExtensionReport(seed, extended, params, violations)
    if extended.d_vec != [d + 2 * N for d in seed.d_vec]:
        flag(ViolationType.DEGREE_PATTERN, "degrees {0} are not the seed degrees raised by {1}".format(
            extended.d_vec, 2 * N))
    if extended.left_boundary != boundary_sequence(k + 2 * m):
        flag(ViolationType.SHAPE, "left boundary {0}".format(extended.left_boundary), j=1)
    if extended.right_boundary != terminal_sequence(N, k1, m):
        flag(ViolationType.SHAPE, "right boundary {0}".format(extended.right_boundary), j=g)

    for c in range(1, 2 * g - 1):
        expected = [x + N for x in seed.column(c)] if c % 2 == 1 else seed.column(c)
        if extended.column(c)[:k] != expected:
            flag(ViolationType.SEED_ROWS, "column {0} rows 1..{1} differ from the twisted seed".format(c, k),
                 j=c // 2 + 1)

    for j in range(1, g):
        for i, (b, a) in enumerate(zip(extended.b_col(j), extended.a_col(j + 1)), 1):
            if a + b != g_new - 1:
                flag(ViolationType.COMPLEMENTARITY, "node after component {0} sums to {1}, expected {2}".format(
                    j, a + b, g_new - 1), i, j)

    for j in range(1, g + 1):
        seed_bundle, _ = check_pair(seed, j)
        bundle, pair_violations = check_pair(extended, j)
        violations += pair_violations
        if seed_bundle is not None and bundle is not None and seed_bundle.stability is not bundle.stability:
            flag(ViolationType.PAIR_TYPE, "component is {0}, seed component is {1}".format(
                bundle.stability.value, seed_bundle.stability.value), j=j)

    odd = odd_nodes(extended.d_vec)
    for t, j in enumerate(odd, 1):
        top = (extended.d_vec[j - 1] - 1) // 2
        for i in range(k + 1, k + 2 * m + 1):
            total = extended.a_col(j)[i - 1] + extended.b_col(j)[i - 1]
            expected = top if (i % 2 == 1) == (t % 2 == 1) else top - 1
            if total != expected:
                flag(ViolationType.UNSTABLE_SUM, "new row sums to {0}, expected {1}".format(total, expected), i, j)

    if not odd or odd[0] != 2:
        flag(ViolationType.ANCHOR_SUM, "component 2 has even degree", j=2)
    else:
        last = k + 2 * m
        total = extended.a_col(2)[last - 1] + extended.b_col(2)[last - 1]
        if total != (extended.d_vec[1] - 1) // 2:
            flag(ViolationType.ANCHOR_SUM, "last row sums to {0} at component 2, expected {1}".format(
                total, (extended.d_vec[1] - 1) // 2), last, 2)

    for j in range(1, g + 1):
        before = len([x for x in odd if x < j])
        through = len([x for x in odd if x <= j])
        shapes = []
        if j > 1:
            shapes.append(("a", extended.a_col(j), _new_row_offsets(m, True, before % 2 == 0)))
        if j < g:
            shapes.append(("b", extended.b_col(j), _new_row_offsets(m, False, through % 2 == 0)))
        for side, col, offsets in shapes:
            added = col[k:]
            if [x - added[0] for x in added] != offsets:
                flag(ViolationType.BLOCK_SHAPE, "new {0}-orders {1} do not step as {2}".format(
                    side, added, offsets), k + 1, j)

    violations += extended.structure_violations()
    return ExtensionReport(seed, extended, params, violations)


def extension_history(ledger: ChainLedger) -> List[Tuple[ChainLedger, ExtensionReport]]:
    """Re-extend every seed along the provenance of a ledger and check each extension, oldest first"""
    history = []
    while ledger.parent is not None and ledger.params is not None:
        seed = ledger.parent
        extended = step1_extend(seed.table, ledger.params)
        report = check_extension(seed.table, extended, ledger.params)
        kept = [col[:ledger.k] for col in extended.columns]
        if ledger.table.columns[:len(kept)] != kept:
            report.violations.append(Violation(ViolationType.SEED_ROWS,
                                               "ledger columns of components 1..{0} differ from the extension"
                                               .format(seed.g)))
        history.append((ledger, report))
        ledger = seed

    return list(reversed(history))


def _balanced(b_prime: int, x: int, y: int, note: str = "") -> LedgerEntry:
    return LedgerEntry(BundleSpec(x, b_prime - x, y, b_prime - y), note=note)


def first_ledger(g: int, k: int, q: int) -> List[LedgerEntry]:
    """Bundles and tau-sets of components g+1..g' of the first construction"""
    k1 = k // 2
    b = g + 4 * k1 + 5 - q
    lo, hi = g - k1, g + k1

    entries = [
        _balanced(b, lo, hi),
        _balanced(b, lo, hi + 2),
        _balanced(b, lo + 1, hi + 3),
        LedgerEntry(BundleSpec(lo + 3, 5 * k1 - q + 3, hi + 3, 3 * k1 - q + 2), [k + 1, k + 4]),
        _balanced(b, lo + 4, hi + 3),
        _balanced(b, lo + 6, hi + 3),
        _balanced(b, lo + 6, hi + 5, "second summand balanced to degree b'"),
        LedgerEntry(BundleSpec(lo + 5, b - (lo + 6), hi + 8, b - (hi + 8)), [1, k]),
        _balanced(b, lo + 8, hi + 8, "first summand balanced to degree b'"),
    ]

    for s in range(q - 1):
        x, y = 14 * s, 8 * s
        entries += [
            LedgerEntry(BundleSpec(lo + 11 + x, b - (lo + 11 + x), hi + 7 + y, b - (hi + 6 + y)), [1]),
            _balanced(b, lo + 11 + x, hi + 8 + y),
            _balanced(b, lo + 12 + x, hi + 9 + y),
            LedgerEntry(BundleSpec(lo + 14 + x, b - (lo + 14 + x), hi + 9 + y, b - (hi + 10 + y)),
                        [5 + 6 * s, k, k + 1, k + 4]),
            _balanced(b, lo + 16 + x, hi + 10 + y),
            _balanced(b, lo + 15 + x, hi + 13 + y),
            _balanced(b, lo + 19 + x, hi + 11 + y),
            _balanced(b, lo + 20 + x, hi + 12 + y),
            _balanced(b, lo + 19 + x, hi + 15 + y),
            _balanced(b, lo + 21 + x, hi + 15 + y),
            _balanced(b, lo + 22 + x, hi + 16 + y),
        ]

    for ell in range(k1 - 3 * q + 1):
        x, y = 14 * q + 5 * ell, 8 * q + 3 * ell
        entries += [
            _balanced(b, lo + x - 3, hi + y - 1, "balanced, both summands of degree b'"),
            _balanced(b, lo + x - 2, hi + y),
            _balanced(b, lo + x - 2, hi + y + 2),
            _balanced(b, lo + x - 1, hi + y + 3),
        ]

    g_new = b + 1
    entries += [
        _balanced(b, g_new - 4, g_new - 4),
        _balanced(b, g_new - 4, g_new - 2),
        _balanced(b, g_new - 3, g_new - 1),
        _balanced(b, g_new - 1, g_new - 1),
    ]

    return entries


def second_ledger(g: int, k: int) -> List[LedgerEntry]:
    k1 = k // 2
    b = g + 2 * k1 + 1

    entries = [_balanced(b, g - k1 + 2 * t, g + k1) for t in range(k1)]
    entries += [_balanced(b, g - 1 + 2 * t, g + 2 * k1 + 1) for t in range(k1 + 1)]
    entries.append(_balanced(b, b, b))

    return entries


def third_ledger(g: int, k: int) -> List[LedgerEntry]:
    k1 = k // 2
    b = g + 3 * k1 + 2
    lo, hi = g - k1, g + k1

    entries = [
        LedgerEntry(BundleSpec(lo, b - lo, hi, b - (hi - 1)), [1, k]),
        _balanced(b, lo - 1, hi + 2),
        _balanced(b, lo + 1, hi + 2),
        _balanced(b, lo + 2, hi + 3),
        LedgerEntry(BundleSpec(lo + 4, b - (lo + 4), hi + 3, b - (hi + 4)),
                    [5, k + 1] if k1 > 2 else [k + 1], "" if k1 > 2 else "tau reduced to {k+1}"),
    ]
    entries += [_balanced(b, lo + 5 + 2 * j, hi + 3) for j in range(1, k1)]
    for s in range(k1 - 1):
        entries.append(_balanced(b, g + 5 + 3 * s, g + 2 * k1 + 3 + s))
        entries.append(_balanced(b, g + 6 + 3 * s, g + 2 * k1 + 4 + s))
    entries.append(_balanced(b, b, b))

    return entries


def supported_tau(tau: Iterable[int], a_seq: List[int]) -> Tuple[List[int], List[int]]:
    """Split a ledger tau-set into the rows with a non-repeated order and the rest"""
    counts = Counter(a_seq)
    kept, dropped = [], []
    for i in tau:
        if 1 <= i <= len(a_seq) and counts[a_seq[i - 1]] == 1:
            kept.append(i)
        else:
            dropped.append(i)
    return kept, dropped


def _append_components(extended: VanishingTable, entries: List[LedgerEntry]) -> Tuple[VanishingTable, List[str]]:
    """Derive the column pairs of the new components from their bundles, left to right"""
    g_new = extended.g + len(entries)
    b_prime = g_new - 1

    columns = list(extended.columns) + [extended.right_boundary]
    d_vec = list(extended.d_vec)
    prev_b = extended.right_boundary
    notes = []

    for offset, entry in enumerate(entries, 1):
        a_seq = [b_prime - x for x in prev_b]
        deg = entry.bundle.degree
        tau, dropped = supported_tau(entry.tau, a_seq)
        if dropped:
            notes.append("g+{0}: tau rows {1} have repeated orders, kept {2}".format(offset, dropped, tau))
            logging.getLogger(__name__).info(notes[-1])
            entry.tau = tau
        try:
            prev_b = decode_concise(ConciseTriple(entry.bundle, a_seq, tau), deg // 2)
        except DecodeMismatchError as e:
            raise ConstructionError("Component g+{0}: {1}".format(offset, e))
        columns += [a_seq, prev_b]
        d_vec.append(deg)

    columns.pop()
    expected = boundary_sequence_rev(extended.k)
    if prev_b != expected:
        raise ConstructionError("Last component ends at {0}, expected {1}".format(prev_b, expected))

    return VanishingTable(g_new, extended.k, columns, d_vec, extended.left_boundary, prev_b), notes


def _verify(ledger: ChainLedger, per_column_only: bool) -> None:
    report = check_standard(ledger.table, per_column_only)
    if not report.passed:
        raise ConstructionError("{0} table fails standardness: {1}".format(
            ledger.pair, "; ".join(str(v) for v in report.violations[:5])))

    for j, (bundle, inferred) in enumerate(zip(ledger.bundles, report.bundles), 1):
        if bundle != inferred:
            raise ConstructionError("Component {0} carries {1} but its columns give {2}".format(j, bundle, inferred))

    mismatches = [c for c in check_canonical_chain(ledger) if not c.passed]
    if mismatches:
        raise ConstructionError("Canonical determinant fails at components {0}".format(
            ", ".join(str(c.j) for c in mismatches)))


def _build(seed: ChainLedger, extended: VanishingTable, entries: List[LedgerEntry], construction: str,
           params: StepParams, move: str) -> ChainLedger:
    try:
        table, tau_notes = _append_components(extended, entries)
        bundles = [infer_bundle(table.a_col(j), table.b_col(j), table.d_vec[j - 1]) for j in range(1, seed.g + 1)]
    except (FeasibilityError, InfeasibleDegreeError, InvalidBundleError) as e:
        raise ConstructionError("{0} from {1}: {2}".format(move, seed.pair, e))

    for j, (old, new) in enumerate(zip(seed.bundles, bundles), 1):
        twisted = BundleSpec(old.left1, old.right1 + params.N, old.left2, old.right2 + params.N)
        if twisted != new:
            raise ConstructionError("Extended component {0} is {1}, expected {2}".format(j, new, twisted))

    tau_sets = _inferred_taus(table, bundles)
    for offset, entry in enumerate(entries, 1):
        if entry.bundle.stability is Stability.UNSTABLE:
            tau_sets[seed.g + offset] = ConciseTriple(entry.bundle, table.a_col(seed.g + offset), entry.tau).tau_star
    bundles += [entry.bundle for entry in entries]

    notes = ["g+{0}: {1}".format(offset, entry.note) for offset, entry in enumerate(entries, 1) if entry.note]
    notes += tau_notes
    ledger = ChainLedger(table.g, table.k, bundles, tau_sets, table, seed.provenance + [move], construction,
                         seed, params, notes)
    _verify(ledger, construction == "third")

    logging.getLogger(__name__).info("Built {0} from {1} by {2}".format(ledger.pair, seed.pair, move))
    return ledger


def _check_seed(seed: ChainLedger) -> None:
    if seed.k % 2 == 0 or seed.k < 5:
        raise InvalidParameterError("Constructions need an odd k >= 5, got k={0}".format(seed.k))


def construct_first(seed: ChainLedger, q: int) -> ChainLedger:
    _check_seed(seed)
    k1 = seed.k // 2
    if not 1 <= q <= default_q(k1):
        raise InvalidParameterError("q={0} outside [1,{1}] for k1={2}".format(q, default_q(k1), k1))

    params = StepParams(4 * k1 + 6 - q, 2, q)
    extended = step1_extend(seed.table, params)
    return _build(seed, extended, first_ledger(seed.g, seed.k, q), "first", params, "first(q={0})".format(q))


def construct_second(seed: ChainLedger) -> ChainLedger:
    _check_seed(seed)
    params = StepParams(2 * (seed.k // 2) + 2, 1)
    extended = step1_extend(seed.table, params)
    return _build(seed, extended, second_ledger(seed.g, seed.k), "second", params, "second")


def construct_third(seed: ChainLedger) -> ChainLedger:
    _check_seed(seed)
    params = StepParams(3 * (seed.k // 2) + 3, 2)
    extended = step1_extend(seed.table, params).truncated(seed.k + 3)
    return _build(seed, extended, third_ledger(seed.g, seed.k), "third", params, "third")


def apply_move(ledger: ChainLedger, move: str, q: int = 1) -> ChainLedger:
    if move == "first":
        return construct_first(ledger, q)
    if move == "second":
        return construct_second(ledger)
    if move == "third":
        return construct_third(ledger)
    raise InvalidParameterError("Unknown construction move '{0}'".format(move))


def _pairs(hi: int, lo: int) -> Optional[List[int]]:
    """[hi]_2, [hi-1]_2, ..., [lo]_2; None when the run has negative length"""
    if hi - lo + 1 < 0:
        return None
    return [v for v in range(hi, lo - 1, -1) for _ in range(2)]


def _join(*parts) -> Optional[List[int]]:
    seq = []
    for part in parts:
        if part is None:
            return None
        seq += part if isinstance(part, list) else [part]
    return seq


def _first_golden(g: int, k1: int, q: int) -> List[Tuple[str, int, Optional[List[int]]]]:
    formulas = [
        ("first-a1", 2 * g + 5, _join(_pairs(5 * k1 + 4 - q, 5 * k1 + 4 - q), 5 * k1 + 2 - q,
                                      _pairs(5 * k1 + 1 - q, 4 * k1 + 3 - q), 3 * k1 + 3 - q,
                                      _pairs(3 * k1 + 2 - q, 3 * k1 + 2 - q), 3 * k1 - q)),
        ("first-a2", 2 * g + 7, _join(5 * k1 + 4 - q, _pairs(5 * k1 + 3 - q, 5 * k1 + 3 - q), 5 * k1 + 1 - q,
                                      _pairs(5 * k1 - q, 4 * k1 + 3 - q), 4 * k1 + 2 - q, 3 * k1 + 3 - q,
                                      _pairs(3 * k1 + 2 - q, 3 * k1 + 2 - q), 3 * k1 - q)),
        ("first-a3", 2 * g + 13, _join(5 * k1 + 1 - q, _pairs(5 * k1 - q, 5 * k1 - 1 - q), 5 * k1 - 3 - q,
                                       _pairs(5 * k1 - 4 - q, 4 * k1 - q), 4 * k1 - 1 - q, 3 * k1 + 1 - q,
                                       _pairs(3 * k1 - q, 3 * k1 - q), 3 * k1 - 3 - q)),
        ("first-a4", 2 * g + 15, _join(5 * k1 - q, _pairs(5 * k1 - 1 - q, 5 * k1 - 1 - q), 5 * k1 - 2 - q,
                                       5 * k1 - 3 - q, _pairs(5 * k1 - 5 - q, 4 * k1 - 2 - q),
                                       _pairs(3 * k1 - 1 - q, 3 * k1 - 1 - q), 3 * k1 - 2 - q, 3 * k1 - 3 - q)),
        ("first-a5", 2 * g + 17, _join(5 * k1 - 1 - q, _pairs(5 * k1 - 2 - q, 5 * k1 - 3 - q),
                                       _pairs(5 * k1 - 6 - q, 4 * k1 - 3 - q),
                                       _pairs(3 * k1 - 2 - q, 3 * k1 - 3 - q))),
    ]

    for s in range(q):
        u, v, w = 11 * s, 14 * s, 8 * s
        formulas.append(("first-e1[s={0}]".format(s), 2 * g + 17 + 22 * s,
                         _join(5 * k1 - 1 - q - u, _pairs(5 * k1 - 2 - q - u, 5 * k1 - 3 - q - v),
                               _pairs(5 * k1 - 6 - q - v, 4 * k1 - 3 - q - u),
                               _pairs(3 * k1 - 2 - q - w, 3 * k1 - 3 - q - w))))
        if s > q - 2:
            continue
        formulas.append(("first-e2[s={0}]".format(s), 2 * g + 19 + 22 * s,
                         _join(5 * k1 - 1 - q - u, 5 * k1 - 2 - q - u, _pairs(5 * k1 - 3 - q - u, 5 * k1 - 3 - q - v),
                               5 * k1 - 4 - q - v, _pairs(5 * k1 - 6 - q - v, 5 * k1 - 6 - q - v),
                               5 * k1 - 7 - q - v, _pairs(5 * k1 - 8 - q - v, 4 * k1 - 3 - q - u),
                               4 * k1 - 4 - q - u, 3 * k1 - 1 - q - w, _pairs(3 * k1 - 3 - q - w, 3 * k1 - 3 - q - w),
                               3 * k1 - 4 - q - w)))
        formulas.append(("first-e3[s={0}]".format(s), 2 * g + 25 + 22 * s,
                         _join(5 * k1 - 5 - q - u, _pairs(5 * k1 - 6 - q - u, 5 * k1 - 7 - q - v),
                               5 * k1 - 8 - q - v, _pairs(5 * k1 - 9 - q - v, 5 * k1 - 9 - q - v),
                               5 * k1 - 11 - q - v, _pairs(5 * k1 - 12 - q - v, 4 * k1 - 7 - q - u),
                               3 * k1 - 4 - q - w, _pairs(3 * k1 - 5 - q - w, 3 * k1 - 5 - q - w),
                               3 * k1 - 7 - q - w)))

    h = g + 11 * q - 2
    for ell in range(k1 - 3 * q + 2):
        formulas.append(("first-f[l={0}]".format(ell), 2 * h + 8 * ell - 1,
                         _join(5 * k1 - 12 * q - 4 * ell + 10,
                               _pairs(5 * k1 - 12 * q - 4 * ell + 9, 5 * k1 - 15 * q - 5 * ell + 11),
                               _pairs(5 * k1 - 15 * q - 5 * ell + 8, 4 * k1 - 12 * q - 4 * ell + 8),
                               _pairs(3 * k1 - 9 * q + 6 - 3 * ell, 3 * k1 - 9 * q + 5 - 3 * ell))))

    return formulas


def _third_golden(g: int, k1: int) -> List[Tuple[str, int, Optional[List[int]]]]:
    return [
        ("third-1", 2 * g + 1, _join(4 * k1 + 3, _pairs(4 * k1 + 2, 4 * k1 + 2), 4 * k1 + 1,
                                     _pairs(4 * k1, 3 * k1 + 3), 3 * k1 + 2, 2 * k1 + 3, 2 * k1 + 1, 2 * k1)),
        ("third-2", 2 * g + 7, _join(4 * k1 + 1, _pairs(4 * k1, 4 * k1), 4 * k1 - 2, _pairs(4 * k1 - 3, 3 * k1),
                                     3 * k1 - 1, 2 * k1, _pairs(2 * k1 - 1, 2 * k1 - 1))),
        ("third-3", 2 * g + 9, _join(_pairs(4 * k1 - 1, 4 * k1 - 2), 4 * k1 - 4, _pairs(4 * k1 - 5, 3 * k1 - 1),
                                     3 * k1 - 2, 3 * k1 - 3, 2 * k1 - 1, _pairs(2 * k1 - 2, 2 * k1 - 2))),
        ("third-4", 2 * g + 2 * k1 + 3, _join(_pairs(3 * k1 + 2, 3 * k1 + 1), _pairs(3 * k1 - 1, 2 * k1 + 3),
                                              2 * k1 + 2, 2 * k1 + 1, 2 * k1, 2 * k1 - 1,
                                              _pairs(k1 + 1, k1 + 1))),
    ]


def verify_construction_tables(ledger: ChainLedger) -> List[GoldenCheck]:
    """Compare the derived columns of a constructed ledger with the closed-form vanishing sequences"""
    if ledger.parent is None:
        return []

    g, k1 = ledger.parent.g, ledger.parent.k // 2
    if ledger.construction == "first":
        formulas = _first_golden(g, k1, ledger.params.q)
    elif ledger.construction == "second":
        formulas = [("second-terminal", 2 * g - 1, _join(3 * k1 + 2, _pairs(3 * k1 + 1, 2 * k1 + 2), k1 + 1, k1))]
    elif ledger.construction == "third":
        formulas = _third_golden(g, k1)
    else:
        formulas = []

    checks = []
    for name, column, expected in formulas:
        check = GoldenCheck(name, column, expected, list(ledger.table.column(column)))
        if not check.passed:
            logging.getLogger(__name__).warning("{0} at column {1} differs from row {2}".format(
                name, column, check.first_mismatch))
        checks.append(check)

    return checks


def ledger_to_json(ledger: ChainLedger) -> Dict:
    data = table_to_json(ledger.table)
    data["bundles"] = []
    for j, bundle in enumerate(ledger.bundles, 1):
        entry = bundle.to_dict()
        entry["tau"] = list(ledger.tau_sets.get(j, []))
        data["bundles"].append(entry)
    data["provenance"] = ledger.provenance
    data["construction"] = ledger.construction
    data["notes"] = ledger.notes

    return data


def ledger_from_json(data: Dict) -> ChainLedger:
    """A ledger read back from its serialized form; it carries no parent and no step parameters"""
    table = table_from_json(data)
    try:
        bundles = [BundleSpec.from_dict(entry) for entry in data["bundles"]]
        tau_sets = {j: OrderedSet(entry.get("tau", [])) for j, entry in enumerate(data["bundles"], 1)
                    if bundles[j - 1].stability is Stability.UNSTABLE}
    except (KeyError, TypeError) as e:
        raise InvalidTableError("Malformed ledger: {0}".format(e))

    if len(bundles) != table.g:
        raise InvalidTableError("Ledger lists {0} bundles for {1} components".format(len(bundles), table.g))

    return ChainLedger(table.g, table.k, bundles, tau_sets, table, list(data.get("provenance", [])),
                       data.get("construction", "base"), notes=list(data.get("notes", [])))


def replay(path, cache: Optional[Dict[Tuple[str, ...], ChainLedger]] = None) -> ChainLedger:
    """Rebuild the ledger at the end of a derivation path, starting from the base chain. Ledgers in cache are
    keyed by the moves that built them and shared between paths with a common prefix."""
    if path.start.to_tuple() != (6, 5):
        raise InvalidParameterError("Replay starts from (6,5), not {0}".format(path.start))

    cache = {} if cache is None else cache
    key = ()
    if key not in cache:
        cache[key] = base_case()
    ledger = cache[key]
    for move in path.moves:
        key += (repr(move),)
        if key not in cache:
            cache[key] = apply_move(ledger, move.name, move.q)
        ledger = cache[key]

    return ledger
