from __future__ import annotations

import logging
from collections import Counter
from typing import Dict, List, Optional, Tuple

from ordered_set import OrderedSet

from exceptions import CannotAccountError, InvalidBundleError, InvalidParameterError
from vanishing import BundleSpec, Stability, VanishingTable, check_balanced_pair, infer_bundle

BASE_FIRST_NODE = -2


class ConfigurationPartition:
    """Which rows with a non-repeated vanishing order at a node send their sections to the same fiber point"""

    def __init__(self, node: int, blocks: List[OrderedSet], column: Optional[List[int]] = None):
        seen = set()
        for block in blocks:
            if seen & set(block):
                raise InvalidParameterError("Configuration blocks at node {0} overlap".format(node))
            seen |= set(block)

        if column is not None:
            counts = Counter(column)
            repeated = [i for i in seen if counts[column[i - 1]] != 1]
            if repeated:
                raise InvalidParameterError("Rows {0} have repeated orders at node {1}".format(sorted(repeated), node))

        self.node = node
        self.blocks = [OrderedSet(block) for block in blocks if block]
        self.notes = []

    @property
    def indices(self) -> OrderedSet:
        return OrderedSet(sorted(i for block in self.blocks for i in block))

    def block_of(self, i: int) -> Optional[OrderedSet]:
        return next((block for block in self.blocks if i in block), None)

    def __eq__(self, other):
        if not isinstance(other, ConfigurationPartition):
            return False

        return self.node == other.node and sorted(map(tuple, self.blocks)) == sorted(map(tuple, other.blocks))

    def __repr__(self):
        return "P{0}: {1}".format(self.node, [list(block) for block in self.blocks])


class FiberBoundEntry:
    def __init__(self, j: int, bound: int, rule: str, correction: int = 0, tag: str = "",
                 reference: Optional[int] = None, configuration: Optional[ConfigurationPartition] = None,
                 check: Optional[CorrectionCheck] = None):
        self.j = j
        self.bound = bound
        self.rule = rule
        self.correction = correction
        self.tag = tag
        self.reference = reference
        self.configuration = configuration
        self.check = check

    @property
    def matches_reference(self) -> bool:
        return self.reference is None or self.reference == self.bound

    def to_dict(self) -> Dict:
        return {"node": self.j, "rule": self.rule, "bound": self.bound, "correction": self.correction,
                "tag": self.tag, "reference": self.reference,
                "condition": None if self.check is None else ("held" if self.check.passed else "failed")}


class FiberBoundReport:
    def __init__(self, g: int, k: int, entries: List[FiberBoundEntry], parent_total: int = 0, step1: int = 0,
                 construction: str = "base", inherited: Optional[List[CorrectionCheck]] = None):
        self.g = g
        self.k = k
        self.entries = entries
        self.parent_total = parent_total
        self.step1 = step1
        self.construction = construction
        self.inherited = inherited or []

    @property
    def total(self) -> int:
        return self.parent_total + self.step1 + sum(e.bound + e.correction for e in self.entries)

    @property
    def mismatches(self) -> List[FiberBoundEntry]:
        return [e for e in self.entries if not e.matches_reference]

    @property
    def failed_corrections(self) -> List[CorrectionCheck]:
        """Corrections along the whole construction history whose row condition does not hold"""
        return self.inherited + [e.check for e in self.entries if e.check is not None and not e.check.passed]

    def block_total(self, first: int, last: int) -> int:
        return sum(e.bound + e.correction for e in self.entries if first <= e.j <= last)

    def to_rows(self) -> List[Dict]:
        running = self.parent_total + self.step1
        rows = [{"node": None, "rule": "step1", "bound": self.step1, "correction": 0, "tag": "",
                 "reference": None, "condition": None, "running_total": running}] if self.construction != "base" else []
        for entry in self.entries:
            running += entry.bound + entry.correction
            row = entry.to_dict()
            row["running_total"] = running
            rows.append(row)
        return rows


def canonical_configuration(table: VanishingTable, j: int) -> ConfigurationPartition:
    """The general configuration at the left node of component j: every non-repeated row on its own"""
    column = table.a_col(j)
    counts = Counter(column)

    return ConfigurationPartition(j, [OrderedSet([i]) for i, v in enumerate(column, 1) if counts[v] == 1], column)


def m_bound_semistable(bundle_next: BundleSpec, cfg: ConfigurationPartition, cols: Tuple[List[int], List[int]]) -> int:
    """
    2 minus the number of canonical-section points of the fiber hit by configuration blocks: a special row
    hits its own point, and the row just above a special row whose order is one less hits the other one.
    """
    if bundle_next.stability is not Stability.SEMISTABLE:
        raise InvalidBundleError("{0} is not semistable with distinct summands".format(bundle_next))

    a_seq, b_seq = cols
    pair = check_balanced_pair(a_seq, b_seq, bundle_next.degree // 2)
    if not pair.passed:
        raise InvalidBundleError("Columns at node {0} do not fit {1}".format(cfg.node, bundle_next))

    specials = (pair.i1, pair.i2)
    hits = OrderedSet()
    for s, i_s in enumerate(specials):
        if cfg.block_of(i_s) is not None:
            hits.add(s)
        below = i_s - 1
        if below >= 1 and below not in specials and cfg.block_of(below) is not None \
                and a_seq[below - 1] == a_seq[i_s - 1] - 1:
            hits.add(1 - s)

    return 2 - len(hits)


def m_bound_double(bundle_next: BundleSpec) -> int:
    if bundle_next.stability is not Stability.DOUBLE:
        raise InvalidBundleError("{0} does not have isomorphic summands".format(bundle_next))
    return 0


def m_bound_unstable(cols: Tuple[List[int], List[int]], cfg: ConfigurationPartition, deg: int) -> int:
    """1 - eps + |M|, eps marking a configured row that reaches the destabilizing order sum"""
    if deg % 2 == 0:
        raise InvalidBundleError("Degree {0} does not belong to an unstable component".format(deg))

    a_seq, b_seq = cols
    top = (deg - 1) // 2
    b_counts = Counter(b_seq)
    sums = [a + b for a, b in zip(a_seq, b_seq)]

    deficit = [i for i in range(1, len(a_seq) + 1) if b_counts[b_seq[i - 1]] == 1 and sums[i - 1] == top - 1]
    eps = 1 if any(sums[i - 1] >= top for i in cfg.indices) else 0

    return 1 - eps + len(deficit)


def propagate_configuration(bundle: BundleSpec, cfg_in: ConfigurationPartition,
                            cols: Tuple[List[int], List[int]]) -> ConfigurationPartition:
    """Carry a configuration across one component to its right node"""
    a_seq, b_seq = cols
    stability = bundle.stability

    if stability is Stability.DOUBLE:
        blocks = [OrderedSet(block) for block in cfg_in.blocks]
    elif stability is Stability.SEMISTABLE:
        (x, _), (y, _) = bundle.summands
        pair = check_balanced_pair(a_seq, b_seq, bundle.degree // 2)
        specials = {pair.i1, pair.i2}
        blocks = []
        for block in cfg_in.blocks:
            rest = [i for i in block if i not in specials]
            blocks += [OrderedSet([i]) for i in block if i in specials]
            while rest:
                head = rest.pop(0)
                kept = OrderedSet([head] + [i for i in rest if a_seq[head - 1] + a_seq[i - 1] == x + y - 1])
                rest = [i for i in rest if i not in kept]
                blocks.append(kept)
    else:
        top = (bundle.degree - 1) // 2
        sums = [a + b for a, b in zip(a_seq, b_seq)]
        destabilizing = OrderedSet(sorted(i for i in cfg_in.indices if sums[i - 1] >= top))
        blocks = [destabilizing] + [OrderedSet(i for i in block if i not in destabilizing) for block in cfg_in.blocks]

    counts = Counter(b_seq)
    kept_blocks, dropped = [], []
    for block in blocks:
        dropped += [i for i in block if counts[b_seq[i - 1]] != 1]
        kept_blocks.append(OrderedSet(i for i in block if counts[b_seq[i - 1]] == 1))

    cfg_out = ConfigurationPartition(cfg_in.node + 1, kept_blocks)
    if dropped:
        cfg_out.notes.append("rows {0} repeat at node {1}".format(sorted(dropped), cfg_in.node + 1))
    return cfg_out


def node_bound(table: VanishingTable, j: int, cfg: Optional[ConfigurationPartition] = None) -> Tuple[int, str]:
    """Fiber dimension bound for adding component j, with the rule that produced it"""
    if not 1 < j <= table.g:
        raise InvalidParameterError("Component {0} has no preceding node".format(j))

    cols = (table.a_col(j), table.b_col(j))
    deg = table.d_vec[j - 1]
    if cfg is None:
        cfg = canonical_configuration(table, j)

    if deg % 2 == 1:
        return m_bound_unstable(cols, cfg, deg), "m3"

    bundle = infer_bundle(cols[0], cols[1], deg)
    if bundle.stability is Stability.DOUBLE:
        return m_bound_double(bundle), "m2"
    return m_bound_semistable(bundle, cfg, cols), "m1"


def reference_bounds(construction: str, k1: int, q: int = 1) -> List[int]:
    """Proven per-node upper bounds for the components a construction appends, in order"""
    if construction == "base":
        return [0, 2, 0, 0, 0]

    if construction == "first":
        bounds = [1, 2, 0, 1, 1, 2 if k1 > 2 else 1, 0, 2, 0]
        bounds += [3, 2, 0, 1, 1, 1, 2, 0, 0, 2, 0] * (q - 1)
        bounds += [2, 0, 2, 0] * max(0, k1 - 3 * q + 1)
        return bounds + [0, 2, 0, 0]

    if construction == "second":
        return [1] * (2 * k1) + [0, 0]

    if construction == "third":
        if k1 == 2:
            head = [2, 0, 2, 0, 0]
        else:
            head = [2, 0, 2, 0, 2] + [1] * (k1 - 3) + [0]
        return head + [0] + [2, 0] * (k1 - 1) + [0]

    raise CannotAccountError("No reference bounds for construction '{0}'".format(construction))


class Correction:
    """A codimension correction at one node together with the row condition it rests on"""
    SUM_RULE = "sum-rule"
    FORCED_BLOCK = "forced-block"

    def __init__(self, value: int, tag: str, rule: str, rows: Tuple[int, ...] = ()):
        self.value = value
        self.tag = tag
        self.rule = rule
        self.rows = rows

    def __eq__(self, other):
        if not isinstance(other, Correction):
            return False

        return (self.value, self.tag, self.rule, self.rows) == (other.value, other.tag, other.rule, other.rows)

    def __hash__(self):
        return hash((self.value, self.tag, self.rule, self.rows))

    def __repr__(self):
        return "Correction({0}, {1})".format(self.value, self.tag)


class CorrectionCheck:
    def __init__(self, j: int, correction: Correction, rows: List[int], passed: bool, detail: str):
        self.j = j
        self.correction = correction
        self.rows = rows
        self.passed = passed
        self.detail = detail

    def to_dict(self) -> Dict:
        return {"node": self.j, "correction": self.correction.value, "rule": self.correction.rule,
                "rows": self.rows, "passed": self.passed, "detail": self.detail}


def check_correction(table: VanishingTable, j: int, bundle: BundleSpec, cfg: ConfigurationPartition,
                     correction: Correction) -> CorrectionCheck:
    """
    Test the row condition behind a correction against the table and the configuration carried to node j.
    A sum-rule correction needs its two rows non-repeated, summing to x+y-1 for the left twists x, y of the
    component, and not yet in one block. A forced block needs the non-repeated rows reaching the destabilizing
    order sum to meet at least 1-value blocks, rows outside every block counting on their own.
    """
    a_seq, b_seq = table.a_col(j), table.b_col(j)
    counts = Counter(a_seq)

    if correction.rule == Correction.SUM_RULE:
        rows = list(correction.rows)
        if bundle.stability is not Stability.SEMISTABLE:
            return CorrectionCheck(j, correction, rows, False, "{0} is not semistable".format(bundle))
        if any(not 1 <= i <= table.k for i in rows):
            return CorrectionCheck(j, correction, rows, False, "rows outside 1..{0}".format(table.k))
        repeated = [i for i in rows if counts[a_seq[i - 1]] != 1]
        if repeated:
            return CorrectionCheck(j, correction, rows, False, "rows {0} have repeated orders".format(repeated))

        (x, _), (y, _) = bundle.summands
        total = sum(a_seq[i - 1] for i in rows)
        if total != x + y - 1:
            return CorrectionCheck(j, correction, rows, False,
                                   "orders sum to {0}, not {1}".format(total, x + y - 1))
        block = cfg.block_of(rows[0])
        if block is not None and all(i in block for i in rows):
            return CorrectionCheck(j, correction, rows, False, "rows already share a block at node {0}".format(j))
        return CorrectionCheck(j, correction, rows, True, "")

    if correction.rule == Correction.FORCED_BLOCK:
        if bundle.stability is not Stability.UNSTABLE:
            return CorrectionCheck(j, correction, [], False, "{0} is not unstable".format(bundle))

        top = (bundle.degree - 1) // 2
        rows = [i for i in range(1, table.k + 1) if counts[a_seq[i - 1]] == 1 and a_seq[i - 1] + b_seq[i - 1] >= top]
        met = set()
        for i in rows:
            block = cfg.block_of(i)
            met.add(tuple(block) if block is not None else (i,))
        needed = 1 - correction.value
        if len(met) < needed:
            return CorrectionCheck(j, correction, rows, False, "rows {0} meet {1} blocks, need {2}".format(
                rows, len(met), needed))
        return CorrectionCheck(j, correction, rows, True, "")

    raise InvalidParameterError("Unknown correction rule '{0}'".format(correction.rule))


def correction_table(construction: str, k1: int, q: int = 1) -> Dict[int, Correction]:
    """Codimension corrections keyed by the offset of the node past the seed genus"""
    corrections = {}
    k = 2 * k1 + 1

    if construction == "first":
        corrections[4] = Correction(-1, "destabilizing block at g+4", Correction.FORCED_BLOCK)
        if k1 > 2:
            corrections[8] = Correction(-1, "destabilizing block {1,k,k+4} forced at g+8", Correction.FORCED_BLOCK)
        corrections[9] = Correction(-1, "rows 5 and k+3 share a point at g+9", Correction.SUM_RULE, (5, k + 3))
        for s in range(q - 1):
            corrections[11 + 11 * s] = Correction(-1, "rows 6s+5 and k+4 share a point at g+11+11s",
                                                  Correction.SUM_RULE, (6 * s + 5, k + 4))
            corrections[13 + 11 * s] = Correction(-2, "five-row block forced at g+13+11s", Correction.FORCED_BLOCK)
    elif construction == "third" and k1 >= 3:
        corrections[k1 + 3] = Correction(-1, "rows k-1 and k merge at g+k1+3", Correction.SUM_RULE, (k - 1, k))

    return corrections


STEP1_CONTRIBUTION = {"first": 1, "second": 1, "third": 0}


def _base_report(ledger) -> FiberBoundReport:
    reference = reference_bounds("base", ledger.k // 2)
    entries = []
    for j in range(2, ledger.g + 1):
        bound, rule = node_bound(ledger.table, j)
        entries.append(FiberBoundEntry(j, bound, rule, reference=reference[j - 2]))

    return FiberBoundReport(ledger.g, ledger.k, entries, BASE_FIRST_NODE, construction="base")


def account_dimension(ledger, memo: Optional[Dict[Tuple[str, ...], FiberBoundReport]] = None) -> FiberBoundReport:
    """
    Bound the dimension of the chain's moduli by summing fiber bounds along its construction history.
    Reports in memo are keyed by provenance and reused for shared ancestors.
    """
    key = tuple(ledger.provenance)
    if memo is not None and key in memo:
        return memo[key]

    construction = ledger.construction
    if construction == "base":
        if ledger.pair.to_tuple() != (6, 5):
            raise CannotAccountError("Only the (6,5) chain can be accounted as a base case")
        report = _base_report(ledger)
    elif construction in STEP1_CONTRIBUTION:
        if ledger.parent is None or ledger.params is None:
            raise CannotAccountError("Ledger {0} has no construction history".format(ledger.pair))

        parent_report = account_dimension(ledger.parent, memo)
        g, k1 = ledger.parent.g, ledger.parent.k // 2
        reference = reference_bounds(construction, k1, ledger.params.q)
        corrections = correction_table(construction, k1, ledger.params.q)

        entries = []
        cfg = canonical_configuration(ledger.table, g + 1)
        for offset, j in enumerate(range(g + 1, ledger.g + 1), 1):
            bound, rule = node_bound(ledger.table, j)
            correction = corrections.get(offset)
            check = None
            if correction is not None:
                check = check_correction(ledger.table, j, ledger.bundle(j), cfg, correction)
            entries.append(FiberBoundEntry(j, bound, rule, correction.value if correction else 0,
                                           correction.tag if correction else "",
                                           reference[offset - 1] if offset <= len(reference) else None, cfg, check))
            cfg = propagate_configuration(ledger.bundle(j), cfg, (ledger.table.a_col(j), ledger.table.b_col(j)))

        report = FiberBoundReport(ledger.g, ledger.k, entries, parent_report.total, STEP1_CONTRIBUTION[construction],
                                  construction, parent_report.failed_corrections)
    else:
        raise CannotAccountError("Unknown provenance '{0}'".format(construction))

    for entry in report.mismatches:
        logging.getLogger(__name__).warning("Node {0} of {1}: computed bound {2}, proven bound {3}".format(
            entry.j, ledger.pair, entry.bound, entry.reference))
    for check in report.failed_corrections[len(report.inherited):]:
        logging.getLogger(__name__).warning("Correction at node {0} of {1} lacks its row condition: {2}".format(
            check.j, ledger.pair, check.detail))

    if memo is not None:
        memo[key] = report
    return report
