from __future__ import annotations

import argparse
import datetime
import json
import logging
import os
import random
import re
import sys
from typing import Dict, List, Optional, Union

import colored

from constructions import ChainLedger, apply_move, base_case, extension_history, ledger_from_json, ledger_to_json, \
    replay, verify_construction_tables
from region import Move, asymptotic_ratio, derivation_path, enumerate_region, in_region, region_rows
from determinant import check_canonical_chain
from dimension import account_dimension
from exceptions import CannotAccountError, CapExceededError, ConstructionError, InvalidParameterError, \
    InvalidPathError, InvalidTableError, NotApplicableError, SearchFailureError, FeasibilityError
from functions import color, ensure_directory, load_config, read_json, status_str, write_json, write_rows_csv
from lstab import LChain, chain_from_json, chain_to_json, is_l_semistable_bruteforce, mu_reference, \
    ssimple_criterion
from numerics import PairGK, rho, strict_semistable_excluded
from vanishing import check_standard, write_table_csv

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_IO = 3


class CheckResult:
    def __init__(self, name: str, passed: bool, detail: str = "", skipped: bool = False):
        self.name = name
        self.passed = passed
        self.detail = detail
        self.skipped = skipped

    def to_dict(self) -> Dict:
        return {"check": self.name, "status": "skip" if self.skipped else ("pass" if self.passed else "fail"),
                "detail": self.detail}

    def __str__(self):
        return "{0} {1}{2}".format(status_str(self.passed, self.skipped), self.name,
                                   ": {0}".format(self.detail) if self.detail else "")


class RunReport:
    def __init__(self, command: str):
        self.command = command
        self.checks = []
        self.artifacts = []
        self.summary = {}

    @property
    def passed(self) -> bool:
        return all(c.passed or c.skipped for c in self.checks)

    def check(self, name: str, passed: bool, detail: str = "", skipped: bool = False) -> bool:
        self.checks.append(CheckResult(name, passed, detail, skipped))
        return passed

    def skip(self, name: str, detail: str = "") -> None:
        self.checks.append(CheckResult(name, True, detail, True))

    def merge(self, other: RunReport) -> None:
        self.checks += other.checks
        self.artifacts += other.artifacts

    def to_dict(self, timestamp: bool = True) -> Dict:
        data = {"command": self.command, "checks": [c.to_dict() for c in self.checks], "artifacts": self.artifacts,
                "summary": self.summary, "passed": self.passed}
        if timestamp:
            data["timestamp"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
        return data

    def print(self, show_passes: bool = True) -> None:
        for c in self.checks:
            if show_passes or not c.passed:
                print(c)
        verdict = color("PASS", colored.fg('chartreuse_2a')) if self.passed else color("FAIL", colored.fg('red_1'))
        failed = len([c for c in self.checks if not c.passed])
        print("{0} {1} ({2} checks, {3} failed)".format(verdict, self.command, len(self.checks), failed))


def parse_args() -> argparse.Namespace:
    argparser = argparse.ArgumentParser()
    argparser.add_argument("mode", choices=['verify', 'region', 'lstab'])
    argparser.add_argument("targets", nargs="*",
                           help="verify: 'g k' pairs or ledger files; region: k_max; lstab: chain files")
    argparser.add_argument('--json', action='store_true', help="print a machine-readable report")
    argparser.add_argument('--csv', help="directory for table and region dumps")
    argparser.add_argument('--seed', type=int, help="seed for randomized chain batches")
    argparser.add_argument('--cap', type=int, help="largest chain searched exhaustively")
    argparser.add_argument('--force', action='store_true', help="search chains larger than the cap")
    argparser.add_argument('--no-timestamp', action='store_true', help="omit the timestamp from JSON reports")
    argparser.add_argument('--save-ledger', action='store_true', help="write constructed ledgers as JSON")

    return argparser.parse_args()


def parse_targets(tokens: List[str]) -> List[Union[PairGK, str]]:
    """Pairs given as 'g k' or 'g,k', anything else as a file path"""
    targets = []
    i = 0
    while i < len(tokens):
        match = re.match(r"^(\d+),(\d+)$", tokens[i])
        if match:
            targets.append(PairGK(int(match.group(1)), int(match.group(2))))
            i += 1
        elif tokens[i].isdigit() and i + 1 < len(tokens) and tokens[i + 1].isdigit():
            targets.append(PairGK(int(tokens[i]), int(tokens[i + 1])))
            i += 2
        elif tokens[i].isdigit():
            raise InvalidParameterError("Incomplete pair '{0}'".format(tokens[i]))
        else:
            targets.append(tokens[i])
            i += 1

    return targets


def verify_ledger(ledger: ChainLedger, report: RunReport, reference: Optional[ChainLedger] = None) -> None:
    """Standardness, determinants, closed-form columns and the dimension count of one ledger"""
    name = str(ledger.pair)
    per_column_only = ledger.construction == "third"

    standard = check_standard(ledger.table, per_column_only)
    report.check("{0} standard".format(name), standard.passed,
                 "; ".join(str(v) for v in standard.violations[:3]))
    same = standard.bundles == ledger.bundles
    report.check("{0} bundles".format(name), same, "" if same else "ledger bundles differ from the table")

    try:
        det_checks = check_canonical_chain(ledger)
        failed = [c.j for c in det_checks if not c.passed]
        report.check("{0} canonical determinant".format(name), not failed,
                     "components {0}".format(failed) if failed else "")
    except NotApplicableError as e:
        report.check("{0} canonical determinant".format(name), False, str(e))

    accounted = reference if reference is not None else ledger
    try:
        for step, extension in extension_history(accounted):
            report.check("{0} extension to {1}".format(name, step.pair), extension.passed,
                         "; ".join(str(v) for v in extension.violations[:3]))
    except (InvalidParameterError, InvalidTableError) as e:
        report.check("{0} extension".format(name), False, str(e))

    for golden in verify_construction_tables(accounted):
        if golden.skipped:
            report.skip("{0} golden {1}".format(name, golden.formula), "column {0}".format(golden.column))
        else:
            report.check("{0} golden {1}".format(name, golden.formula), golden.passed,
                         "" if golden.passed else "column {0}, row {1}".format(golden.column, golden.first_mismatch))

    try:
        dim = account_dimension(accounted)
    except CannotAccountError as e:
        report.skip("{0} dimension".format(name), str(e))
        return

    expected = rho(ledger.pair)
    report.check("{0} dimension".format(name), dim.total == expected,
                 "total {0}, rho {1}".format(dim.total, expected))
    mismatches = ["{0}: {1} vs {2}".format(e.j, e.bound, e.reference) for e in dim.mismatches]
    report.check("{0} reference bounds".format(name), not mismatches, ", ".join(mismatches))
    failed = ["{0}: {1}".format(c.j, c.detail) for c in dim.failed_corrections]
    report.check("{0} correction conditions".format(name), not failed, ", ".join(failed))
    report.summary[name] = {"total": dim.total, "rho": expected, "provenance": ledger.provenance,
                            "nodes": dim.to_rows()}


def cmd_verify(target: Union[PairGK, str], csv_dir: Optional[str] = None, save_ledger: bool = False) -> RunReport:
    report = RunReport("verify {0}".format(target))

    if isinstance(target, str):
        ledger = ledger_from_json(read_json(target))
        reference = None
        moves = [m for m in ledger.provenance if m != "base"]
        try:
            reference = replay_moves([Move.parse(m) for m in moves])
            report.check("{0} replay".format(ledger.pair), reference.table == ledger.table,
                         "provenance {0}".format(" -> ".join(ledger.provenance)))
        except (InvalidParameterError, ConstructionError) as e:
            report.skip("{0} replay".format(ledger.pair), str(e))
        verify_ledger(ledger, report, reference if reference is not None and reference.table == ledger.table
                      else None)
        return report

    verdict = in_region(target)
    if not verdict.constructible:
        if "prior" in verdict.tags:
            report.skip("{0} region".format(target), "L >= 0, covered without a construction")
        else:
            report.check("{0} region".format(target), False, "REJECT: not in region")
        return report
    report.check("{0} region".format(target), True, "tags {0}{1}".format(
        ",".join(verdict.tags) or "-", "; " + "; ".join(verdict.flags) if verdict.flags else ""))

    excluded, reason = strict_semistable_excluded(target)
    report.check("{0} strictly semistable excluded".format(target), excluded, reason)

    try:
        path = derivation_path(target)
    except SearchFailureError as e:
        report.check("{0} derivation".format(target), False, str(e))
        return report
    report.check("{0} derivation".format(target), True, repr(path))

    try:
        ledger = replay(path)
    except (ConstructionError, FeasibilityError) as e:
        report.check("{0} construction".format(target), False, str(e))
        return report
    report.check("{0} construction".format(target), ledger.pair == target, repr(ledger))

    verify_ledger(ledger, report)

    if csv_dir:
        out = os.path.join(ensure_directory(csv_dir), "{0}_{1}.csv".format(target.g, target.k))
        write_table_csv(ledger.table, out)
        report.artifacts.append(out)
    if save_ledger:
        out = os.path.join(ensure_directory(csv_dir or "."), "{0}_{1}.json".format(target.g, target.k))
        write_json(ledger_to_json(ledger), out)
        report.artifacts.append(out)

    return report


def replay_moves(moves: List[Move]) -> ChainLedger:
    ledger = base_case()
    for move in moves:
        ledger = apply_move(ledger, move.name, move.q)
    return ledger


def cmd_region(k_max: int, out_dir: Optional[str] = None) -> RunReport:
    report = RunReport("region {0}".format(k_max))
    pairs = enumerate_region(k_max)
    memo = {}

    paths = {}
    for p in pairs:
        key = "{0},{1}".format(p.g, p.k)
        try:
            path = derivation_path(p, memo)
            paths[key] = path.to_dict()
            report.check("{0} derivation".format(p), True, repr(path))
        except NotApplicableError as e:
            paths[key] = {"status": "prior"}
            report.skip("{0} derivation".format(p), str(e))
        except SearchFailureError as e:
            paths[key] = {"status": "failed"}
            report.check("{0} derivation".format(p), False, str(e))

        excluded, reason = strict_semistable_excluded(p)
        if "prior" not in in_region(p).tags:
            report.check("{0} strictly semistable excluded".format(p), excluded, reason)

    rows = region_rows(k_max)
    ratios = [{"k1": k1, "ratio": str(asymptotic_ratio(k1)), "value": float(asymptotic_ratio(k1))}
              for k1 in range(2, (k_max - 1) // 2 + 1)]
    report.summary = {"pairs": len(pairs), "rows": rows, "asymptotic": ratios}

    if out_dir:
        out_dir = ensure_directory(out_dir)
        write_rows_csv(rows, os.path.join(out_dir, "region.csv"))
        write_rows_csv(ratios, os.path.join(out_dir, "asymptotic.csv"))
        write_json(paths, os.path.join(out_dir, "paths.json"))
        report.artifacts += [os.path.join(out_dir, name) for name in ("region.csv", "asymptotic.csv", "paths.json")]

    return report


def random_chain(rng: random.Random, n_max: int = 6) -> LChain:
    """A chain with offsets f_j in 1..4, at most two unstable components and random gluings"""
    n = rng.randint(1, n_max)
    offsets, isomorphic, unstable = [], [], 0
    for j in range(1, n + 1):
        f = rng.randint(1, 4)
        if f % 2 == 1 and unstable == 2:
            f += 1
        if f % 2 == 1:
            unstable += 1
            offsets.append(((f - 1) // 2, (f + 1) // 2))
        else:
            offsets.append((f // 2, f // 2))
            if rng.random() < 0.2:
                isomorphic.append(j)

    glued = [(node, left, right) for node in range(1, n) for left in (1, 2) for right in (1, 2)
             if rng.random() < 0.5]
    return LChain(offsets, glued, isomorphic)


def lstab_chain(chain: LChain, name: str, cap: int, force: bool, report: RunReport) -> None:
    if chain.n > cap and not force:
        raise CapExceededError("{0} has {1} components, cap is {2}; use --force".format(name, chain.n, cap))
    for flag in chain.flags:
        logging.getLogger(__name__).warning("{0}: {1}".format(name, flag))

    semistable, witness = is_l_semistable_bruteforce(chain, max(cap, chain.n))
    report.check("{0} bruteforce".format(name), True,
                 "semistable" if semistable else "destabilized by {0}".format(witness.to_dict()))
    report.summary.setdefault("chains", []).append({"name": name, "chain": chain_to_json(chain),
                                                    "semistable": semistable,
                                                    "witness": witness.to_dict() if witness else None,
                                                    "flags": chain.flags})

    try:
        fast = ssimple_criterion(chain)
        report.check("{0} fast criterion agrees".format(name), fast == semistable,
                     "fast {0}, exhaustive {1}".format(fast, semistable))
    except NotApplicableError as e:
        report.skip("{0} fast criterion agrees".format(name), str(e))

    try:
        mu, mu_witness = mu_reference(chain)
        report.skip("{0} slope reference".format(name),
                    "mu-semistable {0}{1}".format(mu, "" if mu else ", witness {0}".format(mu_witness.to_dict())))
    except NotApplicableError:
        pass


def cmd_lstab(chain_files: List[str], cap: int, force: bool = False, seed: int = 0, count: int = 1000) -> RunReport:
    report = RunReport("lstab {0}".format(" ".join(chain_files) or "random({0}, seed={1})".format(count, seed)))

    if chain_files:
        for path in chain_files:
            lstab_chain(chain_from_json(read_json(path)), os.path.basename(path), cap, force, report)
        return report

    rng = random.Random(seed)
    for i in range(count):
        lstab_chain(random_chain(rng), "chain {0}".format(i), cap, force, report)

    return report


def main():
    settings = load_config()
    args = parse_args()
    logging.basicConfig(level=settings["log_level"])

    cap = args.cap if args.cap is not None else settings["bruteforce_cap"]
    seed = args.seed if args.seed is not None else settings["seed"]

    try:
        if args.mode == "verify":
            targets = parse_targets(args.targets)
            if not targets:
                raise InvalidParameterError("verify needs a pair 'g k' or a ledger file")
            report = RunReport("verify")
            for target in targets:
                curr = cmd_verify(target, args.csv, args.save_ledger)
                report.merge(curr)
                report.summary.update(curr.summary)

        elif args.mode == "region":
            if len(args.targets) > 1 or (args.targets and not args.targets[0].isdigit()):
                raise InvalidParameterError("region takes a single k_max")
            report = cmd_region(int(args.targets[0]) if args.targets else settings["region_k_max"], args.csv)

        else:
            report = cmd_lstab(args.targets, cap, args.force, seed, settings["random_chains"])

    except (InvalidParameterError, InvalidTableError, CapExceededError, NotApplicableError) as e:
        print(color("Error: {0}".format(e), colored.fg('red_1')))
        return EXIT_USAGE
    except (InvalidPathError, OSError) as e:
        logging.getLogger(__name__).error(e)
        return EXIT_IO

    if args.json:
        print(json.dumps(report.to_dict(not args.no_timestamp), indent=2, sort_keys=True))
    else:
        report.print()

    return EXIT_PASS if report.passed else EXIT_FAIL


def init():
    if __name__ == "__main__":
        sys.exit(main())


init()
