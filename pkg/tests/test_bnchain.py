import argparse
import os
import random
import shutil
import tempfile
import unittest
from unittest import mock

import mockito

import bnchain
from bnchain import EXIT_FAIL, EXIT_PASS, EXIT_USAGE, RunReport, cmd_lstab, cmd_region, cmd_verify, lstab_chain, \
    parse_targets, random_chain
from constructions import base_case, construct_second, ledger_to_json
from exceptions import CapExceededError, InvalidParameterError
from lstab import LChain
from numerics import PairGK

SETTINGS = {"bruteforce_cap": 12, "random_chains": 20, "seed": 0, "region_k_max": 9, "log_level": "WARNING"}


def namespace(mode, targets, **kwargs) -> argparse.Namespace:
    values = {"json": False, "csv": None, "seed": None, "cap": None, "force": False, "no_timestamp": True,
              "save_ledger": False}
    values.update(kwargs)
    return argparse.Namespace(mode=mode, targets=targets, **values)


class TestBnchain(unittest.TestCase):

    def tearDown(self):
        mockito.unstub()

    def test_init(self):
        with mock.patch.object(bnchain, "main", return_value=42):
            with mock.patch.object(bnchain, "__name__", "__main__"):
                with mock.patch.object(bnchain.sys, 'exit') as mock_exit:
                    bnchain.init()
                    assert mock_exit.call_args[0][0] == 42

    def test_parse_targets(self):
        assert parse_targets(["12", "7", "15,8", "ledger.json"]) == [PairGK(12, 7), PairGK(15, 8), "ledger.json"]
        assert parse_targets([]) == []
        self.assertRaises(InvalidParameterError, parse_targets, ["12"])

    def test_run_report(self):
        report = RunReport("test")
        report.check("one", True)
        report.skip("two", "nothing to do")

        assert report.passed
        report.check("three", False, "broken")
        assert not report.passed

        data = report.to_dict(False)
        assert "timestamp" not in data
        assert [c["status"] for c in data["checks"]] == ["pass", "skip", "fail"]
        assert "timestamp" in report.to_dict()

    def test_verify_pair(self):
        report = cmd_verify(PairGK(12, 7))

        assert report.passed
        assert report.summary["(12,7)"]["total"] == 5
        assert any(c.name == "(12,7) dimension" and c.passed for c in report.checks)
        assert any(c.name == "(12,7) extension to (12,7)" and c.passed for c in report.checks)
        assert any(c.name == "(12,7) correction conditions" and c.passed for c in report.checks)

    def test_verify_prior_pair(self):
        report = cmd_verify(PairGK(16, 8))

        assert report.passed
        assert all(c.skipped for c in report.checks)

    def test_verify_outside_region(self):
        report = cmd_verify(PairGK(5, 5))

        assert not report.passed
        assert "REJECT" in report.checks[0].detail

    def test_verify_ledger_file(self):
        mockito.when(bnchain).read_json("ledger.json").thenReturn(ledger_to_json(construct_second(base_case())))

        report = cmd_verify("ledger.json")

        assert report.passed
        assert any(c.name == "(12,7) replay" and c.passed and not c.skipped for c in report.checks)
        assert report.summary["(12,7)"]["total"] == 5

    def test_verify_writes_artifacts(self):
        tmp = tempfile.mkdtemp()
        try:
            report = cmd_verify(PairGK(12, 7), tmp, True)

            assert sorted(os.path.basename(a) for a in report.artifacts) == ["12_7.csv", "12_7.json"]
            assert all(os.path.isfile(a) for a in report.artifacts)
        finally:
            shutil.rmtree(tmp)

    def test_region(self):
        tmp = tempfile.mkdtemp()
        try:
            report = cmd_region(8, tmp)

            assert report.passed
            assert report.summary["pairs"] == 8
            assert report.summary["asymptotic"][0]["ratio"] == "3/2"
            assert sorted(os.listdir(tmp)) == ["asymptotic.csv", "paths.json", "region.csv"]
        finally:
            shutil.rmtree(tmp)

    def test_lstab_random(self):
        report = cmd_lstab([], 12, seed=3, count=25)

        assert report.passed
        assert len(report.summary["chains"]) == 25

    def test_lstab_random_deterministic(self):
        first = cmd_lstab([], 12, seed=7, count=10).summary["chains"]
        second = cmd_lstab([], 12, seed=7, count=10).summary["chains"]

        assert first == second

    def test_lstab_file(self):
        mockito.when(bnchain).read_json("chain.json").thenReturn({"components": [[0, 1], [0, 1]],
                                                                   "glued": [[1, 2, 2]]})

        report = cmd_lstab(["chain.json"], 12)

        assert report.passed
        assert report.summary["chains"][0]["semistable"] is False

    def test_lstab_cap(self):
        report = RunReport("lstab")
        self.assertRaises(CapExceededError, lstab_chain, LChain([(1, 1)] * 3), "big", 2, False, report)

        lstab_chain(LChain([(1, 1)] * 3), "big", 2, True, report)
        assert report.passed

    def test_lstab_warns_on_flags(self):
        report = RunReport("lstab")
        with self.assertLogs("bnchain", level="WARNING") as logs:
            lstab_chain(LChain([(2, 2), (1, 1)]), "flagged", 12, False, report)

        assert any("flagged: component 1 has f=4" in line for line in logs.output)
        assert report.summary["chains"][0]["flags"] == ["component 1 has f=4"]

    def test_random_chain(self):
        rng = random.Random(0)
        for _ in range(50):
            chain = random_chain(rng)
            assert 1 <= chain.n <= 6
            assert len(chain.unstable) <= 2

    def test_main_region(self):
        mockito.when(bnchain).load_config().thenReturn(SETTINGS)
        mockito.when(bnchain).parse_args().thenReturn(namespace("region", [], json=True))

        assert bnchain.main() == EXIT_PASS

    def test_main_verify_without_targets(self):
        mockito.when(bnchain).load_config().thenReturn(SETTINGS)
        mockito.when(bnchain).parse_args().thenReturn(namespace("verify", []))

        assert bnchain.main() == EXIT_USAGE

    def test_main_verify_rejected(self):
        mockito.when(bnchain).load_config().thenReturn(SETTINGS)
        mockito.when(bnchain).parse_args().thenReturn(namespace("verify", ["5", "5"]))

        assert bnchain.main() == EXIT_FAIL

    def test_main_lstab_cap(self):
        mockito.when(bnchain).load_config().thenReturn(SETTINGS)
        mockito.when(bnchain).parse_args().thenReturn(namespace("lstab", [], cap=1))

        assert bnchain.main() == EXIT_USAGE
