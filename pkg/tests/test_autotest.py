"""Random-testing harness: determinism, fault discovery, replay."""

import json

import pytest

from mbc.autotest import (
    CampaignResult, FaultReport, ReplayError, TestBudget, replay,
    run_campaign,
)
from mbc.containers import CONTAINER_NAMES, FaultSwitch


def faulty():
    return FaultSwitch(merge_right_missing_link=True)


class TestCampaigns:
    def test_clean_library_small_run(self):
        r = run_campaign(CONTAINER_NAMES, TestBudget(max_calls=3000, seed=1))
        assert r.violations == 0
        assert r.stats["calls"] == 3000
        assert r.stats["passed"] + r.stats["rejected"] <= r.stats["calls"]

    def test_fault_found_and_localized(self):
        r = run_campaign(["LinkedList"], TestBudget(max_calls=10_000, seed=0),
                         faults=faulty())
        assert r.violations >= 1
        assert {rep.violation["clause"] for rep in r.reports} == {"merge_right/sequence"}

    def test_deterministic_for_fixed_seed(self):
        budgets = TestBudget(max_calls=5000, seed=9)
        a = run_campaign(["LinkedList"], budgets, faults=faulty())
        b = run_campaign(["LinkedList"], budgets, faults=faulty())
        assert a.to_json_lines() == b.to_json_lines()

    def test_different_seeds_differ(self):
        a = run_campaign(CONTAINER_NAMES, TestBudget(max_calls=2000, seed=1))
        b = run_campaign(CONTAINER_NAMES, TestBudget(max_calls=2000, seed=2))
        assert a.stats != b.stats

    def test_workers_partition_seed_space(self):
        r = run_campaign(["LinkedList"], TestBudget(max_calls=4000, seed=3),
                         faults=faulty(), workers=2)
        assert r.stats["calls"] == 4000
        assert r.violations == len(r.reports)
        # Reports are merged in canonical order.
        lines = [rep.to_json() for rep in r.reports]
        assert lines == sorted(lines)

    def test_unknown_target_rejected(self):
        with pytest.raises(KeyError):
            run_campaign(["Nope"], TestBudget(max_calls=10))


class TestReplay:
    def _one_report(self):
        r = run_campaign(["LinkedList"], TestBudget(max_calls=10_000, seed=0),
                         faults=faulty())
        assert r.reports
        return r.reports[0]

    def test_report_reproduces_same_clause(self):
        rep = self._one_report()
        v = replay(rep, faults=faulty())
        assert v is not None
        assert v.clause == rep.violation["clause"]

    def test_trace_clean_without_fault(self):
        rep = self._one_report()
        assert replay(rep, faults=FaultSwitch()) is None

    def test_classic_clauses_miss_the_fault(self):
        rep = self._one_report()
        assert replay(rep, faults=faulty(), mode="classic") is None

    def test_report_json_round_trip(self):
        rep = self._one_report()
        d = json.loads(rep.to_json())
        rebuilt = FaultReport(violation=d["violation"], trace=d["trace"])
        v = replay(rebuilt, faults=faulty())
        assert v is not None and v.clause == rep.violation["clause"]

    def test_malformed_trace_rejected(self):
        with pytest.raises(ReplayError):
            replay(FaultReport(violation={}, trace=[]))
        with pytest.raises(ReplayError):
            replay(FaultReport(violation={},
                               trace=[["call", "start", []]]))
        with pytest.raises(ReplayError):
            replay(FaultReport(violation={},
                               trace=[["new", "NoSuch", "make_empty", []]]))


def test_result_json_lines_shape():
    r = run_campaign(["Stack"], TestBudget(max_calls=500, seed=4))
    lines = r.to_json_lines().strip().splitlines()
    head = json.loads(lines[0])
    assert set(head["stats"]) == {"calls", "rejected", "passed", "violations"}
    assert isinstance(r, CampaignResult)
