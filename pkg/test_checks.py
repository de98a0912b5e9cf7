#!/usr/bin/env python3
"""Tests for the property suites and their report."""

import io
import unittest

from checks import (
    MAX_FAILURES,
    REPORT_SCHEMA,
    PropertyResult,
    Recorder,
    print_summary,
    run_suite,
    run_suites,
    summarize_results,
)
from errors import DepthExhausted, NotInImage
from settings import RunConfig


def _raise(exc):
    raise exc


def _counts(results):
    return {(result.suite, result.name): (result.checked, result.failed) for result in results}


class RecorderTests(unittest.TestCase):
    def test_attempt_outcomes(self):
        rec = Recorder("tower")
        rec.attempt("law", "holds", lambda: True)
        rec.attempt("law", "fails", lambda: False)
        rec.attempt("law", "raises", lambda: _raise(NotInImage("no preimage")))
        rec.attempt("law", "too deep", lambda: _raise(DepthExhausted("depth")), skip=(DepthExhausted,))
        (result,) = rec.to_list()
        self.assertEqual((result.checked, result.failed, result.skipped), (3, 2, 1))
        self.assertEqual(result.failures[0], "fails")
        self.assertIn("NotInImage", result.failures[1])

    def test_attempt_reports_whether_checked(self):
        rec = Recorder("amice")
        self.assertTrue(rec.attempt("law", "holds", lambda: True))
        self.assertTrue(rec.attempt("law", "raises", lambda: _raise(NotInImage("no preimage"))))
        self.assertFalse(rec.attempt("law", "too deep", lambda: _raise(DepthExhausted("depth")), skip=(DepthExhausted,)))

    def test_unexpected_errors_propagate(self):
        rec = Recorder("series")
        with self.assertRaises(KeyError):
            rec.attempt("law", "lookup", lambda: {}["missing"])

    def test_extend(self):
        rec = Recorder("tower")
        rec.extend("exact_sequence", 10, ["first", "second"])
        (result,) = rec.to_list()
        self.assertEqual((result.checked, result.failed), (10, 2))
        self.assertFalse(result.passed)

    def test_merge_caps_failures(self):
        left = PropertyResult("reps", "law", checked=4, failed=4, failures=["a", "b", "c", "d"])
        right = PropertyResult("reps", "law", checked=3, failed=3, skipped=1, failures=["e", "f", "g"])
        left.merge(right)
        self.assertEqual((left.checked, left.failed, left.skipped), (7, 7, 1))
        self.assertEqual(len(left.failures), MAX_FAILURES)


class ReportTests(unittest.TestCase):
    def setUp(self):
        self.results = [
            PropertyResult("series", "psi_phi", checked=12),
            PropertyResult("series", "decompose", checked=12, skipped=2),
            PropertyResult("corresp", "round_trip", checked=5, failed=2, failures=["x", "y"]),
        ]

    def test_summary(self):
        report = summarize_results(self.results)
        self.assertEqual(report["schema"], REPORT_SCHEMA)
        self.assertEqual(report["summary"], {"total": 3, "passed": 2, "failed": 1, "violations": 2})
        self.assertEqual(report["by_suite"]["series"], {"passed": 2, "failed": 0, "checked": 24})
        self.assertEqual(report["by_suite"]["corresp"], {"passed": 0, "failed": 1, "checked": 5})
        self.assertEqual(report["results"][1]["skipped"], 2)

    def test_print_summary(self):
        stream = io.StringIO()
        print_summary(summarize_results(self.results), stream)
        text = stream.getvalue()
        self.assertIn("2/3 properties passed, 2 violation(s)", text)
        self.assertIn("corresp/round_trip: 2/5 failed", text)


class SuiteTests(unittest.TestCase):
    def assertAllPass(self, results):
        self.assertTrue(results)
        for result in results:
            self.assertTrue(result.passed, f"{result.suite}/{result.name}: {result.failures}")

    def test_corresp_suite(self):
        results = run_suite("corresp", RunConfig(p=5))
        self.assertAllPass(results)
        names = {result.name for result in results}
        self.assertTrue({"round_trip", "anchored_reductions", "table_partition", "breuil_consistency"} <= names)

    def test_reps_suite(self):
        self.assertAllPass(run_suite("reps", RunConfig(p=3)))

    def test_series_suite(self):
        self.assertAllPass(run_suite("series", RunConfig(p=3, precision=20, samples=3)))

    def test_tower_suite(self):
        self.assertAllPass(run_suite("tower", RunConfig(p=5, m=1, precision=30, depth=4, samples=3)))

    def test_amice_suite(self):
        self.assertAllPass(run_suite("amice", RunConfig(p=3, level=2, samples=2)))

    def test_pairing_draws_replace_skipped_samples(self):
        results = {result.name: result for result in run_suite("amice", RunConfig(p=3, level=2, samples=100))}
        pairing = results["pairing_invariance"]
        self.assertEqual(pairing.checked, 200)
        self.assertEqual(pairing.failed, 0)

    def test_unknown_suite(self):
        with self.assertRaises(ValueError):
            run_suite("bogus", RunConfig())

    def test_sharding_is_deterministic(self):
        single = run_suites(RunConfig(p=5, suites=("corresp",)))
        sharded = run_suites(RunConfig(p=5, suites=("corresp",), workers=2))
        self.assertEqual(single["summary"], sharded["summary"])
        self.assertEqual(
            {(item["name"], item["checked"]) for item in single["results"]},
            {(item["name"], item["checked"]) for item in sharded["results"]},
        )
        self.assertEqual(sharded["config"]["workers"], 2)
        self.assertEqual(_counts(run_suite("corresp", RunConfig(p=5))), _counts(run_suite("corresp", RunConfig(p=5))))


if __name__ == "__main__":
    unittest.main()
