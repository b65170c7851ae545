from unittest import TestCase
from unittest.mock import patch

from usdcoherence.model import EPS_MATCH
from usdcoherence.program import Program
from usdcoherence.suites import SuiteSummary
from usdcoherence.sweep.spec import SpecError, build_spec
from usdcoherence.sweep.verify import VerifyOutcome, run_verify


class TestVerify(TestCase):
    def tearDown(self):
        Program._running = True
        Program._exit_code = Program.EXIT_SUCCESS

    def test_small_run_passes(self):
        outcome = run_verify(build_spec({'target': 'Verify', 'count': 50, 'seed': 1}))

        self.assertTrue(outcome.passed)
        self.assertTrue(outcome.completed)
        self.assertEqual(len(outcome.summaries), 8)
        self.assertEqual(len(outcome.reports), 150)
        self.assertLessEqual(outcome.worst_gap, EPS_MATCH)

    def test_records(self):
        outcome = run_verify(build_spec({'target': 'Verify', 'count': 10}))

        records = outcome.records()

        self.assertEqual([record['record'] for record in records],
                         ['report'] * 30 + ['summary'] * 8)
        self.assertEqual(records[-1]['suite'], 'fidelity-identity')
        self.assertEqual(records[-1]['checked'], 1)

    def test_same_seed_same_outcome(self):
        spec = build_spec({'target': 'Verify', 'count': 20, 'seed': 9})

        first = run_verify(spec).records()
        second = run_verify(spec).records()

        self.assertEqual(first, second)

    @patch('usdcoherence.sweep.verify.Program.is_running', return_value=False)
    def test_shutdown_stops_the_run(self, _):
        outcome = run_verify(build_spec({'target': 'Verify', 'count': 5}))

        self.assertFalse(outcome.completed)
        self.assertFalse(outcome.passed)
        self.assertEqual(len(outcome.summaries), 3)

    def test_failed_suite(self):
        outcome = VerifyOutcome([SuiteSummary('oracle-filtering', checked=1,
                                              failures=1, worst=0.1)])

        self.assertFalse(outcome.passed)
        self.assertEqual(outcome.worst_gap, 0.1)

    def test_wrong_target(self):
        with self.assertRaises(SpecError):
            run_verify(build_spec({'target': 'RegionMap'}))
