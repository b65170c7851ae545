import math
from unittest import TestCase

import numpy as np

from usdcoherence.filtering import (
    classify, fidelity_bound, objective, q1_star, q_min_filtering
)
from usdcoherence.generators import random_filtering_instance
from usdcoherence.model import (
    DomainError, FilteringCase, FilteringInstance, Priors, WeightSumError,
    ZeroPriorError
)


def filtering(p1, beta, overlaps):
    return FilteringInstance(Priors.from_p1(p1), beta, overlaps)


class TestFiltering(TestCase):
    def test_q1_star(self):
        inst = filtering(0.15, (0.1, 0.9), (0.0, 0.5))

        self.assertAlmostEqual(q1_star(inst), math.sqrt(0.85 / 0.15 * 0.225),
                               places=14)
        self.assertAlmostEqual(q1_star(inst), 1.129159, places=6)

    def test_q1_star_needs_p1(self):
        inst = FilteringInstance(Priors(0.0, 1.0), (0.5, 0.5), (0.5, 0.5))

        with self.assertRaises(ZeroPriorError):
            q1_star(inst)

    def test_objective(self):
        self.assertAlmostEqual(
            objective(filtering(0.5, (1.0,), (0.5,)), 0.5), 0.5, places=15)
        self.assertAlmostEqual(
            objective(filtering(0.15, (0.1, 0.9), (0.0, 0.5)), 1.0), 0.34125,
            places=15)

    def test_objective_domain(self):
        inst = filtering(0.5, (1.0,), (0.5,))

        for q1 in (0.0, -0.1, 1.5):
            with self.subTest(q1=q1):
                with self.assertRaises(DomainError):
                    objective(inst, q1)

    def test_case_i(self):
        inst = filtering(0.25, (0.5, 0.5), (0.5, 0.5))

        result = q_min_filtering(inst)

        self.assertIs(result.branch, FilteringCase.CASE_I)
        self.assertAlmostEqual(result.q_min, 2.0 * math.sqrt(0.25 * 0.75 * 0.25),
                               places=14)
        self.assertIsNone(result.certificate)

    def test_case_ii(self):
        inst = filtering(0.4, (0.9, 0.1), (0.0, 0.9))

        result = q_min_filtering(inst)

        self.assertIs(result.branch, FilteringCase.CASE_II)
        self.assertAlmostEqual(result.q_min, 0.4 * 0.81 + 0.6 * 0.081 / 0.81,
                               places=14)

    def test_case_iii_spot_value(self):
        inst = filtering(0.15, (0.1, 0.9), (0.0, 0.5))

        result = q_min_filtering(inst)

        self.assertIs(result.branch, FilteringCase.CASE_III)
        self.assertAlmostEqual(result.q_min, 0.34125, delta=1e-15)

    def test_classify_records_quantities(self):
        branch = classify(filtering(0.05, (0.5, 0.5), (0.6, 0.6)))

        self.assertIs(branch.label, FilteringCase.CASE_III)
        self.assertAlmostEqual(branch.parallel_norm_sq, 0.72, places=15)
        self.assertGreater(branch.q1_star, 1.0)

    def test_zero_overlaps(self):
        result = q_min_filtering(filtering(0.3, (0.5, 0.5), (0.0, 0.0)))

        self.assertIs(result.branch, FilteringCase.CASE_I)
        self.assertEqual(result.q_min, 0.0)

    def test_degenerate_interior(self):
        result = q_min_filtering(filtering(0.3, (1.0, 0.0), (0.0, 0.5)))

        self.assertIs(result.branch, FilteringCase.CASE_II)
        self.assertAlmostEqual(result.q_min, 0.3 * 0.25, places=15)
        self.assertEqual(result.certificate.note, 'degenerate interior')
        self.assertEqual(result.certificate.argmin_q1, 0.25)

    def test_zero_prior(self):
        inst = FilteringInstance(Priors(0.0, 1.0), (0.5, 0.5), (0.5, 0.5))

        result = q_min_filtering(inst)

        self.assertIs(result.branch, FilteringCase.CASE_III)
        self.assertAlmostEqual(result.q_min, 0.25, places=15)

    def test_zero_prior_without_weighted_overlap(self):
        inst = FilteringInstance(Priors(0.0, 1.0), (1.0, 0.0), (0.0, 0.5))

        self.assertEqual(q_min_filtering(inst).q_min, 0.0)

    def test_invalid_instance(self):
        with self.assertRaises(WeightSumError):
            q_min_filtering(filtering(0.3, (0.5, 0.6), (0.1, 0.1)))

    def test_tie_at_upper_end_is_case_i(self):
        # beta_1 * s_11^2 = P1 / P2, so q1* = 1 up to rounding
        inst = filtering(0.2, (0.5, 0.5), (math.sqrt(0.5), 0.0))

        branch = classify(inst)

        self.assertAlmostEqual(branch.q1_star, 1.0, places=14)
        self.assertIs(branch.label, FilteringCase.CASE_I)

    def test_fidelity_bound(self):
        cases = [
            filtering(0.25, (0.5, 0.5), (0.5, 0.5)),
            filtering(0.4, (0.9, 0.1), (0.0, 0.9)),
            filtering(0.15, (0.1, 0.9), (0.0, 0.5))
        ]

        for inst in cases:
            with self.subTest(inst=inst):
                result = q_min_filtering(inst)
                bound = fidelity_bound(inst)

                self.assertGreaterEqual(result.q_min, bound - 1e-12)
                if result.branch is FilteringCase.CASE_I:
                    self.assertAlmostEqual(result.q_min, bound, places=14)

    def test_q_min_grows_with_each_overlap(self):
        rng = np.random.default_rng(11)

        for _ in range(200):
            inst = random_filtering_instance(rng)
            index = int(rng.integers(inst.dimension))

            # Spend half the remaining room below 1 on one overlap
            room = 1.0 - inst.parallel_norm_sq
            overlaps = list(inst.overlaps)
            overlaps[index] = math.sqrt(overlaps[index] ** 2 + 0.5 * room)
            larger = FilteringInstance(inst.priors, inst.beta, tuple(overlaps))

            with self.subTest(inst=inst, index=index):
                self.assertGreaterEqual(q_min_filtering(larger).q_min,
                                        q_min_filtering(inst).q_min - 1e-12)
