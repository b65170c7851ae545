import math
from unittest import TestCase

from usdcoherence.mixedmixed import (
    counterpart_s_star, neglected_gap, pair_branches, pair_threshold,
    q_min_mixed_mixed, q_min_pure_counterpart, theorem3_case
)
from usdcoherence.model import (
    DominanceError, PairLabel, Priors, PureCase, RankNPairInstance,
    Theorem3Case, ZeroDenominatorError
)
from usdcoherence.purepure import delta_q

P1, P2 = 0.15, 0.85


def rank_n(alpha, beta, diag_overlaps, p1=P1):
    return RankNPairInstance(Priors.from_p1(p1), alpha, beta, diag_overlaps)


class TestPairs(TestCase):
    def test_pair_threshold(self):
        priors = Priors.from_p1(P1)

        self.assertAlmostEqual(pair_threshold(priors, 0.5, 0.5),
                               math.sqrt(P1 / P2), places=15)
        self.assertAlmostEqual(pair_threshold(priors, 0.5, 0.5), 0.42008,
                               places=5)

    def test_pair_threshold_of_empty_pair(self):
        self.assertEqual(pair_threshold(Priors.from_p1(P1), 0.0, 0.0), math.inf)

    def test_pair_threshold_zero_denominator(self):
        with self.assertRaises(ZeroDenominatorError):
            pair_threshold(Priors.from_p1(P1), 0.1, 0.0)

    def test_pair_branches(self):
        branches = pair_branches(rank_n((0.5, 0.5), (0.5, 0.5), (0.2, 0.5)))

        self.assertEqual([branch.branch for branch in branches],
                         [PairLabel.IDENTIFIED, PairLabel.NEGLECTED])
        self.assertAlmostEqual(branches[0].contribution,
                               2.0 * math.sqrt(P1 * P2 * 0.25) * 0.2, places=15)
        self.assertAlmostEqual(branches[0].contribution, 0.0714143, places=7)
        self.assertAlmostEqual(branches[1].contribution, 0.18125, places=15)


class TestMixedMixed(TestCase):
    def test_spot_values(self):
        inst = rank_n((0.5, 0.5), (0.5, 0.5), (0.2, 0.5))

        mixed = q_min_mixed_mixed(inst)
        pure = q_min_pure_counterpart(inst)
        identified = 2.0 * math.sqrt(P1 * P2 * 0.25) * 0.2
        counterpart = 2.0 * math.sqrt(P1 * P2) * 0.35

        self.assertAlmostEqual(mixed.q_min, identified + 0.18125, places=14)
        self.assertEqual(mixed.identified_count, 1)
        self.assertIs(mixed.branch, Theorem3Case.MIXED_SMALL_S_STAR)
        self.assertAlmostEqual(counterpart_s_star(inst), 0.35, places=15)
        self.assertIs(pure.branch, PureCase.CASE_I_PRIME)
        self.assertAlmostEqual(pure.q_min, counterpart, places=14)
        self.assertAlmostEqual(pure.q_min, 0.249950, places=6)
        self.assertAlmostEqual(delta_q(mixed, pure),
                               identified + 0.18125 - counterpart, places=14)

    def test_neglected_gap_matches_delta_q(self):
        inst = rank_n((0.5, 0.5), (0.5, 0.5), (0.2, 0.5))

        gap = neglected_gap(inst)

        self.assertAlmostEqual(
            gap, (math.sqrt(P1 * 0.5) - math.sqrt(P2 * 0.5) * 0.5) ** 2, places=15)
        self.assertAlmostEqual(
            delta_q(q_min_mixed_mixed(inst), q_min_pure_counterpart(inst)), gap,
            places=12)

    def test_theorem3_cases(self):
        cases = [
            (rank_n((0.5, 0.5), (0.5, 0.5), (0.2, 0.3)),
             Theorem3Case.ALL_IDENTIFIED),
            (rank_n((0.5, 0.5), (0.5, 0.5), (0.6, 0.9)),
             Theorem3Case.ALL_NEGLECTED),
            (rank_n((0.5, 0.5), (0.5, 0.5), (0.2, 0.5)),
             Theorem3Case.MIXED_SMALL_S_STAR),
            (rank_n((0.5, 0.5), (0.5, 0.5), (0.4, 0.9)),
             Theorem3Case.MIXED_LARGE_S_STAR)
        ]

        for inst, expected in cases:
            with self.subTest(expected=expected.value):
                self.assertIs(theorem3_case(inst), expected)

    def test_constant_ratio_saturates_the_bound(self):
        # alpha_i / (beta_i * s_ii'^2) is the same for every pair
        cases = [
            rank_n((0.2, 0.8), (0.2, 0.8), (0.6, 0.6)),
            rank_n((0.3, 0.7), (0.5, 0.5), (math.sqrt(0.3), math.sqrt(0.7)))
        ]

        for inst in cases:
            with self.subTest(inst=inst):
                mixed = q_min_mixed_mixed(inst)
                pure = q_min_pure_counterpart(inst)

                self.assertIs(mixed.branch, Theorem3Case.ALL_NEGLECTED)
                self.assertAlmostEqual(delta_q(mixed, pure), 0.0, places=12)
                self.assertAlmostEqual(mixed.q_min, P1 + P2 * math.fsum(
                    b * s * s for b, s in zip(inst.beta, inst.diag_overlaps)),
                                       places=12)

    def test_all_identified_has_no_gap(self):
        inst = rank_n((0.3, 0.7), (0.3, 0.7), (0.2, 0.3))

        mixed = q_min_mixed_mixed(inst)
        pure = q_min_pure_counterpart(inst)

        self.assertAlmostEqual(delta_q(mixed, pure), 0.0, places=14)

    def test_counterpart_never_worse(self):
        cases = [
            rank_n((0.2, 0.3, 0.5), (0.3, 0.3, 0.4), (0.9, 0.1, 0.5)),
            rank_n((0.1, 0.9), (0.3, 0.7), (0.8, 0.3), p1=0.3),
            rank_n((0.5, 0.5), (0.5, 0.5), (1.0, 1.0))
        ]

        for inst in cases:
            with self.subTest(inst=inst):
                excess = q_min_pure_counterpart(inst).q_min - q_min_mixed_mixed(inst).q_min
                self.assertLessEqual(excess, 1e-12)

    def test_empty_pairs_are_ignored(self):
        inst = rank_n((1.0, 0.0), (1.0, 0.0), (0.2, 0.9))

        mixed = q_min_mixed_mixed(inst)

        self.assertIs(mixed.branch, Theorem3Case.ALL_IDENTIFIED)
        self.assertEqual(mixed.pairs[1].contribution, 0.0)

    def test_dominance(self):
        with self.assertRaises(DominanceError):
            q_min_mixed_mixed(rank_n((0.9, 0.1), (0.1, 0.9), (0.5, 0.5), p1=0.4))
