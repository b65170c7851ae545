"""
Delta Q against relative-entropy coherence for photon-number weight families,
sweeping the amplitude alpha.

Example 1: a pure state overlapping only the superposed vector with index t,
           against the mixed state with the family weights.
Example 2: two mixed states with alpha = beta = family weights and diagonal
           overlaps given by a two-level schedule over the index.
"""

import numpy as np

from usdcoherence.coherence import relative_entropy_coherence
from usdcoherence.distributions import photon_distribution
from usdcoherence.filtering import q_min_filtering
from usdcoherence.mixedmixed import q_min_mixed_mixed, q_min_pure_counterpart
from usdcoherence.model import (
    Priors, PurePairInstance, RankNPairInstance, validate
)
from usdcoherence.purepure import classify_joint, delta_q, q_min_superposed
from usdcoherence.sweep.delta_q import DeltaQSweep
from usdcoherence.sweep.spec import EXAMPLE_TARGETS, SpecError


def schedule_overlaps(schedule, size):
    """
    Diagonal overlaps head for indices up to split and tail beyond, or the
    other way round for a reversed schedule.

    @param schedule Dictionary with split, head, tail and reversed
    @param size     Number of indices

    @return tuple of overlaps
    """

    head, tail = schedule['head'], schedule['tail']
    if schedule.get('reversed'):
        head, tail = tail, head

    return tuple(head if index <= schedule['split'] else tail
                 for index in range(size))


class GaussianSweep(DeltaQSweep):
    """
    Sweep over alpha for either photon-number example
    """

    coherence_measure = 'relative_entropy_bits'
    columns = ['alpha', 'coherence', 'delta_q', 'q_min', 'q_min_pure', 'case',
               'n_max', 'tail_mass', 'coherence_role']

    def __init__(self, spec):
        if spec.target not in EXAMPLE_TARGETS:
            raise SpecError(f"{spec.target} is not a photon-number example")

        super().__init__(spec)
        self.name = f"example{spec.example}-{spec.distribution}"
        self.priors = Priors.from_p1(spec.p1)

        if spec.example == 1:
            size = spec.t_index + 1
            overlaps = [0.0] * size
            overlaps[spec.t_index] = spec.overlap
            self.check_fixed(PurePairInstance(
                self.priors, (1.0 / size,) * size, tuple(overlaps), (0.0,) * size))

    def _distribution(self, alpha):
        return photon_distribution(
            self.spec.distribution, alpha, n=self.spec.n,
            tail_bound=self.spec.tail_bound, n_max_cap=self.spec.n_max_cap)

    def _single_overlap(self, weights):
        t_index = self.spec.t_index
        size = max(len(weights), t_index + 1)
        beta = np.pad(weights, (0, size - len(weights)))

        overlaps = [0.0] * size
        overlaps[t_index] = self.spec.overlap

        pair = validate(PurePairInstance(
            self.priors, tuple(beta), tuple(overlaps), (0.0,) * size))
        inst = pair.filtering_instance()

        filter_result = q_min_filtering(inst)
        pure_result = q_min_superposed(pair)

        return filter_result, pure_result, classify_joint(inst, pair).value

    def _paired(self, weights):
        weights = tuple(weights)
        overlaps = schedule_overlaps(self.spec.schedule, len(weights))
        inst = validate(RankNPairInstance(self.priors, weights, weights, overlaps))

        mixed = q_min_mixed_mixed(inst)
        return mixed, q_min_pure_counterpart(inst), mixed.branch.value

    def evaluate(self, point):
        dist = self._distribution(point)

        if self.spec.example == 1:
            result, pure_result, case = self._single_overlap(dist.weights)
        else:
            result, pure_result, case = self._paired(dist.weights)

        return {
            'alpha': point,
            'coherence': relative_entropy_coherence(dist.weights),
            'delta_q': delta_q(result, pure_result),
            'q_min': result.q_min,
            'q_min_pure': pure_result.q_min,
            'case': case,
            'n_max': dist.n_max,
            'tail_mass': dist.tail_mass
        }


def run_gaussian_examples(spec):
    """
    @param spec SweepSpec with one of the Example targets

    @return SweepResult sorted by coherence
    """

    return GaussianSweep(spec).run()
