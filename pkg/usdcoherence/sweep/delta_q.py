"""
Sweeps tabulating Delta Q against the coherence of the superposed states.

Rows carry the coherence, Delta Q, both optima and the active case. Once all
points are evaluated every row gets a coherence_role from the slope of Delta Q
against coherence between neighbouring sweep points, then rows are sorted by
coherence.
"""

from usdcoherence.coherence import l1_coherence
from usdcoherence.filtering import q_min_filtering
from usdcoherence.mixedmixed import q_min_mixed_mixed, q_min_pure_counterpart
from usdcoherence.model import (
    InstanceValidationError, Priors, PurePairInstance, RankNPairInstance,
    validate
)
from usdcoherence.purepure import classify_joint, delta_q, q_min_superposed
from usdcoherence.sweep.spec import (
    FILTERING_DELTA_Q, MIXED_DELTA_Q, SpecError
)
from usdcoherence.sweep.sweep import Sweep
from usdcoherence.util import sweep_values

HELPFUL = 'helpful'
DETRIMENTAL = 'detrimental'
NEUTRAL = 'neutral'

# Changes of Delta Q or coherence below these count as no change
DELTA_Q_TOLERANCE = 1e-12
COHERENCE_TOLERANCE = 1e-15


def coherence_role(previous, current):
    """
    @param previous Row of the earlier sweep point
    @param current  Row of the later sweep point

    @return helpful when Delta Q grows with coherence, detrimental when it
            shrinks, neutral otherwise
    """

    change_c = current['coherence'] - previous['coherence']
    change_q = current['delta_q'] - previous['delta_q']

    if abs(change_c) <= COHERENCE_TOLERANCE or abs(change_q) <= DELTA_Q_TOLERANCE:
        return NEUTRAL

    return HELPFUL if change_q / change_c > 0.0 else DETRIMENTAL


class DeltaQSweep(Sweep):
    """
    Base class of sweeps whose rows hold coherence and delta_q columns
    """

    # Name of the coherence measure written in the header
    coherence_measure = 'l1'

    def points(self):
        sweep = self.spec.sweep
        return [float(value) for value in
                sweep_values(sweep.start, sweep.stop, sweep.step)]

    def check_fixed(self, instance):
        """
        Validate an instance built from the fixed spec data alone, so that a
        spec no sweep point could satisfy fails before the sweep starts.

        @param instance    Instance holding the fixed overlaps of the spec

        @raise SpecError when the instance breaks an invariant
        """

        try:
            validate(instance)
        except InstanceValidationError as invalid:
            raise SpecError(
                f"{self.name}: invalid fixed parameters: {invalid}") from invalid

    def header(self):
        header = super().header()
        header['coherence_measure'] = self.coherence_measure
        return header

    def finalize(self, rows):
        for index, row in enumerate(rows):
            if index:
                row['coherence_role'] = coherence_role(rows[index - 1], row)
            elif len(rows) > 1:
                row['coherence_role'] = coherence_role(row, rows[1])
            else:
                row['coherence_role'] = NEUTRAL

        return sorted(rows, key=lambda row: row['coherence'])


class FilteringDeltaQSweep(DeltaQSweep):
    """
    Two-dimensional filtering against its superposed counterpart, sweeping
    beta_1 with beta_2 = 1 - beta_1
    """

    name = 'filtering-delta-q'
    columns = ['beta1', 'coherence', 'delta_q', 'q_min', 'q_min_pure', 'case',
               'coherence_role']

    def __init__(self, spec):
        if spec.target != FILTERING_DELTA_Q:
            raise SpecError(f"cannot run a {spec.target} spec as {self.name}")

        super().__init__(spec)
        self.priors = Priors.from_p1(spec.p1)
        self.check_fixed(PurePairInstance(
            self.priors, (0.5, 0.5), spec.overlaps, spec.phases))

    def evaluate(self, point):
        beta = (point, 1.0 - point)
        pair = validate(PurePairInstance(
            self.priors, beta, self.spec.overlaps, self.spec.phases))
        inst = pair.filtering_instance()

        filter_result = q_min_filtering(inst)
        pure_result = q_min_superposed(pair)

        return {
            'beta1': point,
            'coherence': l1_coherence(beta),
            'delta_q': delta_q(filter_result, pure_result),
            'q_min': filter_result.q_min,
            'q_min_pure': pure_result.q_min,
            'case': classify_joint(inst, pair).value
        }


def symmetric_weights(lam, dimension):
    """
    @return (lam, (1 - lam) / (N - 1), ..., (1 - lam) / (N - 1))
    """

    rest = (1.0 - lam) / (dimension - 1)
    return (lam,) + (rest,) * (dimension - 1)


class MixedDeltaQSweep(DeltaQSweep):
    """
    Two rank-N mixed states with alpha = beta = (lambda, rest shared equally)
    against their superposed counterparts, sweeping lambda
    """

    name = 'mixed-delta-q'
    columns = ['lambda', 'coherence', 'delta_q', 'q_min', 'q_min_pure', 'case',
               'identified_count', 'coherence_role']

    def __init__(self, spec):
        if spec.target != MIXED_DELTA_Q:
            raise SpecError(f"cannot run a {spec.target} spec as {self.name}")

        super().__init__(spec)
        self.priors = Priors.from_p1(spec.p1)

        uniform = symmetric_weights(
            1.0 / len(spec.diag_overlaps), len(spec.diag_overlaps))
        self.check_fixed(RankNPairInstance(
            self.priors, uniform, uniform, spec.diag_overlaps))

    def evaluate(self, point):
        weights = symmetric_weights(point, len(self.spec.diag_overlaps))
        inst = validate(RankNPairInstance(
            self.priors, weights, weights, self.spec.diag_overlaps))

        mixed = q_min_mixed_mixed(inst)
        pure = q_min_pure_counterpart(inst)

        return {
            'lambda': point,
            'coherence': l1_coherence(weights),
            'delta_q': delta_q(mixed, pure),
            'q_min': mixed.q_min,
            'q_min_pure': pure.q_min,
            'case': mixed.branch.value,
            'identified_count': mixed.identified_count
        }


def run_delta_q_curve(spec):
    """
    @param spec SweepSpec with target FilteringDeltaQ or MixedDeltaQ

    @return SweepResult sorted by coherence
    """

    if spec.target == FILTERING_DELTA_Q:
        return FilteringDeltaQSweep(spec).run()

    if spec.target == MIXED_DELTA_Q:
        return MixedDeltaQSweep(spec).run()

    raise SpecError(f"{spec.target} is not a Delta Q curve")
