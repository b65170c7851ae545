"""
Randomized property suites run by the verify command.

Each suite draws its instances from a numpy Generator, checks one property on
every instance and condenses the outcome into a SuiteSummary. worst is the
most adverse value seen of the quantity the suite bounds.
"""

from dataclasses import dataclass, field
from typing import List

from usdcoherence import generators
from usdcoherence.coherence import fidelity_pure_mixed
from usdcoherence.filtering import fidelity_bound, q_min_filtering
from usdcoherence.mixedmixed import (
    neglected_gap, q_min_mixed_mixed, q_min_pure_counterpart
)
from usdcoherence.model import (
    EPS_MATCH, FilteringCase, JointCase, Theorem3Case
)
from usdcoherence.oracle import minimize_filtering, verify_instance
from usdcoherence.purepure import (
    case_a_square_gap, classify_joint, delta_q, equal_fidelity_residual,
    q_min_superposed, s_star, uniform_overlap_prediction
)


@dataclass
class SuiteSummary:
    """Outcome of one property suite"""

    name: str
    checked: int = 0
    failures: int = 0
    worst: float = 0.0
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self):
        """@return whether every checked instance satisfied the property"""
        return self.failures == 0

    def record(self, ok, value, worse):
        """
        Count one checked instance.

        @param ok       Whether the instance satisfied the property
        @param value    Value of the bounded quantity for this instance
        @param worse    Function telling whether value is worse than worst
        """

        self.checked += 1
        if not ok:
            self.failures += 1

        if self.checked == 1 or worse(value, self.worst):
            self.worst = value

    def to_dict(self):
        """@return the summary as a JSON-friendly dictionary"""

        return {
            'suite': self.name,
            'checked': self.checked,
            'failures': self.failures,
            'worst': self.worst,
            'pass': self.passed,
            'notes': list(self.notes)
        }


def _larger(value, worst):
    return value > worst


def _smaller(value, worst):
    return value < worst


def oracle_suite(rng, count, reports=None):
    """
    Closed forms against the oracle on count random instances of each kind.

    @param rng      numpy Generator
    @param count    Instances per kind
    @param reports  Optional list receiving every VerificationReport

    @return list of SuiteSummary, one per instance kind; worst is the
            largest gap
    """

    makers = (
        ('oracle-filtering', generators.random_filtering_instance),
        ('oracle-pure-pure', generators.random_pure_pair_instance),
        ('oracle-mixed-mixed', generators.random_rank_n_instance)
    )
    summaries = []

    for name, make in makers:
        summary = SuiteSummary(name)

        for _ in range(count):
            report = verify_instance(make(rng))
            summary.record(report.passed, report.gap, _larger)

            if reports is not None:
                reports.append(report)

        summaries.append(summary)

    return summaries


def fidelity_bound_suite(rng, count):
    """
    q_min and the oracle value never fall below 2 sqrt(P1 P2) F, and q_min
    reaches the bound in CaseI.

    @return SuiteSummary; worst is the largest violation of the bound
    """

    summary = SuiteSummary('fidelity-bound')

    for _ in range(count):
        inst = generators.random_filtering_instance(rng)
        result = q_min_filtering(inst)
        bound = fidelity_bound(inst)
        oracle_value = minimize_filtering(inst).value

        violation = max(bound - result.q_min, bound - oracle_value)
        if result.branch is FilteringCase.CASE_I:
            violation = max(violation, abs(result.q_min - bound))

        summary.record(violation <= EPS_MATCH, violation, _larger)

    return summary


def theorem1_suite(rng, count):
    """
    Under equal fidelity Delta Q is nonnegative and joint cases (c) and (d)
    never occur.

    @return SuiteSummary; worst is the smallest Delta Q
    """

    summary = SuiteSummary('equal-fidelity')

    for _ in range(count):
        pair = generators.equal_fidelity_instance(rng)
        inst = pair.filtering_instance()

        value = delta_q(q_min_filtering(inst), q_min_superposed(pair))
        joint = classify_joint(inst, pair)

        ok = value >= -EPS_MATCH and joint not in (JointCase.C, JointCase.D)
        summary.record(ok, value, _smaller)

    return summary


def theorem2_suite(rng, count):
    """
    Under equal phases Delta Q is nonpositive outside joint case (b). In case
    (a) with equal overlaps s0, Q_min^2 - Q'_min^2 equals -4 P1 P2 s0^2 C_l1.
    Case (b) outcomes are counted in the notes without a sign check.

    @return SuiteSummary; worst is the largest Delta Q outside case (b)
    """

    summary = SuiteSummary('equal-phase')
    case_b = 0

    for index in range(count):
        if index % 2:
            pair = generators.uniform_overlap_instance(rng)
        else:
            pair = generators.equal_phase_instance(rng)

        inst = pair.filtering_instance()
        filter_result = q_min_filtering(inst)
        pure_result = q_min_superposed(pair)
        joint = classify_joint(inst, pair)

        if joint is JointCase.B:
            case_b += 1
            continue

        value = delta_q(filter_result, pure_result)
        ok = value <= EPS_MATCH

        uniform = len(set(pair.overlaps)) == 1
        if ok and uniform and joint is JointCase.A:
            predicted = uniform_overlap_prediction(
                pair.priors, pair.beta, pair.overlaps[0])
            ok = abs(case_a_square_gap(filter_result, pure_result) - predicted) <= EPS_MATCH

        summary.record(ok, value, _larger)

    summary.notes.append(f"{case_b} instances in case (b) were not sign-checked")
    return summary


def theorem3_suite(rng, count):
    """
    The pure counterparts never do worse than the mixed states, and for a
    mixed split with small s* Delta Q equals the Neglected-pair gap.

    @return SuiteSummary; worst is the largest Q'_min - Q_min
    """

    summary = SuiteSummary('pure-counterpart')

    for _ in range(count):
        inst = generators.random_rank_n_instance(rng)
        mixed = q_min_mixed_mixed(inst)
        pure = q_min_pure_counterpart(inst)

        excess = pure.q_min - mixed.q_min
        ok = excess <= EPS_MATCH

        if ok and mixed.branch is Theorem3Case.MIXED_SMALL_S_STAR:
            ok = abs(delta_q(mixed, pure) - neglected_gap(inst)) <= EPS_MATCH

        summary.record(ok, excess, _larger)

    return summary


def equal_fidelity_identity_suite(rng, count):
    """
    F_pure_pure^2 - F_pure_mixed^2 equals twice the equal-fidelity residual.

    @return SuiteSummary; worst is the largest deviation
    """

    summary = SuiteSummary('fidelity-identity')

    for _ in range(count):
        pair = generators.random_pure_pair_instance(rng)
        difference = abs(s_star(pair)) ** 2 - fidelity_pure_mixed(pair.filtering_instance()) ** 2
        deviation = abs(difference - 2.0 * equal_fidelity_residual(pair))

        summary.record(deviation <= EPS_MATCH, deviation, _larger)

    return summary


def worst_gap(summaries):
    """@return the largest oracle gap among summaries, 0 if none ran"""

    return max((summary.worst for summary in summaries
                if summary.name.startswith('oracle-') and summary.checked),
               default=0.0)


# Suites run after the oracle suite, each on a tenth of the oracle count
PROPERTY_SUITES = (
    fidelity_bound_suite,
    theorem1_suite,
    theorem2_suite,
    theorem3_suite,
    equal_fidelity_identity_suite
)
