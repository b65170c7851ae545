"""
Two-pure-state discrimination for superposed states, the joint partition of
filtering and pure-pure regions, and the coherence comparison Delta Q.
"""

import math

import numpy as np

from usdcoherence.coherence import l1_coherence, superposition_overlap
from usdcoherence.filtering import classify
from usdcoherence.model import (
    EPS_TIE, DiscriminationResult, DomainError, FilteringCase, JointCase,
    MismatchError, PureCase, validate
)

# (filtering case, pure-pure case) -> joint case
_JOINT_CASES = {
    (FilteringCase.CASE_I, PureCase.CASE_I_PRIME): JointCase.A,
    (FilteringCase.CASE_II, PureCase.CASE_I_PRIME): JointCase.B,
    (FilteringCase.CASE_I, PureCase.CASE_II_PRIME): JointCase.C,
    (FilteringCase.CASE_II, PureCase.CASE_II_PRIME): JointCase.D,
    (FilteringCase.CASE_III, PureCase.CASE_II_PRIME): JointCase.E,
    (FilteringCase.CASE_III, PureCase.CASE_I_PRIME): JointCase.EMPTY
}


def s_star(inst):
    """
    Effective overlap of the pure state with the superposed state.

    @param inst PurePairInstance

    @return complex sum(sqrt(beta_i) * s_1i' * exp(i * theta_i)); abs() of it
            is the fidelity of the two pure states
    """

    amplitudes = [math.sqrt(b) for b in inst.beta]
    return superposition_overlap(amplitudes, inst.overlaps, inst.phases)


def classify_pure(priors, abs_s_star):
    """
    @param priors       Priors
    @param abs_s_star   Modulus of the overlap of the two pure states

    @return CaseI' when |s*| <= sqrt(P1 / P2), CaseII' otherwise
    """

    if abs_s_star <= priors.threshold + EPS_TIE:
        return PureCase.CASE_I_PRIME

    return PureCase.CASE_II_PRIME


def q_min_pure_pure(priors, abs_s_star):
    """
    Minimal failure probability of discriminating two pure states.

    @param priors       Priors
    @param abs_s_star   Modulus of the overlap, in [0, 1]

    @return DiscriminationResult labelled with the PureCase that applies
    """

    if not 0.0 <= abs_s_star <= 1.0:
        raise DomainError(f"|s*| = {abs_s_star} lies outside [0, 1]")

    p1, p2 = priors.p1, priors.p2
    label = classify_pure(priors, abs_s_star)

    if label is PureCase.CASE_I_PRIME:
        q_min = 2.0 * math.sqrt(p1 * p2) * abs_s_star
    else:
        q_min = p1 + p2 * abs_s_star ** 2

    return DiscriminationResult(q_min=min(q_min, 1.0), branch=label)


def q_min_superposed(inst):
    """
    @param inst PurePairInstance

    @return DiscriminationResult of the pure pair, computed from |s*|
    """

    validate(inst)
    return q_min_pure_pure(inst.priors, abs(s_star(inst)))


def classify_joint(filter_inst, pair_inst):
    """
    Intersect the filtering region of an instance with the pure-pure region
    of its superposed counterpart.

    @param filter_inst  FilteringInstance
    @param pair_inst    PurePairInstance sharing priors, weights and overlaps

    @return JointCase
    """

    shared = ('priors', 'beta', 'overlaps')
    differing = [
        name for name in shared
        if getattr(filter_inst, name) != getattr(pair_inst, name)
    ]
    if differing:
        raise MismatchError(f"instances differ in {', '.join(differing)}")

    filtering_case = classify(filter_inst).label
    pure_case = classify_pure(pair_inst.priors, abs(s_star(pair_inst)))

    return _JOINT_CASES[(filtering_case, pure_case)]


def equal_fidelity_residual(inst):
    """
    Cross-term sum that vanishes exactly when the pure-mixed and pure-pure
    fidelities coincide.

    @param inst PurePairInstance

    @return sum over i > j of sqrt(beta_i beta_j) s_1i' s_1j' cos(theta_i - theta_j)
    """

    terms = np.sqrt(np.asarray(inst.beta)) * np.asarray(inst.overlaps)
    phases = np.asarray(inst.phases)

    cross = np.outer(terms, terms) * np.cos(np.subtract.outer(phases, phases))
    return math.fsum(np.triu(cross, k=1).ravel())


def delta_q(filter_result, pure_result):
    """
    @param filter_result    DiscriminationResult of the mixed scheme
    @param pure_result      DiscriminationResult of the superposed scheme

    @return Q_min - Q'_min, positive when the superposition discriminates
            better
    """

    return filter_result.q_min - pure_result.q_min


def single_overlap_delta_q_expression(priors, beta_t, s):
    """
    @return (sqrt(P1) * s - sqrt(P2 * beta_t))^2
    """

    return (math.sqrt(priors.p1) * s - math.sqrt(priors.p2 * beta_t)) ** 2


def single_overlap_delta_q(priors, beta_t, s):
    """
    Delta Q when the pure state overlaps a single superposed vector with
    weight beta_t. Both schemes share the same fidelity, so the difference is
    nonzero only where filtering hits the lower end of its interval, which
    happens when P2 * beta_t < P1 * s^2.

    @param priors   Priors
    @param beta_t   Weight of the overlapping vector
    @param s        Overlap with that vector

    @return exact Delta Q
    """

    if priors.p2 * beta_t < priors.p1 * s * s:
        return single_overlap_delta_q_expression(priors, beta_t, s)

    return 0.0


def case_a_square_gap(filter_result, pure_result):
    """
    @return Q_min^2 - Q'_min^2
    """

    return filter_result.q_min ** 2 - pure_result.q_min ** 2


def uniform_overlap_prediction(priors, beta, s0):
    """
    Predicted Q_min^2 - Q'_min^2 in joint case (a) for equal phases and equal
    overlaps s0.

    @return -4 * P1 * P2 * s0^2 * C_l1
    """

    return -4.0 * priors.p1 * priors.p2 * s0 * s0 * l1_coherence(beta)
