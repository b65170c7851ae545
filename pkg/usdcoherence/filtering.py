"""
Optimal unambiguous quantum filtering: one pure state against a rank-N mixed
state.

The measurement reduces to the scalar problem

    minimize    Q(q1) = P1 * q1 + P2 * c / q1
    subject to  par <= q1 <= 1

where c = sum(beta_i * s_1i'^2) and par = sum(s_1i'^2) is the squared norm of
the component of the pure state inside the support of the mixed state.
"""

import math
from dataclasses import dataclass

from usdcoherence.model import (
    EPS_TIE, Certificate, DiscriminationResult, DomainError, FilteringCase,
    ZeroPriorError, validate
)


@dataclass(frozen=True)
class FilteringBranch:
    """Closed-form branch together with the quantities that selected it"""

    label: FilteringCase
    q1_star: float
    parallel_norm_sq: float


def q1_star(inst):
    """
    Unconstrained minimizer of the filtering objective.

    @param inst FilteringInstance

    @return sqrt((P2 / P1) * sum(beta_i * s_1i'^2))
    """

    if inst.priors.p1 == 0.0:
        raise ZeroPriorError('q1* is undefined when P1 = 0')

    return math.sqrt(inst.priors.p2 / inst.priors.p1 * inst.weighted_overlap_sq)


def objective(inst, q1):
    """
    Average failure probability for a given failure probability q1 of the
    pure state.

    @param inst FilteringInstance
    @param q1   Failure probability of the pure state, in (0, 1]

    @return P1 * q1 + P2 * sum(beta_i * s_1i'^2) / q1
    """

    if not 0.0 < q1 <= 1.0:
        raise DomainError(f"q1 = {q1} lies outside (0, 1]")

    return inst.priors.p1 * q1 + inst.priors.p2 * inst.weighted_overlap_sq / q1


def classify(inst):
    """
    Locate q1* relative to the feasible interval [par, 1]. A q1* within
    EPS_TIE of either end of the interval is labelled CaseI.

    @param inst FilteringInstance

    @return FilteringBranch
    """

    parallel = inst.parallel_norm_sq
    weighted = inst.weighted_overlap_sq

    # Every overlap sits on a zero weight, so the objective is P1 * q1
    if weighted == 0.0:
        label = FilteringCase.CASE_I if parallel <= EPS_TIE else FilteringCase.CASE_II
        return FilteringBranch(label, 0.0, parallel)

    if inst.priors.p1 == 0.0:
        return FilteringBranch(FilteringCase.CASE_III, math.inf, parallel)

    star = q1_star(inst)

    if parallel - EPS_TIE <= star <= 1.0 + EPS_TIE:
        label = FilteringCase.CASE_I
    elif star < parallel:
        label = FilteringCase.CASE_II
    else:
        label = FilteringCase.CASE_III

    return FilteringBranch(label, star, parallel)


def q_min_filtering(inst):
    """
    Minimal failure probability of quantum filtering.

    @param inst FilteringInstance

    @return DiscriminationResult labelled with the FilteringCase that applies
    """

    validate(inst)

    p1, p2 = inst.priors.p1, inst.priors.p2
    weighted = inst.weighted_overlap_sq
    branch = classify(inst)
    certificate = None

    if branch.label is FilteringCase.CASE_I:
        q_min = 2.0 * math.sqrt(p1 * p2 * weighted)

    elif branch.label is FilteringCase.CASE_II:
        parallel = branch.parallel_norm_sq
        q_min = p1 * parallel + p2 * weighted / parallel

        if weighted == 0.0:
            certificate = Certificate(
                argmin_q1=parallel, objective_value=q_min, gap=0.0,
                note='degenerate interior')

    else:
        q_min = p1 + p2 * weighted

    return DiscriminationResult(
        q_min=min(max(q_min, 0.0), 1.0), branch=branch.label,
        certificate=certificate)


def fidelity_bound(inst):
    """
    @param inst FilteringInstance

    @return 2 * sqrt(P1 * P2) * F, a lower bound of the filtering optimum
    """

    return 2.0 * math.sqrt(inst.priors.p1 * inst.priors.p2 * inst.weighted_overlap_sq)
