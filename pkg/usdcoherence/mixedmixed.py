"""
Discrimination of two rank-N mixed states whose eigenvectors overlap one to
one. The problem splits into N independent two-pure-state problems with
sub-priors (P1 * alpha_i, P2 * beta_i); their optima add up.
"""

import math

from usdcoherence.coherence import fidelity_rank_n_pair
from usdcoherence.model import (
    EPS_TIE, DiscriminationResult, PairBranch, PairLabel, Theorem3Case,
    ZeroDenominatorError, validate
)
from usdcoherence.purepure import q_min_pure_pure


def pair_threshold(priors, alpha_i, beta_i):
    """
    Largest overlap for which both vectors of a pair are worth detecting.

    @param priors   Priors
    @param alpha_i  Weight of the pair's vector in the first state
    @param beta_i   Weight of the pair's vector in the second state

    @return sqrt(P1 * alpha_i / (P2 * beta_i)); infinite for an empty pair
    """

    if beta_i == 0.0:
        if alpha_i > 0.0:
            raise ZeroDenominatorError(
                f"beta_i = 0 while alpha_i = {alpha_i} > 0")
        return math.inf

    return math.sqrt(priors.p1 * alpha_i / (priors.p2 * beta_i))


def pair_branches(inst):
    """
    @param inst RankNPairInstance

    @return tuple of PairBranch in index order
    """

    p1, p2 = inst.priors.p1, inst.priors.p2
    branches = []

    for index, (a, b, s) in enumerate(
            zip(inst.alpha, inst.beta, inst.diag_overlaps)):
        threshold = pair_threshold(inst.priors, a, b)

        if s <= threshold + EPS_TIE:
            label = PairLabel.IDENTIFIED
            contribution = 2.0 * math.sqrt(p1 * p2 * a * b) * s
        else:
            label = PairLabel.NEGLECTED
            contribution = p1 * a + p2 * b * s * s

        branches.append(PairBranch(index, label, contribution, threshold))

    return tuple(branches)


def counterpart_s_star(inst):
    """
    Overlap of the two pure states obtained by superposing the eigenvectors
    of each mixed state with amplitudes sqrt(alpha_i) and sqrt(beta_i).

    @param inst RankNPairInstance

    @return sum(sqrt(alpha_i * beta_i) * s_ii')
    """

    return fidelity_rank_n_pair(inst)


def _classify(inst, branches):
    # Pairs with no weight on either side are empty subspaces
    occupied = [
        branch for branch, a, b in zip(branches, inst.alpha, inst.beta)
        if a > 0.0 or b > 0.0
    ]
    identified = sum(1 for branch in occupied
                     if branch.branch is PairLabel.IDENTIFIED)

    if identified == len(occupied):
        return Theorem3Case.ALL_IDENTIFIED

    if identified == 0:
        return Theorem3Case.ALL_NEGLECTED

    if counterpart_s_star(inst) <= inst.priors.threshold + EPS_TIE:
        return Theorem3Case.MIXED_SMALL_S_STAR

    return Theorem3Case.MIXED_LARGE_S_STAR


def theorem3_case(inst):
    """
    Classify an instance by how its pairs split between Identified and
    Neglected, and for a mixed split by the size of the counterpart s*.

    @param inst RankNPairInstance

    @return Theorem3Case
    """

    validate(inst)
    return _classify(inst, pair_branches(inst))


def q_min_mixed_mixed(inst):
    """
    Minimal failure probability of two rank-N mixed states.

    @param inst RankNPairInstance

    @return DiscriminationResult carrying every PairBranch and the number of
            Identified pairs
    """

    validate(inst)

    branches = pair_branches(inst)
    q_min = math.fsum(branch.contribution for branch in branches)
    identified = sum(1 for branch in branches
                     if branch.branch is PairLabel.IDENTIFIED)

    return DiscriminationResult(
        q_min=min(q_min, 1.0),
        branch=_classify(inst, branches),
        pairs=branches,
        identified_count=identified)


def q_min_pure_counterpart(inst):
    """
    Minimal failure probability of the pure superposed counterparts.

    @param inst RankNPairInstance

    @return DiscriminationResult labelled with the PureCase that applies
    """

    validate(inst)
    return q_min_pure_pure(inst.priors, min(counterpart_s_star(inst), 1.0))


def neglected_gap(inst):
    """
    Delta Q predicted for a mixed split with small s*.

    @param inst RankNPairInstance

    @return sum over Neglected pairs of (sqrt(P1 alpha_i) - sqrt(P2 beta_i) s_ii')^2
    """

    p1, p2 = inst.priors.p1, inst.priors.p2

    return math.fsum(
        (math.sqrt(p1 * inst.alpha[branch.index])
         - math.sqrt(p2 * inst.beta[branch.index])
         * inst.diag_overlaps[branch.index]) ** 2
        for branch in pair_branches(inst)
        if branch.branch is PairLabel.NEGLECTED)
