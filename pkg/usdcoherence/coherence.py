"""
Coherence measures of superposed states and fidelities of every instance kind.

Coherence is always taken in the fixed basis that the weights refer to. For a
pure state sum(sqrt(w_i) |i>) both measures depend on the weights only.
"""

import cmath
import math

import numpy as np
from scipy.stats import entropy  # type: ignore

from usdcoherence.model import EPS_SUM, NormalizationError


def _checked_weights(weights):
    weights = np.asarray(weights, dtype=float)

    if weights.ndim != 1 or weights.size == 0:
        raise NormalizationError('weights must be a non-empty vector')

    if np.any(weights < 0.0):
        raise NormalizationError('weights must be nonnegative')

    total = math.fsum(weights)
    if abs(total - 1.0) > EPS_SUM:
        raise NormalizationError(f"weights sum to {total}, expected 1")

    return weights


def l1_coherence(weights):
    """
    Sum of the absolute off-diagonal entries of the density matrix.

    @param weights  Probability vector of the superposition

    @return 2 * sum over i > j of sqrt(w_i * w_j), in [0, N - 1]
    """

    roots = np.sqrt(_checked_weights(weights))

    # 2 * sum_{i>j} r_i r_j = (sum r_i)^2 - sum r_i^2
    value = math.fsum(roots) ** 2 - math.fsum(roots * roots)
    return max(value, 0.0)


def relative_entropy_coherence(weights):
    """
    Relative entropy of coherence of a pure superposition, which is the
    Shannon entropy of its weights.

    @param weights  Probability vector of the superposition

    @return entropy in bits
    """

    return float(entropy(_checked_weights(weights), base=2))


def fidelity_pure_mixed(inst):
    """
    @param inst FilteringInstance

    @return sqrt(sum(beta_i * s_1i'^2))
    """

    return math.sqrt(inst.weighted_overlap_sq)


def superposition_overlap(amplitudes, overlaps, phases):
    """
    Complex overlap of a pure state with the superposition
    sum(amplitude_i * exp(i * phase_i) |Psi_i'>).

    @param amplitudes   Nonnegative amplitudes sqrt(beta_i)
    @param overlaps     Real overlaps with the superposed vectors
    @param phases       Phases in radians

    @return complex inner product
    """

    terms = [
        a * s * cmath.exp(1j * theta)
        for a, s, theta in zip(amplitudes, overlaps, phases)
    ]

    return complex(math.fsum(t.real for t in terms),
                   math.fsum(t.imag for t in terms))


def fidelity_pure_pure(inst):
    """
    @param inst PurePairInstance

    @return |s*|, the fidelity of the two superposed pure states
    """

    amplitudes = [math.sqrt(b) for b in inst.beta]
    return abs(superposition_overlap(amplitudes, inst.overlaps, inst.phases))


def fidelity_rank_n_pair(inst):
    """
    @param inst RankNPairInstance

    @return sum(sqrt(alpha_i * beta_i) * s_ii')
    """

    return math.fsum(
        math.sqrt(a * b) * s
        for a, b, s in zip(inst.alpha, inst.beta, inst.diag_overlaps))
