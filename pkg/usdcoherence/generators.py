"""
Seeded random instance families for verification runs.

Every function takes a numpy Generator so that a run is reproducible from its
seed alone.
"""

import math

import numpy as np

from usdcoherence.model import (
    FilteringInstance, Priors, PurePairInstance, RankNPairInstance
)

MAX_DIMENSION = 8
OVERLAP_MAX = 0.7

# Target of sum(s^2) when a random overlap vector has to be rescaled
RESCALED_NORM_SQ = 0.95


def random_priors(rng):
    """@return Priors with P1 uniform in [0, 0.5)"""
    return Priors.from_p1(rng.uniform(0.0, 0.5))


def random_dimension(rng, max_dimension=MAX_DIMENSION):
    """@return a dimension uniform in 1..max_dimension"""
    return int(rng.integers(1, max_dimension + 1))


def random_weights(rng, dimension):
    """@return a weight vector drawn from the symmetric Dirichlet distribution"""

    weights = rng.dirichlet(np.ones(dimension))
    return tuple(weights / math.fsum(weights))


def random_overlaps(rng, dimension):
    """
    @return overlaps uniform in [0, OVERLAP_MAX], rescaled so that the sum of
            their squares stays below 1
    """

    overlaps = rng.uniform(0.0, OVERLAP_MAX, dimension)
    norm_sq = math.fsum(overlaps * overlaps)

    if norm_sq >= RESCALED_NORM_SQ:
        overlaps = overlaps * math.sqrt(RESCALED_NORM_SQ / norm_sq)

    return tuple(overlaps)


def random_phases(rng, dimension):
    """@return phases uniform in [0, 2 pi)"""
    return tuple(rng.uniform(0.0, 2.0 * math.pi, dimension))


def random_filtering_instance(rng, max_dimension=MAX_DIMENSION):
    """@return a random FilteringInstance"""

    dimension = random_dimension(rng, max_dimension)
    return FilteringInstance(
        random_priors(rng), random_weights(rng, dimension),
        random_overlaps(rng, dimension))


def random_pure_pair_instance(rng, max_dimension=MAX_DIMENSION):
    """@return a random PurePairInstance"""

    dimension = random_dimension(rng, max_dimension)
    return PurePairInstance(
        random_priors(rng), random_weights(rng, dimension),
        random_overlaps(rng, dimension), random_phases(rng, dimension))


def single_overlap_instance(rng, max_dimension=MAX_DIMENSION):
    """
    Pure pair whose pure state overlaps exactly one superposed vector, which
    makes both fidelities equal whatever the phases.
    """

    dimension = random_dimension(rng, max_dimension)
    overlaps = np.zeros(dimension)
    overlaps[rng.integers(dimension)] = rng.uniform(0.0, 0.99)

    return PurePairInstance(
        random_priors(rng), random_weights(rng, dimension), tuple(overlaps),
        random_phases(rng, dimension))


def quadrature_phase_instance(rng):
    """
    Two-dimensional pure pair with phases a quarter turn apart, which makes
    both fidelities equal whatever the weights and overlaps.
    """

    theta = rng.uniform(0.0, 2.0 * math.pi)
    offset = math.pi / 2.0 if rng.random() < 0.5 else -math.pi / 2.0

    return PurePairInstance(
        random_priors(rng), random_weights(rng, 2), random_overlaps(rng, 2),
        (theta, theta + offset))


def equal_fidelity_instance(rng, max_dimension=MAX_DIMENSION):
    """@return a pure pair built by one of the two equal-fidelity constructions"""

    if rng.random() < 0.5:
        return single_overlap_instance(rng, max_dimension)

    return quadrature_phase_instance(rng)


def equal_phase_instance(rng, max_dimension=MAX_DIMENSION):
    """@return a pure pair whose phases all share one random value"""

    dimension = random_dimension(rng, max_dimension)
    theta = rng.uniform(0.0, 2.0 * math.pi)

    return PurePairInstance(
        random_priors(rng), random_weights(rng, dimension),
        random_overlaps(rng, dimension), (theta,) * dimension)


def uniform_overlap_instance(rng, max_dimension=MAX_DIMENSION):
    """@return an equal-phase pure pair whose overlaps all equal one s0"""

    dimension = random_dimension(rng, max_dimension)
    s0 = rng.uniform(0.0, math.sqrt(RESCALED_NORM_SQ / dimension))

    return PurePairInstance(
        random_priors(rng), random_weights(rng, dimension), (s0,) * dimension,
        (0.0,) * dimension)


def random_rank_n_instance(rng, max_dimension=MAX_DIMENSION):
    """
    Random pair of rank-N mixed states. alpha mixes beta with a second
    Dirichlet draw, as far as P1 * alpha_i <= P2 * beta_i allows.
    """

    priors = random_priors(rng)
    dimension = random_dimension(rng, max_dimension)
    beta = np.asarray(random_weights(rng, dimension))
    direction = np.asarray(random_weights(rng, dimension))

    # Largest mixing with P1 * ((1 - l) beta_i + l d_i) <= P2 * beta_i
    limit = 1.0
    for b, d in zip(beta, direction):
        if d > b and priors.p1 > 0.0:
            limit = min(limit, (priors.p2 - priors.p1) * b / (priors.p1 * (d - b)))

    mixing = rng.uniform(0.0, limit)
    alpha = (1.0 - mixing) * beta + mixing * direction

    return RankNPairInstance(
        priors, tuple(alpha), tuple(beta),
        tuple(rng.uniform(0.0, 1.0, dimension)))
