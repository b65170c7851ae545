"""
Photon-number weight families used to build superposed states:

binomial:   |f0(alpha, i)|^2 = C(N, i) (alpha^2 / N)^i (1 - alpha^2 / N)^(N - i)
poisson:    coherent state, e^(-alpha^2) alpha^(2i) / i!
squeezed:   squeezed vacuum with r = asinh(alpha), whose weights
            C(2i, i) / 4^i * tanh(r)^(2i) / cosh(r) form a negative binomial
            distribution with n = 1/2 and p = 1 / cosh(r)^2

The two infinite families are truncated at the smallest index whose tail mass
is at most tail_bound and the kept mass is renormalized.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np
from scipy.stats import binom, nbinom, poisson  # type: ignore

from usdcoherence.model import DomainError, RangeError, TruncationError

TAIL_BOUND_DEFAULT = 1.0e-12
TAIL_BOUND_MAX = 1.0e-6
N_MAX_CAP_DEFAULT = 4096


class DistributionKind(Enum):
    """Family of photon-number weights"""
    BINOMIAL = 'binomial'
    POISSON = 'poisson'
    SQUEEZED = 'squeezed'


@dataclass(frozen=True, eq=False)
class PhotonDistribution:
    """
    Weight vector of one family member together with its truncation record.
    raw_weights are the exact family values up to n_max, weights are the
    renormalized vector used by every discrimination formula.
    """

    kind: DistributionKind
    alpha: float
    raw_weights: np.ndarray
    tail_mass: float
    renormalized: bool
    n: Optional[int] = None

    def __post_init__(self):
        self.raw_weights.setflags(write=False)

    @property
    def n_max(self):
        """@return the largest index kept"""
        return len(self.raw_weights) - 1

    @property
    def weights(self):
        """@return the probability vector over indices 0..n_max"""

        if not self.renormalized:
            return self.raw_weights

        weights = self.raw_weights / math.fsum(self.raw_weights)
        weights.setflags(write=False)
        return weights


def squeeze_parameter(alpha):
    """
    Squeezing parameter whose squeezed vacuum has the same average photon
    number alpha^2 as the coherent state of amplitude alpha.

    @return ln(alpha + sqrt(alpha^2 + 1))
    """

    return math.asinh(alpha)


def binomial_weights(n, alpha):
    """
    @param n        Number of trials, a positive integer
    @param alpha    Amplitude with alpha^2 <= n

    @return PhotonDistribution over indices 0..n
    """

    if not isinstance(n, (int, np.integer)) or n < 1:
        raise RangeError(f"N = {n} must be a positive integer")

    if alpha < 0.0:
        raise RangeError(f"alpha = {alpha} must be nonnegative")

    success = alpha * alpha / n
    if success > 1.0 + 1e-12:
        raise RangeError(f"alpha^2 = {alpha * alpha} exceeds N = {n}")

    weights = binom.pmf(np.arange(n + 1), n, min(success, 1.0))

    return PhotonDistribution(
        kind=DistributionKind.BINOMIAL, alpha=float(alpha),
        raw_weights=np.asarray(weights, dtype=float), tail_mass=0.0,
        renormalized=False, n=int(n))


def _truncation_index(survival, inverse_survival, tail_bound, n_max_cap):
    """
    Smallest index n with survival(n) <= tail_bound.

    @param survival         Tail mass beyond n, i.e. P(X > n)
    @param inverse_survival Approximate inverse of survival
    @param tail_bound       Largest acceptable tail mass
    @param n_max_cap        Largest index allowed
    """

    guess = inverse_survival(tail_bound)
    if not math.isfinite(guess) or guess > n_max_cap:
        guess = n_max_cap

    n_max = max(int(guess), 0)

    while n_max <= n_max_cap and survival(n_max) > tail_bound:
        n_max += 1

    while n_max > 0 and survival(n_max - 1) <= tail_bound:
        n_max -= 1

    if n_max > n_max_cap:
        raise TruncationError(
            f"tail mass stays above {tail_bound} up to index {n_max_cap}")

    return n_max


def _check_tail_bound(tail_bound):
    if not 0.0 < tail_bound <= TAIL_BOUND_MAX:
        raise DomainError(
            f"tail_bound = {tail_bound} must lie in (0, {TAIL_BOUND_MAX}]")


def _vacuum(kind, alpha):
    return PhotonDistribution(
        kind=kind, alpha=float(alpha), raw_weights=np.ones(1), tail_mass=0.0,
        renormalized=True)


def poisson_weights(alpha, tail_bound=TAIL_BOUND_DEFAULT,
                    n_max_cap=N_MAX_CAP_DEFAULT):
    """
    Truncated weights of the coherent state with amplitude alpha.

    @param alpha        Nonnegative amplitude
    @param tail_bound   Largest mass allowed beyond n_max
    @param n_max_cap    Largest n_max allowed

    @return PhotonDistribution over indices 0..n_max
    """

    if alpha < 0.0:
        raise RangeError(f"alpha = {alpha} must be nonnegative")

    _check_tail_bound(tail_bound)

    if alpha == 0.0:
        return _vacuum(DistributionKind.POISSON, alpha)

    mean = alpha * alpha
    n_max = _truncation_index(
        lambda k: poisson.sf(k, mean),
        lambda q: poisson.isf(q, mean),
        tail_bound, n_max_cap)

    # w_{i+1} = w_i * alpha^2 / (i + 1), accumulated in log space
    steps = math.log(mean) - np.log(np.arange(1, n_max + 1))
    log_weights = -mean + np.concatenate(([0.0], np.cumsum(steps)))

    return PhotonDistribution(
        kind=DistributionKind.POISSON, alpha=float(alpha),
        raw_weights=np.exp(log_weights),
        tail_mass=float(poisson.sf(n_max, mean)), renormalized=True)


def squeezed_weights(alpha, tail_bound=TAIL_BOUND_DEFAULT,
                     n_max_cap=N_MAX_CAP_DEFAULT):
    """
    Truncated weights of the squeezed vacuum with the same average photon
    number as the coherent state of amplitude alpha.

    @param alpha        Nonnegative amplitude
    @param tail_bound   Largest mass allowed beyond n_max
    @param n_max_cap    Largest n_max allowed

    @return PhotonDistribution over indices 0..n_max
    """

    if alpha < 0.0:
        raise RangeError(f"alpha = {alpha} must be nonnegative")

    _check_tail_bound(tail_bound)

    if alpha == 0.0:
        return _vacuum(DistributionKind.SQUEEZED, alpha)

    r = squeeze_parameter(alpha)
    success = 1.0 / math.cosh(r) ** 2

    n_max = _truncation_index(
        lambda k: nbinom.sf(k, 0.5, success),
        lambda q: nbinom.isf(q, 0.5, success),
        tail_bound, n_max_cap)

    # w_{i+1} = w_i * tanh(r)^2 * (2i + 1) / (2i + 2), in log space
    index = np.arange(n_max)
    steps = 2.0 * math.log(math.tanh(r)) + np.log(2 * index + 1) - np.log(2 * index + 2)
    log_weights = -math.log(math.cosh(r)) + np.concatenate(([0.0], np.cumsum(steps)))

    return PhotonDistribution(
        kind=DistributionKind.SQUEEZED, alpha=float(alpha),
        raw_weights=np.exp(log_weights),
        tail_mass=float(nbinom.sf(n_max, 0.5, success)), renormalized=True)


def squeezed_amplitudes(alpha, tail_bound=TAIL_BOUND_DEFAULT, theta=0.0,
                        n_max_cap=N_MAX_CAP_DEFAULT):
    """
    Signed amplitudes f(alpha, i) of the squeezed vacuum, carrying the phase
    factor (-exp(i * theta))^i.

    @return complex numpy array whose squared moduli are the squeezed weights
    """

    dist = squeezed_weights(alpha, tail_bound, n_max_cap)
    index = np.arange(dist.n_max + 1)

    return np.sqrt(dist.weights) * np.exp(1j * index * (theta + math.pi))


def photon_distribution(kind, alpha, n=None, tail_bound=TAIL_BOUND_DEFAULT,
                        n_max_cap=N_MAX_CAP_DEFAULT):
    """
    Build a member of any family.

    @param kind         DistributionKind or its string value
    @param alpha        Amplitude
    @param n            Number of trials, binomial family only
    @param tail_bound   Truncation bound, infinite families only
    @param n_max_cap    Largest index allowed, infinite families only

    @return PhotonDistribution
    """

    kind = DistributionKind(kind)

    if kind is DistributionKind.BINOMIAL:
        if n is None:
            raise RangeError('the binomial family needs N')
        return binomial_weights(n, alpha)

    if kind is DistributionKind.POISSON:
        return poisson_weights(alpha, tail_bound, n_max_cap)

    return squeezed_weights(alpha, tail_bound, n_max_cap)


def _as_vector(dist):
    if isinstance(dist, PhotonDistribution):
        return dist.weights

    return np.asarray(dist, dtype=float)


def mean_index(dist):
    """
    @param dist PhotonDistribution or weight vector

    @return sum(i * w_i)
    """

    weights = _as_vector(dist)
    return math.fsum(np.arange(len(weights)) * weights)


def mean_photon_number(dist):
    """
    Average photon number. Index i of the squeezed family holds 2i photons.

    @param dist PhotonDistribution

    @return mean photon number of the state behind dist
    """

    if dist.kind is DistributionKind.SQUEEZED:
        return 2.0 * mean_index(dist)

    return mean_index(dist)


def total_variation(first, second):
    """
    Total variation distance of two weight vectors over indices 0, 1, ...;
    the shorter vector is padded with zeros.

    @return 0.5 * sum(|p_i - q_i|)
    """

    first, second = _as_vector(first), _as_vector(second)
    size = max(len(first), len(second))

    first = np.pad(first, (0, size - len(first)))
    second = np.pad(second, (0, size - len(second)))

    return 0.5 * math.fsum(np.abs(first - second))
