"""
Brute-force minimization backing every closed-form optimum.

Each discrimination problem reduces to minimizing

    f(q) = linear * q + inverse / q

over an interval [lower, upper] inside (0, 1]. The oracle samples f on a
coarse grid, brackets the best grid point, refines the bracket with a
golden-section search and finally compares the refined point with the grid
optimum and both interval ends.
"""

import dataclasses
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from usdcoherence.filtering import q_min_filtering
from usdcoherence.mixedmixed import q_min_mixed_mixed
from usdcoherence.model import (
    EPS_MATCH, Certificate, DomainError, FilteringInstance, PurePairInstance,
    RankNPairInstance, UsdError
)
from usdcoherence.purepure import q_min_superposed, s_star

GRID_POINTS = 10000
GOLDEN_TOLERANCE = 1e-12

# 1 / phi
GOLDEN_RATIO = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class OracleMinimum:
    """Minimizer of an interval problem and the value it reaches"""

    argmin_q1: float
    value: float


@dataclass(frozen=True)
class VerificationReport:
    """Closed form against oracle for a single instance"""

    kind: str
    closed_form: float
    oracle_value: float
    gap: float
    passed: bool
    branch: Optional[str] = None
    error: Optional[str] = None

    def to_dict(self):
        """@return the report as a JSON-friendly dictionary"""

        report = {
            'kind': self.kind,
            'closed_form': self.closed_form,
            'oracle_value': self.oracle_value,
            'gap': self.gap,
            'pass': self.passed,
            'branch': self.branch
        }

        if self.error:
            report['error'] = self.error

        return report


def golden_section(func, lower, upper, tolerance=GOLDEN_TOLERANCE):
    """
    Minimize a unimodal function on [lower, upper]. One of the two inner
    points is kept at every step, so each step costs one evaluation.

    @param func         Function of one variable
    @param lower        Left end of the bracket
    @param upper        Right end of the bracket
    @param tolerance    Width at which the bracket is considered converged

    @return midpoint of the final bracket
    """

    left = upper - GOLDEN_RATIO * (upper - lower)
    right = lower + GOLDEN_RATIO * (upper - lower)
    f_left = func(left)
    f_right = func(right)

    while upper - lower > tolerance:
        if f_left < f_right:
            upper = right
            right, f_right = left, f_left
            left = upper - GOLDEN_RATIO * (upper - lower)
            f_left = func(left)
        else:
            lower = left
            left, f_left = right, f_right
            right = lower + GOLDEN_RATIO * (upper - lower)
            f_right = func(right)

    return 0.5 * (lower + upper)


def minimize_interval(linear, inverse, lower, upper):
    """
    Minimize linear * q + inverse / q over [lower, upper].

    @param linear   Nonnegative coefficient of q
    @param inverse  Nonnegative coefficient of 1 / q
    @param lower    Left end of the interval, positive unless inverse is 0
    @param upper    Right end of the interval

    @return OracleMinimum
    """

    if lower > upper:
        raise DomainError(f"empty interval [{lower}, {upper}]")

    # Nondecreasing in q, the left end wins
    if inverse == 0.0:
        return OracleMinimum(lower, linear * lower)

    if lower <= 0.0:
        raise DomainError(f"interval [{lower}, {upper}] reaches q = 0")

    def func(q):
        return linear * q + inverse / q

    candidates = [(func(lower), lower), (func(upper), upper)]

    if upper - lower > GOLDEN_TOLERANCE:
        grid = np.linspace(lower, upper, GRID_POINTS)
        values = linear * grid + inverse / grid
        best = int(np.argmin(values))
        candidates.append((float(values[best]), float(grid[best])))

        bracket_lower = float(grid[max(best - 1, 0)])
        bracket_upper = float(grid[min(best + 1, GRID_POINTS - 1)])
        refined = golden_section(func, bracket_lower, bracket_upper)
        candidates.append((func(refined), refined))

    value, argmin = min(candidates)
    return OracleMinimum(argmin, value)


def minimize_filtering(inst):
    """
    @param inst FilteringInstance

    @return OracleMinimum of the filtering objective over [sum(s^2), 1]
    """

    return minimize_interval(
        inst.priors.p1, inst.priors.p2 * inst.weighted_overlap_sq,
        inst.parallel_norm_sq, 1.0)


def _two_pure_minimum(p1, p2, s):
    if not 0.0 <= s <= 1.0:
        raise DomainError(f"overlap {s} lies outside [0, 1]")

    return minimize_interval(p1, p2 * s * s, s * s, 1.0)


def minimize_two_pure(p1, p2, s):
    """
    Minimize P1 * q1 + P2 * s^2 / q1 over q1 in [s^2, 1]. The priors may be
    sub-priors of one pair of a mixed-mixed problem.

    @param p1   Weight of the first state
    @param p2   Weight of the second state
    @param s    Overlap of the two states, in [0, 1]

    @return the minimal value
    """

    return _two_pure_minimum(p1, p2, s).value


def _rank_n_oracle(inst):
    p1, p2 = inst.priors.p1, inst.priors.p2

    return math.fsum(
        minimize_two_pure(p1 * a, p2 * b, s)
        for a, b, s in zip(inst.alpha, inst.beta, inst.diag_overlaps))


def _closed_form_and_oracle(instance):
    if isinstance(instance, FilteringInstance):
        return q_min_filtering(instance), minimize_filtering(instance).value

    if isinstance(instance, PurePairInstance):
        oracle_value = minimize_two_pure(
            instance.priors.p1, instance.priors.p2, min(abs(s_star(instance)), 1.0))
        return q_min_superposed(instance), oracle_value

    if isinstance(instance, RankNPairInstance):
        return q_min_mixed_mixed(instance), _rank_n_oracle(instance)

    raise TypeError(f"{type(instance).__name__} is not an instance type")


def verify_instance(instance):
    """
    Compare the closed-form optimum of an instance with the oracle. Errors
    raised while evaluating are reported as failures.

    @param instance Any instance type

    @return VerificationReport, passed iff the gap is at most EPS_MATCH
    """

    kind = type(instance).__name__

    try:
        result, oracle_value = _closed_form_and_oracle(instance)
    except UsdError as usd_error:
        return VerificationReport(
            kind=kind, closed_form=math.nan, oracle_value=math.nan,
            gap=math.inf, passed=False, error=f"{usd_error}")

    gap = abs(result.q_min - oracle_value)

    return VerificationReport(
        kind=kind, closed_form=result.q_min, oracle_value=oracle_value,
        gap=gap, passed=gap <= EPS_MATCH, branch=result.branch.value)


def certify(result, instance):
    """
    Attach an oracle certificate to a filtering or pure-pure result.

    @param result   DiscriminationResult computed for instance
    @param instance FilteringInstance or PurePairInstance

    @return a copy of result carrying a Certificate
    """

    if isinstance(instance, FilteringInstance):
        minimum = minimize_filtering(instance)
    elif isinstance(instance, PurePairInstance):
        minimum = _two_pure_minimum(
            instance.priors.p1, instance.priors.p2, min(abs(s_star(instance)), 1.0))
    else:
        raise TypeError(f"cannot certify a {type(instance).__name__}")

    note = result.certificate.note if result.certificate else ''
    certificate = Certificate(
        argmin_q1=minimum.argmin_q1, objective_value=minimum.value,
        gap=abs(result.q_min - minimum.value), note=note)

    return dataclasses.replace(result, certificate=certificate)
