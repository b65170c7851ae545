"""
Shared domain types, validation and numeric conventions.

Every discrimination problem handled by usdcoherence is described by one of
three immutable instance types:

FilteringInstance:
    One pure state against a rank-N mixed state (quantum filtering).

PurePairInstance:
    The same data plus phases, where the mixed state is replaced by the
    superposition of its eigenvectors.

RankNPairInstance:
    Two rank-N mixed states whose eigenvectors overlap one to one.

Instances are plain frozen dataclasses. They are checked by validate(), which
either returns the instance unchanged or raises the first violated invariant
with the complete list of violations attached.
"""

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Tuple

from cerberus import Validator  # type: ignore

# Absolute tolerance for normalization checks and branch ties
EPS_SUM = 1e-12

# Absolute tolerance for closed-form against oracle agreement
EPS_MATCH = 1e-9

# Region boundaries closer than this are treated as ties
EPS_TIE = 1e-12


class UsdError(Exception):
    """
    Base class of every error raised by usdcoherence
    """


class InstanceValidationError(UsdError, ValueError):
    """
    Raised when an instance breaks one of its invariants. The attribute
    violations holds every violation found, in the order they were checked.
    """

    def __init__(self, message, violations=None):
        super().__init__(message)
        self.violations = list(violations) if violations else [self]


class WeightSumError(InstanceValidationError):
    """A probability vector is negative somewhere or does not sum to 1"""


class PriorRangeError(InstanceValidationError):
    """A prior probability lies outside [0, 1]"""


class OverlapRangeError(InstanceValidationError):
    """An overlap lies outside [0, 1]"""


class ParallelNormError(InstanceValidationError):
    """The squared overlaps of the pure state sum to 1 or more"""


class PriorOrderError(InstanceValidationError):
    """P1 is larger than P2"""


class DominanceError(InstanceValidationError):
    """P1 * alpha_i exceeds P2 * beta_i for some pair"""


class LengthMismatchError(InstanceValidationError):
    """Vectors of one instance have different lengths"""


class InstanceFormatError(InstanceValidationError):
    """A serialized instance does not have the expected structure"""


class ZeroPriorError(UsdError, ValueError):
    """An operation needs P1 > 0"""


class DomainError(UsdError, ValueError):
    """An argument lies outside the domain of an operation"""


class MismatchError(UsdError, ValueError):
    """Two instances that must share data do not"""


class ZeroDenominatorError(UsdError, ZeroDivisionError):
    """A pair threshold would divide by a vanishing weight"""


class NormalizationError(UsdError, ValueError):
    """A weight vector passed to a coherence measure does not sum to 1"""


class RangeError(UsdError, ValueError):
    """A distribution parameter lies outside its admissible range"""


class TruncationError(UsdError, RuntimeError):
    """A truncated distribution cannot reach its tail bound under the cap"""


class FilteringCase(Enum):
    """Closed-form branch of quantum filtering"""
    CASE_I = 'CaseI'
    CASE_II = 'CaseII'
    CASE_III = 'CaseIII'


class PureCase(Enum):
    """Closed-form branch of two-pure-state discrimination"""
    CASE_I_PRIME = "CaseI'"
    CASE_II_PRIME = "CaseII'"


class JointCase(Enum):
    """Intersection of a filtering branch with a pure-pure branch"""
    A = 'a'
    B = 'b'
    C = 'c'
    D = 'd'
    E = 'e'
    EMPTY = 'empty'


class PairLabel(Enum):
    """Whether both vectors of a subspace pair are detected"""
    IDENTIFIED = 'Identified'
    NEGLECTED = 'Neglected'


class Theorem3Case(Enum):
    """Classification of a rank-N pair by how its pairs split"""
    ALL_IDENTIFIED = 'AllIdentified'
    ALL_NEGLECTED = 'AllNeglected'
    MIXED_SMALL_S_STAR = 'MixedSmallSStar'
    MIXED_LARGE_S_STAR = 'MixedLargeSStar'


def _as_floats(values):
    return tuple(float(value) for value in values)


@dataclass(frozen=True)
class Priors:
    """Prior probabilities of the two hypotheses"""

    p1: float
    p2: float

    def __post_init__(self):
        object.__setattr__(self, 'p1', float(self.p1))
        object.__setattr__(self, 'p2', float(self.p2))

    @classmethod
    def from_p1(cls, p1):
        """
        @param p1   Prior of the first state

        @return Priors with p2 = 1 - p1
        """

        return cls(p1, 1.0 - float(p1))

    @property
    def threshold(self):
        """@return sqrt(P1 / P2), the pure-pure region boundary"""
        return math.sqrt(self.p1 / self.p2)


@dataclass(frozen=True)
class FilteringInstance:
    """One pure state against a rank-N mixed state"""

    priors: Priors
    beta: Tuple[float, ...]
    overlaps: Tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, 'beta', _as_floats(self.beta))
        object.__setattr__(self, 'overlaps', _as_floats(self.overlaps))

    @property
    def dimension(self):
        """@return rank N of the mixed state"""
        return len(self.beta)

    @property
    def parallel_norm_sq(self):
        """@return <Psi1_par|Psi1_par>, the sum of squared overlaps"""
        return math.fsum(s * s for s in self.overlaps)

    @property
    def weighted_overlap_sq(self):
        """@return sum of beta_i * s_1i'^2, the squared pure-mixed fidelity"""
        return math.fsum(b * s * s for b, s in zip(self.beta, self.overlaps))


@dataclass(frozen=True)
class PurePairInstance:
    """Two pure states, the second superposed from the mixed eigenvectors"""

    priors: Priors
    beta: Tuple[float, ...]
    overlaps: Tuple[float, ...]
    phases: Tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, 'beta', _as_floats(self.beta))
        object.__setattr__(self, 'overlaps', _as_floats(self.overlaps))
        object.__setattr__(self, 'phases', _as_floats(self.phases))

    @property
    def dimension(self):
        """@return number of superposed vectors"""
        return len(self.beta)

    def filtering_instance(self):
        """@return the filtering instance sharing priors, weights and overlaps"""
        return FilteringInstance(self.priors, self.beta, self.overlaps)


@dataclass(frozen=True)
class RankNPairInstance:
    """Two rank-N mixed states with one-to-one overlapping eigenvectors"""

    priors: Priors
    alpha: Tuple[float, ...]
    beta: Tuple[float, ...]
    diag_overlaps: Tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, 'alpha', _as_floats(self.alpha))
        object.__setattr__(self, 'beta', _as_floats(self.beta))
        object.__setattr__(self, 'diag_overlaps', _as_floats(self.diag_overlaps))

    @property
    def dimension(self):
        """@return rank N of both states"""
        return len(self.alpha)


@dataclass(frozen=True)
class Certificate:
    """Record of an independent minimization backing a closed form"""

    argmin_q1: float
    objective_value: float
    gap: float
    note: str = ''


@dataclass(frozen=True)
class PairBranch:
    """Optimal branch and failure contribution of one subspace pair"""

    index: int
    branch: PairLabel
    contribution: float
    threshold: float


@dataclass(frozen=True)
class DiscriminationResult:
    """Minimal average failure probability with the branch that produced it"""

    q_min: float
    branch: Enum
    pairs: Tuple[PairBranch, ...] = field(default=())
    identified_count: Optional[int] = None
    certificate: Optional[Certificate] = None

    def to_dict(self):
        """@return a JSON-friendly dictionary of this result"""

        result = {'q_min': self.q_min, 'branch': self.branch.value}

        if self.pairs:
            result['pairs'] = [
                {'index': pair.index, 'branch': pair.branch.value,
                 'contribution': pair.contribution}
                for pair in self.pairs
            ]
            result['identified_count'] = self.identified_count

        if self.certificate:
            result['certificate'] = {
                'argmin_q1': self.certificate.argmin_q1,
                'objective_value': self.certificate.objective_value,
                'gap': self.certificate.gap,
                'note': self.certificate.note
            }

        return result


def _check_priors(priors):
    if not (0.0 <= priors.p1 <= 1.0 and 0.0 <= priors.p2 <= 1.0):
        yield PriorRangeError(
            f"priors ({priors.p1}, {priors.p2}) must lie in [0, 1]")

    if abs(priors.p1 + priors.p2 - 1.0) > EPS_SUM:
        yield WeightSumError(
            f"priors sum to {priors.p1 + priors.p2}, expected 1")

    if priors.p1 > priors.p2:
        yield PriorOrderError(
            f"P1 = {priors.p1} exceeds P2 = {priors.p2}")


def _check_finite(name, values):
    if not all(math.isfinite(value) for value in values):
        yield InstanceFormatError(f"{name} contains non-finite values")


def _check_weights(name, weights):
    if not weights:
        yield LengthMismatchError(f"{name} must not be empty")
        return

    if any(weight < 0.0 for weight in weights):
        yield WeightSumError(f"{name} contains negative weights")

    total = math.fsum(weights)
    if abs(total - 1.0) > EPS_SUM:
        yield WeightSumError(f"{name} sums to {total}, expected 1")


def _check_overlaps(name, overlaps):
    if any(not 0.0 <= overlap <= 1.0 for overlap in overlaps):
        yield OverlapRangeError(f"{name} must lie in [0, 1]")


def _check_lengths(**vectors):
    lengths = {name: len(vector) for name, vector in vectors.items()}
    if len(set(lengths.values())) > 1:
        yield LengthMismatchError(f"vector lengths differ: {lengths}")


def _filtering_violations(instance, phases=None):
    yield from _check_priors(instance.priors)

    vectors = {'beta': instance.beta, 'overlaps': instance.overlaps}
    if phases is not None:
        vectors['phases'] = phases

    for name, values in vectors.items():
        yield from _check_finite(name, values)

    yield from _check_lengths(**vectors)
    yield from _check_weights('beta', instance.beta)
    yield from _check_overlaps('overlaps', instance.overlaps)

    parallel_norm_sq = math.fsum(s * s for s in instance.overlaps)
    if parallel_norm_sq >= 1.0 - EPS_SUM:
        yield ParallelNormError(
            f"sum of squared overlaps is {parallel_norm_sq}, must be < 1")


def _rank_n_violations(instance):
    yield from _check_priors(instance.priors)

    vectors = {
        'alpha': instance.alpha,
        'beta': instance.beta,
        'diag_overlaps': instance.diag_overlaps
    }
    for name, values in vectors.items():
        yield from _check_finite(name, values)

    yield from _check_lengths(**vectors)
    yield from _check_weights('alpha', instance.alpha)
    yield from _check_weights('beta', instance.beta)
    yield from _check_overlaps('diag_overlaps', instance.diag_overlaps)

    p1, p2 = instance.priors.p1, instance.priors.p2
    dominated = [
        index for index, (a, b) in enumerate(zip(instance.alpha, instance.beta))
        if p1 * a > p2 * b + EPS_SUM
    ]
    if dominated:
        yield DominanceError(
            f"P1 * alpha_i > P2 * beta_i for pairs {dominated}")


def violations(instance):
    """
    Collect every invariant that the given instance breaks.

    @param instance Any instance type

    @return list of InstanceValidationError objects, empty if valid
    """

    if isinstance(instance, PurePairInstance):
        return list(_filtering_violations(instance, instance.phases))

    if isinstance(instance, FilteringInstance):
        return list(_filtering_violations(instance))

    if isinstance(instance, RankNPairInstance):
        return list(_rank_n_violations(instance))

    raise TypeError(f"{type(instance).__name__} is not an instance type")


def validate(instance):
    """
    Check an instance against its invariants.

    @param instance Any instance type

    @return the very same instance when every invariant holds

    @raise the first violation found, carrying all of them in .violations
    """

    found = violations(instance)

    if found:
        first = found[0]
        first.violations = found
        raise first

    return instance


# Structure of serialized instances. Numeric invariants are checked by
# validate() so that each one raises its own error type.
_NUMBER_LIST = {
    'type': 'list',
    'required': True,
    'minlength': 1,
    'schema': {'type': 'number'}
}

FILTERING_SCHEMA = {
    'p1': {'type': 'number', 'required': True},
    'beta': _NUMBER_LIST,
    'overlaps': _NUMBER_LIST
}

PURE_PAIR_SCHEMA = dict(FILTERING_SCHEMA, phases=_NUMBER_LIST)

RANK_N_SCHEMA = {
    'p1': {'type': 'number', 'required': True},
    'alpha': _NUMBER_LIST,
    'beta': _NUMBER_LIST,
    'diag_overlaps': _NUMBER_LIST
}


def instance_from_dict(document):
    """
    Build and validate an instance from a dictionary using the keys "p1",
    "beta", "overlaps", "phases", "alpha" and "diag_overlaps".

    @param document Dictionary describing one instance

    @return a validated instance of the matching type
    """

    if not isinstance(document, dict):
        raise InstanceFormatError('an instance document must be a mapping')

    if 'alpha' in document or 'diag_overlaps' in document:
        schema = RANK_N_SCHEMA
    elif 'phases' in document:
        schema = PURE_PAIR_SCHEMA
    else:
        schema = FILTERING_SCHEMA

    validator = Validator(schema)
    if not validator.validate(document):
        raise InstanceFormatError(f"{validator.errors}")

    priors = Priors.from_p1(document['p1'])

    if schema is RANK_N_SCHEMA:
        instance = RankNPairInstance(
            priors, document['alpha'], document['beta'],
            document['diag_overlaps'])
    elif schema is PURE_PAIR_SCHEMA:
        instance = PurePairInstance(
            priors, document['beta'], document['overlaps'],
            document['phases'])
    else:
        instance = FilteringInstance(
            priors, document['beta'], document['overlaps'])

    return validate(instance)


def instance_to_dict(instance):
    """
    @param instance Any instance type

    @return a dictionary that instance_from_dict turns back into instance
    """

    document = {'p1': instance.priors.p1, 'beta': list(instance.beta)}

    if isinstance(instance, RankNPairInstance):
        document['alpha'] = list(instance.alpha)
        document['diag_overlaps'] = list(instance.diag_overlaps)
    else:
        document['overlaps'] = list(instance.overlaps)

    if isinstance(instance, PurePairInstance):
        document['phases'] = list(instance.phases)

    return document


def load_instance(filepath):
    """
    Read a JSON instance document from filepath.

    @param filepath File holding one JSON object

    @return a validated instance
    """

    with open(filepath) as instance_file:
        try:
            document = json.loads(instance_file.read())
        except json.JSONDecodeError as decode_error:
            raise InstanceFormatError(f"{decode_error}") from decode_error

    return instance_from_dict(document)
