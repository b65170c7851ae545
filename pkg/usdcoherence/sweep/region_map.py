"""
Definition of the RegionMapSweep class

Labels every point (s_11, s_12) of a square grid over [0, 1)^2 with the joint
case of the filtering and pure-pure regions, for two-dimensional instances
with fixed priors, weights and phases. The boundaries between regions are
emitted as separate traces.
"""

import math

import numpy as np

from usdcoherence.filtering import classify
from usdcoherence.model import Priors, PurePairInstance, validate
from usdcoherence.purepure import classify_joint, classify_pure, s_star
from usdcoherence.sweep.spec import REGION_MAP, SpecError
from usdcoherence.sweep.sweep import Sweep

# Trace names
PARALLEL_BOUNDARY = 'q1_star_eq_parallel'
UNIT_BOUNDARY = 'q1_star_eq_one'
THRESHOLD_BOUNDARY = 's_star_eq_threshold'
NORM_BOUNDARY = 'unit_norm'

# Imaginary parts below this count as real roots
ROOT_TOLERANCE = 1e-12


def _nonnegative_roots(coefficients):
    roots = np.roots(coefficients)
    return sorted(float(root.real) for root in roots
                  if abs(root.imag) <= ROOT_TOLERANCE and root.real >= 0.0)


class RegionMapSweep(Sweep):
    """
    Sweep producing the five-region map of joint cases (a) to (e)
    """

    name = 'region-map'
    columns = ['s11', 's12', 'case', 'filtering_case', 'pure_case',
               'q1_star', 'abs_s_star']
    trace_columns = ['curve', 's11', 's12']

    def __init__(self, spec):
        if spec.target != REGION_MAP or len(spec.beta) != 2:
            raise SpecError('the region map needs a two-dimensional RegionMap spec')

        super().__init__(spec)
        self.priors = Priors.from_p1(spec.p1)
        self.grid_values = np.linspace(0.0, 1.0, spec.grid, endpoint=False)

    def points(self):
        return [(float(s11), float(s12))
                for s11 in self.grid_values for s12 in self.grid_values]

    def evaluate(self, point):
        pair = validate(PurePairInstance(
            self.priors, self.spec.beta, point, self.spec.phases))
        inst = pair.filtering_instance()
        branch = classify(inst)
        abs_s_star = abs(s_star(pair))

        return {
            's11': point[0],
            's12': point[1],
            'case': classify_joint(inst, pair).value,
            'filtering_case': branch.label.value,
            'pure_case': classify_pure(self.priors, abs_s_star).value,
            'q1_star': branch.q1_star,
            'abs_s_star': abs_s_star
        }

    def point_label(self, point):
        return list(point)

    def traces(self):
        """
        Solve each boundary for s_12 at every grid value of s_11. With
        a = s_11^2, x = s_12^2 and k = P2 / P1 the boundaries read

        q1* = sum(s^2):     (a + x)^2 = k (beta_1 a + beta_2 x)
        q1* = 1:            k (beta_1 a + beta_2 x) = 1
        |s*| = sqrt(P1/P2): beta_1 a + beta_2 y^2 + 2 sqrt(beta_1 beta_2) s_11 y cos(d) = P1/P2
        sum(s^2) = 1:       a + x = 1
        """

        p1, p2 = self.priors.p1, self.priors.p2
        beta1, beta2 = self.spec.beta
        cos_delta = math.cos(self.spec.phases[0] - self.spec.phases[1])
        traces = []

        def add(curve, s11, s12):
            if 0.0 <= s12 < 1.0 and (curve == NORM_BOUNDARY or s11 * s11 + s12 * s12 < 1.0):
                traces.append({'curve': curve, 's11': s11, 's12': s12})

        for s11 in self.grid_values:
            s11 = float(s11)
            a = s11 * s11

            if p1 > 0.0:
                k = p2 / p1
                for x in _nonnegative_roots([1.0, 2.0 * a - k * beta2, a * a - k * beta1 * a]):
                    add(PARALLEL_BOUNDARY, s11, math.sqrt(x))

                if beta2 > 0.0:
                    x = (1.0 / k - beta1 * a) / beta2
                    if x >= 0.0:
                        add(UNIT_BOUNDARY, s11, math.sqrt(x))

            for y in _nonnegative_roots([
                    beta2, 2.0 * math.sqrt(beta1 * beta2) * s11 * cos_delta,
                    beta1 * a - p1 / p2]):
                add(THRESHOLD_BOUNDARY, s11, y)

            add(NORM_BOUNDARY, s11, math.sqrt(max(1.0 - a, 0.0)))

        return traces


def run_region_map(spec):
    """
    @param spec SweepSpec with target RegionMap

    @return SweepResult of case labels with boundary traces
    """

    return RegionMapSweep(spec).run()
