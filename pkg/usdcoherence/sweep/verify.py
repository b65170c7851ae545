"""
Randomized verification run: oracle agreement on every instance kind plus the
property suites, all drawn from one seeded generator.
"""

import logging
from dataclasses import dataclass, field
from typing import List

import numpy as np

from usdcoherence import suites
from usdcoherence.program import Program
from usdcoherence.sweep.spec import VERIFY, SpecError


@dataclass
class VerifyOutcome:
    """Summaries of every suite with the per-instance oracle reports"""

    summaries: List[suites.SuiteSummary]
    reports: List = field(default_factory=list)
    completed: bool = True

    @property
    def passed(self):
        """@return whether the run completed and every suite passed"""
        return self.completed and all(summary.passed for summary in self.summaries)

    @property
    def worst_gap(self):
        """@return the largest closed-form against oracle gap"""
        return suites.worst_gap(self.summaries)

    def records(self):
        """
        @return JSON-friendly records, every oracle report followed by one
                summary line per suite
        """

        records = [dict(report.to_dict(), record='report')
                   for report in self.reports]
        records.extend(dict(summary.to_dict(), record='summary')
                       for summary in self.summaries)
        return records


def run_verify(spec):
    """
    @param spec SweepSpec with target Verify, providing count and seed

    @return VerifyOutcome
    """

    if spec.target != VERIFY:
        raise SpecError(f"{spec.target} is not a verification spec")

    rng = np.random.default_rng(spec.seed)
    theorem_count = max(spec.count // 10, 1)
    reports = []

    Program.log(f"verify: checking {spec.count} instances per kind with seed "
                f"{spec.seed}", logging.INFO)

    summaries = suites.oracle_suite(rng, spec.count, reports)

    for suite in suites.PROPERTY_SUITES:
        if not Program.is_running():
            Program.log('verify: stopped before every suite ran', logging.WARNING)
            return VerifyOutcome(summaries, reports, completed=False)

        summaries.append(suite(rng, theorem_count))

    for summary in summaries:
        level = logging.INFO if summary.passed else logging.ERROR
        Program.log(f"verify: {summary.name} checked {summary.checked}, "
                    f"failures {summary.failures}, worst {summary.worst}", level)

    return VerifyOutcome(summaries, reports)
