"""
Definition of the Sweep class
"""

import logging
from dataclasses import dataclass, field
from typing import List

from usdcoherence.__version__ import __version__
from usdcoherence.model import TruncationError, UsdError
from usdcoherence.program import Program, ProgramShutdownError
from usdcoherence.util import map_ordered


@dataclass
class SweepResult:
    """Rows produced by one sweep plus everything needed to write them"""

    name: str
    header: dict
    columns: List[str]
    rows: List[dict] = field(default_factory=list)
    skipped: List[dict] = field(default_factory=list)
    traces: List[dict] = field(default_factory=list)
    trace_columns: List[str] = field(default_factory=list)
    completed: bool = True


@dataclass(frozen=True)
class _Skipped:
    reason: str


class Sweep:
    """
    Evaluate a table row for every point of a parameter sweep. Points are
    evaluated independently, possibly on several threads, and rows are kept
    in sweep order. Points that do not describe a valid instance are skipped
    and recorded. Subclasses define the points, the evaluation of one point
    and optionally a finishing pass over all rows.
    """

    # Used as prefix of log messages and in the output header
    name = 'sweep'

    # Columns of every emitted row, in output order
    columns: List[str] = []

    # Columns of the extra curves returned by traces()
    trace_columns: List[str] = []

    def __init__(self, spec):
        self.spec = spec

    def points(self):
        """
        @return list of points to evaluate, in sweep order
        """

        raise NotImplementedError

    def evaluate(self, point):
        """
        Compute the row of one point. Raising a UsdError skips the point,
        except for TruncationError which ends the sweep.

        @param point    One element of points()

        @return dictionary with an entry per column
        """

        raise NotImplementedError

    def point_label(self, point):
        """
        @return a JSON-friendly description of point for the skip record
        """

        return point

    def finalize(self, rows):
        """
        Post-process the rows of all evaluated points. The default
        implementation given here returns them unchanged.

        @param rows List of rows in sweep order

        @return the rows to emit
        """

        return rows

    def traces(self):
        """
        @return extra curves emitted next to the table, empty by default
        """

        return []

    def header(self):
        """
        @return provenance written as the first line of the output
        """

        return {
            'program': 'usdcoherence',
            'version': __version__,
            'sweep': self.name,
            'spec': self.spec.to_dict()
        }

    def _evaluate_safely(self, point):
        try:
            return self.evaluate(point)
        # Ends the sweep
        except TruncationError:
            raise
        except UsdError as usd_error:
            return _Skipped(f"{type(usd_error).__name__}: {usd_error}")

    def run(self):
        """
        Evaluate every point and collect the rows.

        @return SweepResult

        @raise TruncationError when a distribution cannot be truncated within
               the spec settings
        """

        points = list(self.points())
        rows = []
        skipped = []
        completed = True

        Program.log(f"{self.name} sweep: evaluating {len(points)} points",
                    logging.INFO)

        try:
            outcomes = map_ordered(self._evaluate_safely, points, self.spec.workers)
            for point, outcome in zip(points, outcomes):
                if isinstance(outcome, _Skipped):
                    skipped.append({'point': self.point_label(point),
                                    'reason': outcome.reason})
                else:
                    rows.append(outcome)

        # Shutdown was requested while points were still being evaluated
        except ProgramShutdownError:
            completed = False
            Program.log(f"{self.name} sweep: stopped after {len(rows)} rows",
                        logging.WARNING)

        if skipped:
            Program.log(
                f"{self.name} sweep: skipped {len(skipped)} invalid points, "
                f"first: {skipped[0]['point']} ({skipped[0]['reason']})",
                logging.WARNING)

        header = self.header()
        header['skipped'] = len(skipped)

        return SweepResult(
            name=self.name,
            header=header,
            columns=list(self.columns),
            rows=self.finalize(rows),
            skipped=skipped,
            traces=self.traces() if completed else [],
            trace_columns=list(self.trace_columns),
            completed=completed)
