"""
Definition of the Writer class
"""

import csv
import json
import logging
import os
import sys
from contextlib import contextmanager

from usdcoherence.program import Program


class Writer:
    """
    Class for creating Writer objects which write sweep tables as CSV and
    verification reports as JSON lines, either to a file or to standard
    output. Every CSV table starts with a comment line holding a JSON header
    that records how the table was produced.
    """

    def __init__(self, out=None):
        # None means standard output
        self.out = out

    @staticmethod
    def companion_filepath(filepath, suffix, extension=None):
        """
        Derive the path of a file written next to filepath, such as the
        boundary traces of a region map.

        @param filepath     Path of the main output file
        @param suffix       Text inserted before the extension
        @param extension    Extension of the companion, that of filepath if None

        @return for 'map.csv' and 'boundaries', 'map.boundaries.csv'
        """

        root, own_extension = os.path.splitext(filepath)
        return f"{root}.{suffix}{extension or own_extension or '.csv'}"

    @contextmanager
    def _open(self, filepath):
        if filepath is None:
            yield sys.stdout
        else:
            with open(filepath, 'w', newline='') as output_file:
                yield output_file

    @staticmethod
    def _write_table(stream, header, columns, rows):
        stream.write(f"# {json.dumps(header, sort_keys=True)}\n")

        table = csv.DictWriter(stream, fieldnames=columns, extrasaction='ignore',
                               lineterminator='\n')
        table.writeheader()
        table.writerows(rows)

    @staticmethod
    def _write_records(stream, records):
        for record in records:
            stream.write(json.dumps(record, sort_keys=True) + '\n')

    def write_result(self, result):
        """
        Write the rows of a SweepResult, its traces and the points it skipped.
        Traces and skipped points go to companion files, or follow the main
        table when writing to standard output.

        @param result   SweepResult to write

        @return whether everything was written
        """

        try:
            with self._open(self.out) as stream:
                self._write_table(stream, result.header, result.columns,
                                  result.rows)

                if result.traces:
                    trace_header = dict(result.header, table='traces')
                    if self.out is None:
                        self._write_table(stream, trace_header,
                                          result.trace_columns, result.traces)
                    else:
                        with self._open(self.companion_filepath(
                                self.out, 'boundaries')) as trace_stream:
                            self._write_table(trace_stream, trace_header,
                                              result.trace_columns, result.traces)

                if result.skipped and self.out is not None:
                    with self._open(self.companion_filepath(
                            self.out, 'skipped', '.jsonl')) as skip_stream:
                        self._write_records(skip_stream, result.skipped)

        except OSError as os_error:
            return self._fail(os_error)

        Program.log(f"writer: wrote {len(result.rows)} {result.name} rows to "
                    f"{self.out or 'standard output'}", logging.INFO)
        return True

    def write_jsonl(self, records):
        """
        Write one JSON object per line.

        @param records  Iterable of JSON-friendly dictionaries

        @return whether everything was written
        """

        records = list(records)

        try:
            with self._open(self.out) as stream:
                self._write_records(stream, records)

        except OSError as os_error:
            return self._fail(os_error)

        Program.log(f"writer: wrote {len(records)} records to "
                    f"{self.out or 'standard output'}", logging.INFO)
        return True

    def _fail(self, os_error):
        error_code = getattr(os_error, 'errno', None)
        error_message = getattr(os_error, 'strerror', None) or f"{os_error}"
        file_name = getattr(os_error, 'filename', None)

        Program.log(f"writer: make sure that the directory of {file_name} "
                    "exists and is writable", logging.ERROR)
        Program.initiate_shutdown(
            f"writer: [{error_message} error_code: {error_code} "
            f"file_name: {file_name}]")
        return False
