#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# spsreader.py
# Description: Reader of tabular artifacts (csv and spreadsheets)
# -----------------------------------------------------------------------------
#
# Started on <dom 18-10-2026 09:03:27.604521873 (1792306407)>
#

"""
Reader of tabular artifacts (csv and spreadsheets)
"""

# imports
# -----------------------------------------------------------------------------
import os

import pyexcel

if __package__ is None or __package__ == '':
    import cnngaterrors
else:
    from . import cnngaterrors

# globals
# -----------------------------------------------------------------------------
ERROR_FILE_NOT_FOUND = "the file '{0}' does not exist or is unreachable"
ERROR_MISSING_HEADERS = "the file '{0}' lacks the columns {1}"
ERROR_UNKNOWN_HEADER_NAME = "unknown header '{0}'"
ERROR_EMPTY = "the file '{0}' has no header row"


# -----------------------------------------------------------------------------
# SpsReader
#
# A reader of tables stored in any format supported by pyexcel, csv files in
# particular.
#
# It assumes that the headers are given in the first non-empty line and that
# data is arranged vertically. Empty lines are skipped. Rows are served as
# dictionaries indexed by the headers
# -----------------------------------------------------------------------------
class SpsReader():
    """A reader of tables stored in any format supported by pyexcel, csv files in
       particular.

       It assumes that the headers are given in the first non-empty line and
       that data is arranged vertically. Empty lines are skipped. Rows are
       served as dictionaries indexed by the headers

    """

    def __init__(self, spsfilename: str, required=()):
        """the filename can be given with a path either relative or absolute. If
           required headers are given, all of them must be present or a
           FormatError is raised

        """

        if not os.path.isfile(spsfilename):
            raise FileNotFoundError(ERROR_FILE_NOT_FOUND.format(spsfilename))

        # all rows are read at once, skipping those which are entirely empty
        rows = [irow for irow in pyexcel.get_array(file_name=spsfilename)
                if any(str(icell).strip() for icell in irow)]
        if not rows:
            raise cnngaterrors.FormatError(ERROR_EMPTY.format(spsfilename))

        # the location of every header is recorded so that columns can be given
        # in any order
        self._header = {str(iheader).strip(): idx for idx, iheader in enumerate(rows[0])
                        if str(iheader).strip()}
        self._rows = rows[1:]

        missing = [iheader for iheader in required if iheader not in self._header]
        if missing:
            raise cnngaterrors.FormatError(ERROR_MISSING_HEADERS.format(spsfilename, missing))

    def __call__(self, key: str):
        """return all values (even if they are repeated) of a header identified by its
           key

        """

        if key not in self._header:
            raise cnngaterrors.FormatError(ERROR_UNKNOWN_HEADER_NAME.format(key))

        return [self._cell(irow, key) for irow in self._rows]

    def __len__(self):
        """return the number of rows with data, i.e., skipping all empty lines"""

        return len(self._rows)

    def __iter__(self):
        """iterate over all rows of data as dictionaries indexed by the headers"""

        for irow in self._rows:
            yield {iheader: self._cell(irow, iheader) for iheader in self._header}

    def _cell(self, row: list, key: str):
        """return the contents of the given row under the given header. Short rows are
           padded with empty strings

        """

        idx = self._header[key]
        return row[idx] if idx < len(row) else ''


# Local Variables:
# mode:python
# fill-column:80
# End:
