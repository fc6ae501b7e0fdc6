#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# spswriter.py
# Description: Writers of csv files and xlsx reports
# -----------------------------------------------------------------------------
#
# Started on <dom 18-10-2026 09:41:55.871043920 (1792308715)>
#

"""
Writers of csv files and xlsx reports
"""

# imports
# -----------------------------------------------------------------------------
import os

import pyexcel
import xlsxwriter

if __package__ is None or __package__ == '':
    import cnngaterrors
else:
    from . import cnngaterrors

# globals
# -----------------------------------------------------------------------------
ERROR_WRONG_PATH = "The path '{0}' is not reachable"
ERROR_WRONG_DATA = "data to be written can be delivered only as a list of lists"
ERROR_NO_WORKSHEET = "no worksheet has been added"
ERROR_WRONG_HEADER = "The header {0} has not been registered"
ERROR_ROW_LENGTH = "row {0} has {1} cells but there are {2} headers"


# functions
# -----------------------------------------------------------------------------

# -----------------------------------------------------------------------------
# to_list
#
# formats rows to be written. data should be given as a list of lists whose
# items are either scalars or tuples. Tuples are stripped off and their items
# inserted in the row. Numpy scalars are converted into plain numbers
# -----------------------------------------------------------------------------
def to_list(data):
    """formats rows to be written. data should be given as a list of lists whose
       items are either scalars or tuples. Tuples are stripped off and their
       items inserted in the row. Numpy scalars are converted into plain numbers

    """

    if not isinstance(data, list):
        raise TypeError(ERROR_WRONG_DATA)

    result = []
    for iline in data:
        if not isinstance(iline, list):
            raise TypeError(ERROR_WRONG_DATA)

        iresult = []
        for item in iline:
            for jitem in (item if isinstance(item, tuple) else (item,)):
                iresult.append(jitem.item() if hasattr(jitem, 'item') else jitem)
        result.append(iresult)

    return result


# -----------------------------------------------------------------------------
# write_csv
#
# write a csv file with the given headers and rows. Every row must have as many
# cells as headers
# -----------------------------------------------------------------------------
def write_csv(filename: str, headers: list, rows: list):
    """write a csv file with the given headers and rows. Every row must have as
       many cells as headers

    """

    path = os.path.dirname(os.path.realpath(filename))
    if not os.access(path, os.W_OK):
        raise FileNotFoundError(ERROR_WRONG_PATH.format(path))

    rows = to_list(rows)
    for idx, irow in enumerate(rows):
        if len(irow) != len(headers):
            raise cnngaterrors.DimensionError(ERROR_ROW_LENGTH.format(idx, len(irow), len(headers)))

    pyexcel.save_as(array=[list(headers)] + rows, dest_file_name=filename)


# -----------------------------------------------------------------------------
# SpsWriter
#
# Writes data into a xlsx spreadsheet with as many worksheets as needed.
#
# Headers are written in the first row with the given formatting properties.
# Consecutive rows with the same contents in the columns marked as a group are
# shown with the same background color, and a new group switches to the next
# alternating color
# -----------------------------------------------------------------------------
class SpsWriter():
    """Writes data into a xlsx spreadsheet with as many worksheets as needed.

       Headers are written in the first row with the given formatting
       properties. Consecutive rows with the same contents in the columns
       marked as a group are shown with the same background color, and a new
       group switches to the next alternating color

    """

    def __init__(self, spsfilename: str):
        """the filename can be given with a path either relative or absolute. To
           further configure the writer use the set_* methods

        """

        path = os.path.dirname(os.path.realpath(spsfilename))
        if not os.access(path, os.W_OK):
            raise FileNotFoundError(ERROR_WRONG_PATH.format(path))

        self._spsfilename = spsfilename
        self._book = xlsxwriter.Workbook(self._spsfilename)

        # a worksheet has to be added with add_worksheet before writing
        self._worksheet = None
        self._reset()

    def _reset(self):
        """initialize the state of the current worksheet"""

        (self._headers, self._group) = ([], [])
        (self._alternating_bg, self._idx_bg) = ([], 0)
        (self._last_row, self._lineno) = (None, 0)

    def _same_group(self, line: list):
        """return whether line belongs to the same group as the preceding row"""

        if self._last_row is None or not self._group:
            return False
        return all(self._last_row[iheader] == line[iheader] for iheader in self._group)

    def _write_line(self, line: list, props: dict = None):
        """write a line in the next empty row with the format given in props or, if
           none is given, the background of its group. It returns the background
           color used, if any

        """

        if not self._worksheet:
            raise LookupError(ERROR_NO_WORKSHEET)

        bg_color = None
        if props:
            cell_format = self._book.add_format(props)
        elif not self._alternating_bg:
            cell_format = None
        else:

            # the first data row opens the first group
            if self._last_row is not None and not self._same_group(line):
                self._idx_bg = (1 + self._idx_bg) % len(self._alternating_bg)
            bg_color = self._alternating_bg[self._idx_bg]
            cell_format = self._book.add_format({'bg_color': bg_color})

        for colno, item in enumerate(line):
            self._worksheet.write(self._lineno, colno, item, cell_format)

        self._last_row = line
        self._lineno += 1
        return bg_color

    def add_worksheet(self, name: str):
        """add a new worksheet with the given name and use it to write data"""

        self._worksheet = self._book.add_worksheet(name)
        self._reset()

    def add_data(self, data: list):
        """add the given rows (a list of lists) to the current worksheet and return the
           background color given to every row

        """

        return [self._write_line(iline) for iline in to_list(data)]

    def close(self):
        """close the workbook making sure that all data is written down"""

        self._book.close()

    def get_header_index(self, header: str):
        """return the index (zero-based) of the specified header"""

        if header not in self._headers:
            raise LookupError(ERROR_WRONG_HEADER.format(header))
        return self._headers.index(header)

    def set_alternating_bg(self, bg_colors: list):
        """set the background colors, given as '#RRGGBB', used in turn by every new
           group of rows

        """

        (self._alternating_bg, self._idx_bg) = (bg_colors, 0)

    def set_group(self, headers: list):
        """define a group as a collection of headers. Consecutive rows with the same
           value in all of them belong to the same group

        """

        self._group = [self.get_header_index(iheader) for iheader in headers]

    def set_headers(self, value: list, props: dict = None):
        """set the headers and write them in the current row with the format given in
           props

        """

        self._headers = list(value)
        self._write_line(self._headers, props)

        # the header row is not part of any group
        self._last_row = None


# Local Variables:
# mode:python
# fill-column:80
# End:
