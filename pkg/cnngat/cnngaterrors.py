#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# cnngaterrors.py
# Description: Definition of the errors raised by cnngat
# -----------------------------------------------------------------------------
#
# Started on <sáb 17-10-2026 09:10:45.118021652 (1792228245)>
#

"""
Definition of the errors raised by cnngat
"""

# -----------------------------------------------------------------------------
# CnngatError
#
# Root of all errors raised by cnngat. Every error is also derived from the
# builtin exception that best describes it so that callers can catch either
# -----------------------------------------------------------------------------
class CnngatError(Exception):
    """Root of all errors raised by cnngat. Every error is also derived from the
       builtin exception that best describes it so that callers can catch
       either

    """


class DimensionError(CnngatError, ValueError):
    """shapes of tensors do not conform"""


class VertexIndexError(CnngatError, IndexError):
    """a vertex id is out of range"""


class LabelIndexError(CnngatError, IndexError):
    """a class label is out of range"""


class ContractError(CnngatError, RuntimeError):
    """the caller broke the contract of an operation"""


class StateError(CnngatError, RuntimeError):
    """an operation was invoked in the wrong order, e.g., backward before forward"""


# -----------------------------------------------------------------------------
# FormatError
#
# raised when parsing binary or text files. The byte offset where the problem
# was found is stored, if known
# -----------------------------------------------------------------------------
class FormatError(CnngatError, ValueError):
    """raised when parsing binary or text files. The byte offset where the problem
       was found is stored, if known

    """

    def __init__(self, message, offset=None):
        """a format error carries a message and, optionally, a byte offset"""

        super().__init__(message)
        self._offset = offset

    def get_offset(self):
        """return the byte offset where the error was found or None"""

        return self._offset


class DataError(CnngatError, ValueError):
    """the data does not allow the requested construction"""


class IngestionError(CnngatError, LookupError):
    """a vertex has no image data"""


class BatchAssemblyError(CnngatError, LookupError):
    """a neighbor referenced by a batch has no feature vector"""


class ConfigurationError(CnngatError, ValueError):
    """the configuration is either unknown or inconsistent"""


class DegenerateInputError(CnngatError, ValueError):
    """a statistical test was given input it can not work with"""


# -----------------------------------------------------------------------------
# NaNLossError
#
# raised when the loss becomes NaN during training. It records the location of
# the diagnostic dump with the offending batch
# -----------------------------------------------------------------------------
class NaNLossError(CnngatError, FloatingPointError):
    """raised when the loss becomes NaN during training. It records the location of
       the diagnostic dump with the offending batch

    """

    def __init__(self, message, dumpname=None):
        """a NaN loss error carries a message and the name of the dump file"""

        super().__init__(message)
        self._dumpname = dumpname

    def get_dumpname(self):
        """return the name of the file with the offending batch or None"""

        return self._dumpname


# Local Variables:
# mode:python
# fill-column:80
# End:
