#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# utils.py
# Description: Helper functions
# -----------------------------------------------------------------------------
#
# Started on <sáb 17-10-2026 09:14:02.730044512 (1792228442)>
#

"""
Helper functions
"""

# imports
# -----------------------------------------------------------------------------
import logging
import os

if __package__ is None or __package__ == '':
    import colors
else:
    from . import colors

# constants
# -----------------------------------------------------------------------------

# name of the root logger of the package. Modules log through children of it,
# e.g., 'cnngat.trainer'
LOGGER_NAME = 'cnngat'

# logging

LOG_FORMAT = '[%(color_lvlname_prefix)s %(levelname)-8s:%(color_suffix)s %(color_ascitime_prefix)s %(asctime)s | %(color_suffix)s %(color_name_prefix)s %(name)s%(color_suffix)s]: %(color_prefix)s %(message)s %(color_suffix)s'
LOG_COLOR_SPEC = {
    "ASCITIME" : {'foreground': "#008080"},
    "NAME" : {'foreground': "#00a0a0", 'italic': True},
    "DEBUG" : {'foreground': "#99ccff"},
    "INFO" : {'foreground': "#a0a020"},
    "WARNING" : {'foreground': "#20aa20", 'bold': True},
    "ERROR" : {'foreground': "#ff2020", 'bold': True},
    "CRITICAL" : {'foreground': "#ff0000", 'blink': True}
}

# errors
ERROR_OUTPUT_DIRECTORY = "The output directory '{0}' can not be created or is not writable"


# functions
# -----------------------------------------------------------------------------

# -----------------------------------------------------------------------------
# normalize_filename
#
# compute the normalized absolute path of the given filename making sure it ends
# in the specified suffix
# -----------------------------------------------------------------------------
def normalize_filename(filename: str, suffix: str):
    """compute the normalized absolute path of the given filename making sure it
       ends in the specified suffix

    """

    if not filename.endswith(suffix):
        filename = os.path.splitext(filename)[0] + suffix

    return os.path.abspath(os.path.expanduser(filename))


# -----------------------------------------------------------------------------
# get_output_directory
#
# make sure the given directory exists and is writable, creating it (and its
# parents) if necessary, and return its absolute path. If it is not possible an
# OSError is raised
# -----------------------------------------------------------------------------
def get_output_directory(dirname: str):
    """make sure the given directory exists and is writable, creating it (and its
       parents) if necessary, and return its absolute path. If it is not
       possible an OSError is raised

    """

    dirname = os.path.abspath(os.path.expanduser(dirname))
    try:
        os.makedirs(dirname, exist_ok=True)
    except OSError as exc:
        raise OSError(ERROR_OUTPUT_DIRECTORY.format(dirname)) from exc

    if not os.access(dirname, os.W_OK):
        raise OSError(ERROR_OUTPUT_DIRECTORY.format(dirname))

    return dirname


# -----------------------------------------------------------------------------
# setup_logger
#
# setup and configure the package logger. Only the first invocation installs a
# handler, later ones just update the level
# -----------------------------------------------------------------------------
def setup_logger(level=logging.WARNING):
    """setup and configure the package logger. Only the first invocation installs a
       handler, later ones just update the level

    """

    logger = logging.getLogger(LOGGER_NAME)
    logger.setLevel(level)

    if not logger.handlers:
        handler = logging.StreamHandler()

        # the filter is attached to the handler rather than the logger so that
        # records propagated from child loggers are decorated as well
        handler.addFilter(LoggerContextFilter(colors.colors_enabled(handler.stream)))
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        logger.addHandler(handler)

    return logger


# -----------------------------------------------------------------------------
# get_logger
#
# return the logger of the given module as a child of the package logger
# -----------------------------------------------------------------------------
def get_logger(module: str):
    """return the logger of the given module as a child of the package logger"""

    return logging.getLogger(LOGGER_NAME + '.' + module)


# -----------------------------------------------------------------------------
# LoggerContextFilter
#
# Creation of a context filter for the logger that adds color support
# -----------------------------------------------------------------------------
class LoggerContextFilter(logging.Filter):
    """
    Creation of a context filter for the logger that adds color support
    """

    def __init__(self, enabled=True):
        """colors are emitted only if enabled is true"""

        super().__init__()
        self._prefix = {key: colors.insert_prefix(enabled=enabled, **spec)
                        for key, spec in LOG_COLOR_SPEC.items()}
        self._suffix = colors.insert_suffix(enabled)

    def filter(self, record):

        # first inject the colors for all fields in the header
        record.color_lvlname_prefix = self._prefix.get(record.levelname, "")
        record.color_ascitime_prefix = self._prefix['ASCITIME']
        record.color_name_prefix = self._prefix['NAME']

        # choose the color as a function of the level of the log message
        record.color_prefix = self._prefix.get(record.levelname, "")
        record.color_suffix = self._suffix

        return True

# Local Variables:
# mode:python
# fill-column:80
# End:
