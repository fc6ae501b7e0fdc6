#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# colors.py
# Description: term color support
# -----------------------------------------------------------------------------
#

"""
term color support
"""

# imports
# -----------------------------------------------------------------------------
import io
import os
import re
import sys

# constants
# -----------------------------------------------------------------------------
PREFIX = "\033["
FOREGROUND_PREFIX = "38;2;"
BACKGROUND_PREFIX = "48;2;"
BOLD_PREFIX = "1"
ITALIC_PREFIX = "3"
UNDERLINE_PREFIX = "4"
BLINK_PREFIX = "5"
SUFFIX = "\033[0m"

RE_COLORMASK = re.compile(r'#(?P<red>[a-fA-F0-9]{2})(?P<green>[a-fA-F0-9]{2})(?P<blue>[a-fA-F0-9]{2})$')


# -----------------------------------------------------------------------------
# colors_enabled
#
# return true if control codes should be emitted to the given stream. They are
# suppressed when the stream is not a terminal or when the environment variable
# NO_COLOR is set, so that redirected logs and reports stay clean
# -----------------------------------------------------------------------------
def colors_enabled(stream=None):
    """return true if control codes should be emitted to the given stream. They are
       suppressed when the stream is not a terminal or when the environment
       variable NO_COLOR is set, so that redirected logs and reports stay clean

    """

    stream = sys.stderr if stream is None else stream
    if os.getenv("NO_COLOR"):
        return False
    return hasattr(stream, "isatty") and stream.isatty()


# -----------------------------------------------------------------------------
# extract_components
#
# return the red, green and blue components from the color mask which should be
# given as a string with the format "#rrggbb". If it was not possible to
# properly parse the string, then None is returned instead
# -----------------------------------------------------------------------------
def extract_components(mask):
    """return the red, green and blue components from the color mask which should be
       given as a string with the format "#rrggbb". If it was not possible to
       properly parse the string, then None is returned instead

    """

    match = RE_COLORMASK.match(mask)
    if not match:
        return None

    return (int(match.group('red'), 16),
            int(match.group('green'), 16),
            int(match.group('blue'), 16))


# -----------------------------------------------------------------------------
# insert_prefix
#
# returns the combination of ascii control codes necessary to reproduce the
# given foreground and background colors along with the specified effects. If
# enabled is false the empty string is returned
# -----------------------------------------------------------------------------
def insert_prefix(foreground=None, background=None,
                  bold=False, italic=False, underline=False, blink=False,
                  enabled=True):
    """returns the combination of ascii control codes necessary to reproduce the
       given foreground and background colors along with the specified effects.
       If enabled is false the empty string is returned

    """

    if not enabled:
        return ""

    # collect all codes and join them with semicolons
    codes = []
    for mask, prefix in ((foreground, FOREGROUND_PREFIX),
                         (background, BACKGROUND_PREFIX)):
        components = extract_components(mask) if mask else None
        if components:
            codes.append(prefix + ';'.join(str(icomponent) for icomponent in components))

    for effect, code in ((bold, BOLD_PREFIX), (italic, ITALIC_PREFIX),
                         (underline, UNDERLINE_PREFIX), (blink, BLINK_PREFIX)):
        if effect:
            codes.append(code)

    if not codes:
        return ""
    return PREFIX + ';'.join(codes) + 'm'


# -----------------------------------------------------------------------------
# insert_suffix
#
# returns the suffix used to terminate any combination of ascii control codes
# -----------------------------------------------------------------------------
def insert_suffix(enabled=True):
    """returns the suffix used to terminate any combination of ascii control
       codes

    """

    return SUFFIX if enabled else ""


# -----------------------------------------------------------------------------
# cprint
#
# print extended with color support. Unlike the builtin print, the output
# stream can be given, and colors are emitted only if the stream supports them
# -----------------------------------------------------------------------------
def cprint(*objects, sep=' ', end='\n', file=None,
           foreground=None, background=None,
           bold=False, italic=False, underline=False):
    """print extended with color support. Unlike the builtin print, the output
       stream can be given, and colors are emitted only if the stream supports
       them

    """

    stream = sys.stdout if file is None else file

    # first compute the text ignoring colors
    buffer = io.StringIO()
    print(*objects, sep=sep, end='', file=buffer)

    enabled = colors_enabled(stream)
    prefix = insert_prefix(foreground, background, bold, italic, underline,
                           enabled=enabled)
    suffix = insert_suffix(enabled) if prefix else ""

    print(prefix + buffer.getvalue() + suffix, sep='', end=end, file=stream)


# Local Variables:
# mode:python
# fill-column:80
# End:
