#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# __init__.py
# Description: initialization file
# -----------------------------------------------------------------------------
#

"""
init file
"""


# Local Variables:
# mode:python
# fill-column:80
# End:
