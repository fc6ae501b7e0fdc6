#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# cnngatversion.py
# Description: Version information and other admin data
# -----------------------------------------------------------------------------
#
# Started on <sáb 17-10-2026 09:02:11.512330914 (1792227731)>
#

"""
Version information and other admin data
"""

__version__ = "1.0.0"
__author__ = "cnngat developers"
__email__ = "cnngat@users.noreply.github.com"
__description__ = "Inductive end-to-end CNN/graph-attention classification over affinity graphs"

# Local Variables:
# mode:python
# fill-column:80
# End:
