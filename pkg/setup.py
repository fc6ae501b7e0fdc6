#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# setup.py
# Description: cnngat setup file
# -----------------------------------------------------------------------------
#

"""
cnngat setup file
"""

import setuptools

# import the version file
import sys
sys.path.insert(1, 'cnngat/')
import cnngatversion

with open("README.md", "r") as fh:
    long_description = fh.read()

setuptools.setup(
    name="cnngat",
    version=cnngatversion.__version__,
    author=cnngatversion.__author__,
    author_email=cnngatversion.__email__,
    description=cnngatversion.__description__,
    long_description=long_description,
    long_description_content_type="text/markdown",
    license='GNU General Public License v3 (GPLv3)',
    keywords="graph-attention-networks convolutional-neural-networks affinity-graphs",
    packages=setuptools.find_packages(exclude=["tests"]),
    entry_points={
        "console_scripts": [
            "cnngat = cnngat.cnngat:main"
        ]
    },
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: GNU General Public License v3 (GPLv3)",
        "Operating System :: OS Independent",
    ],
    install_requires = [
        "setuptools>=42",
        "wheel",
        "numpy>=1.20",
        "scipy>=1.6",
        "xlsxwriter>=1.3.7",
        "pyexcel>=0.6.6"
    ],
    extras_require={
        "tests": [
            "pytest>=7.0",
            "hypothesis>=6.0"
        ]
    },
    python_requires='>=3.8',
)

# Local Variables:
# mode:python
# fill-column:80
# End:
