#!/usr/bin/env python
# coding: utf-8

# Distributed under the terms of the Modified BSD License.

#-----------------------------------------------------------------------------
# Minimal Python version sanity check
#-----------------------------------------------------------------------------
from __future__ import print_function

import os
import sys

v = sys.version_info
if v[:2] < (3, 7):
    error = "ERROR: divlattice requires Python version 3.7 or above."
    print(error, file=sys.stderr)
    sys.exit(1)

# At least we're on the python version we need, move on.

from setuptools import setup

pjoin = os.path.join
here = os.path.abspath(os.path.dirname(__file__))

# Get the current package version.
version_ns = {}
with open(pjoin(here, 'divlattice', '_version.py')) as f:
    exec(f.read(), {}, version_ns)


setup_args = dict(
    name                = 'divlattice',
    packages            = ['divlattice', 'divlattice.tests'],
    package_data        = {'divlattice': ['data/*.json']},
    version             = version_ns['__version__'],
    description         = """divlattice: exact intersection theory on divisor lattices of normal surfaces.""",
    long_description    = "Zariski decompositions, chain-connectedness, Mumford pull-backs and Reider-type "
                          "criteria for adjoint linear systems, computed with exact rationals.",
    license             = "BSD",
    platforms           = "Linux, Mac OS X",
    keywords            = ['Algebraic geometry', 'Surfaces', 'Intersection theory'],
    classifiers         = [
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: BSD License',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
    entry_points        = {
        'console_scripts': ['divlattice = divlattice.app:main'],
    },
    extras_require      = {
        'test': ['pytest'],
    },
)

# setuptools requirements
setup_args['install_requires'] = install_requires = []
with open(pjoin(here, 'requirements.txt')) as f:
    for line in f.readlines():
        req = line.strip()
        if not req or req.startswith(('-e', '#')):
            continue
        install_requires.append(req)


def main():
    setup(**setup_args)

if __name__ == '__main__':
    main()
