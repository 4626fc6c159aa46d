# -*- coding: utf-8 -*-
"""traitalloc package info"""
__title__ = 'traitalloc'
__version__ = '0.1.0'
__author__ = 'Simone Marsili'
__summary__ = ('Exchangeable trait allocations: samplers, probability '
               'functions and exact oracles')
__url__ = 'https://github.com/simomarsili/traitalloc'
__email__ = 'simo.marsili@gmail.com'
__license__ = 'BSD 3-Clause'
__copyright__ = 'Copyright (c) 2020, Simone Marsili'
__classifiers__ = [
    'Development Status :: 3 - Alpha',
    'License :: OSI Approved :: BSD License',
    'Programming Language :: Python :: 3',
    'Topic :: Scientific/Engineering :: Mathematics',
]
