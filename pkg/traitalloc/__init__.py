# -*- coding: utf-8 -*-
"""Exchangeable trait allocations: combinatorics, samplers, probabilities."""
import traitalloc.defaults
from traitalloc.core import (Permutation, Trait, TraitAllocation, kappa,
                             memb, order, restrict_alloc)
from traitalloc.models import ConstraintSet, FrequencyModel, TruncationCaps
from traitalloc.package import __title__, __version__
from traitalloc.sample import RngState

SEED = traitalloc.defaults.seed
