# -*- coding: utf-8 -*-
"""
Seeded samplers.

Every sampler call consumes one draw of an `RngState`. Within a draw, index
n gets its own generator seeded by (seed, draw, n), so the outcome of index
n does not depend on the horizon: sampling at N and restricting to M gives
the allocation sampled at M.

"""
import functools
import logging

import numpy as np
from numpy.random import SeedSequence

import traitalloc.defaults
from traitalloc.core import (OrderedTraitAllocation, check_count,
                             check_prefix, order, restrict_ordered)
from traitalloc.exceptions import (DegenerateConstraintError,
                                   RetryExhaustedError, ValidationError)
from traitalloc.labels import assemble_allocation, outcome_profile
from traitalloc.models import DeFinettiMeasure, FrequencyModel, TruncationCaps
from traitalloc.prob import acceptance_prob

logger = logging.getLogger(__name__)

_MASK64 = 2**64 - 1


class Draw:
    """Generators of a single sampler call."""

    __slots__ = ('seed', 'draw')

    def __init__(self, seed, draw):
        self.seed = seed
        self.draw = draw

    def index_rng(self, n):
        """Generator of data index n (n >= 1)."""
        return np.random.default_rng(SeedSequence([self.seed, self.draw,
                                                      n]))

    def aux_rng(self):
        """Generator for draws not tied to a data index."""
        return np.random.default_rng(SeedSequence([self.seed, self.draw,
                                                      0]))


class RngState:
    """
    Reproducible random state.

    Parameters
    ----------
    seed : int
        Nonnegative seed, reduced to 64 bits.

    """
    def __init__(self, seed=traitalloc.defaults.seed):
        seed = check_count(seed, name='seed')
        self.seed = seed & _MASK64
        self.draws = 0

    def next_draw(self):
        """Generators of the next sampler call."""
        draw = Draw(self.seed, self.draws)
        self.draws += 1
        return draw

    def split(self, n):
        """`n` independent states derived from this one."""
        children = SeedSequence(self.seed).spawn(n)
        return [
            RngState(int(c.generate_state(1, np.uint64)[0]))
            for c in children
        ]

    def __repr__(self):
        return '%s(seed=%d, draws=%d)' % (self.__class__.__name__, self.seed,
                                          self.draws)


def poisson_inversion(gen, rate):
    """
    Poisson variate by inversion of the cdf.

    Used below `defaults.poisson_inversion_limit`; larger rates fall back to
    the generator's own Poisson sampler.

    """
    if rate >= traitalloc.defaults.poisson_inversion_limit:
        return int(gen.poisson(rate))
    u = gen.random()
    k = 0
    p = np.exp(-rate)
    cum = p
    while u > cum and p > 0:
        k += 1
        p *= rate / k
        cum += p
    return k


def _draw_outcome(model, gen):
    """One (xi, xi_dust) outcome of a frequency model."""
    cum = np.cumsum(model.column_laws(), axis=1)
    u = gen.random(model.n_columns)
    xi = (u[:, None] >= cum[:, :-1]).sum(axis=1)
    xi_dust = [poisson_inversion(gen, rate) for rate in model.dust_rates]
    return tuple(int(j) for j in xi), tuple(xi_dust)


def sample_outcomes(model, N, rng):
    """Per-index outcomes of a frequency model for indices 1..N."""
    N = check_count(N, name='horizon')
    draw = rng.next_draw()
    return [_draw_outcome(model, draw.index_rng(n)) for n in range(1, N + 1)]


def sample_frequency(model, N, rng):
    """
    Sample the allocation of [N] generated by a frequency model.

    Parameters
    ----------
    model : FrequencyModel
    N : int
    rng : RngState

    Returns
    -------
    TraitAllocation

    """
    return assemble_allocation(sample_outcomes(model, N, rng))


def sample_definetti(mu, N, rng):
    """
    Sample the allocation of [N] generated by a de Finetti measure.

    Each index draws an atom (xi, xi_dust) of `mu` independently.

    """
    if not isinstance(mu, DeFinettiMeasure):
        mu = DeFinettiMeasure(mu)
    N = check_count(N, name='horizon')
    atoms = list(mu)
    cum = np.cumsum([mu[a] for a in atoms])
    draw = rng.next_draw()
    outcomes = []
    for n in range(1, N + 1):
        u = draw.index_rng(n).random() * cum[-1]
        k = min(int(np.searchsorted(cum, u, side='right')), len(atoms) - 1)
        outcomes.append(atoms[k])
    return assemble_allocation(outcomes)


def sample_mixture(hook, N, rng):
    """
    Sample from a frequency model with random parameters.

    Parameters
    ----------
    hook : callable
        Takes a numpy Generator and returns a FrequencyModel.
    N : int
    rng : RngState

    Returns
    -------
    (FrequencyModel, TraitAllocation)

    """
    N = check_count(N, name='horizon')
    draw = rng.next_draw()
    model = hook(draw.aux_rng())
    if not isinstance(model, FrequencyModel):
        raise ValidationError('%r is not a valid frequency model' % (model, ))
    logger.debug('Mixture draw %d: %r', draw.draw, model)
    outcomes = [
        _draw_outcome(model, draw.index_rng(n)) for n in range(1, N + 1)
    ]
    return model, assemble_allocation(outcomes)


@functools.lru_cache(maxsize=64)
def _acceptance(model, constraint, caps):
    return acceptance_prob(model, constraint, caps)


def _precheck(model, constraint, caps):
    if not caps.fits(model):
        logger.debug('Model exceeds caps %s, skipping acceptance check', caps)
        return
    result = _acceptance(model, constraint, caps)
    if result.prob <= 0 and result.error_bound <= 0:
        raise DegenerateConstraintError(
            'Constraint %r has acceptance probability 0' % (constraint, ))


def sample_constrained_outcomes(model,
                                constraint,
                                N,
                                rng,
                                max_retries=traitalloc.defaults.max_retries,
                                caps=None):
    """
    Per-index outcomes of a constrained frequency model.

    Each index redraws its outcome until its membership profile is
    accepted by `constraint`.

    Raises
    ------
    DegenerateConstraintError
        If the acceptance probability is 0 (when the model fits `caps`).
    RetryExhaustedError
        If some index is rejected `max_retries` times.

    """
    N = check_count(N, name='horizon')
    if constraint.kind != 'all':
        _precheck(model, constraint, caps or TruncationCaps())
    draw = rng.next_draw()
    outcomes = []
    rejected = 0
    for n in range(1, N + 1):
        gen = draw.index_rng(n)
        for _ in range(max_retries):
            xi, xi_dust = _draw_outcome(model, gen)
            if constraint.accepts(outcome_profile(xi, xi_dust)):
                outcomes.append((xi, xi_dust))
                break
            rejected += 1
        else:
            raise RetryExhaustedError(n, max_retries)
    logger.debug('%d rejected outcomes over %d indices', rejected, N)
    return outcomes


def sample_constrained(model,
                       constraint,
                       N,
                       rng,
                       max_retries=traitalloc.defaults.max_retries,
                       caps=None):
    """
    Sample the allocation of [N] generated by a constrained frequency model.

    Every index of the returned allocation has an accepted membership
    profile.

    """
    return assemble_allocation(
        sample_constrained_outcomes(model, constraint, N, rng, max_retries,
                                    caps))


def sample_whole_rejection(model,
                           constraint,
                           N,
                           rng,
                           max_retries=traitalloc.defaults.max_retries):
    """
    Sample unconstrained allocations of [N] until one is admitted.

    Raises
    ------
    RetryExhaustedError
        After `max_retries` rejected allocations.

    """
    for attempt in range(max_retries):
        t = sample_frequency(model, N, rng)
        if constraint.admits(t):
            logger.debug('Accepted after %d rejections', attempt)
            return t
    raise RetryExhaustedError(None, max_retries)


def _tag_order(traits, draw):
    tags = draw.aux_rng().random(len(traits))
    return [traits[k] for k in np.argsort(tags, kind='stable')]


def uniform_order(t, rng):
    """
    Uniformly random ordering of the traits of `t`.

    Each trait of the lexicographic ordering gets an independent uniform
    tag; traits are sorted by tag.

    Returns
    -------
    OrderedTraitAllocation

    """
    traits = _tag_order(order(t).sequence, rng.next_draw())
    return OrderedTraitAllocation(traits, horizon=t.horizon)


def uniform_order_prefix(prefix, rng):
    """
    Consistent uniform orderings of a prefix t_1, ..., t_L.

    The tags drawn for the traits of t_L order every element, so that
    element N restricted to [M] is element M.

    Returns
    -------
    tuple of OrderedTraitAllocation

    """
    prefix = check_prefix(prefix)
    if not prefix:
        return ()
    full = OrderedTraitAllocation(_tag_order(
        order(prefix[-1]).sequence, rng.next_draw()),
                                  horizon=len(prefix))
    return tuple(restrict_ordered(full, n) for n in range(1, len(prefix) + 1))
