# -*- coding: utf-8 -*-
"""
Brute-force enumeration oracle.

Probabilities are computed by running the constructive definitions over
every outcome in a truncated outcome space, independently of the closed
forms in `traitalloc.prob`.

"""
import itertools
import logging
import math
from collections import Counter, defaultdict, namedtuple
from collections.abc import Mapping

import numpy as np
import pandas

from traitalloc.core import Trait, TraitAllocation, memb
from traitalloc.exceptions import DegenerateConstraintError, ValidationError
from traitalloc.labels import assemble_allocation, outcome_profile
from traitalloc.models import (DeFinettiMeasure, TruncationCaps,
                               poisson_cdf, poisson_logpmf)

logger = logging.getLogger(__name__)

Outcome = namedtuple('Outcome', 'xi xi_dust prob')
OutcomeTable = namedtuple('OutcomeTable', 'outcomes deficit')
OracleResult = namedtuple('OracleResult', 'prob error_bound reachable')


def _check_fits(model, caps):
    if not caps.fits(model):
        raise ValidationError(
            'Model of shape (K=%d, J=%d, dust levels=%d) exceeds caps %s' %
            (model.effective_shape() + (caps, )))


def _check_horizon(N, caps):
    if N > caps.horizon:
        raise ValidationError('Horizon %d exceeds the enumeration cap %d' %
                              (N, caps.horizon))


def enumerate_membership_outcomes(model, caps=None):
    """
    Per-index outcomes of a frequency model and their probabilities.

    Parameters
    ----------
    model : FrequencyModel
    caps : TruncationCaps
        Regular multiplicities are bounded by the model itself; dust counts
        are truncated at `caps.dust` per level.

    Returns
    -------
    OutcomeTable
        `outcomes` lists every positive-probability (xi, xi_dust) pair with
        dust counts <= caps.dust; `deficit` is the probability mass left
        out by the dust truncation.

    """
    caps = caps or TruncationCaps()
    _check_fits(model, caps)
    laws = model.column_laws()
    columns = [[(j, p) for j, p in enumerate(law) if p > 0] for law in laws]
    counts = np.arange(caps.dust + 1)
    dust = [[(d, p) for d, p in zip(
        counts, np.exp(poisson_logpmf(counts, rate))) if p > 0]
            for rate in model.dust_rates]
    outcomes = []
    for regular in itertools.product(*columns):
        p_regular = math.prod(p for _, p in regular)
        for extra in itertools.product(*dust):
            p = p_regular * math.prod(p for _, p in extra)
            if p > 0:
                outcomes.append(
                    Outcome(tuple(j for j, _ in regular),
                            tuple(int(d) for d, _ in extra), p))
    deficit = float(1.0 -
                    np.prod(poisson_cdf(caps.dust, model.dust_rates)))
    logger.debug('%d membership outcomes, truncation deficit %.3e',
                 len(outcomes), deficit)
    return OutcomeTable(outcomes, max(deficit, 0.0))


def _dust_exact(t, dust_cap):
    """True iff no index has more single-index traits at a level than
    the dust cap."""
    singles = Counter()
    for tau, c in t.items():
        if len(tau) == 1:
            singles[tau] += c
    return all(c <= dust_cap for c in singles.values())


def truncation_bound(t, deficit, dust_cap):
    """
    Upper bound on the truncation error of an oracle probability.

    Zero when every outcome sequence producing `t` lies inside the
    truncated space; otherwise the probability that some index leaves it.

    """
    if _dust_exact(t, dust_cap):
        return 0.0
    return float(1.0 - (1.0 - deficit)**t.horizon)


def is_reachable(model, t, caps):
    """
    True iff some outcome sequence within the caps can produce `t`.

    Only dust levels with a positive rate and regular levels with a
    positive probability in some column are used.

    """
    dust_levels = {
        j
        for j, rate in enumerate(model.dust_rates, 1) if rate > 0
    }
    regular_levels = {
        j
        for j in range(1, model.n_levels + 1) if model.theta[:, j - 1].any()
    }
    regular = 0
    for tau, c in t.items():
        levels = set(tau.values())
        j = max(levels)
        if len(tau) == 1 and j in dust_levels:
            regular += max(0, c - caps.dust)
            forced = c > caps.dust
        else:
            regular += c
            forced = True
        if forced and not levels <= regular_levels:
            return False
    return regular <= int(model.theta.any(axis=1).sum())


def _filtered(atoms, t):
    """Per-index candidate atoms whose membership profile matches `t`."""
    by_profile = defaultdict(list)
    for xi, xi_dust, p in atoms:
        by_profile[outcome_profile(xi, xi_dust)].append((xi, xi_dust, p))
    return [by_profile.get(memb(n, t), []) for n in range(1, t.horizon + 1)]


def _matching_mass(candidates, t):
    total = 0.0
    for draws in itertools.product(*candidates):
        if assemble_allocation([(xi, d) for xi, d, _ in draws]) == t:
            total += math.prod(p for _, _, p in draws)
    return total


def oracle_prob_frequency(model, t, caps=None):
    """
    Probability of `t` under a frequency model, by outcome enumeration.

    Parameters
    ----------
    model : FrequencyModel
    t : TraitAllocation
    caps : TruncationCaps

    Returns
    -------
    OracleResult
        `prob` is a lower bound on the exact probability, within
        `error_bound` of it. `reachable` is False when no outcome sequence
        within the caps can produce `t`; `prob` is then 0.

    """
    caps = caps or TruncationCaps()
    _check_horizon(t.horizon, caps)
    table = enumerate_membership_outcomes(model, caps)
    bound = truncation_bound(t, table.deficit, caps.dust)
    if not is_reachable(model, t, caps):
        logger.warning('%s cannot be produced within caps %s', t, caps)
        return OracleResult(0.0, bound, False)
    prob = _matching_mass(_filtered(table.outcomes, t), t)
    return OracleResult(prob, bound, True)


def oracle_prob_definetti(mu, t, horizon=None):
    """
    Probability of `t` under a finitely supported de Finetti measure.

    Parameters
    ----------
    mu : DeFinettiMeasure or mapping
        Outcome law; a plain mapping is validated first.
    t : TraitAllocation
    horizon : int, optional
        Evaluate as an allocation of [horizon]; allocations using an index
        beyond it have probability 0.

    """
    if not isinstance(mu, DeFinettiMeasure):
        mu = DeFinettiMeasure(mu)
    if horizon is not None:
        if any(tau.max_index > horizon for tau in t):
            return 0.0
        t = TraitAllocation(t, horizon=horizon)
    atoms = [(xi, d, p) for (xi, d), p in mu.items()]
    return _matching_mass(_filtered(atoms, t), t)


def induced_measure(model, caps=None, constraint=None):
    """
    De Finetti measure of a frequency model.

    The product law of the per-index outcomes, truncated by the caps and
    renormalized; with a constraint, conditioned on an accepted membership
    profile.

    Returns
    -------
    DeFinettiMeasure

    """
    table = enumerate_membership_outcomes(model, caps)
    atoms = [((o.xi, o.xi_dust), o.prob) for o in table.outcomes
             if constraint is None or constraint.accepts(
                 outcome_profile(o.xi, o.xi_dust))]
    total = math.fsum(p for _, p in atoms)
    if total <= 0:
        raise DegenerateConstraintError(
            'No accepted outcome for constraint %r' % (constraint, ))
    return DeFinettiMeasure([(k, p / total) for k, p in atoms])


class SupportTable(Mapping):
    """
    Probability table over the allocations of [N] produced by a model.

    Attributes
    ----------
    horizon : int
    deficit : float
        Probability mass not represented in the table.
    dust_cap : int

    """
    def __init__(self, probs, horizon, deficit, dust_cap):
        self._probs = dict(probs)
        self.horizon = horizon
        self.deficit = deficit
        self.dust_cap = dust_cap

    def __getitem__(self, t):
        return self._probs[t]

    def __iter__(self):
        return iter(sorted(self._probs, key=str))

    def __len__(self):
        return len(self._probs)

    def prob(self, t):
        """Probability of `t`, 0 outside the table."""
        return self._probs.get(t, 0.0)

    def total(self):
        """Total probability in the table."""
        return math.fsum(self._probs.values())

    def normalized(self):
        """Table rescaled to total probability one."""
        total = self.total()
        if total <= 0:
            raise DegenerateConstraintError('Empty probability table')
        return SupportTable({t: p / total
                             for t, p in self._probs.items()}, self.horizon,
                            self.deficit, self.dust_cap)

    def error_bound(self, t):
        """Truncation error bound for the probability of `t`."""
        if _dust_exact(t, self.dust_cap):
            return 0.0
        return self.deficit

    def to_frame(self):
        """DataFrame with columns `allocation` and `probability`."""
        return pandas.DataFrame(
            [(str(t), self._probs[t]) for t in self],
            columns=['allocation', 'probability'])

    def __repr__(self):
        return '%s(horizon=%d, size=%d, deficit=%.3e)' % (
            self.__class__.__name__, self.horizon, len(self), self.deficit)


def enumerate_support(model, N, caps=None, constraint=None):
    """
    Exhaustive probability table of a frequency model at horizon N.

    Parameters
    ----------
    model : FrequencyModel
    N : int
    caps : TruncationCaps
    constraint : ConstraintSet, optional
        Keep only outcome sequences whose membership profiles are all
        accepted (unnormalized).

    Returns
    -------
    SupportTable
        Probabilities sum to 1 - deficit (unconstrained tables).

    """
    caps = caps or TruncationCaps()
    _check_horizon(N, caps)
    table = enumerate_membership_outcomes(model, caps)
    outcomes = table.outcomes
    if constraint is not None:
        outcomes = [
            o for o in outcomes
            if constraint.accepts(outcome_profile(o.xi, o.xi_dust))
        ]
    logger.debug('Enumerating %d outcome sequences at N=%d',
                 len(outcomes)**N, N)
    probs = defaultdict(float)
    for draws in itertools.product(outcomes, repeat=N):
        t = assemble_allocation([(o.xi, o.xi_dust) for o in draws])
        probs[t] += math.prod(o.prob for o in draws)
    deficit = float(1.0 - (1.0 - table.deficit)**N)
    return SupportTable(probs, N, deficit, caps.dust)


def enumerate_traits(horizon, max_multiplicity):
    """All traits of [horizon] with multiplicities <= max_multiplicity."""
    traits = []
    for m in itertools.product(range(max_multiplicity + 1), repeat=horizon):
        if any(m):
            traits.append(Trait({n: j for n, j in enumerate(m, 1) if j}))
    return sorted(traits)


def enumerate_allocations(horizon, max_traits, max_multiplicity):
    """
    All trait allocations of [horizon] with at most `max_traits` traits
    (counted with multiplicity) and multiplicities <= max_multiplicity.

    Yields
    ------
    TraitAllocation

    """
    traits = enumerate_traits(horizon, max_multiplicity)
    for r in range(max_traits + 1):
        for combo in itertools.combinations_with_replacement(traits, r):
            yield TraitAllocation(combo, horizon=horizon)
