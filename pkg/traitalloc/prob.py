# -*- coding: utf-8 -*-
"""
Exchangeable trait probability functions.

The probability of an allocation under a frequency model is evaluated by
splitting it into dust and regular traits in every admissible way. Dust
counts are independent Poisson variables; regular traits are matched to
columns by injective assignments. Products are accumulated in log space.

"""
# pylint: disable=too-many-locals
import itertools
import logging
import math
from collections import Counter, namedtuple

import numpy as np
from scipy.special import gammaln, logsumexp

import traitalloc.defaults
from traitalloc.core import kappa, order
from traitalloc.exceptions import DegenerateConstraintError, ValidationError
from traitalloc.labels import outcome_profile
from traitalloc.models import ConstraintSet, FrequencyModel, poisson_logpmf
from traitalloc.oracle import enumerate_membership_outcomes

logger = logging.getLogger(__name__)

DustAssignment = namedtuple('DustAssignment', 'dust regular')
AcceptanceResult = namedtuple('AcceptanceResult', 'prob error_bound')
DeFinettiCheck = namedtuple('DeFinettiCheck', 'valid violation')


def dust_assignments(ordered, canonical=False):
    """
    Admissible dust/regular splits of an ordered allocation.

    A position can be dust only if its trait holds a single index; its
    dust level is the multiplicity of that index.

    Parameters
    ----------
    ordered : OrderedTraitAllocation
    canonical : bool
        Yield one split per distinct multiset of dust traits: within a run
        of equal traits, dust takes the leading positions.

    Yields
    ------
    DustAssignment
        `dust` maps each level j to the frozenset of dust positions at that
        level (0-based); `regular` is the frozenset of the other positions.

    """
    candidates = [k for k, tau in enumerate(ordered) if len(tau) == 1]
    everything = frozenset(range(len(ordered)))
    if canonical:
        runs = []
        for _, group in itertools.groupby(candidates,
                                          key=lambda k: ordered[k]):
            group = list(group)
            runs.append([group[:d] for d in range(len(group) + 1)])
        choices = (sum(pick, []) for pick in itertools.product(*runs))
    else:
        choices = (itertools.compress(candidates, mask)
                   for mask in itertools.product((0, 1),
                                                 repeat=len(candidates)))
    for chosen in choices:
        dust = {}
        for k in chosen:
            j = ordered[k].size
            dust.setdefault(j, set()).add(k)
        dust = {j: frozenset(ks) for j, ks in sorted(dust.items())}
        yield DustAssignment(dust,
                             everything - frozenset().union(*dust.values()))


def _column_logprob(model, tau, N):
    """log P(column k produces `tau`) for every column k."""
    laws = model.column_laws()
    with np.errstate(divide='ignore'):
        log_laws = np.log(laws)
    out = np.zeros(model.n_columns)
    absent = N - len(tau)
    for _, j in tau.items():
        if j > model.n_levels:
            return np.full(model.n_columns, -np.inf)
        out = out + log_laws[:, j]
    if absent:
        out = out + absent * log_laws[:, 0]
    return out


def _regular_logprob(model, traits, N):
    """
    log P(the regular traits are exactly `traits`).

    Sums over injective assignments of traits to columns with a dynamic
    program over the subsets of assigned traits, one column at a time,
    in O(K m 2**m).

    """
    K, m = model.n_columns, len(traits)
    if m > K:
        return -np.inf
    if m > traitalloc.defaults.max_regular_traits:
        raise ValidationError(
            '%d regular traits exceed the limit of %d' %
            (m, traitalloc.defaults.max_regular_traits))
    with np.errstate(divide='ignore'):
        idle = N * np.log(model.theta0) if N else np.zeros(K)
    if m == 0:
        return float(idle.sum())
    joins = np.array([_column_logprob(model, tau, N) for tau in traits])
    subsets = np.arange(2**m)
    # subsets without trait i, for every i
    free = [subsets[(subsets >> i) & 1 == 0] for i in range(m)]
    log_dp = np.full(2**m, -np.inf)
    log_dp[0] = 0.0
    for k in range(K):
        nxt = log_dp + idle[k]
        for i, s in enumerate(free):
            nxt[s | 1 << i] = np.logaddexp(nxt[s | 1 << i],
                                           log_dp[s] + joins[i, k])
        log_dp = nxt
    total = log_dp[-1]
    if np.isneginf(total):
        return -np.inf
    # equal traits are interchangeable among their columns
    log_ties = sum(gammaln(c + 1) for c in Counter(traits).values())
    return float(total - log_ties)


def _dust_logprob(model, counts, N):
    """log P(dust counts) for a dict (index, level) -> count."""
    J = model.n_dust_levels
    if any(j > J for _, j in counts):
        return -np.inf
    d = np.zeros((N, J), dtype=int)
    for (n, j), c in counts.items():
        d[n - 1, j - 1] = c
    rates = np.broadcast_to(model.dust_rates, (N, J))
    return float(poisson_logpmf(d, rates).sum())


def etpf_log_prob(model, t):
    """Natural log of `etpf_prob`."""
    N = t.horizon
    ordered = order(t)
    terms = []
    for split in dust_assignments(ordered, canonical=True):
        counts = Counter()
        for j, ks in split.dust.items():
            for k in ks:
                counts[(ordered[k].max_index, j)] += 1
        log_dust = _dust_logprob(model, counts, N)
        if np.isneginf(log_dust):
            continue
        regular = [ordered[k] for k in sorted(split.regular)]
        log_regular = _regular_logprob(model, regular, N)
        if np.isneginf(log_regular):
            continue
        terms.append(log_dust + log_regular)
    if not terms:
        return -np.inf
    return float(logsumexp(terms))


def etpf_prob(model, t):
    """
    Probability that a frequency model generates the allocation `t` of
    [N], N = t.horizon.

    Parameters
    ----------
    model : FrequencyModel
    t : TraitAllocation

    Returns
    -------
    float

    """
    return float(np.exp(etpf_log_prob(model, t)))


def ordered_prob(model, t):
    """Probability of each one of the kappa(t) uniform orderings of `t`."""
    return etpf_prob(model, t) / kappa(t)


def acceptance_prob(model, constraint, caps=None):
    """
    Probability that one index has an accepted membership profile.

    Returns
    -------
    AcceptanceResult
        `error_bound` bounds the dust truncation error; it is 0 when every
        accepted profile is no longer than the dust cap.

    """
    if constraint.kind == 'all':
        return AcceptanceResult(1.0, 0.0)
    table = enumerate_membership_outcomes(model, caps)
    prob = math.fsum(o.prob for o in table.outcomes
                     if constraint.accepts(outcome_profile(o.xi, o.xi_dust)))
    longest = constraint.max_profile_length
    caps_dust = caps.dust if caps is not None else traitalloc.defaults.max_dust
    exact = longest is not None and longest <= caps_dust
    return AcceptanceResult(prob, 0.0 if exact else table.deficit)


def cetpf_prob(model, constraint, t, caps=None):
    """
    Probability of `t` under the constrained frequency model.

    The unconstrained probability times the constraint indicators of every
    index, over a^N with a the per-index acceptance probability.

    Raises
    ------
    DegenerateConstraintError
        If the acceptance probability is 0.

    """
    a = acceptance_prob(model, constraint, caps).prob
    if a <= 0:
        raise DegenerateConstraintError(
            'Constraint %r has acceptance probability 0' % (constraint, ))
    if not constraint.admits(t):
        return 0.0
    return float(
        np.exp(etpf_log_prob(model, t) - t.horizon * np.log(a)))


def _weights(w, name):
    w = np.array(w, dtype=float).reshape(-1)
    if not np.all(np.isfinite(w)) or np.any(w <= 0):
        raise ValidationError('%r is not a valid %s vector' % (w, name))
    return w


def eppf_model(w0, w, normalize=False):
    """
    Frequency model and constraint generating a paintbox partition.

    Parameters
    ----------
    w0 : float
        Dust mass, the probability that an index starts a singleton block.
    w : sequence of float
        Block weights.
    normalize : bool
        Rescale (w0, w) to sum to one instead of rejecting them.

    Returns
    -------
    (FrequencyModel, ConstraintSet)

    """
    w = _weights(w, 'block weight')
    w0 = float(w0)
    if not np.isfinite(w0) or w0 < 0:
        raise ValidationError('%r is not a valid dust weight' % w0)
    total = w0 + w.sum()
    if normalize:
        if total <= 0:
            raise ValidationError('Weights sum to 0')
        w0, w = w0 / total, w / total
    elif abs(total - 1) > traitalloc.defaults.normalization_tolerance:
        raise ValidationError('Weights sum to %r, not 1' % total)
    theta = (w / (w + 1)).reshape(-1, 1)
    return FrequencyModel(theta, [w0]), ConstraintSet('partition')


def efpf_model(theta, dust_rate=0.0):
    """
    Frequency model generating feature allocations.

    Every membership has multiplicity 1: index n joins feature k with
    probability theta[k] and has a Poisson(dust_rate) number of singleton
    features of its own.

    Parameters
    ----------
    theta : sequence of float
        Feature probabilities in [0, 1].
    dust_rate : float

    Returns
    -------
    (FrequencyModel, ConstraintSet)
        The constraint accepts everything; the model cannot leave the
        feature allocations.

    """
    theta = np.array(theta, dtype=float).reshape(-1)
    if (not np.all(np.isfinite(theta)) or np.any(theta < 0)
            or np.any(theta > 1)):
        raise ValidationError('%r is not a valid feature probability vector' %
                              (theta, ))
    dust_rate = float(dust_rate)
    if not np.isfinite(dust_rate) or dust_rate < 0:
        raise ValidationError('%r is not a valid dust rate' % dust_rate)
    return (FrequencyModel(theta.reshape(-1, 1),
                           [dust_rate] if dust_rate else []),
            ConstraintSet('all'))


def evpf_model(w):
    """
    Frequency model and constraint of the vertex popularity graph model.

    Parameters
    ----------
    w : sequence of float
        Positive vertex weights, at least two.

    Returns
    -------
    (FrequencyModel, ConstraintSet)

    """
    w = _weights(w, 'vertex weight')
    if len(w) < 2:
        raise DegenerateConstraintError(
            'The vertex model needs at least 2 vertices, got %d' % len(w))
    theta = (w / (1 + w)).reshape(-1, 1)
    return FrequencyModel(theta), ConstraintSet('vertex')


def _atom_ok(family, xi, xi_dust):
    reg, dust = sum(xi), sum(xi_dust)
    if family == 'regular':
        return dust == 0
    if family == 'feature':
        return max(xi, default=0) <= 1 and not any(xi_dust[1:])
    if family == 'partition':
        return ((reg == 1 and dust == 0) or
                (reg == 0 and dust == 1 and xi_dust[0] == 1))
    # vertex
    ones = max(xi, default=0) <= 1
    return ((ones and reg == 2 and dust == 0)
            or (ones and reg == 1 and dust == 1 and xi_dust[0] == 1)
            or (reg == 0 and dust == 2 and xi_dust[0] == 2))


def validate_definetti(mu, family):
    """
    Check the support of a de Finetti measure against a family.

    Parameters
    ----------
    mu : DeFinettiMeasure
    family : str
        `regular` (no dust), `partition` (one regular column or one dust
        trait, at multiplicity 1), `feature` (multiplicities at most 1) or
        `vertex` (exactly two memberships, at multiplicity 1).

    Returns
    -------
    DeFinettiCheck
        `violation` is the first offending atom, None when valid.

    """
    if family not in ('regular', 'partition', 'feature', 'vertex'):
        raise ValidationError('%r is not a valid family' % (family, ))
    for xi, xi_dust in mu:
        if not _atom_ok(family, xi, xi_dust):
            return DeFinettiCheck(False, (xi, xi_dust))
    return DeFinettiCheck(True, None)

