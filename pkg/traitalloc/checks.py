# -*- coding: utf-8 -*-
"""
Invariant suites.

Each check returns a `CheckResult` with the measured discrepancy. The
exact checks compare two computation paths over an enumerated support; the
statistical checks compare samplers with exact laws at a fixed
significance level.

"""
# pylint: disable=too-many-arguments,too-many-locals,unused-argument
import itertools
import logging
from collections import Counter, defaultdict, namedtuple
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from scipy import stats

import traitalloc.defaults
from traitalloc.core import (Permutation, kappa, mult_alloc, order,
                             permute_alloc, restrict_alloc, restrict_ordered,
                             restrict_trait, trait_less)
from traitalloc.models import ConstraintSet, TruncationCaps
from traitalloc.output import parse_alloc
from traitalloc.oracle import (enumerate_allocations, enumerate_support,
                               enumerate_traits, induced_measure,
                               oracle_prob_definetti)
from traitalloc.prob import cetpf_prob, etpf_prob
from traitalloc.sample import (RngState, sample_constrained,
                               sample_frequency, sample_whole_rejection,
                               uniform_order)

logger = logging.getLogger(__name__)

CheckResult = namedtuple('CheckResult', 'name passed discrepancy detail')

# allocations whose orderings are checked for uniformity
ORDERING_CASES = ('{{1},{2}}', '{{3,3},{3,3},{1}}')


def total_variation(a, b):
    """Total variation distance between two count (or probability) maps."""
    na, nb = sum(a.values()), sum(b.values())
    if not na or not nb:
        return 0.0 if na == nb else 1.0
    keys = set(a) | set(b)
    return 0.5 * sum(abs(a.get(k, 0) / na - b.get(k, 0) / nb) for k in keys)


def chi_square_pvalue(observed, probs):
    """
    Goodness-of-fit p-value of observed counts against a finite law.

    Categories with expected count below 5 are pooled. Observations outside
    the support of `probs` give a p-value of 0.

    """
    n = sum(observed.values())
    total = sum(probs.values())
    if any(k not in probs for k in observed):
        return 0.0
    obs, exp = [], []
    pooled_obs = pooled_exp = 0.0
    for k, p in probs.items():
        e = n * p / total
        if e >= 5:
            obs.append(observed.get(k, 0))
            exp.append(e)
        else:
            pooled_obs += observed.get(k, 0)
            pooled_exp += e
    if pooled_exp > 0:
        obs.append(pooled_obs)
        exp.append(pooled_exp)
    if len(obs) < 2:
        return 1.0
    exp = np.array(exp) * n / np.sum(exp)
    return float(stats.chisquare(obs, exp).pvalue)


def _permutations(N):
    return [Permutation.from_images(p) for p in itertools.permutations(
        range(1, N + 1))]


def check_exchangeability(model, N, caps):
    """P(pi t) = P(t) for every permutation of [N], oracle and formula."""
    table = enumerate_support(model, N, caps)
    worst_oracle = worst_formula = 0.0
    for t in table:
        if table.error_bound(t):
            continue
        p_formula = etpf_prob(model, t)
        for pi in _permutations(N):
            s = permute_alloc(pi, t)
            worst_oracle = max(worst_oracle, abs(table.prob(s) - table[t]))
            worst_formula = max(worst_formula,
                                abs(etpf_prob(model, s) - p_formula))
    passed = (worst_oracle <= traitalloc.defaults.oracle_tolerance
              and worst_formula <= traitalloc.defaults.formula_tolerance)
    return CheckResult('exchangeability', passed,
                       max(worst_oracle, worst_formula),
                       'oracle %.3e, formula %.3e over %d allocations' %
                       (worst_oracle, worst_formula, len(table)))


def check_etpf_factorization(model, N, caps):
    """P(t) / kappa(t) depends only on the multiplicity profile."""
    groups = defaultdict(list)
    table = enumerate_support(model, N, caps)
    for t, p in table.items():
        if not table.error_bound(t):
            groups[mult_alloc(t)].append(p / kappa(t))
    worst = 0.0
    for ratios in groups.values():
        ref = max(ratios)
        if ref > 0:
            worst = max(worst, (ref - min(ratios)) / ref)
    return CheckResult('etpf_factorization',
                       worst <= traitalloc.defaults.oracle_tolerance, worst,
                       '%d multiplicity profiles' % len(groups))


def check_formula_vs_oracle(model, N, caps):
    """etpf_prob agrees with the enumeration oracle."""
    table = enumerate_support(model, N, caps)
    worst = 0.0
    for t, p in table.items():
        excess = abs(etpf_prob(model, t) - p) - table.error_bound(t)
        worst = max(worst, excess)
    return CheckResult('formula_vs_oracle',
                       worst <= traitalloc.defaults.formula_tolerance,
                       max(worst, 0.0), '%d allocations' % len(table))


def check_cetpf_vs_oracle(model, constraint, N, caps):
    """cetpf_prob agrees with the renormalized constrained oracle table."""
    table = enumerate_support(model, N, caps, constraint=constraint)
    law = table.normalized()
    worst = 0.0
    for t, p in law.items():
        excess = (abs(cetpf_prob(model, constraint, t, caps) - p) -
                  table.error_bound(t) - table.deficit)
        worst = max(worst, excess)
    return CheckResult('cetpf_vs_oracle',
                       worst <= traitalloc.defaults.formula_tolerance,
                       max(worst, 0.0), '%d allocations' % len(table))


def check_definetti_agreement(model, N, caps):
    """The oracle of the induced de Finetti measure agrees with the
    frequency oracle."""
    table = enumerate_support(model, N, caps)
    mu = induced_measure(model, caps)
    scale = 1.0 - table.deficit
    worst = 0.0
    for t, p in table.items():
        worst = max(worst, abs(oracle_prob_definetti(mu, t) * scale - p))
    return CheckResult('definetti_agreement',
                       worst <= traitalloc.defaults.oracle_tolerance, worst,
                       '%d allocations' % len(table))


def check_ordering_consistency(horizon, max_traits, max_multiplicity):
    """Ordering commutes with restriction over an enumerated corpus."""
    failures = 0
    count = 0
    for t in enumerate_allocations(horizon, max_traits, max_multiplicity):
        ordered = order(t)
        for M in range(horizon + 1):
            count += 1
            if order(restrict_alloc(t, M)) != restrict_ordered(ordered, M):
                failures += 1
    return CheckResult('ordering_consistency', failures == 0, failures,
                       '%d (allocation, M) pairs' % count)


def check_order_preservation(horizon, max_multiplicity):
    """Restriction preserves the lexicographic order of traits."""
    traits = enumerate_traits(horizon, max_multiplicity)
    failures = 0
    for tau, omega in itertools.combinations(traits, 2):
        for M in range(horizon + 1):
            a, b = restrict_trait(tau, M), restrict_trait(omega, M)
            if trait_less(b, a):
                failures += 1
    return CheckResult('order_preservation', failures == 0, failures,
                       '%d traits' % len(traits))


def check_rejection_equivalence(model, constraint, N, draws, caps, rng):
    """Per-index and whole-allocation rejection sample the same law."""
    a_rng, b_rng = rng.split(2)
    per_index = Counter(
        sample_constrained(model, constraint, N, a_rng, caps=caps)
        for _ in range(draws))
    whole = Counter(
        sample_whole_rejection(model, constraint, N, b_rng)
        for _ in range(draws))
    tv = total_variation(per_index, whole)
    # sampling noise of TV shrinks as 1/sqrt(draws)
    scale = traitalloc.defaults.total_variation_draws / max(draws, 1)
    limit = traitalloc.defaults.max_total_variation * max(
        1.0, np.sqrt(scale))
    table = enumerate_support(model, N, caps, constraint=constraint)
    pvalue = chi_square_pvalue(per_index, dict(table.items()))
    passed = (tv <= limit
              and pvalue > traitalloc.defaults.significance)
    return CheckResult('rejection_equivalence', passed, tv,
                       'TV %.4f, chi-square p %.4f' % (tv, pvalue))


def check_sampler_calibration(model, N, draws, caps, rng):
    """sample_frequency matches the enumerated law."""
    table = enumerate_support(model, N, caps)
    observed = Counter(sample_frequency(model, N, rng) for _ in range(draws))
    missing = sum(c for t, c in observed.items() if t not in table)
    if missing and table.deficit <= 0:
        return CheckResult('sampler_calibration', False, 1.0,
                           '%d draws outside the support' % missing)
    observed = Counter({t: c for t, c in observed.items() if t in table})
    pvalue = chi_square_pvalue(observed, dict(table.items()))
    return CheckResult('sampler_calibration',
                       pvalue > traitalloc.defaults.significance, 1 - pvalue,
                       'chi-square p %.4f over %d draws' % (pvalue, draws))


def check_uniform_ordering(t, draws, rng):
    """Uniform orderings of `t` are uniform over its kappa(t) orderings."""
    observed = Counter(uniform_order(t, rng) for _ in range(draws))
    k = kappa(t)
    orderings = {
        seq: 1.0
        for seq in set(itertools.permutations(order(t).sequence))
    }
    observed = Counter({tuple(o): c for o, c in observed.items()})
    pvalue = chi_square_pvalue(observed, orderings)
    passed = len(orderings) == k and pvalue > traitalloc.defaults.significance
    return CheckResult('uniform_ordering %s' % t, passed, 1 - pvalue,
                       '%d orderings, chi-square p %.4f' % (k, pvalue))


def check_constraint_closure(model, constraint, N, draws, caps, rng):
    """Every constrained sample is admitted by the constraint."""
    rejected = 0
    for _ in range(draws):
        if not constraint.admits(
                sample_constrained(model, constraint, N, rng, caps=caps)):
            rejected += 1
    table = enumerate_support(model, N, caps, constraint=constraint)
    rejected += sum(1 for t in table if not constraint.admits(t))
    return CheckResult('constraint_closure', rejected == 0, rejected,
                       '%d draws, %d exact allocations' % (draws, len(table)))


def build_suite(model,
                constraint=None,
                N=traitalloc.defaults.check_horizon,
                draws=traitalloc.defaults.check_draws,
                caps=None):
    """
    Named checks for a model, as (name, callable taking an RngState).

    Ordering checks run over allocations of [min(N, 3)] with at most 3
    traits and multiplicities at most 2.

    """
    caps = caps or TruncationCaps()
    constraint = constraint or ConstraintSet('all')
    corpus = min(N, 3)
    suite = [
        ('exchangeability',
         lambda rng: check_exchangeability(model, N, caps)),
        ('etpf_factorization',
         lambda rng: check_etpf_factorization(model, N, caps)),
        ('formula_vs_oracle',
         lambda rng: check_formula_vs_oracle(model, N, caps)),
        ('definetti_agreement',
         lambda rng: check_definetti_agreement(model, N, caps)),
        ('ordering_consistency',
         lambda rng: check_ordering_consistency(corpus, 3, 2)),
        ('order_preservation',
         lambda rng: check_order_preservation(corpus, 2)),
        ('sampler_calibration',
         lambda rng: check_sampler_calibration(model, N, draws, caps, rng)),
    ]
    for s in ORDERING_CASES:
        t = parse_alloc(s)
        suite.append(('uniform_ordering %s' % s,
                      lambda rng, t=t: check_uniform_ordering(t, draws, rng)))
    if constraint.kind != 'all':
        suite += [
            ('cetpf_vs_oracle', lambda rng: check_cetpf_vs_oracle(
                model, constraint, N, caps)),
            ('rejection_equivalence', lambda rng: check_rejection_equivalence(
                model, constraint, N, draws, caps, rng)),
            ('constraint_closure', lambda rng: check_constraint_closure(
                model, constraint, N, draws, caps, rng)),
        ]
    return suite


def run_checks(suite, seed=traitalloc.defaults.seed, jobs=1):
    """
    Run a suite of checks.

    Each check gets its own RngState split from `seed`, so results do not
    depend on `jobs`.

    Returns
    -------
    list of CheckResult
        In suite order.

    """
    rngs = RngState(seed).split(len(suite))

    def run(item):
        (name, check), rng = item
        logger.info('Running %s', name)
        result = check(rng)
        logger.info('%s: %s (%s)', name, 'pass' if result.passed else 'FAIL',
                    result.detail)
        return result

    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(run, zip(suite, rngs)))
