# -*- coding: utf-8 -*-
"""Model parameterizations: frequency models, de Finetti measures,
constraint sets and truncation caps."""
# pylint: disable=too-many-return-statements
import logging
import numbers
from collections import namedtuple
from collections.abc import Mapping

import numpy as np
from scipy import stats

import traitalloc.defaults
from traitalloc.core import memb
from traitalloc.exceptions import ConfigError, ValidationError

logger = logging.getLogger(__name__)


def _nonneg_int(x, name):
    if isinstance(x, bool) or not isinstance(x, numbers.Integral) or x < 0:
        raise ValidationError('%r is not a valid %s' % (x, name))
    return int(x)


def poisson_logpmf(counts, rates):
    """Poisson log-pmf, with rate 0 meaning a point mass at 0."""
    counts, rates = np.broadcast_arrays(np.asarray(counts),
                                           np.asarray(rates, dtype=float))
    positive = rates > 0
    out = stats.poisson.logpmf(counts, np.where(positive, rates, 1.0))
    return np.where(positive, out,
                       np.where(counts == 0, 0.0, -np.inf))


def poisson_cdf(k, rates):
    """Poisson cdf at `k`, with rate 0 meaning a point mass at 0."""
    rates = np.asarray(rates, dtype=float)
    positive = rates > 0
    return np.where(positive,
                       stats.poisson.cdf(k, np.where(positive, rates, 1.0)),
                       1.0)


def _strip(v):
    """Tuple of ints without trailing zeros."""
    v = [_nonneg_int(x, 'multiplicity') for x in v]
    while v and v[-1] == 0:
        v.pop()
    return tuple(v)


class TruncationCaps(
        namedtuple('TruncationCaps', 'columns multiplicity dust horizon')):
    """
    Caps of the enumerated outcome spaces.

    Attributes
    ----------
    columns : int
        Maximum number of regular columns K.
    multiplicity : int
        Maximum multiplicity J; also bounds the dust levels.
    dust : int
        Maximum number D of dust traits per index and level.
    horizon : int
        Largest N handled by exhaustive enumeration.

    """
    __slots__ = ()

    def __new__(cls,
                columns=traitalloc.defaults.max_regular_columns,
                multiplicity=traitalloc.defaults.max_multiplicity,
                dust=traitalloc.defaults.max_dust,
                horizon=traitalloc.defaults.max_horizon):
        return super().__new__(cls, _nonneg_int(columns, 'column cap'),
                               _nonneg_int(multiplicity, 'multiplicity cap'),
                               _nonneg_int(dust, 'dust cap'),
                               _nonneg_int(horizon, 'horizon cap'))

    @classmethod
    def from_string(cls, s):
        """Parse caps from "K,J,D" or "K,J,D,N"."""
        fields = [f.strip() for f in s.split(',')]
        if len(fields) not in (3, 4):
            raise ValidationError('%r is not a valid caps string (K,J,D[,N])' %
                                  s)
        try:
            values = [int(f) for f in fields]
        except ValueError as e:
            raise ValidationError('%r is not a valid caps string' % s) from e
        return cls(*values)

    def __str__(self):
        return '%d,%d,%d,%d' % self

    def fits(self, model):
        """True iff the effective shape of `model` is within the caps."""
        n_columns, n_levels, n_dust = model.effective_shape()
        return (n_columns <= self.columns and n_levels <= self.multiplicity
                and n_dust <= self.multiplicity)


class FrequencyModel:
    """
    Frequency model with fixed parameters.

    Index n joins regular column k with multiplicity j with probability
    theta[k, j - 1] (independently across columns and indices) and has a
    Poisson(dust_rates[j - 1]) number of dust traits at multiplicity j.

    Parameters
    ----------
    theta : array_like, shape (K, J)
        theta[k, j - 1] is the probability of multiplicity j in column k.
        Rows must sum to at most 1.
    dust_rates : array_like, shape (J',)
        Nonnegative Poisson rates of the dust traits, by level.

    """
    def __init__(self, theta=(), dust_rates=()):
        theta = np.array(theta, dtype=float)
        if theta.size == 0:
            theta = np.zeros((theta.shape[0] if theta.ndim == 2 else 0,
                                 0))
        if theta.ndim != 2:
            raise ValidationError('theta must be a (K, J) matrix, got shape '
                                  '%r' % (theta.shape, ))
        dust_rates = np.array(dust_rates, dtype=float).reshape(-1)
        for name, a in (('theta', theta), ('dust rates', dust_rates)):
            if not np.all(np.isfinite(a)):
                raise ValidationError('%s must be finite: %r' % (name, a))
            if np.any(a < 0):
                raise ValidationError('%s must be nonnegative: %r' % (name, a))
        tol = traitalloc.defaults.normalization_tolerance
        totals = theta.sum(axis=1)
        if np.any(totals > 1 + tol):
            k = int(np.argmax(totals))
            raise ValidationError(
                'Row %d of theta sums to %r > 1' % (k + 1, totals[k]))
        theta.setflags(write=False)
        dust_rates.setflags(write=False)
        self._theta = theta
        self._dust_rates = dust_rates
        self._theta0 = np.clip(1.0 - totals, 0.0, None)
        self._theta0.setflags(write=False)

    @property
    def theta(self):
        """(K, J) membership probabilities."""
        return self._theta

    @property
    def theta0(self):
        """Per-column probability of not joining."""
        return self._theta0

    @property
    def dust_rates(self):
        """Poisson dust rates by level."""
        return self._dust_rates

    @property
    def n_columns(self):
        """Number of regular columns K."""
        return self._theta.shape[0]

    @property
    def n_levels(self):
        """Number of regular multiplicity levels J."""
        return self._theta.shape[1]

    @property
    def n_dust_levels(self):
        """Number of dust levels."""
        return len(self._dust_rates)

    def column_laws(self):
        """(K, J + 1) matrix of per-column multiplicity laws, from 0."""
        return np.column_stack([self._theta0, self._theta])

    def effective_shape(self):
        """
        Smallest (K, J, J') reproducing the model.

        Trailing all-zero levels and dust rates do not count; columns
        with no positive membership probability do not count.

        """
        active = self._theta.any(axis=1)
        levels = np.flatnonzero(self._theta.any(axis=0))
        dust = np.flatnonzero(self._dust_rates)
        return (int(active.sum()), int(levels[-1]) + 1 if levels.size else 0,
                int(dust[-1]) + 1 if dust.size else 0)

    def outcome_prob(self, xi, xi_dust=()):
        """
        Probability of a single index outcome.

        Parameters
        ----------
        xi : sequence of int
            Multiplicity in each regular column; missing columns are 0.
        xi_dust : sequence of int
            Number of dust traits at each level.

        """
        xi, xi_dust = _strip(xi), _strip(xi_dust)
        if len(xi) > self.n_columns or len(xi_dust) > self.n_dust_levels:
            return 0.0
        laws = self.column_laws()
        p = 1.0
        for k in range(self.n_columns):
            j = xi[k] if k < len(xi) else 0
            if j > self.n_levels:
                return 0.0
            p *= laws[k, j]
        counts = np.zeros(self.n_dust_levels, dtype=int)
        counts[:len(xi_dust)] = xi_dust
        return float(
            p * np.exp(poisson_logpmf(counts, self._dust_rates).sum()))

    def to_dict(self):
        """JSON-compatible dict."""
        return {
            'theta': self._theta.tolist(),
            'dust_rates': self._dust_rates.tolist()
        }

    @classmethod
    def from_dict(cls, d):
        """Model from a dict with keys `theta` and `dust_rates`."""
        unknown = set(d) - {'theta', 'dust_rates'}
        if unknown:
            raise ConfigError('Unknown model keys: %s' % sorted(unknown))
        rows = [list(r) for r in d.get('theta', [])]
        width = max((len(r) for r in rows), default=0)
        theta = [r + [0.0] * (width - len(r)) for r in rows]
        if not rows:
            theta = np.zeros((0, 0))
        return cls(theta, d.get('dust_rates', []))

    def __eq__(self, other):
        if isinstance(other, FrequencyModel):
            return (self._theta.shape == other._theta.shape
                    and np.array_equal(self._theta, other._theta)
                    and np.array_equal(self._dust_rates, other._dust_rates))
        return NotImplemented

    def __hash__(self):
        return hash((self._theta.shape, self._theta.tobytes(),
                     self._dust_rates.tobytes()))

    def __repr__(self):
        return '%s(theta=%r, dust_rates=%r)' % (self.__class__.__name__,
                                                self._theta.tolist(),
                                                self._dust_rates.tolist())


class DeFinettiMeasure(Mapping):
    """
    Finitely supported law of one index outcome.

    Maps (xi, xi_dust) pairs, the regular multiplicities by column and the
    dust counts by level, to probabilities. Trailing zeros are dropped from
    both vectors, so (1, 0) and (1,) are the same outcome.

    Parameters
    ----------
    atoms : mapping or iterable of ((xi, xi_dust), probability)
    tol : float
        Normalization tolerance.

    """
    def __init__(self,
                 atoms,
                 tol=traitalloc.defaults.normalization_tolerance):
        if isinstance(atoms, Mapping):
            atoms = atoms.items()
        merged = {}
        for (xi, xi_dust), p in atoms:
            p = float(p)
            if not np.isfinite(p) or p < 0:
                raise ValidationError('%r is not a valid probability' % p)
            key = (_strip(xi), _strip(xi_dust))
            merged[key] = merged.get(key, 0.0) + p
        total = sum(merged.values())
        if abs(total - 1.0) > tol:
            raise ValidationError('Atom probabilities sum to %r, not 1' %
                                  total)
        self._atoms = {k: p for k, p in merged.items() if p > 0}

    def __getitem__(self, key):
        xi, xi_dust = key
        return self._atoms[(_strip(xi), _strip(xi_dust))]

    def __iter__(self):
        return iter(sorted(self._atoms))

    def __len__(self):
        return len(self._atoms)

    def __repr__(self):
        return '%s(%r)' % (self.__class__.__name__, dict(self.items()))


class ConstraintSet:
    """
    Admissible membership profiles.

    Parameters
    ----------
    kind : str
        One of `all`, `partition`, `feature`, `vertex`, `vertex_loops`,
        `weighted_edges` or `explicit`.
    profiles : iterable of iterable of int, optional
        The accepted profiles of an `explicit` constraint.
    allow_empty : bool
        Accept the empty profile (explicit constraints only).
    j_range : (int, int), optional
        Accepted edge weights of a `weighted_edges` constraint.

    """

    kinds = ('all', 'partition', 'feature', 'vertex', 'vertex_loops',
             'weighted_edges', 'explicit')

    def __init__(self, kind='all', profiles=None, allow_empty=False,
                 j_range=None):
        if kind not in self.kinds:
            raise ValidationError('%r is not a valid constraint kind' %
                                  (kind, ))
        self.kind = kind
        self.profiles = None
        self.allow_empty = bool(allow_empty)
        self.j_range = None
        if kind == 'explicit':
            if profiles is None:
                raise ValidationError('Explicit constraints need profiles')
            self.profiles = frozenset(
                tuple(sorted(_nonneg_int(j, 'profile value') for j in p))
                for p in profiles)
            if any(0 in p or not p for p in self.profiles):
                raise ValidationError('Profiles must be nonempty and '
                                      'positive: %r' % (profiles, ))
        elif kind == 'weighted_edges':
            lo, hi = j_range if j_range is not None else (1, 1)
            lo, hi = _nonneg_int(lo, 'edge weight'), _nonneg_int(
                hi, 'edge weight')
            if not 1 <= lo <= hi:
                raise ValidationError('%r is not a valid weight range' %
                                      ((lo, hi), ))
            self.j_range = (lo, hi)
        elif kind == 'all':
            self.allow_empty = True
        elif kind == 'feature':
            self.allow_empty = True
        else:
            self.allow_empty = False

    @classmethod
    def weighted_edges(cls, lo=1, hi=1):
        """Profiles {j, j} with lo <= j <= hi."""
        return cls('weighted_edges', j_range=(lo, hi))

    @classmethod
    def explicit(cls, profiles, allow_empty=False):
        """Finite set of profiles."""
        return cls('explicit', profiles=profiles, allow_empty=allow_empty)

    def accepts(self, profile):
        """True iff the membership profile lies in the set."""
        profile = tuple(sorted(profile))
        if not profile:
            return self.allow_empty
        if self.kind == 'all':
            return True
        if self.kind == 'partition':
            return profile == (1, )
        if self.kind == 'feature':
            return all(j == 1 for j in profile)
        if self.kind == 'vertex':
            return profile == (1, 1)
        if self.kind == 'vertex_loops':
            return profile in ((1, ), (1, 1))
        if self.kind == 'weighted_edges':
            lo, hi = self.j_range
            return (len(profile) == 2 and profile[0] == profile[1]
                    and lo <= profile[0] <= hi)
        return profile in self.profiles

    __contains__ = accepts

    @property
    def max_profile_length(self):
        """Longest accepted profile, None if unbounded."""
        if self.kind in ('all', 'feature'):
            return None
        if self.kind == 'partition':
            return 1
        if self.kind == 'explicit':
            return max((len(p) for p in self.profiles), default=0)
        return 2

    def admits(self, t):
        """True iff every index of `t` has an accepted membership profile."""
        return all(
            self.accepts(memb(n, t)) for n in range(1, t.horizon + 1))

    def to_json(self):
        """JSON-compatible form."""
        if self.kind == 'weighted_edges':
            lo, hi = self.j_range
            return {'weighted_edges': {'min': lo, 'max': hi}}
        if self.kind == 'explicit':
            return {
                'explicit': [list(p) for p in sorted(self.profiles)],
                'allow_empty': self.allow_empty
            }
        return self.kind

    @classmethod
    def from_json(cls, obj):
        """Constraint from its JSON form."""
        if obj is None:
            return cls('all')
        if isinstance(obj, str):
            if obj in ('weighted_edges', 'explicit'):
                raise ConfigError('%r needs parameters' % obj)
            try:
                return cls(obj)
            except ValidationError as e:
                raise ConfigError(str(e)) from e
        if not isinstance(obj, Mapping):
            raise ConfigError('%r is not a valid constraint' % (obj, ))
        try:
            if 'weighted_edges' in obj:
                if set(obj) != {'weighted_edges'}:
                    raise ConfigError('Unknown constraint keys: %s' %
                                      sorted(set(obj) - {'weighted_edges'}))
                params = obj['weighted_edges']
                unknown = set(params) - {'min', 'max'}
                if unknown:
                    raise ConfigError('Unknown weighted_edges keys: %s' %
                                      sorted(unknown))
                return cls.weighted_edges(params.get('min', 1),
                                          params.get('max', 1))
            if 'explicit' in obj:
                unknown = set(obj) - {'explicit', 'allow_empty'}
                if unknown:
                    raise ConfigError('Unknown constraint keys: %s' %
                                      sorted(unknown))
                return cls.explicit(obj['explicit'],
                                    obj.get('allow_empty', False))
        except ConfigError:
            raise
        except (ValidationError, TypeError) as e:
            raise ConfigError('%r is not a valid constraint' % (obj, )) from e
        raise ConfigError('%r is not a valid constraint' % (obj, ))

    def _key(self):
        return (self.kind, self.profiles, self.allow_empty, self.j_range)

    def __eq__(self, other):
        if isinstance(other, ConstraintSet):
            return self._key() == other._key()
        return NotImplemented

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return '%s(%r)' % (self.__class__.__name__, self.to_json())
