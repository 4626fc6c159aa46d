# -*- coding: utf-8 -*-
"""Traits, trait allocations and their combinatorics."""
# pylint: disable=protected-access
import functools
import logging
import math
import numbers
from collections import Counter, namedtuple
from collections.abc import Mapping, Sequence

from traitalloc.constants import EMPTY
from traitalloc.exceptions import ValidationError

logger = logging.getLogger(__name__)

Classification = namedtuple(
    'Classification',
    'partition feature_allocation vertex_allocation regular_free_form')


def check_index(n):
    if isinstance(n, bool) or not isinstance(n, numbers.Integral) or n < 1:
        raise ValidationError('%r is not a valid data index' % (n, ))
    return int(n)


def check_count(m, name='multiplicity'):
    if isinstance(m, bool) or not isinstance(m, numbers.Integral) or m < 0:
        raise ValidationError('%r is not a valid %s' % (m, name))
    return int(m)


@functools.total_ordering
class Trait(Mapping):
    """
    Finite, nonempty multiset of data indices.

    A trait maps each of its indices to a positive multiplicity. Calling the
    trait, ``tau(n)``, returns the multiplicity of ``n`` (0 when absent).
    Traits are immutable, hashable and totally ordered by the lexicographic
    order of `trait_less`.

    Parameters
    ----------
    data : mapping or iterable of int
        A mapping index -> multiplicity, or the indices with repetitions,
        e.g. ``Trait([1, 1, 4])``. Zero multiplicities are dropped.

    """

    __slots__ = ('_items', '_map', '_hash')

    def __init__(self, data):
        if isinstance(data, Trait):
            items = data._items
        else:
            if not isinstance(data, Mapping):
                data = Counter(data)
            counts = {}
            for n, m in data.items():
                n, m = check_index(n), check_count(m)
                if m:
                    counts[n] = m
            if not counts:
                raise ValidationError('A trait must be nonempty')
            items = tuple(sorted(counts.items()))
        self._items = items
        self._map = dict(items)
        self._hash = hash(items)

    def __getitem__(self, n):
        return self._map[n]

    def __iter__(self):
        return (n for n, _ in self._items)

    def __len__(self):
        return len(self._items)

    def __call__(self, n):
        return self._map.get(n, 0)

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if isinstance(other, Trait):
            return self._items == other._items
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, Trait):
            return trait_less(self, other)
        return NotImplemented

    def __repr__(self):
        return '%s(%s)' % (self.__class__.__name__, self)

    def __str__(self):
        return '{%s}' % ','.join(str(n) for n in self.indices())

    def items(self):
        """(index, multiplicity) pairs sorted by index."""
        return self._items

    @property
    def support(self):
        """Distinct indices, ascending."""
        return tuple(n for n, _ in self._items)

    @property
    def max_index(self):
        """Largest index in the trait."""
        return self._items[-1][0]

    @property
    def size(self):
        """Total number of memberships (sum of multiplicities)."""
        return sum(m for _, m in self._items)

    def indices(self):
        """Sorted indices, repeated according to multiplicity."""
        return tuple(n for n, m in self._items for _ in range(m))

    def restrict(self, M):
        """Restriction to [M]; None when nothing is left."""
        return restrict_trait(self, M)


class TraitAllocation(Mapping):
    """
    Finite trait allocation of [N]: a multiset of traits.

    Maps each distinct trait to its multiplicity; iteration follows the
    lexicographic order. Allocations are immutable and hashable; two
    allocations are equal when they have the same horizon and the same
    traits with the same multiplicities.

    Parameters
    ----------
    traits : mapping or iterable
        Either a mapping trait -> multiplicity or an iterable of traits
        (repetitions allowed). Traits may be given as `Trait` objects or as
        index sequences.
    horizon : int, optional
        The N of [N]. Defaults to the largest index used by the traits.

    """

    __slots__ = ('_counts', '_horizon', '_hash', '_sorted')

    def __init__(self, traits=(), horizon=None):
        if isinstance(traits, TraitAllocation):
            pairs = traits._counts.items()
            horizon = traits.horizon if horizon is None else horizon
        elif isinstance(traits, Mapping) and not isinstance(traits, Trait):
            pairs = traits.items()
        else:
            pairs = ((tau, 1) for tau in traits)
        counts = Counter()
        for tau, c in pairs:
            if not isinstance(tau, Trait):
                tau = Trait(tau)
            counts[tau] += check_count(c)
        counts = {tau: c for tau, c in counts.items() if c}
        max_index = max((tau.max_index for tau in counts), default=0)
        if horizon is None:
            horizon = max_index
        horizon = check_count(horizon, name='horizon')
        if max_index > horizon:
            raise ValidationError('Trait index %d exceeds horizon %d' %
                                  (max_index, horizon))
        self._counts = counts
        self._horizon = horizon
        self._hash = hash((horizon, frozenset(counts.items())))
        self._sorted = None

    def __getitem__(self, tau):
        return self._counts[tau]

    def __iter__(self):
        return iter(self._distinct())

    def __len__(self):
        return len(self._counts)

    def __call__(self, tau):
        return self._counts.get(tau, 0)

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if isinstance(other, TraitAllocation):
            return (self._horizon == other._horizon
                    and self._counts == other._counts)
        return NotImplemented

    def __repr__(self):
        return '%s(%s, horizon=%d)' % (self.__class__.__name__, self,
                                       self._horizon)

    def __str__(self):
        if not self._counts:
            return EMPTY
        return '{%s}' % ','.join(str(tau) for tau in self.traits())

    def _distinct(self):
        if self._sorted is None:
            self._sorted = tuple(sorted(self._counts))
        return self._sorted

    @property
    def horizon(self):
        """The N of [N]."""
        return self._horizon

    @property
    def n_traits(self):
        """Number of traits, counted with multiplicity."""
        return sum(self._counts.values())

    def traits(self):
        """All traits with repetitions, in lexicographic order."""
        return tuple(tau for tau in self._distinct()
                     for _ in range(self._counts[tau]))

    def restrict(self, M):
        """Restriction to [M]."""
        return restrict_alloc(self, M)

    def order(self):
        """Lexicographic ordering."""
        return order(self)


class MultiplicityProfile(TraitAllocation):
    """
    Multiset of per-trait multiplicity profiles.

    Structurally a trait allocation over multiplicity values; the horizon is
    the largest value and carries no meaning beyond serialization.

    """
    __slots__ = ()


class OrderedTraitAllocation(Sequence):
    """Ordered finite trait allocation of [N]: a sequence of traits."""

    __slots__ = ('_sequence', '_horizon')

    def __init__(self, sequence=(), horizon=None):
        sequence = tuple(tau if isinstance(tau, Trait) else Trait(tau)
                         for tau in sequence)
        max_index = max((tau.max_index for tau in sequence), default=0)
        if horizon is None:
            horizon = max_index
        horizon = check_count(horizon, name='horizon')
        if max_index > horizon:
            raise ValidationError('Trait index %d exceeds horizon %d' %
                                  (max_index, horizon))
        self._sequence = sequence
        self._horizon = horizon

    def __getitem__(self, k):
        return self._sequence[k]

    def __len__(self):
        return len(self._sequence)

    def __hash__(self):
        return hash((self._horizon, self._sequence))

    def __eq__(self, other):
        if isinstance(other, OrderedTraitAllocation):
            return (self._horizon == other._horizon
                    and self._sequence == other._sequence)
        return NotImplemented

    def __repr__(self):
        return '%s(%s, horizon=%d)' % (self.__class__.__name__, self,
                                       self._horizon)

    def __str__(self):
        return '(%s)' % ','.join(str(tau) for tau in self._sequence)

    @property
    def horizon(self):
        """The N of [N]."""
        return self._horizon

    @property
    def sequence(self):
        """The traits, in order."""
        return self._sequence

    def unordered(self):
        """The trait allocation this sequence orders."""
        return TraitAllocation(self._sequence, horizon=self._horizon)


class Permutation:
    """
    Finite permutation of the data indices.

    Only moved indices are stored; every other index is fixed. Calling the
    permutation, ``pi(n)``, returns the image of ``n``.

    Parameters
    ----------
    mapping : mapping, optional
        index -> image for (at least) the moved indices.

    """

    __slots__ = ('_map', )

    def __init__(self, mapping=None):
        moved = {}
        for n, m in (mapping or {}).items():
            n, m = check_index(n), check_index(m)
            if n != m:
                moved[n] = m
        if sorted(moved) != sorted(moved.values()):
            raise ValidationError('%r is not a bijection' % (mapping, ))
        self._map = moved

    @classmethod
    def from_cycles(cls, *cycles):
        """Build from cycle notation, e.g. ``from_cycles((3, 1, 4), (2,))``."""
        mapping = {}
        for cycle in cycles:
            cycle = [check_index(n) for n in cycle]
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                if a in mapping:
                    raise ValidationError('Cycles %r are not disjoint' %
                                          (cycles, ))
                mapping[a] = b
        return cls(mapping)

    @classmethod
    def from_images(cls, images):
        """Build from the images of 1, 2, ..., e.g. ``(2, 3, 1)`` is (123)."""
        return cls({n: m for n, m in enumerate(images, 1)})

    def __call__(self, n):
        return self._map.get(n, n)

    def __eq__(self, other):
        if isinstance(other, Permutation):
            return self._map == other._map
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._map.items()))

    def __repr__(self):
        return '%s(%s)' % (self.__class__.__name__, self.cycles() or '()')

    @property
    def support(self):
        """Moved indices and their images."""
        return dict(self._map)

    @property
    def bound(self):
        """Largest moved index (0 for the identity)."""
        return max(self._map, default=0)

    def cycles(self):
        """Cycle notation, e.g. ``'(134)'``."""
        seen = set()
        out = []
        for start in sorted(self._map):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            n = self._map[start]
            while n != start:
                cycle.append(n)
                seen.add(n)
                n = self._map[n]
            out.append('(%s)' % ' '.join(str(n) for n in cycle))
        return ''.join(out)

    def inverse(self):
        """The inverse permutation."""
        return Permutation({m: n for n, m in self._map.items()})

    def compose(self, other):
        """``self`` after ``other``: n -> self(other(n))."""
        indices = set(self._map) | set(other._map)
        return Permutation({n: self(other(n)) for n in indices})


def restrict_trait(tau, M):
    """
    Restriction of a trait to [M].

    Parameters
    ----------
    tau : Trait
    M : int

    Returns
    -------
    Trait or None
        The trait keeping only indices <= M, or None if nothing is left.

    """
    M = check_count(M, name='restriction bound')
    if tau.max_index <= M:
        return tau
    kept = {n: m for n, m in tau.items() if n <= M}
    return Trait(kept) if kept else None


def restrict_alloc(t, M):
    """
    Restriction of a trait allocation to [M].

    Empty traits are dropped; identical restricted traits accumulate.

    """
    M = check_count(M, name='restriction bound')
    if M >= t.horizon:
        return t
    counts = Counter()
    for tau, c in t.items():
        tau = restrict_trait(tau, M)
        if tau is not None:
            counts[tau] += c
    return TraitAllocation(counts, horizon=M)


def is_consistent(t_M, t_N):
    """True iff `t_N` restricted to the horizon of `t_M` equals `t_M`."""
    if t_M.horizon > t_N.horizon:
        raise ValidationError('Horizon %d exceeds horizon %d' %
                              (t_M.horizon, t_N.horizon))
    return restrict_alloc(t_N, t_M.horizon) == t_M


def prefix_of(t):
    """The consistent prefix (t|1, ..., t|N) ending at `t`."""
    return tuple(restrict_alloc(t, n) for n in range(1, t.horizon + 1))


def check_prefix(prefix):
    """
    Validate a consistent prefix t_1, ..., t_L.

    Element N must have horizon N and restrict to element N - 1.

    Returns
    -------
    tuple of TraitAllocation

    """
    prefix = tuple(prefix)
    for n, t in enumerate(prefix, 1):
        if not isinstance(t, TraitAllocation) or t.horizon != n:
            raise ValidationError('Prefix element %d must be an allocation '
                                  'of [%d], got %r' % (n, n, t))
    for t_m, t_n in zip(prefix, prefix[1:]):
        if not is_consistent(t_m, t_n):
            raise ValidationError('Inconsistent prefix: %s does not restrict '
                                  'to %s' % (t_n, t_m))
    return prefix


def permute_trait(pi, tau):
    """Permutation of a trait: index n is moved to pi(n)."""
    return Trait({pi(n): m for n, m in tau.items()})


def permute_alloc(pi, t):
    """
    Permutation of a trait allocation.

    The horizon of the result is max(t.horizon, pi.bound).

    """
    counts = Counter()
    for tau, c in t.items():
        counts[permute_trait(pi, tau)] += c
    return TraitAllocation(counts, horizon=max(t.horizon, pi.bound))


def permute_prefix(pi, prefix):
    """
    Permutation of a consistent prefix t_1, ..., t_L.

    Element N of the result is the restriction to [N] of the permuted
    element max(M, N), where M is the largest index moved by `pi`.

    Parameters
    ----------
    pi : Permutation
        Must fix every index > L.
    prefix : sequence of TraitAllocation

    Returns
    -------
    tuple of TraitAllocation

    """
    prefix = check_prefix(prefix)
    M = pi.bound
    if M > len(prefix):
        raise ValidationError('Permutation moves index %d beyond the prefix '
                              'length %d' % (M, len(prefix)))
    return tuple(
        restrict_alloc(permute_alloc(pi, prefix[max(M, n) - 1]), n)
        for n in range(1, len(prefix) + 1))


def trait_less(tau, omega):
    """
    Lexicographic order on traits.

    tau < omega iff at the lowest index with differing multiplicity, `tau`
    has the higher multiplicity. None stands for the empty multiset, which
    is therefore greater than every trait.

    """
    a = tau._items if tau is not None else ()
    b = omega._items if omega is not None else ()
    i = j = 0
    while i < len(a) and j < len(b):
        (n, m), (k, l) = a[i], b[j]
        if n == k:
            if m != l:
                return m > l
            i += 1
            j += 1
        else:
            # the lower index is absent from the other trait
            return n < k
    return i < len(a)


def order(t):
    """Lexicographic ordering of a trait allocation."""
    return OrderedTraitAllocation(t.traits(), horizon=t.horizon)


def restrict_ordered(ell, M):
    """Restriction of an ordered allocation to [M], preserving order."""
    M = check_count(M, name='restriction bound')
    kept = (restrict_trait(tau, M) for tau in ell)
    return OrderedTraitAllocation([tau for tau in kept if tau is not None],
                                  horizon=min(M, ell.horizon))


def kappa(t):
    """Number of distinct orderings of the traits of `t`."""
    result = math.factorial(t.n_traits)
    for c in t.values():
        result //= math.factorial(c)
    return result


def mult_trait(tau):
    """
    Multiplicity profile of a trait.

    The multiset in which value j appears as many times as there are
    indices of multiplicity j in `tau`.

    """
    return Trait(Counter(m for _, m in tau.items()))


def mult_alloc(t):
    """Multiplicity profile of a trait allocation."""
    counts = Counter()
    for tau, c in t.items():
        counts[mult_trait(tau)] += c
    return MultiplicityProfile(counts)


def memb(n, t):
    """
    Membership profile of index `n` in `t`.

    Returns
    -------
    tuple of int
        Sorted multiplicities of `n` across all traits, one entry per trait
        copy containing `n`; empty when no trait contains `n`.

    """
    profile = []
    for tau, c in t.items():
        j = tau(n)
        if j:
            profile.extend([j] * c)
    return tuple(sorted(profile))


def classify(t):
    """
    Structural class of a trait allocation.

    Returns
    -------
    Classification
        partition: every index of [N] lies in exactly one trait, once.
        feature_allocation: no membership has multiplicity above 1.
        vertex_allocation: every index has membership profile {1, 1}.
        regular_free_form: none of the above.

    """
    profiles = [memb(n, t) for n in range(1, t.horizon + 1)]
    partition = all(p == (1, ) for p in profiles)
    feature = all(max(p, default=0) <= 1 for p in profiles)
    vertex = all(p == (1, 1) for p in profiles)
    return Classification(partition=partition,
                          feature_allocation=feature,
                          vertex_allocation=vertex,
                          regular_free_form=not (partition or feature
                                                 or vertex))
