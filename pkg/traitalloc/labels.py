# -*- coding: utf-8 -*-
"""
Label multiset sequences.

Entry n of a label sequence is the multiset of labels of the traits that
index n belongs to, each label repeated according to the multiplicity of n
in that trait. Labels are opaque integers; two traits never share a label.

"""
import itertools
import logging
from collections import Counter, defaultdict
from collections.abc import Sequence

from traitalloc.core import (Permutation, Trait, TraitAllocation,
                             check_prefix, order, permute_prefix, prefix_of)
from traitalloc.exceptions import ValidationError

logger = logging.getLogger(__name__)


class LabelSequence(Sequence):
    """
    Finite sequence of label multisets.

    Parameters
    ----------
    entries : iterable of iterable of int
        Entry n - 1 lists the labels of index n, with repetitions.

    """

    __slots__ = ('_entries', )

    def __init__(self, entries=()):
        self._entries = tuple(tuple(sorted(entry)) for entry in entries)

    def __getitem__(self, k):
        return self._entries[k]

    def __len__(self):
        return len(self._entries)

    def __eq__(self, other):
        if isinstance(other, LabelSequence):
            return self._entries == other._entries
        return NotImplemented

    def __hash__(self):
        return hash(self._entries)

    def __repr__(self):
        return '%s(%r)' % (self.__class__.__name__, self._entries)

    def multiplicity(self, label, n):
        """Multiplicity of `label` in the entry of index `n` (1-based)."""
        return self._entries[n - 1].count(label)

    @property
    def labels(self):
        """Sorted distinct labels."""
        return tuple(sorted({a for entry in self._entries for a in entry}))

    def trait_map(self):
        """Dict label -> Trait."""
        counts = defaultdict(dict)
        for n, entry in enumerate(self._entries, 1):
            for a, m in Counter(entry).items():
                counts[a][n] = m
        return {a: Trait(c) for a, c in counts.items()}

    def permute_entries(self, pi):
        """
        Move the entry of index n to position pi(n).

        `pi` must fix every index beyond the sequence length.

        """
        if pi.bound > len(self):
            raise ValidationError('Permutation moves index %d beyond the '
                                  'sequence length %d' % (pi.bound, len(self)))
        inv = pi.inverse()
        return LabelSequence(self._entries[inv(n) - 1]
                             for n in range(1, len(self) + 1))

    def relabel(self, mapping):
        """Rename labels; labels missing from `mapping` are kept."""
        return LabelSequence([mapping.get(a, a) for a in entry]
                             for entry in self._entries)


def to_label_sequence(prefix):
    """
    Label multiset sequence of a consistent prefix t_1, ..., t_L.

    Label k is given to the k-th trait (0-based) of the lexicographic
    ordering of t_L; equal traits get increasing labels in positional order.

    Parameters
    ----------
    prefix : sequence of TraitAllocation or TraitAllocation
        An allocation stands for its canonical prefix.

    Returns
    -------
    LabelSequence

    """
    if isinstance(prefix, TraitAllocation):
        prefix = prefix_of(prefix)
    prefix = check_prefix(prefix)
    if not prefix:
        return LabelSequence()
    ordered = order(prefix[-1])
    return LabelSequence(
        [k for k, tau in enumerate(ordered) for _ in range(tau(n))]
        for n in range(1, len(prefix) + 1))


def from_label_sequence(y):
    """
    Trait allocation counted by a label sequence.

    Each label yields the trait tau with tau(n) equal to the multiplicity
    of the label in entry n. The horizon is the sequence length.

    """
    return TraitAllocation(y.trait_map().values(), horizon=len(y))


def label_matching(y, z):
    """
    Label renaming taking `y` to `z`.

    Labels carrying equal traits are matched in increasing order, so that
    ``y.relabel(label_matching(y, z)) == z``.

    Returns
    -------
    dict or None
        None when `y` and `z` do not carry the same allocation.

    """
    if len(y) != len(z):
        return None

    def by_trait(seq):
        groups = defaultdict(list)
        for a, tau in sorted(seq.trait_map().items()):
            groups[tau].append(a)
        return groups

    gy, gz = by_trait(y), by_trait(z)
    if ({tau: len(a) for tau, a in gy.items()} !=
            {tau: len(a) for tau, a in gz.items()}):
        return None
    return {a: b for tau in gy for a, b in zip(gy[tau], gz[tau])}


def outcome_profile(xi, xi_dust):
    """
    Membership profile of one index given its regular and dust outcome.

    Parameters
    ----------
    xi : sequence of int
        Multiplicity in each regular column.
    xi_dust : sequence of int
        Entry j - 1 counts the dust traits of level j.

    Returns
    -------
    tuple of int

    """
    profile = [m for m in xi if m]
    for j, d in enumerate(xi_dust, 1):
        profile.extend([j] * d)
    return tuple(sorted(profile))


def definetti_labels(draws):
    """
    Label sequence of a sequence of per-index outcomes.

    Regular column k (0-based) carries label k for every index; each dust
    trait gets a fresh label, larger than every regular one.

    Parameters
    ----------
    draws : sequence of (xi, xi_dust) pairs

    Returns
    -------
    LabelSequence

    """
    draws = list(draws)
    n_columns = max((len(xi) for xi, _ in draws), default=0)
    fresh = itertools.count(n_columns)
    entries = []
    for xi, xi_dust in draws:
        entry = [k for k, m in enumerate(xi) for _ in range(m)]
        for j, d in enumerate(xi_dust, 1):
            for _ in range(d):
                entry.extend([next(fresh)] * j)
        entries.append(entry)
    return LabelSequence(entries)


def assemble_allocation(draws):
    """Trait allocation of [N] built from N per-index outcomes."""
    return from_label_sequence(definetti_labels(draws))


def permute_labelled(pi, prefix):
    """
    Label sequence of a prefix with its entries permuted by `pi`, and the
    label renaming that takes it to the label sequence of the permuted
    prefix.

    Returns
    -------
    (LabelSequence, dict)

    """
    if not isinstance(pi, Permutation):
        raise ValidationError('%r is not a valid permutation' % (pi, ))
    if isinstance(prefix, TraitAllocation):
        prefix = prefix_of(prefix)
    moved = to_label_sequence(prefix).permute_entries(pi)
    target = to_label_sequence(permute_prefix(pi, prefix))
    return moved, label_matching(moved, target)
