# -*- coding: utf-8 -*-
# pylint: disable=missing-docstring
# pylint: disable=redefined-outer-name
"""Tests for label multiset sequences."""
import itertools

import pytest

from traitalloc.core import Permutation, permute_prefix, prefix_of
from traitalloc.exceptions import ValidationError
from traitalloc.labels import (LabelSequence, assemble_allocation,
                               definetti_labels, from_label_sequence,
                               label_matching, outcome_profile,
                               permute_labelled, to_label_sequence)
from traitalloc.oracle import enumerate_allocations
from traitalloc.output import parse_alloc


def test_to_label_sequence():
    t = parse_alloc('{{1,2,2},{2,4}}')
    assert to_label_sequence(t) == LabelSequence([[0], [0, 0, 1], [], [1]])


def test_single_trait():
    assert to_label_sequence(parse_alloc('{{1}}')) == LabelSequence([[0]])


def test_repeated_traits_get_distinct_labels():
    assert to_label_sequence(parse_alloc('{{1},{1}}')) == LabelSequence(
        [[0, 1]])


def test_from_label_sequence():
    y = LabelSequence([['a'], ['a', 'a', 'b'], [], ['b']])
    assert from_label_sequence(y) == parse_alloc('{{1,2,2},{2,4}}')
    assert from_label_sequence(LabelSequence([[], []])) == parse_alloc(
        '∅', horizon=2)
    assert from_label_sequence(LabelSequence([['a', 'b']
                                              ])) == parse_alloc('{{1},{1}}')


def test_label_sequences_invert_allocations():
    for t in enumerate_allocations(3, 3, 2):
        assert from_label_sequence(to_label_sequence(t)) == t


def test_to_label_sequence_checks_prefix():
    with pytest.raises(ValidationError):
        to_label_sequence([parse_alloc('{{1,1}}'), parse_alloc('{{1,3}}')])


def test_multiplicity_and_labels():
    y = LabelSequence([[0], [0, 0, 1], [], [1]])
    assert y.multiplicity(0, 2) == 2
    assert y.multiplicity(1, 3) == 0
    assert y.labels == (0, 1)


def test_label_matching():
    y = LabelSequence([[0], [0, 1]])
    z = LabelSequence([[5], [5, 7]])
    assert label_matching(y, z) == {0: 5, 1: 7}
    assert y.relabel(label_matching(y, z)) == z
    assert label_matching(y, LabelSequence([[0], [1]])) is None


def test_permuted_entries_match_the_permuted_prefix():
    # permuting entries and permuting the prefix agree up to a relabelling
    for t in enumerate_allocations(3, 2, 2):
        prefix = prefix_of(t)
        for images in itertools.permutations(range(1, 4)):
            pi = Permutation.from_images(images)
            moved, mapping = permute_labelled(pi, prefix)
            assert mapping is not None
            target = to_label_sequence(permute_prefix(pi, prefix))
            assert moved.relabel(mapping) == target


def test_permute_entries():
    y = LabelSequence([[0], [1], []])
    pi = Permutation.from_cycles((1, 3))
    assert y.permute_entries(pi) == LabelSequence([[], [1], [0]])
    with pytest.raises(ValidationError):
        y.permute_entries(Permutation.from_cycles((1, 4)))


def test_outcome_profile():
    assert outcome_profile((1, 0, 2), (1, 1)) == (1, 1, 2, 2)
    assert outcome_profile((0, ), ()) == ()


def test_definetti_labels():
    draws = [((1, 0), (1, )), ((1, 1), ()), ((0, 0), (0, 1))]
    y = definetti_labels(draws)
    # regular columns keep their labels, dust traits get fresh ones
    assert y == LabelSequence([[0, 2], [0, 1], [3, 3]])
    assert assemble_allocation(draws) == parse_alloc(
        '{{1,2},{2},{1},{3,3}}')
