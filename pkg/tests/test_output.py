# -*- coding: utf-8 -*-
# pylint: disable=missing-docstring
# pylint: disable=redefined-outer-name
"""Tests for the canonical forms and writers."""
import io
import json

import pandas
import pytest

from traitalloc import testmodels
from traitalloc.core import TraitAllocation
from traitalloc.exceptions import ParseError, ValidationError
from traitalloc.graph import alloc_to_graph
from traitalloc.oracle import enumerate_allocations, enumerate_support
from traitalloc.output import (alloc_from_json, alloc_to_json, format_alloc,
                               graph_frame, parse_alloc, write_allocations,
                               write_graph, write_table)


def test_parse():
    t = parse_alloc(' { {2, 1}, {1,1,4} } ')
    assert t == TraitAllocation([[1, 2], [1, 1, 4]])
    assert format_alloc(t) == '{{1,1,4},{1,2}}'


@pytest.mark.parametrize('s', ['∅', '{}'])
def test_parse_empty(s):
    assert parse_alloc(s, horizon=2) == TraitAllocation(horizon=2)


@pytest.mark.parametrize('s', ['', '{1,2}', '{{1,2}', '{{0}}', '{{1},}',
                               '{{a}}', '{{}}'])
def test_parse_errors(s):
    with pytest.raises(ParseError):
        parse_alloc(s)


def test_parse_checks_horizon():
    with pytest.raises(ParseError):
        parse_alloc('{{1,3}}', horizon=2)


def test_strings_round_trip():
    for t in enumerate_allocations(3, 3, 2):
        assert parse_alloc(format_alloc(t), horizon=t.horizon) == t


def test_json_round_trip():
    t = parse_alloc('{{1,1,4},{2}}', horizon=5)
    d = alloc_to_json(t)
    assert d == {'horizon': 5, 'traits': [[[1, 2], [4, 1]], [[2, 1]]]}
    assert alloc_from_json(json.loads(json.dumps(d))) == t
    with pytest.raises(ParseError):
        alloc_from_json({'traits': [[[0, 1]]]})


def test_write_allocations_text():
    fp = io.StringIO()
    write_allocations([parse_alloc('{{1}}'), parse_alloc('∅')], fp)
    assert fp.getvalue() == '{{1}}\n∅\n'


def test_write_allocations_csv():
    fp = io.StringIO()
    write_allocations([parse_alloc('{{1},{2}}')], fp, fmt='csv')
    fp.seek(0)
    df = pandas.read_csv(fp)
    assert list(df.columns) == ['draw', 'allocation']
    assert df['allocation'][0] == '{{1},{2}}'


def test_write_allocations_csv_rows():
    fp = io.StringIO()
    write_allocations([], fp, fmt='csv')
    assert fp.getvalue() == 'draw,allocation\n'
    fp = io.StringIO()
    write_allocations([parse_alloc('{{1},{2}}'),
                       parse_alloc('∅')], fp, fmt='csv')
    assert fp.getvalue().splitlines() == [
        'draw,allocation', '0,"{{1},{2}}"', '1,∅'
    ]


def test_write_allocations_json():
    fp = io.StringIO()
    write_allocations([parse_alloc('{{1},{2}}')] * 2, fp, fmt='json')
    lines = fp.getvalue().splitlines()
    assert len(lines) == 2
    assert alloc_from_json(json.loads(lines[0])) == parse_alloc('{{1},{2}}')


def test_write_allocations_to_file(tmp_path):
    target = tmp_path / 'out' / 'samples.txt'
    write_allocations([parse_alloc('∅')], target)
    assert target.read_text(encoding='utf-8') == '∅\n'


def test_write_table():
    table = enumerate_support(testmodels.ModelA().model, 1)
    fp = io.StringIO()
    write_table(table, fp)
    rows = dict(line.split('\t') for line in fp.getvalue().splitlines())
    assert float(rows['∅']) == 0.5
    assert float(rows['{{1}}']) == 0.5
    fp = io.StringIO()
    write_table(table, fp, fmt='csv')
    assert fp.getvalue().splitlines()[0] == 'allocation,probability'


def test_graph_frame():
    g = alloc_to_graph(parse_alloc('{{1},{1},{2}}'), variant='loops')
    df = graph_frame(g)
    assert list(df.columns) == ['edge_index', 'vertex_a', 'vertex_b', 'weight']
    assert df['vertex_b'].isna().tolist() == [False, True]
    fp = io.StringIO()
    write_graph(g, fp, fmt='json')
    assert json.loads(fp.getvalue()) == g.to_dict()


def test_hyperedges_need_json():
    g = alloc_to_graph(parse_alloc('{{1},{1},{1}}'), variant='hyper')
    with pytest.raises(ValidationError):
        graph_frame(g)
