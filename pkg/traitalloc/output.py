# -*- coding: utf-8 -*-
"""Canonical text, JSON and CSV forms of allocations, tables and graphs."""
import json
import logging
import re

import pandas

from traitalloc.constants import EMPTY
from traitalloc.core import Trait, TraitAllocation
from traitalloc.exceptions import ParseError, ValidationError
from traitalloc.utils import open_output

__all__ = [
    'format_alloc', 'parse_alloc', 'alloc_to_json', 'alloc_from_json',
    'write_allocations', 'write_table', 'write_graph', 'write_frame'
]

logger = logging.getLogger(__name__)

formats = ('text', 'json', 'csv')

_GRAMMAR = re.compile(r'^\{(\{\d+(,\d+)*\}(,\{\d+(,\d+)*\})*)?\}$')
_TRAIT = re.compile(r'\{(\d+(?:,\d+)*)\}')
_WHITESPACE = re.compile(r'\s+')


def format_alloc(t):
    """Canonical string: traits in lexicographic order, "∅" if empty."""
    return str(t)


def parse_alloc(s, horizon=None):
    """
    Parse a canonical allocation string.

    Whitespace is ignored; trait and index order are free. "∅" and "{}"
    are the empty allocation.

    Parameters
    ----------
    s : str
    horizon : int, optional
        Horizon of the result; defaults to the largest index.

    Returns
    -------
    TraitAllocation

    Raises
    ------
    ParseError
        If the string is malformed or uses an index beyond `horizon`.

    """
    compact = _WHITESPACE.sub('', s)
    if compact == EMPTY:
        compact = '{}'
    if not _GRAMMAR.match(compact):
        raise ParseError('%r is not a valid allocation string' % s)
    try:
        traits = [
            Trait(int(n) for n in body.split(','))
            for body in _TRAIT.findall(compact[1:-1])
        ]
    except ValidationError as e:
        raise ParseError('%r is not a valid allocation string: %s' %
                         (s, e)) from e
    largest = max((tau.max_index for tau in traits), default=0)
    if horizon is not None and largest > horizon:
        raise ParseError('Index %d in %r exceeds horizon %d' %
                         (largest, s, horizon))
    return TraitAllocation(traits, horizon=horizon)


def alloc_to_json(t):
    """Dict with the horizon and the [index, multiplicity] pairs of every
    trait, traits in lexicographic order."""
    return {
        'horizon': t.horizon,
        'traits': [[list(p) for p in tau.items()] for tau in t.traits()]
    }


def alloc_from_json(d):
    """Inverse of `alloc_to_json`."""
    try:
        traits = [Trait(dict(pairs)) for pairs in d['traits']]
        return TraitAllocation(traits, horizon=d.get('horizon'))
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError('%r is not a valid allocation object' % (d, )) from e


def write_allocations(allocations, fp=None, fmt='text'):
    """
    Write one allocation per line.

    `text` writes canonical strings, `json` one object per line and `csv`
    the columns `draw` and `allocation`.

    """
    columns = ['draw', 'allocation']
    with open_output(fp) as out:
        if fmt == 'csv':
            pandas.DataFrame(columns=columns).to_csv(out, index=False)
        for k, t in enumerate(allocations):
            if fmt == 'text':
                print(format_alloc(t), file=out)
            elif fmt == 'json':
                print(json.dumps(alloc_to_json(t), ensure_ascii=False),
                      file=out)
            else:
                # one row at a time, so long runs stream
                pandas.DataFrame([[k, format_alloc(t)]],
                                 columns=columns).to_csv(out,
                                                         header=False,
                                                         index=False)
            out.flush()


def write_frame(df, fp=None, fmt='csv'):
    """Write a DataFrame as CSV, JSON records or aligned text."""
    with open_output(fp) as out:
        if fmt == 'csv':
            df.to_csv(out, index=False)
        elif fmt == 'json':
            print(df.to_json(orient='records', force_ascii=False), file=out)
        else:
            print(df.to_string(index=False), file=out)


def write_table(table, fp=None, fmt='text'):
    """Write a probability table (allocation, probability)."""
    df = table.to_frame()
    if fmt == 'text':
        with open_output(fp) as out:
            for s, p in zip(df['allocation'], df['probability']):
                print('%s\t%.17g' % (s, p), file=out)
    else:
        write_frame(df, fp, fmt)


def graph_frame(g):
    """Edge list with columns edge_index, vertex_a, vertex_b, weight.

    A loop leaves `vertex_b` empty."""
    for e in g.edges:
        if len(e.vertices) > 2:
            raise ValidationError('Edge %d is a hyperedge; use JSON' %
                                  e.index)
    return pandas.DataFrame({
        'edge_index': [e.index for e in g.edges],
        'vertex_a': [e.vertices[0] for e in g.edges],
        'vertex_b': pandas.array(
            [e.vertices[1] if len(e.vertices) == 2 else None
             for e in g.edges], dtype='Int64'),
        'weight': [e.weight for e in g.edges]
    })


def write_graph(g, fp=None, fmt='csv'):
    """Write a multigraph as an edge list (CSV, text) or JSON."""
    if fmt == 'json':
        with open_output(fp) as out:
            print(json.dumps(g.to_dict()), file=out)
    else:
        write_frame(graph_frame(g), fp, fmt)
