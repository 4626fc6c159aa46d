# -*- coding: utf-8 -*-
# pylint: disable=missing-docstring
# pylint: disable=redefined-outer-name
"""Tests for edge-exchangeable graphs."""
from collections import Counter

import pytest
from scipy import stats

from traitalloc import testmodels
from traitalloc.checks import chi_square_pvalue, total_variation
from traitalloc.core import Permutation, classify, permute_alloc
from traitalloc.exceptions import DegenerateConstraintError, EncodingError
from traitalloc.graph import (Edge, Multigraph, VertexWeights, alloc_to_graph,
                              cfm_edges, draw_edges, edge_law, graph_stats,
                              graph_to_alloc, growth_curve,
                              sample_vertex_popularity,
                              sample_vertex_popularity_via_cfm, variants)
from traitalloc.oracle import enumerate_allocations, induced_measure
from traitalloc.output import parse_alloc
from traitalloc.prob import evpf_model
from traitalloc.sample import RngState

W = (0.5, 0.3, 0.2)


@pytest.fixture
def vertex_alloc():
    return parse_alloc('{{1,2,4},{2},{1,4},{3},{3}}')


@pytest.fixture
def rng():
    return RngState(1234)


def test_vertex_alloc_graph(vertex_alloc):
    g = alloc_to_graph(vertex_alloc)
    assert g.vertices == (1, 2, 3, 4, 5)
    assert [e.vertices for e in g.edges] == [(1, 2), (1, 3), (4, 5), (1, 2)]
    stats_ = graph_stats(g)
    assert stats_.vertex_count == 5
    assert stats_.edge_count == 4
    assert stats_.distinct_edge_count == 3
    assert stats_.degrees == (3, 2, 1, 1, 1)
    assert stats_.max_degree == 3


def test_relabelled_vertex_alloc_is_the_same_graph(vertex_alloc):
    pi = Permutation.from_cycles((3, 1, 4), (2, ))
    g = alloc_to_graph(permute_alloc(pi, vertex_alloc))
    assert sorted(graph_stats(g).degrees) == [1, 1, 1, 2, 3]


def test_graph_round_trip(vertex_alloc):
    assert graph_to_alloc(alloc_to_graph(vertex_alloc)) == vertex_alloc


@pytest.mark.parametrize('variant', variants)
def test_graph_round_trip_is_exhaustive(variant):
    encoded = 0
    for t in enumerate_allocations(3, 4, 2):
        try:
            g = alloc_to_graph(t, variant=variant)
        except EncodingError:
            continue
        assert graph_to_alloc(g) == t
        encoded += 1
    assert encoded > 0


def test_empty_graph():
    g = alloc_to_graph(parse_alloc('∅'))
    assert g == Multigraph()
    stats_ = graph_stats(g)
    assert stats_.vertex_count == stats_.edge_count == stats_.max_degree == 0


def test_encoding_errors():
    with pytest.raises(EncodingError) as excinfo:
        alloc_to_graph(parse_alloc('{{1,2},{1},{3}}', horizon=3))
    assert excinfo.value.index == 2
    with pytest.raises(EncodingError):
        alloc_to_graph(parse_alloc('{{1,1}}'))


def test_loops_and_weights():
    g = alloc_to_graph(parse_alloc('{{1},{1}}'))
    assert g.edges == (Edge(1, (1, 2), 1), )
    g = alloc_to_graph(parse_alloc('{{1},{1},{2}}'), variant='loops')
    assert g.edges[1].vertices == (3, )
    g = alloc_to_graph(parse_alloc('{{1,1},{1,1}}'), variant='weighted')
    assert g.edges == (Edge(1, (1, 2), 2), )
    g = alloc_to_graph(parse_alloc('{{1,1}}'), variant='weighted_loops')
    assert g.edges == (Edge(1, (1, ), 2), )
    assert graph_stats(g).degrees == (2, )


def test_hypergraph():
    t = parse_alloc('{{1,2},{1},{1,3}}')
    g = alloc_to_graph(t, variant='hyper')
    assert len(g.edges[0].vertices) == 3
    with pytest.raises(EncodingError):
        alloc_to_graph(parse_alloc('{{1,1}}'), variant='hyper')


def test_edge_law():
    law = edge_law(W)
    assert law[(1, 2)] == pytest.approx(15 / 31)
    assert law[(1, 3)] == pytest.approx(10 / 31)
    assert law[(2, 3)] == pytest.approx(6 / 31)
    with pytest.raises(DegenerateConstraintError):
        edge_law([1.0])


def test_vertex_model_measure_matches_the_edge_law():
    model, constraint = evpf_model(W)
    mu = induced_measure(model, constraint=constraint)
    law = edge_law(W)
    assert len(mu) == len(law) == 3
    for (k, l), p in law.items():
        xi = tuple(int(v in (k, l)) for v in range(1, 4))
        assert mu[(xi, ())] == pytest.approx(p, abs=1e-12)
    assert mu[((1, 1), ())] == pytest.approx(15 / 31, abs=1e-12)
    assert mu[((1, 0, 1), ())] == pytest.approx(10 / 31, abs=1e-12)
    assert mu[((0, 1, 1), ())] == pytest.approx(6 / 31, abs=1e-12)


def test_weights():
    assert VertexWeights.uniform(4).w.sum() == pytest.approx(1)
    w = VertexWeights.power_law(1.0, 3).w
    assert w[0] / w[2] == pytest.approx(3)
    with pytest.raises(ValueError):
        VertexWeights([1.0, 0.0])


def test_two_vertices_give_one_edge(rng):
    edges = draw_edges((1, 1), 5, rng)
    assert [e.vertices for e in edges] == [(1, 2)] * 5


def test_edge_frequencies(rng):
    draws = 20000
    counts = Counter(draw_edges(W, 1, rng)[0].vertices for _ in range(draws))
    law = edge_law(W)
    observed = [counts[k] for k in law]
    expected = [draws * p for p in law.values()]
    assert stats.chisquare(observed, expected).pvalue > 1e-3


def test_cfm_edge_frequencies(rng):
    draws = 20000
    counts = Counter(
        cfm_edges(W, 1, rng)[0].vertices for _ in range(draws))
    law = edge_law(W)
    observed = [counts[k] for k in law]
    expected = [draws * p for p in law.values()]
    assert stats.chisquare(observed, expected).pvalue > 1e-3


def test_direct_and_cfm_edges_agree(rng):
    draws = 100000
    a_rng, b_rng = rng.split(2)
    direct = Counter(e.vertices for e in draw_edges(W, draws, a_rng))
    via_cfm = Counter(e.vertices for e in cfm_edges(W, draws, b_rng))
    assert total_variation(direct, via_cfm) <= 0.02


def test_edges_are_exchangeable(rng):
    draws = 10000
    a_rng, b_rng = rng.split(2)
    plain = Counter(
        tuple(e.vertices for e in draw_edges(W, 3, a_rng))
        for _ in range(draws))
    permuted = Counter()
    for _ in range(draws):
        first, second, third = (e.vertices for e in draw_edges(W, 3, b_rng))
        permuted[(third, first, second)] += 1
    keys = sorted(set(plain) | set(permuted))
    table = [[plain[k] for k in keys], [permuted[k] for k in keys]]
    assert stats.chi2_contingency(table)[1] > 1e-3
    law = edge_law(W)
    probs = {(a, b, c): law[a] * law[b] * law[c]
             for a in law for b in law for c in law}
    assert chi_square_pvalue(permuted, probs) > 1e-3


def test_samplers_give_vertex_allocations(rng):
    for _ in range(50):
        assert classify(sample_vertex_popularity(W, 5,
                                                 rng)).vertex_allocation
        t = sample_vertex_popularity_via_cfm(W, 5, rng)
        assert classify(t).vertex_allocation


def test_edge_prefixes_are_stable():
    first = draw_edges(W, 3, RngState(9))
    longer = draw_edges(W, 6, RngState(9))
    assert longer[:3] == first


def test_growth_curve(rng):
    df = growth_curve(VertexWeights.power_law(1.0, 50), 40, step=10, rng=rng)
    assert list(df.columns) == ['n', 'vertices', 'edges']
    assert list(df['n']) == [0, 10, 20, 30, 40]
    assert list(df['edges']) == [0, 10, 20, 30, 40]
    assert df['vertices'].is_monotonic_increasing
    assert df['vertices'].iloc[0] == 0
    assert 2 <= df['vertices'].iloc[-1] <= 50


def test_growth_curve_from_a_model(rng):
    model, constraint = testmodels.EppfExample()
    df = growth_curve(model, 30, rng=rng, constraint=constraint)
    # every index of a partition opens or joins exactly one block
    assert list(df['edges']) == list(range(31))
    assert df['vertices'].iloc[-1] <= 30


def test_growth_curve_empty():
    df = growth_curve(W, 0)
    assert len(df) == 0
    assert list(df.columns) == ['n', 'vertices', 'edges']
