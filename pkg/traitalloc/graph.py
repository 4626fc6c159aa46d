# -*- coding: utf-8 -*-
"""
Edge-exchangeable multigraphs as vertex allocations.

Each trait is a vertex and each data index is an edge joining the traits
that contain it. Vertex ids are 1-based positions in the lexicographic
ordering of the allocation.

"""
import logging
from collections import defaultdict, namedtuple

import numpy as np
import pandas

from traitalloc.core import TraitAllocation, check_count, memb, order
from traitalloc.exceptions import (DegenerateConstraintError, EncodingError,
                                   ValidationError)
from traitalloc.models import ConstraintSet, FrequencyModel
from traitalloc.prob import evpf_model
from traitalloc.sample import (RngState, sample_constrained,
                               sample_constrained_outcomes)

logger = logging.getLogger(__name__)

Edge = namedtuple('Edge', 'index vertices weight')
GraphStats = namedtuple(
    'GraphStats',
    'vertex_count edge_count distinct_edge_count degrees max_degree')

variants = ('simple', 'loops', 'weighted', 'weighted_loops', 'hyper')


class Multigraph:
    """
    Multigraph with indexed edges.

    Parameters
    ----------
    vertices : iterable of int
    edges : iterable of Edge
        Edge n joins the vertices in `vertices` (one for a loop, more than
        two for a hyperedge) with multiplicity `weight`.

    """
    def __init__(self, vertices=(), edges=()):
        self.vertices = tuple(sorted(vertices))
        self.edges = tuple(edges)
        known = set(self.vertices)
        for e in self.edges:
            if not set(e.vertices) <= known:
                raise ValidationError('Edge %d joins unknown vertices %r' %
                                      (e.index, e.vertices))
            if e.weight < 1:
                raise ValidationError('%r is not a valid edge weight' %
                                      e.weight)

    def __eq__(self, other):
        if isinstance(other, Multigraph):
            return (self.vertices == other.vertices
                    and self.edges == other.edges)
        return NotImplemented

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __repr__(self):
        return '%s(vertices=%r, edges=%r)' % (self.__class__.__name__,
                                              self.vertices, self.edges)

    def to_dict(self):
        """JSON-compatible dict."""
        return {
            'vertices': list(self.vertices),
            'edges': [{
                'index': e.index,
                'vertices': list(e.vertices),
                'weight': e.weight
            } for e in self.edges]
        }


class VertexWeights:
    """
    Positive vertex weights of the vertex popularity model.

    Parameters
    ----------
    w : sequence of float

    """
    def __init__(self, w):
        w = np.array(w, dtype=float).reshape(-1)
        if not np.all(np.isfinite(w)) or np.any(w <= 0):
            raise ValidationError('%r is not a valid weight vector' % (w, ))
        w.setflags(write=False)
        self.w = w

    @classmethod
    def uniform(cls, k):
        """`k` equal weights summing to one."""
        k = check_count(k, name='vertex count')
        return cls(np.full(k, 1.0 / k) if k else [])

    @classmethod
    def power_law(cls, alpha, k_max):
        """Weights proportional to k**-alpha, k = 1..k_max, summing to one."""
        k_max = check_count(k_max, name='vertex count')
        w = np.arange(1, k_max + 1, dtype=float)**(-float(alpha))
        return cls(w / w.sum())

    def __len__(self):
        return len(self.w)

    def __repr__(self):
        return '%s(%r)' % (self.__class__.__name__, self.w.tolist())

    def pair_probabilities(self):
        """
        Single-edge law.

        Returns
        -------
        pairs : (P, 2) int array
            Vertex pairs (k, l), k < l, 1-based.
        probs : (P,) float array
            Probabilities proportional to w_k * w_l.

        """
        if len(self.w) < 2:
            raise DegenerateConstraintError(
                'The vertex model needs at least 2 vertices, got %d' %
                len(self.w))
        k, l = np.triu_indices(len(self.w), 1)
        products = self.w[k] * self.w[l]
        return np.column_stack([k + 1, l + 1]), products / products.sum()


def _weights(w):
    return w if isinstance(w, VertexWeights) else VertexWeights(w)


def edge_law(w):
    """Dict (k, l) -> probability that an edge joins vertices k and l."""
    pairs, probs = _weights(w).pair_probabilities()
    return {(int(a), int(b)): float(p) for (a, b), p in zip(pairs, probs)}


def _variant_constraint(variant, j_range, t):
    if variant == 'simple':
        return ConstraintSet('vertex')
    if variant == 'loops':
        return ConstraintSet('vertex_loops')
    if variant == 'hyper':
        return ConstraintSet('feature')
    lo, hi = j_range or (1, max((max(tau.values()) for tau in t), default=1))
    if variant == 'weighted':
        return ConstraintSet.weighted_edges(lo, hi)
    if variant == 'weighted_loops':
        profiles = [(j, j) for j in range(lo, hi + 1)]
        profiles += [(j, ) for j in range(lo, hi + 1)]
        return ConstraintSet.explicit(profiles)
    raise ValidationError('%r is not a valid graph variant' % (variant, ))


def alloc_to_graph(t, variant='simple', j_range=None):
    """
    Graph encoded by a vertex allocation.

    Parameters
    ----------
    t : TraitAllocation
    variant : str
        `simple` (profiles {1, 1}), `loops` ({1, 1} or a loop {1}),
        `weighted` ({j, j}), `weighted_loops` ({j, j} or a loop {j}) or
        `hyper` (any nonempty profile of ones: feature allocations as
        hypergraphs).
    j_range : (int, int), optional
        Accepted edge weights of the weighted variants; defaults to all the
        multiplicities in `t`.

    Returns
    -------
    Multigraph

    Raises
    ------
    EncodingError
        For the first index whose membership profile the variant rejects.

    """
    constraint = _variant_constraint(variant, j_range, t)
    traits = order(t).sequence
    edges = []
    for n in range(1, t.horizon + 1):
        profile = memb(n, t)
        if not profile or not constraint.accepts(profile):
            raise EncodingError(n, profile, variant)
        vertices = tuple(k for k, tau in enumerate(traits, 1) if tau(n))
        edges.append(Edge(n, vertices, profile[0]))
    return Multigraph(range(1, len(traits) + 1), edges)


def edges_to_alloc(edges, horizon=None):
    """Vertex allocation with one trait per vertex touched by `edges`."""
    members = defaultdict(dict)
    for e in edges:
        for v in e.vertices:
            members[v][e.index] = e.weight
    if horizon is None:
        horizon = max((e.index for e in edges), default=0)
    return TraitAllocation(members.values(), horizon=horizon)


def graph_to_alloc(g):
    """Vertex allocation encoding `g`; isolated vertices are dropped."""
    return edges_to_alloc(g.edges, horizon=len(g.edges))


def draw_edges(w, E, rng):
    """
    Draw E edges of the vertex popularity model.

    Edge n gets its own generator, so the first M of E edges are the edges
    drawn with E = M.

    Returns
    -------
    list of Edge
        Vertex ids are 1-based positions in `w`.

    """
    E = check_count(E, name='edge count')
    pairs, probs = _weights(w).pair_probabilities()
    cum = np.cumsum(probs)
    draw = rng.next_draw()
    edges = []
    for n in range(1, E + 1):
        u = draw.index_rng(n).random() * cum[-1]
        k = min(int(np.searchsorted(cum, u, side='right')), len(cum) - 1)
        edges.append(Edge(n, tuple(int(v) for v in pairs[k]), 1))
    return edges


def sample_vertex_popularity(w, E, rng):
    """
    Sample a vertex allocation with E edges from the vertex popularity
    model: an edge joins k and l with probability proportional to
    w_k * w_l.

    Returns
    -------
    TraitAllocation

    """
    return edges_to_alloc(draw_edges(w, E, rng), horizon=E)


def cfm_edges(w, E, rng, **kwargs):
    """
    Draw E edges through the constrained frequency model of `w`.

    Vertex ids are the regular columns (1-based).

    """
    model, constraint = evpf_model(_weights(w).w)
    outcomes = sample_constrained_outcomes(model, constraint, E, rng,
                                           **kwargs)
    return [
        Edge(n, tuple(k for k, m in enumerate(xi, 1) if m), 1)
        for n, (xi, _) in enumerate(outcomes, 1)
    ]


def sample_vertex_popularity_via_cfm(w, E, rng, **kwargs):
    """
    Sample from the vertex popularity model as a constrained frequency
    model with theta_k = w_k / (1 + w_k) and profiles {1, 1}.

    Returns
    -------
    TraitAllocation

    """
    model, constraint = evpf_model(_weights(w).w)
    return sample_constrained(model, constraint, E, rng, **kwargs)


def graph_stats(g):
    """
    Summary statistics of a multigraph.

    The degree of a vertex is the sum of the weights of its incident edges,
    a loop counted once (the size of the vertex trait).

    Returns
    -------
    GraphStats

    """
    degrees = dict.fromkeys(g.vertices, 0)
    for e in g.edges:
        for v in e.vertices:
            degrees[v] += e.weight
    degrees = tuple(degrees[v] for v in g.vertices)
    return GraphStats(vertex_count=len(g.vertices),
                      edge_count=len(g.edges),
                      distinct_edge_count=len({e.vertices
                                               for e in g.edges}),
                      degrees=degrees,
                      max_degree=max(degrees, default=0))


def _edge_vertex_keys(source, n_max, rng, constraint, **kwargs):
    """Per-index lists of hashable vertex keys."""
    if isinstance(source, FrequencyModel):
        constraint = constraint or ConstraintSet('all')
        outcomes = sample_constrained_outcomes(source, constraint, n_max, rng,
                                               **kwargs)
        keys = []
        for n, (xi, xi_dust) in enumerate(outcomes, 1):
            touched = [('regular', k) for k, m in enumerate(xi) if m]
            touched += [('dust', n, j, c) for j, d in enumerate(xi_dust, 1)
                        for c in range(d)]
            keys.append(touched)
        return keys
    return [list(e.vertices) for e in draw_edges(source, n_max, rng)]


def growth_curve(source, n_max, step=1, rng=None, constraint=None, **kwargs):
    """
    Number of active vertices and of edges along one sampled sequence.

    Parameters
    ----------
    source : VertexWeights, sequence of float or FrequencyModel
        Weights use the vertex popularity sampler; a model uses the
        (constrained) frequency model sampler, and counts every trait as a
        vertex and every index with at least one trait as an edge.
    n_max : int
    step : int
    rng : RngState
    constraint : ConstraintSet, optional
        Constraint of a model source.

    Returns
    -------
    pandas.DataFrame
        Columns `n`, `vertices`, `edges`; rows at n = 0, step, 2 step, ...
        up to n_max. Empty when n_max is 0.

    """
    n_max = check_count(n_max, name='sequence length')
    step = check_count(step, name='step')
    if step < 1:
        raise ValidationError('%r is not a valid step' % step)
    columns = ['n', 'vertices', 'edges']
    if n_max == 0:
        return pandas.DataFrame(columns=columns, dtype=int)
    rng = rng or RngState()
    keys = _edge_vertex_keys(source, n_max, rng, constraint, **kwargs)
    first = {}
    for n, touched in enumerate(keys, 1):
        for key in touched:
            first.setdefault(key, n)
    first = np.sort(np.fromiter(first.values(), dtype=int))
    edges = np.cumsum([0] + [1 if touched else 0 for touched in keys])
    grid = np.arange(0, n_max + 1, step)
    return pandas.DataFrame({
        'n': grid,
        'vertices': np.searchsorted(first, grid, side='right'),
        'edges': edges[grid]
    }, columns=columns)
