# -*- coding: utf-8 -*-
# pylint: disable=missing-docstring
# pylint: disable=redefined-outer-name
"""Tests for model parameterizations."""
import numpy as np
import pytest

from traitalloc.exceptions import ConfigError, ValidationError
from traitalloc.models import (ConstraintSet, DeFinettiMeasure,
                               FrequencyModel, TruncationCaps, poisson_cdf,
                               poisson_logpmf)
from traitalloc.output import parse_alloc


@pytest.mark.parametrize('theta', [[[0.7, 0.6]], [[-0.1]], [[np.nan]],
                                   [0.5]])
def test_invalid_theta(theta):
    with pytest.raises(ValidationError):
        FrequencyModel(theta)


def test_invalid_dust_rates():
    with pytest.raises(ValidationError):
        FrequencyModel(dust_rates=[-1.0])


def test_model_is_read_only():
    model = FrequencyModel([[0.5]])
    with pytest.raises(ValueError):
        model.theta[0, 0] = 0.1


def test_shapes():
    model = FrequencyModel([[0.2, 0.0], [0.0, 0.0]], [0.5, 0.0])
    assert model.n_columns == 2
    assert model.n_levels == 2
    assert model.n_dust_levels == 2
    assert model.effective_shape() == (1, 1, 1)
    assert np.allclose(model.theta0, [0.8, 1.0])


def test_empty_model():
    model = FrequencyModel()
    assert model.n_columns == 0
    assert model.effective_shape() == (0, 0, 0)
    assert model.outcome_prob(()) == 1.0


def test_outcome_prob():
    model = FrequencyModel([[0.5]], [0.5])
    expected = 0.5 * np.exp(-0.5)
    assert model.outcome_prob((1, ), ()) == pytest.approx(expected)
    assert model.outcome_prob((0, ), (2, )) == pytest.approx(
        0.5 * 0.125 * np.exp(-0.5))
    assert model.outcome_prob((2, )) == 0.0
    assert model.outcome_prob((0, 1)) == 0.0


def test_model_dict():
    model = FrequencyModel([[0.5, 0.1]], [0.2])
    assert FrequencyModel.from_dict(model.to_dict()) == model
    assert FrequencyModel.from_dict({'theta': [[0.5, 0.1],
                                               [0.2]]}).theta.shape == (2, 2)
    with pytest.raises(ConfigError):
        FrequencyModel.from_dict({'theta': [[0.5]], 'alpha': 1})


def test_poisson_helpers():
    assert poisson_logpmf(0, 0.0) == 0.0
    assert np.isneginf(poisson_logpmf(1, 0.0))
    assert np.exp(poisson_logpmf(2, 0.5)) == pytest.approx(
        0.125 * np.exp(-0.5))
    assert poisson_cdf(0, 0.0) == 1.0
    assert poisson_cdf(2, 1.0) == pytest.approx(2.5 * np.exp(-1.0))


def test_definetti_measure():
    mu = DeFinettiMeasure({((1, 0), ()): 0.6, ((), (1, )): 0.4})
    assert mu[((1, ), ())] == 0.6
    assert len(mu) == 2


def test_definetti_measure_merges_and_drops():
    mu = DeFinettiMeasure([(((1, ), ()), 0.5), (((1, 0), ()), 0.5),
                           (((), ()), 0.0)])
    assert dict(mu) == {((1, ), ()): 1.0}


@pytest.mark.parametrize('probs', [[0.6, 0.3], [1.2, -0.2]])
def test_definetti_measure_must_be_normalized(probs):
    with pytest.raises(ValidationError):
        DeFinettiMeasure({((1, ), ()): probs[0], ((), (1, )): probs[1]})


@pytest.mark.parametrize('kind, accepted, rejected', [
    ('all', [(), (1, ), (2, 3)], []),
    ('partition', [(1, )], [(), (2, ), (1, 1)]),
    ('feature', [(), (1, ), (1, 1, 1)], [(2, ), (1, 2)]),
    ('vertex', [(1, 1)], [(), (1, ), (1, 1, 1), (2, 2)]),
    ('vertex_loops', [(1, ), (1, 1)], [(), (2, )]),
])
def test_constraint_kinds(kind, accepted, rejected):
    constraint = ConstraintSet(kind)
    for profile in accepted:
        assert constraint.accepts(profile)
    for profile in rejected:
        assert profile not in constraint


def test_weighted_edges():
    constraint = ConstraintSet.weighted_edges(1, 3)
    assert (2, 2) in constraint
    assert (4, 4) not in constraint
    assert (1, 2) not in constraint
    assert constraint.max_profile_length == 2
    with pytest.raises(ValidationError):
        ConstraintSet.weighted_edges(2, 1)


def test_explicit():
    constraint = ConstraintSet.explicit([(2, 1), (3, )])
    assert (1, 2) in constraint
    assert () not in constraint
    assert constraint.max_profile_length == 2
    assert ConstraintSet.explicit([(1, )], allow_empty=True).accepts(())
    with pytest.raises(ValidationError):
        ConstraintSet.explicit([()])


def test_admits():
    partition = ConstraintSet('partition')
    assert partition.admits(parse_alloc('{{1,3},{2}}'))
    assert not partition.admits(parse_alloc('{{1},{3}}', horizon=3))
    assert partition.admits(parse_alloc('∅'))


@pytest.mark.parametrize('constraint', [
    ConstraintSet('vertex'),
    ConstraintSet.weighted_edges(1, 2),
    ConstraintSet.explicit([(1, 1), (2, )], allow_empty=True)
])
def test_constraint_json(constraint):
    assert ConstraintSet.from_json(constraint.to_json()) == constraint


@pytest.mark.parametrize('obj', ['bogus', 'explicit', 3, {
    'weighted_edges': {
        'min': 1,
        'mx': 2
    }
}, {
    'explicit': [[1]],
    'extra': 1
}, {}])
def test_constraint_json_errors(obj):
    with pytest.raises(ConfigError):
        ConstraintSet.from_json(obj)


def test_caps():
    caps = TruncationCaps.from_string('2, 3, 1')
    assert caps == TruncationCaps(2, 3, 1)
    assert str(caps) == '2,3,1,4'
    with pytest.raises(ValidationError):
        TruncationCaps.from_string('1,2')
    with pytest.raises(ValidationError):
        TruncationCaps.from_string('a,b,c')


def test_caps_fit():
    caps = TruncationCaps(columns=2, multiplicity=2, dust=1)
    assert caps.fits(FrequencyModel([[0.1, 0.2], [0.3, 0.0]], [0.1, 0.1]))
    assert not caps.fits(FrequencyModel([[0.1]] * 3))
    assert not caps.fits(FrequencyModel([[0.1, 0.1, 0.1]]))
    assert not caps.fits(FrequencyModel(dust_rates=[0.1, 0.1, 0.1]))
    # trailing zeros do not count
    assert caps.fits(FrequencyModel([[0.1, 0.0, 0.0]] + [[0.0] * 3] * 4,
                                    [0.1, 0.0, 0.0]))
