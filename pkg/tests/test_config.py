# -*- coding: utf-8 -*-
# pylint: disable=missing-docstring
# pylint: disable=redefined-outer-name
"""Tests for run configuration and model files."""
import io
import json

import pytest

from traitalloc import testmodels
from traitalloc.config import (RunConfig, load_model, model_from_dict,
                               model_to_dict)
from traitalloc.exceptions import ConfigError, ValidationError
from traitalloc.models import ConstraintSet, FrequencyModel


def test_explicit_model():
    model, constraint = model_from_dict({
        'theta': [[0.5]],
        'dust_rates': [0.1],
        'constraint': 'partition'
    })
    assert model == FrequencyModel([[0.5]], [0.1])
    assert constraint == ConstraintSet('partition')


def test_default_constraint():
    _, constraint = model_from_dict({'theta': [[0.5]]})
    assert constraint == ConstraintSet('all')


def test_families():
    model, constraint = model_from_dict({'eppf': {'w0': 0.1, 'w': [0.5, 0.4]}})
    assert model == testmodels.EppfExample().model
    assert constraint.kind == 'partition'
    model, constraint = model_from_dict({'evpf': {'w': [0.5, 0.3, 0.2]}})
    assert model == testmodels.VertexExample().model
    assert constraint.kind == 'vertex'
    model, constraint = model_from_dict(
        {'efpf': {'theta': [0.5, 0.3], 'dust_rate': 0.2}})
    assert model == FrequencyModel([[0.5], [0.3]], [0.2])
    assert constraint.kind == 'all'


@pytest.mark.parametrize('d', [
    {'theta': [[0.7, 0.6]]},
    {'theta': [[0.5]], 'alpha': 1},
    {'eppf': {'w0': 0.1, 'w': [0.5, 0.4]}, 'theta': [[0.5]]},
    {'eppf': {'w0': 0.1, 'w': [0.5, 0.4], 'beta': 1}},
    {'eppf': {'w0': 0.5, 'w': [0.6]}},
    {'evpf': {'w': [1.0]}},
    {'efpf': {'theta': [1.5]}},
    {'efpf': {'theta': [0.5], 'w': [1]}},
    {'theta': [[0.5]], 'constraint': 'bogus'},
    [0.5],
])
def test_invalid_models(d):
    with pytest.raises(ConfigError):
        model_from_dict(d)


def test_model_file(tmp_path):
    path = tmp_path / 'model.json'
    d = model_to_dict(FrequencyModel([[0.5, 0.1]], [0.2]),
                      ConstraintSet.weighted_edges(1, 2))
    path.write_text(json.dumps(d))
    model, constraint = load_model(path)
    assert model == FrequencyModel([[0.5, 0.1]], [0.2])
    assert constraint == ConstraintSet.weighted_edges(1, 2)
    assert load_model(io.StringIO(json.dumps(d)))[0] == model


def test_unreadable_model(tmp_path):
    with pytest.raises(ConfigError):
        load_model(tmp_path / 'missing.json')
    with pytest.raises(ConfigError):
        load_model(io.StringIO('{"theta": '))


def test_run_config_defaults():
    config = RunConfig(command='sample')
    assert config.draws == 1
    assert config.fmt == 'text'
    assert config.caps.horizon == 4


@pytest.mark.parametrize('kwargs', [{
    'bogus': 1
}, {
    'draws': -1
}, {
    'jobs': 0
}, {
    'fmt': 'xml'
}, {
    'seed': 1.5
}, {
    'via': 'magic'
}])
def test_run_config_errors(kwargs):
    with pytest.raises(ConfigError):
        RunConfig(**kwargs)


def test_canned_models():
    for name in testmodels.registry:
        model, constraint = testmodels.get(name)
        assert isinstance(model, FrequencyModel)
        assert model_from_dict(testmodels.get(name).to_dict()) == (model,
                                                                   constraint)
    with pytest.raises(ValidationError):
        testmodels.get('model-z')
