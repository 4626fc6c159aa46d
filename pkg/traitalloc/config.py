# -*- coding: utf-8 -*-
"""Run configuration and model files."""
import json
import logging

import traitalloc.defaults
from traitalloc.exceptions import ConfigError, ValidationError
from traitalloc.models import ConstraintSet, FrequencyModel, TruncationCaps
from traitalloc.prob import efpf_model, eppf_model, evpf_model
from traitalloc.utils import read_text

logger = logging.getLogger(__name__)

MODEL_KEYS = ('theta', 'dust_rates', 'constraint', 'eppf', 'efpf', 'evpf')
FAMILY_KEYS = {
    'eppf': {'w0', 'w', 'normalize'},
    'efpf': {'theta', 'dust_rate'},
    'evpf': {'w'},
}


def model_from_dict(d):
    """
    Frequency model and constraint from a model dict.

    Accepted keys are `theta`, `dust_rates` and `constraint`, or one of the
    parameterized families `eppf` ({"w0", "w", "normalize"}), `efpf`
    ({"theta", "dust_rate"}) and `evpf` ({"w"}), which set their own
    constraint.

    Returns
    -------
    (FrequencyModel, ConstraintSet)

    Raises
    ------
    ConfigError

    """
    if not isinstance(d, dict):
        raise ConfigError('%r is not a valid model object' % (d, ))
    unknown = set(d) - set(MODEL_KEYS)
    if unknown:
        raise ConfigError('Unknown model keys: %s' % sorted(unknown))
    families = [k for k in FAMILY_KEYS if k in d]
    try:
        if families:
            others = set(d) - {families[0]}
            if others:
                raise ConfigError('%r cannot be combined with %s' %
                                  (families[0], sorted(others)))
            params = d[families[0]]
            extra = set(params) - FAMILY_KEYS[families[0]]
            if extra:
                raise ConfigError('Unknown %s keys: %s' %
                                  (families[0], sorted(extra)))
            if families[0] == 'eppf':
                return eppf_model(params.get('w0', 0.0), params.get('w', []),
                                  normalize=params.get('normalize', False))
            if families[0] == 'efpf':
                return efpf_model(params.get('theta', []),
                                  params.get('dust_rate', 0.0))
            return evpf_model(params.get('w', []))
        model = FrequencyModel.from_dict(
            {k: d[k]
             for k in ('theta', 'dust_rates') if k in d})
        return model, ConstraintSet.from_json(d.get('constraint'))
    except ConfigError:
        raise
    except (ValidationError, TypeError, AttributeError) as e:
        raise ConfigError('Invalid model: %s' % e) from e


def model_to_dict(model, constraint=None):
    """Inverse of `model_from_dict` for explicit models."""
    d = model.to_dict()
    if constraint is not None:
        d['constraint'] = constraint.to_json()
    return d


def load_model(source):
    """Model and constraint from a JSON file (path or readable object)."""
    try:
        d = json.loads(read_text(source))
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError('Cannot read model %r: %s' % (source, e)) from e
    return model_from_dict(d)


class RunConfig:
    """
    Validated parameters of one CLI run.

    Unknown fields raise `ConfigError`; missing fields take their defaults.

    """

    fields = {
        'command': None,
        'model': None,
        'constraint': None,
        'n': None,
        'draws': 1,
        'seed': traitalloc.defaults.seed,
        'caps': None,
        'fmt': 'text',
        'oracle': False,
        'jobs': 1,
        'allocation': None,
        'weights': None,
        'power_law': None,
        'edges': 1,
        'n_max': 0,
        'step': 1,
        'via': 'direct',
        'variant': 'simple',
        'out': None,
        'max_retries': traitalloc.defaults.max_retries,
        'verbose': 0,
    }

    def __init__(self, **kwargs):
        unknown = set(kwargs) - set(self.fields)
        if unknown:
            raise ConfigError('Unknown configuration fields: %s' %
                              sorted(unknown))
        values = dict(self.fields)
        values.update(kwargs)
        if values['caps'] is None:
            values['caps'] = TruncationCaps()
        for name in ('n', 'draws', 'edges', 'n_max', 'seed', 'jobs', 'step',
                     'max_retries'):
            v = values[name]
            if v is None and name == 'n':
                continue
            if isinstance(v, bool) or not isinstance(v, int) or v < 0:
                raise ConfigError('%r is not a valid value for %s' %
                                  (v, name))
        for name in ('jobs', 'step', 'max_retries'):
            if values[name] < 1:
                raise ConfigError('%s must be positive' % name)
        if values['fmt'] not in ('text', 'json', 'csv'):
            raise ConfigError('%r is not a valid format' % values['fmt'])
        if values['via'] not in ('direct', 'cfm'):
            raise ConfigError('%r is not a valid edge sampler' % values['via'])
        self.__dict__.update(values)

    def __repr__(self):
        return '%s(%s)' % (self.__class__.__name__, ', '.join(
            '%s=%r' % (k, self.__dict__[k]) for k in self.fields))
