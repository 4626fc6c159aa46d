# -*- coding: utf-8 -*-
"""Canned models."""
import logging

from traitalloc.config import model_to_dict
from traitalloc.exceptions import ValidationError
from traitalloc.models import ConstraintSet, DeFinettiMeasure, FrequencyModel
from traitalloc.prob import eppf_model, evpf_model

logger = logging.getLogger(__name__)


class CannedModelMixin:
    """A frequency model with its constraint."""

    model = None
    constraint = ConstraintSet('all')

    def __iter__(self):
        return iter((self.model, self.constraint))

    def __repr__(self):
        return '%s()' % self.__class__.__name__

    def to_dict(self):
        """Model file content."""
        return model_to_dict(self.model, self.constraint)


class ModelA(CannedModelMixin):
    """One regular column joined at multiplicity 1 with probability 1/2."""
    def __init__(self):
        self.model = FrequencyModel([[0.5]])


class ModelB(CannedModelMixin):
    """Dust only: Poisson(rate) singleton traits per index."""
    def __init__(self, rate=0.5):
        self.rate = rate
        self.model = FrequencyModel(dust_rates=[rate])


class EppfExample(CannedModelMixin):
    """Paintbox partition with dust mass 0.1 and blocks (0.5, 0.4)."""
    def __init__(self, w0=0.1, w=(0.5, 0.4)):
        self.model, self.constraint = eppf_model(w0, w)


class VertexExample(CannedModelMixin):
    """Vertex popularity model with weights (0.5, 0.3, 0.2)."""
    def __init__(self, w=(0.5, 0.3, 0.2)):
        self.w = tuple(w)
        self.model, self.constraint = evpf_model(w)


def partition_measure():
    """
    De Finetti measure of a partition: join column 1 with probability 0.6,
    else start a singleton block.
    """
    return DeFinettiMeasure({((1, ), ()): 0.6, ((), (1, )): 0.4})


registry = {
    'model-a': ModelA,
    'model-b': ModelB,
    'eppf-example': EppfExample,
    'vertex-example': VertexExample,
}


def get(name):
    """Canned model instance by name."""
    try:
        return registry[name]()
    except KeyError as e:
        raise ValidationError('%r is not a valid test model; choose from %s' %
                              (name, sorted(registry))) from e
