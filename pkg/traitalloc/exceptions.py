# -*- coding: utf-8 -*-
"""Exceptions."""


class ValidationError(ValueError):
    """Invalid argument."""


class ConfigError(ValidationError):
    """Invalid run configuration or model file."""


class ParseError(ValidationError):
    """Malformed allocation string."""


class DegenerateConstraintError(ValidationError):
    """The constraint set has zero acceptance probability."""


class EncodingError(ValidationError):
    """An allocation cannot be encoded as a graph.

    Attributes
    ----------
    index : int
        The first data index whose membership profile violates the variant.

    """
    def __init__(self, index, profile, variant):
        self.index = index
        self.profile = profile
        self.variant = variant
        super().__init__(
            'index %d has membership profile %r, not valid for %r graphs' %
            (index, profile, variant))


class RetryExhaustedError(RuntimeError):
    """Rejection sampling ran out of retries.

    Attributes
    ----------
    index : int or None
        The data index being resampled, None for whole-allocation rejection.
    retries : int

    """
    def __init__(self, index, retries):
        self.index = index
        self.retries = retries
        if index is None:
            msg = 'no accepted allocation after %d attempts' % retries
        else:
            msg = 'no accepted membership for index %d after %d attempts' % (
                index, retries)
        super().__init__(msg)
