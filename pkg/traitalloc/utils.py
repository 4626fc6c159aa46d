# -*- coding: utf-8 -*-
"""Helper functions."""
import logging
import sys
from contextlib import contextmanager
from pathlib import Path

logger = logging.getLogger(__name__)


def mkdir(target):
    """Create and return the path to target directory."""
    target = Path(target)
    target.mkdir(parents=True, exist_ok=True)
    return target


@contextmanager
def open_output(target=None):
    """
    Yield a writable text stream for `target`.

    Parameters
    ----------
    target : filepath, file-like object or None
        None or '-' write to stdout. Parent directories of a filepath are
        created as needed.

    """
    if target is None or target == '-':
        yield sys.stdout
        return
    try:
        target = Path(target)
    except TypeError as e:
        if hasattr(target, 'write'):
            yield target
            return
        raise ValueError('Not a valid output: %r' % target) from e
    mkdir(target.parent)
    logger.debug('Writing to %s', target)
    with open(target, 'w', newline='', encoding='utf-8') as fp:
        yield fp


def read_text(source):
    """Return the content of a filepath or of a readable object."""
    try:
        source = Path(source)
    except TypeError as e:
        if hasattr(source, 'read'):
            return source.read()
        raise ValueError('Not a valid input: %r' % source) from e
    with open(source, encoding='utf-8') as fp:
        return fp.read()
