# -*- coding: utf-8 -*-
"""Constants."""

# canonical string of the empty allocation
EMPTY = '∅'

# CLI exit codes
EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_CHECK_FAILED = 2
EXIT_RETRY_EXHAUSTED = 3
