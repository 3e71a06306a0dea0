"""Runtime limits. Every limit can be overridden per call; the closure budget
also honours the ``TCKIT_BUDGET`` environment variable."""

import os

DEFAULT_CLOSURE_BUDGET = 10**6
DEFAULT_NORMAL_LIMIT = 5000
DEFAULT_POINT_CEILING = 10**5
DEFAULT_PRIME_LIMIT = 1000


def closure_budget() -> int:
    raw = os.environ.get("TCKIT_BUDGET")
    if raw:
        return int(raw)
    return DEFAULT_CLOSURE_BUDGET
