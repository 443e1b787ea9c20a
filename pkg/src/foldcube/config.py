"""Resource guards. All of them are read at call time."""

import os

DEFAULT_MAX_N = 20
MAX_N_ENV = "FOLDCUBE_MAX_N"

# Vertex-count limits.
ENUMERATE_MAX_VERTICES = 32
COUNT_MAX_VERTICES = 32
BRUTE_FORCE_MAX_VERTICES = 16

EXHAUSTIVE_THEOREM2_MAX_N = 4
SAMPLED_THEOREM2_MAX_N = 8


def max_dimension():
    value = os.environ.get(MAX_N_ENV)
    if value is None or value.strip() == "":
        return DEFAULT_MAX_N
    try:
        return int(value)
    except ValueError:
        raise ValueError(f"{MAX_N_ENV} must be an integer, got {value!r}") from None
