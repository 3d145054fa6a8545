import os
from pathlib import Path

from src.exceptions import InvalidParameterError

PROJECT_PATH = Path(__file__).resolve().parent.parent
FIXTURES_PATH = PROJECT_PATH / "fixtures"

MAX_POINTS_ENV = "STRATKIT_MAX_POINTS"

# Open-set enumeration and final topologies are exponential in this
MAX_POINTS = 20

ENUMERATION_BOUNDS = {"preorders": 4, "posets": 4, "partitions": 6}

# Largest stratum set for which every partial order is searched
ORDER_SEARCH_BOUND = 4

# Largest space the random generator draws
GENERATOR_MAX_POINTS = 64

# Closure-criterion cross-checks in map_check enumerate every subset
CROSS_CHECK_POINTS = 8


def _env_override():
    value = os.environ.get(MAX_POINTS_ENV)
    if value is None or value == "":
        return None
    try:
        bound = int(value)
    except ValueError:
        raise InvalidParameterError(f"${MAX_POINTS_ENV} must be an integer, got {value!r}")
    if bound < 0:
        raise InvalidParameterError(f"${MAX_POINTS_ENV} must be non-negative, got {bound}")
    return bound


def max_points() -> int:
    override = _env_override()
    return MAX_POINTS if override is None else override


def enumeration_bound(kind: str) -> int:
    override = _env_override()
    return ENUMERATION_BOUNDS[kind] if override is None else override
