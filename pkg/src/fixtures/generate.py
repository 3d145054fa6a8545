"""Seeded random preorders and partitions.

The generator is SplitMix64: the state advances by 0x9E3779B97F4A7C15 and
each output is the state passed through the two xor-shift-multiply rounds
(constants 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB) and a final xor-shift
by 31. Floats are the top 53 bits of an output scaled by 2**-53. The draw
order below is part of the output format and must not change.
"""
from typing import Any, Dict, List, Mapping, Optional, Tuple

from src.constants import GENERATOR_MAX_POINTS
from src.decomposition import Decomposition
from src.exceptions import BoundExceededError, InvalidParameterError
from src.fixtures.documents import Document
from src.order import Proset, alexandrov_space, proset_from_relation

MASK64 = (1 << 64) - 1

GENERATOR_KINDS = ("preorder", "partition")

PARAMETERS = {"preorder": ("density",), "partition": ("density", "strata")}

DEFAULT_DENSITY = 0.5


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def random(self) -> float:
        return (self.next() >> 11) * 2.0 ** -53

    def below(self, bound: int) -> int:
        return int(self.random() * bound)


def _preorder(rng: SplitMix64, names: Tuple[str, ...], density: float) -> Proset:
    """Row-major draws for the off-diagonal pairs, then reflexive-transitive closure."""
    pairs = [(a, b) for a in names for b in names if a != b and rng.random() < density]
    return proset_from_relation(names, pairs)


def _partition(rng: SplitMix64, n: int, strata: int) -> List[int]:
    order = list(range(n))
    for i in range(n - 1, 0, -1):
        j = rng.below(i + 1)
        order[i], order[j] = order[j], order[i]
    blocks = [0] * n
    for position, point in enumerate(order):
        blocks[point] = position if position < strata else rng.below(strata)
    # canonical names by first appearance in point order
    names: Dict[int, int] = {}
    for block in blocks:
        names.setdefault(block, len(names))
    return [names[block] for block in blocks]


def _density(params: Mapping[str, Any]) -> float:
    density = params.get("density", DEFAULT_DENSITY)
    if isinstance(density, bool) or not isinstance(density, (int, float)) or not 0 <= density <= 1:
        raise InvalidParameterError(f"density must be a number in [0, 1], got {density!r}")
    return float(density)


def generate(kind: str, n: int, params: Optional[Mapping[str, Any]] = None, seed: int = 0) -> Document:
    """A random document, a pure function of its arguments.

    ``preorder`` draws each ordered pair with probability ``density`` and
    closes. ``partition`` draws a preorder space the same way, then a
    uniform surjection of its points onto ``strata`` blocks; blocks are
    named "S0", "S1", ... by first appearance.
    """
    params = dict(params or {})
    if kind not in GENERATOR_KINDS:
        raise InvalidParameterError(f"unknown generator kind {kind!r}, expected one of {GENERATOR_KINDS}")
    unknown = sorted(set(params) - set(PARAMETERS[kind]))
    if unknown:
        raise InvalidParameterError(f"unknown parameters for {kind}: {', '.join(unknown)}")
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise InvalidParameterError(f"n must be a non-negative integer, got {n!r}")
    if n > GENERATOR_MAX_POINTS:
        raise BoundExceededError(f"{n} points exceeds the generator limit of {GENERATOR_MAX_POINTS}")
    if isinstance(seed, bool) or not isinstance(seed, int) or not 0 <= seed <= MASK64:
        raise InvalidParameterError(f"seed must be an unsigned 64-bit integer, got {seed!r}")

    rng = SplitMix64(seed)
    names = tuple(str(i) for i in range(n))
    preorder = _preorder(rng, names, _density(params))
    if kind == "preorder":
        return Document("proset", preorder)

    strata = params.get("strata", min(n, 2))
    if isinstance(strata, bool) or not isinstance(strata, int) or not (min(n, 1) <= strata <= n):
        raise InvalidParameterError(f"strata must be an integer between {min(n, 1)} and {n}, got {strata!r}")
    blocks = _partition(rng, n, strata)
    space = alexandrov_space(preorder)
    labels: Dict[str, List[str]] = {}
    for point, block in zip(names, blocks):
        labels.setdefault(f"S{block}", []).append(point)
    return Document("decomposition", Decomposition.from_strata(space, labels))
