"""Named fixtures modelling the worked examples.

Each fixture is built in code; ``fixtures/<name>.json`` holds the same
document for use from the command line.
"""
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Mapping, Sequence

from src.decomposition import Decomposition, pointwise
from src.exceptions import UnknownFixtureError
from src.fixtures.documents import Document
from src.order import SymbolicFamily
from src.topology import FiniteSpace


@dataclass(frozen=True)
class Fixture:
    name: str
    document: Document
    notes: str


def _space(points: Sequence[str], min_open: Mapping[str, Sequence[str]]) -> FiniteSpace:
    index = {name: i for i, name in enumerate(points)}
    masks = []
    for x in points:
        mask = 0
        for y in min_open[x]:
            mask |= 1 << index[y]
        masks.append(mask)
    return FiniteSpace(tuple(points), tuple(masks))


def _decomposition(space: FiniteSpace, strata: Mapping[str, Sequence[str]]) -> Document:
    return Document("decomposition", Decomposition.from_strata(space, strata))


@lru_cache(maxsize=None)
def _catalog() -> Dict[str, Fixture]:
    sierpinski = _space(["c", "o"], {"c": ["c", "o"], "o": ["o"]})
    chain = _space(["c0", "c1", "c2"], {"c0": ["c0", "c1", "c2"], "c1": ["c1", "c2"], "c2": ["c2"]})
    pseudo_circle = _space(["a", "b", "x", "y"],
                           {"a": ["a"], "b": ["b"], "x": ["a", "b", "x"], "y": ["a", "b", "y"]})
    line = _space(["m", "z", "p"], {"m": ["m"], "z": ["m", "z", "p"], "p": ["p"]})
    diamond = _space(["0", "1", "2", "3"],
                     {"0": ["0", "1", "2", "3"], "1": ["1", "3"], "2": ["2", "3"], "3": ["3"]})
    discrete = _space(["0", "1"], {"0": ["0"], "1": ["1"]})

    fixtures = [
        Fixture("sierpinski", Document("space", sierpinski),
                "Sierpinski space: two points c, o with {o} the only nontrivial open set"),
        Fixture("chain_3", Document("decomposition", pointwise(chain)),
                "pointwise decomposition of the Alexandrov space of a poset, here the chain c0 <= c1 <= c2; "
                "trivially poset-stratified over itself and a stratification"),
        Fixture("pseudo_circle_4",
                _decomposition(pseudo_circle, {"1": ["a", "x"], "2": ["b", "y"]}),
                "finite model of the circle split into two arcs: locally closed strata, but the decomposition space "
                "is the indiscrete space with two points, so no partial order on the strata works"),
        Fixture("line_3", _decomposition(line, {"0": ["m", "z"], "1": ["p"]}),
                "finite model of the real line split as (-inf, 0] and (0, inf): poset-stratified over 0 <= 1, "
                "not a stratification because pi is not open and the frontier condition fails"),
        Fixture("quadrant_4", Document("decomposition", pointwise(diamond)),
                "finite model of the positive quadrant split into origin, two axes and interior: decomposition "
                "preorder 0 <= 1, 2 <= 3; refining it to a chain keeps pi continuous but not open"),
        Fixture("two_point_discrete", Document("decomposition", pointwise(discrete)),
                "two point discrete space decomposed into points: poset-stratified with respect to any of the "
                "three partial orders on its two strata"),
        Fixture("nat_usual", Document("symbolic", SymbolicFamily.NAT_USUAL),
                "natural numbers with the usual order: a locally finite poset whose Alexandrov space is not "
                "locally finite, since U_m = {n | m <= n} is infinite"),
        Fixture("nat_opposite", Document("symbolic", SymbolicFamily.NAT_OPPOSITE),
                "natural numbers with the reversed order: locally finite both ways"),
        Fixture("nat_discrete", Document("symbolic", SymbolicFamily.NAT_DISCRETE),
                "natural numbers with the discrete order: locally finite both ways"),
    ]
    return {f.name: f for f in fixtures}


def fixture(name: str) -> Fixture:
    try:
        return _catalog()[name]
    except KeyError:
        raise UnknownFixtureError(f"unknown fixture {name!r}, expected one of {', '.join(fixture_names())}")


def fixture_names() -> List[str]:
    return sorted(_catalog())
