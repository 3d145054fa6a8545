"""Face posets of simplicial complexes as finite models."""
from itertools import combinations
from typing import Iterable, Sequence, Tuple

from src.decomposition import Decomposition
from src.exceptions import InvalidParameterError
from src.order import Poset
from src.topology import FiniteSpace


def face_id(vertices: Iterable[str]) -> str:
    return ",".join(sorted(vertices))


def dimension(face: str) -> int:
    return face.count(",")


def face_poset_model(facets: Sequence[Iterable[str]]) -> Tuple[Poset, FiniteSpace]:
    """All nonempty faces ordered by inclusion, and their Alexandrov space.

    A face is named by its sorted vertices joined with commas. In the space
    the closure of a face is the set of its faces.
    """
    facets = [frozenset(facet) for facet in facets]
    if not facets:
        raise InvalidParameterError("a complex needs at least one facet")
    faces = set()
    for facet in facets:
        if not facet:
            raise InvalidParameterError("empty facet")
        for vertex in facet:
            if not isinstance(vertex, str) or not vertex or "," in vertex:
                raise InvalidParameterError(f"vertex names are nonempty strings without commas, got {vertex!r}")
        for size in range(1, len(facet) + 1):
            faces.update(frozenset(face) for face in combinations(sorted(facet), size))
    ordered = sorted(faces, key=lambda face: (len(face), face_id(face)))
    up = []
    for face in ordered:
        row = 0
        for j, other in enumerate(ordered):
            if face <= other:
                row |= 1 << j
        up.append(row)
    poset = Poset(tuple(face_id(face) for face in ordered), tuple(up))
    return poset, FiniteSpace(poset.elements, poset.up)


def skeleton_decomposition(space: FiniteSpace) -> Decomposition:
    """Strata are the faces of each dimension, named dim0, dim1, ..."""
    strata = {}
    for face in space.points:
        strata.setdefault(f"dim{dimension(face)}", []).append(face)
    return Decomposition.from_strata(space, strata)
