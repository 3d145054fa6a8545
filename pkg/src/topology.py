"""Finite topological spaces.

A finite space is an Alexandrov space, so it is stored as the map
x -> U_x of minimal open neighborhoods. Point subsets travel internally as
int bitmasks in the order of ``FiniteSpace.points``; the public functions in
this module accept and return sets of point names.
"""
from dataclasses import dataclass
from functools import cached_property
from typing import Any, FrozenSet, Iterable, List, Mapping, Sequence, Tuple, Union

from src.constants import CROSS_CHECK_POINTS, max_points
from src.exceptions import (BoundExceededError,
                            DefectError,
                            DuplicatePointError,
                            InvariantViolation,
                            UnknownPointError)
from src.utils import bits, full_mask, is_subset, subsets

MAP_MODES = ("continuous", "open", "closed")


@dataclass(frozen=True)
class Verdict:
    """Outcome of a predicate. ``witness`` explains success or failure."""
    holds: bool
    witness: Any = None

    def __bool__(self):
        return self.holds


def validate_ids(names: Iterable[str], what: str = "point") -> Tuple[str, ...]:
    names = tuple(names)
    seen = set()
    for name in names:
        if not isinstance(name, str) or not name:
            raise InvariantViolation(f"{what} ids are nonempty strings", repr(name))
        if name in seen:
            raise DuplicatePointError(f"duplicate {what} name {name!r}")
        seen.add(name)
    return names


def compress(mask: int, positions: Sequence[int]) -> int:
    """Re-indexes mask onto ``positions`` (bit k <- bit positions[k])."""
    out = 0
    for k, i in enumerate(positions):
        if mask >> i & 1:
            out |= 1 << k
    return out


@dataclass(frozen=True, eq=False)
class FiniteSpace:
    """A finite topological space given by its minimal open neighborhoods.

    ``min_open[i]`` is the bitmask of U_x for x = ``points[i]``. Equality is
    independent of the order of ``points``.
    """
    points: Tuple[str, ...]
    min_open: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "points", validate_ids(self.points))
        object.__setattr__(self, "min_open", tuple(self.min_open))
        n = len(self.points)
        if len(self.min_open) != n:
            raise InvariantViolation("one minimal open set per point",
                                     f"{len(self.min_open)} sets for {n} points")
        full = self.full
        for i, u in enumerate(self.min_open):
            if u < 0 or not is_subset(u, full):
                raise UnknownPointError(f"U_{self.points[i]} mentions a point outside the space")
            if not u >> i & 1:
                raise InvariantViolation("x in U_x", self.points[i])
        for i, u in enumerate(self.min_open):
            for j in bits(u):
                if not is_subset(self.min_open[j], u):
                    raise InvariantViolation(
                        "U_x is open",
                        f"{self.points[j]} lies in U_{self.points[i]} but U_{self.points[j]} does not")

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def full(self) -> int:
        return full_mask(len(self.points))

    @cached_property
    def index(self):
        return {name: i for i, name in enumerate(self.points)}

    @cached_property
    def by_name(self) -> Tuple[int, ...]:
        """Point indices in lexicographic order of their names."""
        return tuple(sorted(range(self.n), key=self.points.__getitem__))

    @cached_property
    def _key(self):
        return frozenset((self.points[i], self.names(u)) for i, u in enumerate(self.min_open))

    def __eq__(self, other):
        if not isinstance(other, FiniteSpace):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        nbhds = ", ".join(f"{self.points[i]}: {sorted(self.names(u))}" for i, u in enumerate(self.min_open))
        return f"FiniteSpace({{{nbhds}}})"

    def index_of(self, name: str) -> int:
        try:
            return self.index[name]
        except (KeyError, TypeError):
            raise UnknownPointError(f"unknown point {name!r}")

    def mask(self, names: Iterable[str]) -> int:
        if isinstance(names, str):
            raise TypeError("expected a collection of point names, got a single string")
        out = 0
        for name in names:
            out |= 1 << self.index_of(name)
        return out

    def names(self, mask: int) -> FrozenSet[str]:
        return frozenset(self.points[i] for i in bits(mask))

    def up(self, mask: int) -> int:
        """Smallest open set containing mask."""
        out = 0
        for i in bits(mask):
            out |= self.min_open[i]
        return out

    def is_open(self, mask: int) -> bool:
        return all(is_subset(self.min_open[i], mask) for i in bits(mask))

    def is_closed(self, mask: int) -> bool:
        return self.is_open(self.full & ~mask)

    def closure_of(self, mask: int) -> int:
        out = 0
        for i, u in enumerate(self.min_open):
            if u & mask:
                out |= 1 << i
        return out

    def interior_of(self, mask: int) -> int:
        out = 0
        for i in bits(mask):
            if is_subset(self.min_open[i], mask):
                out |= 1 << i
        return out

    def open_masks(self) -> List[int]:
        guard_size(self.n)
        return [s for s in range(1 << self.n) if self.is_open(s)]


def guard_size(n: int) -> None:
    bound = max_points()
    if n > bound:
        raise BoundExceededError(f"{n} points exceeds the enumeration guard of {bound}")


def from_subbasis(points: Iterable[str], generators: Iterable[Iterable[str]]) -> FiniteSpace:
    """Builds the coarsest topology on points containing every generator.

    U_x is the intersection of the generators containing x, or the whole
    space if none does.
    """
    points = validate_ids(points)
    index = {name: i for i, name in enumerate(points)}
    full = full_mask(len(points))
    masks = []
    for generator in generators:
        mask = 0
        for name in generator:
            if name not in index:
                raise UnknownPointError(f"generator mentions unknown point {name!r}")
            mask |= 1 << index[name]
        masks.append(mask)
    min_open = []
    for i in range(len(points)):
        u = full
        for mask in masks:
            if mask >> i & 1:
                u &= mask
        min_open.append(u)
    return FiniteSpace(points, tuple(min_open))


def _from_open_masks(points: Tuple[str, ...], opens: Iterable[int]) -> Tuple[FiniteSpace, bool]:
    """Builds a space from an open family. Reports whether the family was exactly its topology."""
    opens = set(opens)
    n = len(points)
    full = full_mask(n)
    min_open = []
    for i in range(n):
        u = full
        for s in opens:
            if s >> i & 1:
                u &= s
        min_open.append(u)
    space = FiniteSpace(points, tuple(min_open))
    exact = 0 in opens and full in opens and set(space.open_masks()) == opens
    return space, exact


def from_open_sets(points: Iterable[str], opens: Iterable[Iterable[str]]) -> FiniteSpace:
    """Builds a space from an explicitly enumerated topology.

    The family must contain the empty set and the whole space and be closed
    under unions and intersections; then every point has a minimal open
    neighborhood and the family is recovered exactly from those.
    """
    points = validate_ids(points)
    guard_size(len(points))
    index = {name: i for i, name in enumerate(points)}
    masks = []
    for s in opens:
        mask = 0
        for name in s:
            if name not in index:
                raise UnknownPointError(f"open set mentions unknown point {name!r}")
            mask |= 1 << index[name]
        masks.append(mask)
    space, exact = _from_open_masks(points, masks)
    if not exact:
        raise InvariantViolation("open family is a topology",
                                 "not closed under unions and intersections, or missing the empty set or the space")
    return space


def minimal_open_nbhd(space: FiniteSpace, x: str) -> FrozenSet[str]:
    return space.names(space.min_open[space.index_of(x)])


def closure(space: FiniteSpace, subset: Iterable[str]) -> FrozenSet[str]:
    """Smallest closed set containing subset: the points whose U_x meets it."""
    return space.names(space.closure_of(space.mask(subset)))


def interior(space: FiniteSpace, subset: Iterable[str]) -> FrozenSet[str]:
    return space.names(space.interior_of(space.mask(subset)))


def frontier(space: FiniteSpace, subset: Iterable[str]) -> FrozenSet[str]:
    mask = space.mask(subset)
    return space.names(space.closure_of(mask) & ~mask)


def open_sets(space: FiniteSpace) -> List[FrozenSet[str]]:
    return [space.names(s) for s in space.open_masks()]


def locally_closed_mask(space: FiniteSpace, mask: int) -> Verdict:
    # up(S) is the least open O with S contained in O, so it is the only candidate worth testing
    candidate = space.up(mask)
    holds = candidate & space.closure_of(mask) == mask
    return Verdict(holds, space.names(candidate) if holds else None)


def is_locally_closed(space: FiniteSpace, subset: Iterable[str]) -> Verdict:
    """Whether subset = O ∩ closure(subset) for some open O; the witness is such an O."""
    return locally_closed_mask(space, space.mask(subset))


def specialization_preorder(space: FiniteSpace):
    """x <= y iff x lies in the closure of {y}."""
    from src.order import Proset

    up = [0] * space.n
    for y in range(space.n):
        for x in bits(space.closure_of(1 << y)):
            up[x] |= 1 << y
    if tuple(up) != space.min_open:
        raise DefectError("specialization preorder from closures disagrees with minimal open neighborhoods")
    return Proset(space.points, tuple(up))


def is_t0(space: FiniteSpace) -> Verdict:
    seen = {}
    for i in space.by_name:
        u = space.min_open[i]
        if u in seen:
            return Verdict(False, (space.points[seen[u]], space.points[i]))
        seen[u] = i
    return Verdict(True)


def opposite_space(space: FiniteSpace) -> FiniteSpace:
    """The complementary topology whose open sets are the closed sets of space."""
    return FiniteSpace(space.points, tuple(space.closure_of(1 << i) for i in range(space.n)))


def subspace(space: FiniteSpace, subset: Iterable[str]) -> FiniteSpace:
    mask = space.mask(subset)
    positions = list(bits(mask))
    return FiniteSpace(tuple(space.points[i] for i in positions),
                       tuple(compress(space.min_open[i] & mask, positions) for i in positions))


@dataclass(frozen=True, eq=False)
class SpaceMap:
    """A point map between finite spaces; ``assignment[i]`` indexes the target."""
    source: FiniteSpace
    target: FiniteSpace
    assignment: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "assignment", tuple(self.assignment))
        if len(self.assignment) != self.source.n:
            raise InvariantViolation("assignment is total",
                                     f"{len(self.assignment)} images for {self.source.n} points")
        for j in self.assignment:
            if not 0 <= j < self.target.n:
                raise UnknownPointError(f"assignment lands outside the target (index {j})")

    @classmethod
    def from_mapping(cls, source: FiniteSpace, target: FiniteSpace, mapping: Mapping[str, str]) -> "SpaceMap":
        for name in mapping:
            source.index_of(name)
        missing = [x for x in source.points if x not in mapping]
        if missing:
            raise InvariantViolation("assignment is total", f"no image for {sorted(missing)}")
        return cls(source, target, tuple(target.index_of(mapping[x]) for x in source.points))

    @classmethod
    def identity(cls, space: FiniteSpace) -> "SpaceMap":
        return cls(space, space, tuple(range(space.n)))

    @cached_property
    def fibers(self) -> Tuple[int, ...]:
        out = [0] * self.target.n
        for i, j in enumerate(self.assignment):
            out[j] |= 1 << i
        return tuple(out)

    def image(self, mask: int) -> int:
        out = 0
        for i in bits(mask):
            out |= 1 << self.assignment[i]
        return out

    def preimage(self, mask: int) -> int:
        out = 0
        for j in bits(mask):
            out |= self.fibers[j]
        return out

    def as_dict(self):
        return {x: self.target.points[j] for x, j in zip(self.source.points, self.assignment)}

    def to_monotone(self):
        """The map of specialization preorders (the functor P on morphisms)."""
        from src.order import MonotoneMap

        return MonotoneMap(specialization_preorder(self.source),
                           specialization_preorder(self.target),
                           self.assignment)


def _basis_check(f: SpaceMap, mode: str) -> Verdict:
    source, target = f.source, f.target
    if mode == "continuous":
        # preimages commute with unions, so the basis {U_y} suffices
        for j in target.by_name:
            u = target.min_open[j]
            if not source.is_open(f.preimage(u)):
                return Verdict(False, target.names(u))
    elif mode == "open":
        for i in source.by_name:
            u = source.min_open[i]
            if not target.is_open(f.image(u)):
                return Verdict(False, source.names(u))
    elif mode == "closed":
        # every closed set is a union of point closures
        for i in source.by_name:
            c = source.closure_of(1 << i)
            if not target.is_closed(f.image(c)):
                return Verdict(False, source.names(c))
    else:
        raise ValueError(f"unknown map mode {mode!r}, expected one of {MAP_MODES}")
    return Verdict(True)


def closure_criterion(f: SpaceMap, mode: str) -> Verdict:
    """Decides mode through the closure inequalities instead of open/closed sets.

    continuous: closure(f^-1 B) ⊆ f^-1(closure B) for every B
    open:       f^-1(closure B) ⊆ closure(f^-1 B) for every B
    closed:     closure(f A) ⊆ f(closure A) for every A
    """
    source, target = f.source, f.target
    if mode in ("continuous", "open"):
        guard_size(target.n)
        for b in subsets(target.full):
            lhs = source.closure_of(f.preimage(b))
            rhs = f.preimage(target.closure_of(b))
            if mode == "open":
                lhs, rhs = rhs, lhs
            if not is_subset(lhs, rhs):
                return Verdict(False, target.names(b))
    elif mode == "closed":
        guard_size(source.n)
        for a in subsets(source.full):
            if not is_subset(target.closure_of(f.image(a)), f.image(source.closure_of(a))):
                return Verdict(False, source.names(a))
    else:
        raise ValueError(f"unknown map mode {mode!r}, expected one of {MAP_MODES}")
    return Verdict(True)


def map_check(f: SpaceMap, mode: str, cross_check: bool = True) -> Verdict:
    """Whether f is continuous, open or closed; the witness is a violating set.

    On small spaces the answer is confirmed against the closure criteria.
    """
    verdict = _basis_check(f, mode)
    if cross_check and max(f.source.n, f.target.n) <= CROSS_CHECK_POINTS:
        if closure_criterion(f, mode).holds != verdict.holds:
            raise DefectError(f"closure criterion for {mode} maps disagrees with the direct definition")
    return verdict


def is_homeomorphism(f: SpaceMap) -> Verdict:
    if sorted(f.assignment) != list(range(f.target.n)):
        return Verdict(False, "not a bijection")
    for mode in ("continuous", "open"):
        if not map_check(f, mode):
            return Verdict(False, f"not {mode}")
    return Verdict(True)


FamilyMember = Union[SpaceMap, Tuple[FiniteSpace, Mapping[str, str]]]


def final_open_masks(target_points: Sequence[str], family: Iterable[FamilyMember]) -> List[int]:
    """Every U whose preimage under each family member is open (2^n filter)."""
    points = validate_ids(target_points)
    n = len(points)
    guard_size(n)
    index = {name: i for i, name in enumerate(points)}
    members = []
    for member in family:
        if isinstance(member, SpaceMap):
            source, mapping = member.source, member.as_dict()
        else:
            source, mapping = member
        fibers = [0] * n
        for x in source.points:
            if x not in mapping:
                raise InvariantViolation("assignment is total", f"no image for {x!r}")
            y = mapping[x]
            if y not in index:
                raise UnknownPointError(f"{x!r} maps to {y!r} outside the target")
            fibers[index[y]] |= 1 << source.index[x]
        members.append((source, fibers))

    def preimage_open(source, fibers, candidate):
        pre = 0
        for j in bits(candidate):
            pre |= fibers[j]
        return source.is_open(pre)

    return [candidate for candidate in range(1 << n)
            if all(preimage_open(source, fibers, candidate) for source, fibers in members)]


def final_topology(target_points: Sequence[str], family: Iterable[FamilyMember]) -> FiniteSpace:
    """The finest topology on target_points making every family member continuous."""
    points = validate_ids(target_points)
    opens = final_open_masks(points, family)
    space, exact = _from_open_masks(points, opens)
    if not exact:
        raise DefectError("final open family is not recovered from its minimal open neighborhoods")
    return space
