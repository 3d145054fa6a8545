"""Prosets, posets and the Alexandrov functor.

A preorder is stored densely: ``up[i]`` is the bitmask of the elements j
with ``elements[i] <= elements[j]``, which is exactly the minimal open
neighborhood U_i of the Alexandrov topology.
"""
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Tuple, Union

import networkx as nx

from src.exceptions import (DefectError,
                            InvariantViolation,
                            NotAPosetError,
                            UnknownFamilyError,
                            UnknownPointError)
from src.topology import (FiniteSpace,
                          SpaceMap,
                          Verdict,
                          locally_closed_mask,
                          specialization_preorder,
                          validate_ids)
from src.utils import bits, full_mask, is_subset


@dataclass(frozen=True, eq=False)
class Proset:
    elements: Tuple[str, ...]
    up: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", validate_ids(self.elements, "element"))
        object.__setattr__(self, "up", tuple(self.up))
        n = len(self.elements)
        if len(self.up) != n:
            raise InvariantViolation("one relation row per element", f"{len(self.up)} rows for {n} elements")
        full = full_mask(n)
        for i, row in enumerate(self.up):
            if row < 0 or not is_subset(row, full):
                raise UnknownPointError(f"relation row of {self.elements[i]!r} mentions an unknown element")
            if not row >> i & 1:
                a = self.elements[i]
                raise InvariantViolation("not reflexive", f"missing ({a}, {a})")
        for i in self.by_name:
            for j in sorted(bits(self.up[i]), key=self.elements.__getitem__):
                missing = self.up[j] & ~self.up[i]
                if missing:
                    k = min(bits(missing), key=self.elements.__getitem__)
                    a, b, c = self.elements[i], self.elements[j], self.elements[k]
                    raise InvariantViolation("not transitive", f"{a}<={b}<={c} but missing ({a}, {c})")

    @property
    def n(self) -> int:
        return len(self.elements)

    @cached_property
    def index(self) -> Dict[str, int]:
        return {name: i for i, name in enumerate(self.elements)}

    @cached_property
    def by_name(self) -> Tuple[int, ...]:
        return tuple(sorted(range(self.n), key=self.elements.__getitem__))

    @cached_property
    def down(self) -> Tuple[int, ...]:
        out = [0] * self.n
        for i, row in enumerate(self.up):
            for j in bits(row):
                out[j] |= 1 << i
        return tuple(out)

    @cached_property
    def _key(self):
        return frozenset(self.elements), frozenset(self.pairs())

    def __eq__(self, other):
        if not isinstance(other, Proset):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        strict = ", ".join(f"{a}<={b}" for a, b in self.pairs() if a != b)
        return f"{type(self).__name__}({sorted(self.elements)}; {strict})"

    def index_of(self, name: str) -> int:
        try:
            return self.index[name]
        except (KeyError, TypeError):
            raise UnknownPointError(f"unknown element {name!r}")

    def names(self, mask: int) -> FrozenSet[str]:
        return frozenset(self.elements[i] for i in bits(mask))

    def leq(self, a: str, b: str) -> bool:
        return bool(self.up[self.index_of(a)] >> self.index_of(b) & 1)

    def pairs(self) -> List[Tuple[str, str]]:
        """All related pairs (a, b) with a <= b, sorted by name."""
        return sorted((self.elements[i], self.elements[j]) for i, row in enumerate(self.up) for j in bits(row))


class Poset(Proset):
    def __post_init__(self):
        super().__post_init__()
        verdict = is_poset(self)
        if not verdict:
            a, b = verdict.witness
            raise NotAPosetError(f"relation is not antisymmetric: {a}<={b} and {b}<={a}")


@dataclass(frozen=True, eq=False)
class MonotoneMap:
    source: Proset
    target: Proset
    assignment: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "assignment", tuple(self.assignment))
        if len(self.assignment) != self.source.n:
            raise InvariantViolation("assignment is total",
                                     f"{len(self.assignment)} images for {self.source.n} elements")
        for j in self.assignment:
            if not 0 <= j < self.target.n:
                raise UnknownPointError(f"assignment lands outside the target (index {j})")

    def as_dict(self) -> Dict[str, str]:
        return {a: self.target.elements[j] for a, j in zip(self.source.elements, self.assignment)}

    def fiber(self, name: str) -> FrozenSet[str]:
        j = self.target.index_of(name)
        return frozenset(a for a, k in zip(self.source.elements, self.assignment) if k == j)

    def is_monotone(self) -> Verdict:
        for i in self.source.by_name:
            image_row = self.target.up[self.assignment[i]]
            for j in bits(self.source.up[i]):
                if not image_row >> self.assignment[j] & 1:
                    return Verdict(False, (self.source.elements[i], self.source.elements[j]))
        return Verdict(True)

    def to_space_map(self) -> SpaceMap:
        """The map of Alexandrov spaces (the functor T on morphisms)."""
        return SpaceMap(alexandrov_space(self.source), alexandrov_space(self.target), self.assignment)


def proset_from_relation(elements: Iterable[str],
                         pairs: Iterable[Tuple[str, str]],
                         close: bool = True) -> Proset:
    """Builds a proset from related pairs.

    With ``close`` the reflexive-transitive closure is taken; otherwise the
    pairs must already form a preorder.
    """
    elements = validate_ids(elements, "element")
    index = {name: i for i, name in enumerate(elements)}
    pairs = [tuple(pair) for pair in pairs]
    for pair in pairs:
        if len(pair) != 2:
            raise InvariantViolation("pairs have two entries", repr(pair))
        for name in pair:
            if name not in index:
                raise UnknownPointError(f"relation mentions unknown element {name!r}")
    up = [0] * len(elements)
    if close:
        graph = nx.DiGraph()
        graph.add_nodes_from(elements)
        graph.add_edges_from(pairs)
        closure = nx.transitive_closure(graph, reflexive=True)
        for a, b in closure.edges:
            up[index[a]] |= 1 << index[b]
        for i in range(len(elements)):
            up[i] |= 1 << i
    else:
        for a, b in pairs:
            up[index[a]] |= 1 << index[b]
    return Proset(elements, tuple(up))


def is_poset(p: Proset) -> Verdict:
    """Antisymmetry; the witness is the least 2-cycle by name."""
    for i in p.by_name:
        for j in p.by_name:
            if i != j and p.up[i] >> j & 1 and p.up[j] >> i & 1:
                return Verdict(False, (p.elements[i], p.elements[j]))
    return Verdict(True)


def as_poset(p: Proset) -> Poset:
    if isinstance(p, Poset):
        return p
    return Poset(p.elements, p.up)


def alexandrov_space(p: Proset) -> FiniteSpace:
    """The space on p whose open sets are the up-sets, U_p = {q : p <= q}."""
    return FiniteSpace(p.elements, p.up)


@dataclass(frozen=True)
class AdjunctionReport:
    unit_is_identity: bool
    counit_is_homeomorphism: bool


def adjunction_roundtrips(p: Proset, x: FiniteSpace) -> AdjunctionReport:
    """P(T(p)) = p and T(P(x)) = x; a failure is a library defect."""
    unit = specialization_preorder(alexandrov_space(p)) == p
    counit = alexandrov_space(specialization_preorder(x)) == x
    if not unit:
        raise DefectError(f"specialization preorder of the Alexandrov space of {p!r} is not the original preorder")
    if not counit:
        raise DefectError(f"Alexandrov space of the specialization preorder of {x!r} is not the original space")
    return AdjunctionReport(unit, counit)


def poset_reflection(p: Proset) -> Tuple[Poset, MonotoneMap]:
    """Quotients p by mutual comparability.

    Each class is named after its lexicographically least member; classes are
    listed in order of their first member in ``p.elements``.
    """
    graph = nx.DiGraph()
    graph.add_nodes_from(range(p.n))
    graph.add_edges_from((i, j) for i, row in enumerate(p.up) for j in bits(row))
    components = sorted((sorted(c) for c in nx.strongly_connected_components(graph)), key=lambda c: c[0])
    assignment = [0] * p.n
    for k, component in enumerate(components):
        for i in component:
            assignment[i] = k
    names = tuple(min(p.elements[i] for i in component) for component in components)
    up = [0] * len(components)
    for i, row in enumerate(p.up):
        for j in bits(row):
            up[assignment[i]] |= 1 << assignment[j]
    poset = Poset(names, tuple(up))
    quotient = MonotoneMap(p, poset, tuple(assignment))
    if not quotient.is_monotone():
        raise DefectError("quotient onto the poset reflection is not monotone")
    return poset, quotient


def up_down_sets(p: Proset, e: str) -> Tuple[FrozenSet[str], FrozenSet[str]]:
    """The minimal open (up-set) and minimal closed (down-set) neighborhoods of e."""
    i = p.index_of(e)
    return p.names(p.up[i]), p.names(p.down[i])


def singleton_locally_closed_check(p: Proset) -> bool:
    """A proset is a poset iff every singleton is locally closed in its Alexandrov space."""
    antisymmetric = is_poset(p).holds
    space = alexandrov_space(p)
    singletons = all(locally_closed_mask(space, 1 << i) for i in range(p.n))
    if antisymmetric != singletons:
        raise DefectError(f"antisymmetry ({antisymmetric}) disagrees with locally closed singletons "
                          f"({singletons}) for {p!r}")
    return antisymmetric


def covers(p: Proset) -> List[Tuple[str, str]]:
    """Pairs a <= b, a != b, with no c strictly between them.

    On a proset "strictly" means c is above a and below b without being
    equivalent to either, so a 2-cycle yields edges in both directions.
    """
    def strict(i, j):
        return p.up[i] >> j & 1 and not p.up[j] >> i & 1

    out = []
    for i in range(p.n):
        for j in bits(p.up[i]):
            if i == j:
                continue
            between = any(strict(i, k) and strict(k, j) for k in range(p.n))
            if not between:
                out.append((p.elements[i], p.elements[j]))
    return sorted(out)


def hasse(p: Proset) -> List[Tuple[str, str]]:
    verdict = is_poset(p)
    if not verdict:
        a, b = verdict.witness
        raise NotAPosetError(f"Hasse diagram needs a poset: {a}<={b} and {b}<={a}")
    strict = nx.DiGraph()
    strict.add_nodes_from(p.elements)
    strict.add_edges_from((a, b) for a, b in p.pairs() if a != b)
    result = sorted(nx.transitive_reduction(strict).edges)
    if result != covers(p):
        raise DefectError("transitive reduction disagrees with the cover relation")
    return result


def opposite(p: Proset) -> Proset:
    return type(p)(p.elements, p.down)


def restrict(p: Proset, elements: Iterable[str]) -> Proset:
    from src.topology import compress

    positions = sorted(p.index_of(name) for name in elements)
    mask = 0
    for i in positions:
        mask |= 1 << i
    return type(p)(tuple(p.elements[i] for i in positions),
                   tuple(compress(p.up[i] & mask, positions) for i in positions))


def is_refinement(coarse: Proset, fine: Proset) -> Verdict:
    """Whether every relation of coarse also holds in fine (same element set)."""
    if set(coarse.elements) != set(fine.elements):
        raise InvariantViolation("orders share an element set",
                                 f"{sorted(coarse.elements)} vs {sorted(fine.elements)}")
    for a, b in coarse.pairs():
        if not fine.leq(a, b):
            return Verdict(False, (a, b))
    return Verdict(True)


@dataclass(frozen=True)
class LocalFiniteness:
    locally_finite_space: bool
    locally_finite_poset: bool
    space_reason: str = ""
    poset_reason: str = ""


def finite_local_finiteness(p: Proset) -> LocalFiniteness:
    """Literal checks on a finite proset. Both are always true here."""
    up_sizes = [bin(row).count("1") for row in p.up]
    interval_sizes = [bin(p.up[i] & p.down[j]).count("1") for i in range(p.n) for j in range(p.n)]
    return LocalFiniteness(all(size <= p.n for size in up_sizes),
                           all(size <= p.n for size in interval_sizes),
                           "every up-set [p, oo) is a subset of a finite set",
                           "every interval [p, q] is a subset of a finite set")


class SymbolicFamily(Enum):
    NAT_USUAL = "nat_usual"
    NAT_OPPOSITE = "nat_opposite"
    NAT_DISCRETE = "nat_discrete"


SYMBOLIC_CATALOG = {
    SymbolicFamily.NAT_USUAL: LocalFiniteness(
        False, True,
        "[p, oo) = {q : p <= q} is infinite for every natural number p",
        "[p, q] = {p, ..., q} has q - p + 1 elements"),
    SymbolicFamily.NAT_OPPOSITE: LocalFiniteness(
        True, True,
        "in the reversed order [p, oo) = {0, ..., p} is a finite initial segment",
        "intervals are the reversed finite intervals of the usual order"),
    SymbolicFamily.NAT_DISCRETE: LocalFiniteness(
        True, True,
        "every up-set is the singleton {p}",
        "every interval is empty or a singleton"),
}


def symbolic_family(tag: Union[str, SymbolicFamily]) -> SymbolicFamily:
    if isinstance(tag, SymbolicFamily):
        return tag
    normalized = str(tag).strip().lower().replace("-", "_")
    aliases = {"natusual": "nat_usual", "natopposite": "nat_opposite", "natdiscrete": "nat_discrete"}
    normalized = aliases.get(normalized, normalized)
    try:
        return SymbolicFamily(normalized)
    except ValueError:
        raise UnknownFamilyError(f"unknown symbolic family {tag!r}")


def symbolic_local_finiteness(tag: Union[str, SymbolicFamily]) -> LocalFiniteness:
    """Analytic answers for the infinite families of the catalog."""
    return SYMBOLIC_CATALOG[symbolic_family(tag)]
