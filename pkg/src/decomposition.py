"""Decompositions of finite spaces and their classification.

A decomposition partitions a FiniteSpace into named strata. From it we get
the decomposition map pi, the decomposition space I_pi (quotient topology)
and the decomposition preorder (its specialization preorder), and decide
whether the decomposition is Alexandrov, poset-stratified or a
stratification. Each equivalence group is evaluated through independent
routes and the routes are required to agree; a disagreement raises
DefectError.
"""
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from src.constants import CROSS_CHECK_POINTS, ORDER_SEARCH_BOUND
from src.exceptions import (BoundExceededError,
                            DefectError,
                            InvariantViolation,
                            PreconditionError,
                            StratumMismatchError)
from src.order import (Poset,
                       Proset,
                       alexandrov_space,
                       as_poset,
                       finite_local_finiteness,
                       is_poset,
                       is_refinement,
                       poset_reflection,
                       restrict)
from src.topology import (FiniteSpace,
                          SpaceMap,
                          Verdict,
                          final_open_masks,
                          final_topology,
                          is_homeomorphism,
                          locally_closed_mask,
                          map_check,
                          specialization_preorder,
                          subspace,
                          validate_ids)
from src.utils import bits, is_subset

logger = logging.getLogger(__name__)

LEVELS = ("decomposition", "alexandrov", "poset-stratified", "stratification")


def _show(names: Iterable[str]) -> str:
    return "{" + ",".join(sorted(names)) + "}"


@dataclass(frozen=True, eq=False)
class Decomposition:
    """A finite space with a partition into nonempty strata.

    Stratum ids are kept in lexicographic order; ``masks[k]`` is the point
    bitmask of stratum ``labels[k]``.
    """
    space: FiniteSpace
    labels: Tuple[str, ...]
    masks: Tuple[int, ...]

    def __post_init__(self):
        labels = validate_ids(self.labels, "stratum")
        if len(labels) != len(self.masks):
            raise InvariantViolation("one point set per stratum",
                                     f"{len(self.masks)} sets for {len(labels)} strata")
        order = sorted(range(len(labels)), key=labels.__getitem__)
        object.__setattr__(self, "labels", tuple(labels[k] for k in order))
        object.__setattr__(self, "masks", tuple(self.masks[k] for k in order))
        seen = 0
        for label, mask in zip(self.labels, self.masks):
            if mask < 0 or not is_subset(mask, self.space.full):
                raise InvariantViolation("strata are subsets of the space", f"stratum {label}")
            if not mask:
                raise InvariantViolation("strata nonempty", f"stratum {label} is empty")
            if mask & seen:
                raise InvariantViolation("strata not disjoint",
                                         f"stratum {label} shares {_show(self.space.names(mask & seen))}")
            seen |= mask
        if seen != self.space.full:
            raise InvariantViolation("strata cover the space",
                                     f"{_show(self.space.names(self.space.full & ~seen))} in no stratum")

    @classmethod
    def from_strata(cls, space: FiniteSpace, strata: Mapping[str, Iterable[str]]) -> "Decomposition":
        labels = tuple(strata)
        return cls(space, labels, tuple(space.mask(strata[label]) for label in labels))

    @cached_property
    def pi(self) -> Tuple[int, ...]:
        """Stratum index of each point."""
        out = [0] * self.space.n
        for k, mask in enumerate(self.masks):
            for i in bits(mask):
                out[i] = k
        return tuple(out)

    @cached_property
    def index(self) -> Dict[str, int]:
        return {label: k for k, label in enumerate(self.labels)}

    @property
    def strata(self) -> Dict[str, FrozenSet[str]]:
        return {label: self.space.names(mask) for label, mask in zip(self.labels, self.masks)}

    def pi_dict(self) -> Dict[str, str]:
        return {x: self.labels[k] for x, k in zip(self.space.points, self.pi)}

    def stratum_of(self, point: str) -> str:
        return self.labels[self.pi[self.space.index_of(point)]]

    def index_of(self, label: str) -> int:
        try:
            return self.index[label]
        except (KeyError, TypeError):
            raise StratumMismatchError(f"unknown stratum {label!r}")

    @cached_property
    def _key(self):
        return self.space, frozenset(self.strata.items())

    def __eq__(self, other):
        if not isinstance(other, Decomposition):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        strata = ", ".join(f"{label}: {_show(names)}" for label, names in sorted(self.strata.items()))
        return f"Decomposition({strata})"

    def image(self, mask: int) -> int:
        """Strata meeting the point set mask."""
        out = 0
        for i in bits(mask):
            out |= 1 << self.pi[i]
        return out

    def preimage(self, strata_mask: int) -> int:
        out = 0
        for k in bits(strata_mask):
            out |= self.masks[k]
        return out

    def saturate(self, mask: int) -> int:
        """Union of the strata meeting mask."""
        return self.preimage(self.image(mask))

    @cached_property
    def quotient_space(self) -> FiniteSpace:
        # U_i is the least J containing i whose preimage is open
        min_open = []
        for k in range(len(self.labels)):
            current = 1 << k
            while True:
                grown = self.image(self.space.up(self.preimage(current)))
                if grown == current:
                    break
                current = grown
            min_open.append(current)
        return FiniteSpace(self.labels, tuple(min_open))

    @cached_property
    def preorder(self) -> Proset:
        preorder = specialization_preorder(self.quotient_space)
        for j in range(len(self.labels)):
            if minimal_closed_union(self, self.labels[j]) != self.preimage(preorder.down[j]):
                raise DefectError(f"preimage of D_{self.labels[j]} is not the minimal closed union of strata "
                                  f"containing stratum {self.labels[j]}")
        return preorder


def pointwise(space: FiniteSpace) -> Decomposition:
    return Decomposition(space, space.points, tuple(1 << i for i in range(space.n)))


def decomposition_map(d: Decomposition, target: FiniteSpace) -> SpaceMap:
    """pi as a map into a space whose points are the stratum ids."""
    if set(target.points) != set(d.labels):
        raise StratumMismatchError(f"target points {sorted(target.points)} are not the stratum ids {list(d.labels)}")
    relabel = tuple(target.index_of(label) for label in d.labels)
    return SpaceMap(d.space, target, tuple(relabel[k] for k in d.pi))


def decomposition_space(d: Decomposition) -> FiniteSpace:
    """The stratum ids with the quotient topology, by saturation fixpoint."""
    return d.quotient_space


def quotient_by_filtering(d: Decomposition) -> FiniteSpace:
    """The decomposition space again, by filtering all 2^|I| subsets."""
    return final_topology(d.labels, [(d.space, d.pi_dict())])


def minimal_closed_union(d: Decomposition, label: str) -> int:
    """Point mask of the least closed union of strata containing a stratum."""
    current = d.masks[d.index_of(label)]
    while True:
        grown = d.saturate(d.space.closure_of(current))
        if grown == current:
            return current
        current = grown


def decomposition_preorder(d: Decomposition) -> Proset:
    """i <= j iff i lies in the closure of {j} in the decomposition space.

    Equivalently X_i is contained in the minimal closed union of strata
    containing X_j; both descriptions are computed and compared.
    """
    return d.preorder


def _agree(group: str, values: Mapping[str, bool]) -> None:
    if len(set(values.values())) > 1:
        detail = ", ".join(f"{name}={value}" for name, value in values.items())
        raise DefectError(f"{group} conditions disagree: {detail}")


@dataclass(frozen=True)
class AlexandrovEquivalences:
    is_alexandrov: bool
    identity_is_homeomorphism: bool
    pi_continuous: bool

    @property
    def holds(self) -> bool:
        return self.is_alexandrov


def _forcing_graph(d: Decomposition) -> nx.DiGraph:
    """Edge i -> j when every open set meeting X_i must meet X_j."""
    graph = nx.DiGraph()
    graph.add_nodes_from(range(len(d.labels)))
    for k, mask in enumerate(d.masks):
        graph.add_edges_from((k, j) for j in bits(d.image(d.space.up(mask))))
    return graph


def alexandrov_equivalences(d: Decomposition) -> AlexandrovEquivalences:
    labels = d.labels
    quotient = d.quotient_space
    graph = _forcing_graph(d)
    is_alexandrov = True
    smallest = []
    for k in range(len(labels)):
        reach = 0
        for j in nx.descendants(graph, k) | {k}:
            reach |= 1 << j
        if reach != quotient.min_open[k]:
            raise DefectError(f"least open set of strata containing {labels[k]} differs between "
                              f"reachability and the saturation fixpoint")
        smallest.append(reach)
        if not d.space.is_open(d.preimage(reach)):
            is_alexandrov = False
    if len(labels) <= CROSS_CHECK_POINTS:
        # against the filter of all 2^|I| stratum sets
        opens = set(final_open_masks(labels, [(d.space, d.pi_dict())]))
        filtered = all(u in opens and all(s & u == u for s in opens if s >> k & 1)
                       for k, u in enumerate(smallest))
        if filtered != is_alexandrov:
            raise DefectError("Alexandrov condition disagrees with the filtered open family")
    preorder_space = alexandrov_space(decomposition_preorder(d))
    identity = is_homeomorphism(SpaceMap.from_mapping(quotient, preorder_space, {x: x for x in labels})).holds
    continuous = map_check(decomposition_map(d, preorder_space), "continuous").holds
    result = AlexandrovEquivalences(is_alexandrov, identity, continuous)
    _agree("Alexandrov", vars(result))
    return result


def locally_finite_decomposition(d: Decomposition) -> bool:
    """Every point has an open neighborhood meeting finitely many strata.

    U_x meets at most |I| strata, so this is always true on a finite space.
    """
    counts = [bin(d.image(u)).count("1") for u in d.space.min_open]
    return all(count <= len(d.labels) for count in counts)


@dataclass(frozen=True)
class FrontierEquivalences:
    frontier_condition: bool
    closures_are_minimal_unions: bool
    preorder_is_closure_order: bool
    pi_open: bool
    witnesses: Dict[str, str] = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.frontier_condition

    def values(self) -> Dict[str, bool]:
        return {"frontier_condition": self.frontier_condition,
                "closures_are_minimal_unions": self.closures_are_minimal_unions,
                "preorder_is_closure_order": self.preorder_is_closure_order,
                "pi_open": self.pi_open}


def frontier_equivalences(d: Decomposition) -> FrontierEquivalences:
    space, labels, masks = d.space, d.labels, d.masks
    closures = [space.closure_of(mask) for mask in masks]
    preorder = decomposition_preorder(d)
    witnesses = {}

    frontier_condition = True
    for i in range(len(labels)):
        for j in range(len(labels)):
            meet = masks[i] & closures[j]
            if meet and not is_subset(masks[i], closures[j]):
                frontier_condition = False
                witnesses["frontier_condition"] = (
                    f"stratum {labels[i]} meets the closure of stratum {labels[j]} in "
                    f"{_show(space.names(meet))} but is not contained in it")
                break
        if not frontier_condition:
            break

    closures_are_minimal_unions = True
    for j in range(len(labels)):
        union = d.preimage(preorder.down[j])
        if closures[j] != union:
            closures_are_minimal_unions = False
            witnesses["closures_are_minimal_unions"] = (
                f"closure of stratum {labels[j]} is {_show(space.names(closures[j]))} but the minimal closed "
                f"union of strata containing it is {_show(space.names(union))}")
            break

    preorder_is_closure_order = True
    for i in range(len(labels)):
        for j in range(len(labels)):
            related = bool(preorder.up[i] >> j & 1)
            if related != is_subset(masks[i], closures[j]):
                preorder_is_closure_order = False
                witnesses["preorder_is_closure_order"] = (
                    f"{labels[i]} <= {labels[j]} is {related} in the decomposition preorder but stratum "
                    f"{labels[i]} is {'' if not related else 'not '}contained in the closure of stratum {labels[j]}")
                break
        if not preorder_is_closure_order:
            break

    opened = map_check(decomposition_map(d, decomposition_space(d)), "open")
    if not opened:
        witnesses["pi_open"] = (f"the image of the open set {_show(opened.witness)} is not open "
                                f"in the decomposition space")

    result = FrontierEquivalences(frontier_condition, closures_are_minimal_unions,
                                  preorder_is_closure_order, opened.holds, witnesses)
    _agree("frontier", result.values())
    return result


def partial_orders_on(labels: Sequence[str]) -> List[Poset]:
    from src.oracle import partial_orders_on as enumerate_orders

    return enumerate_orders(labels)


def _continuous_into(d: Decomposition, order: Proset) -> bool:
    return map_check(decomposition_map(d, alexandrov_space(order)), "continuous").holds


@dataclass(frozen=True)
class PosetStratifiedEquivalences:
    some_partial_order: bool
    decomposition_preorder: bool
    strata_open_in_minimal_unions: bool
    valid_orders: Optional[Tuple[Poset, ...]] = None
    witnesses: Dict[str, str] = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.decomposition_preorder

    def values(self) -> Dict[str, bool]:
        return {"some_partial_order": self.some_partial_order,
                "decomposition_preorder": self.decomposition_preorder,
                "strata_open_in_minimal_unions": self.strata_open_in_minimal_unions}


def poset_stratified_equivalences(d: Decomposition, search: bool = True) -> PosetStratifiedEquivalences:
    """Whether d is poset-stratified, three ways.

    With ``search`` and at most ORDER_SEARCH_BOUND strata, every partial
    order on the strata is tried; otherwise the existence of a partial order
    is decided through the decomposition preorder.
    """
    space, labels = d.space, d.labels
    preorder = decomposition_preorder(d)
    witnesses = {}

    antisymmetric = is_poset(preorder)
    continuous = _continuous_into(d, preorder)
    by_preorder = antisymmetric.holds and continuous
    if not antisymmetric:
        a, b = antisymmetric.witness
        witnesses["decomposition_preorder"] = f"decomposition preorder has the cycle {a} <= {b} <= {a}"
    elif not continuous:
        witnesses["decomposition_preorder"] = "decomposition map is not continuous into the preorder's space"

    strata_open = True
    for k, mask in enumerate(d.masks):
        union = d.preimage(preorder.down[k])
        if not all(is_subset(space.min_open[i] & union, mask) for i in bits(mask)):
            strata_open = False
            witnesses["strata_open_in_minimal_unions"] = (
                f"stratum {labels[k]} is not open in {_show(space.names(union))}")
            break

    valid_orders = None
    some_order = by_preorder
    if search and len(labels) <= ORDER_SEARCH_BOUND:
        valid_orders = tuple(order for order in partial_orders_on(labels) if _continuous_into(d, order))
        some_order = bool(valid_orders)
    if not some_order:
        witnesses["some_partial_order"] = "no partial order on the strata makes the decomposition map continuous"

    result = PosetStratifiedEquivalences(some_order, by_preorder, strata_open, valid_orders, witnesses)
    _agree("poset-stratified", result.values())
    for order in valid_orders or ():
        if not is_refinement(preorder, order):
            raise DefectError(f"identity from the decomposition preorder to {order!r} is not monotone")
    return result


@dataclass(frozen=True)
class StratificationVerdict:
    holds: bool
    reasons: Tuple[str, ...] = ()

    def __bool__(self):
        return self.holds


def is_stratification(d: Decomposition) -> StratificationVerdict:
    """Locally finite, locally closed strata, frontier condition."""
    reasons = []
    if not locally_finite_decomposition(d):
        reasons.append("decomposition is not locally finite")
    locally_closed = True
    for label, mask in zip(d.labels, d.masks):
        if not locally_closed_mask(d.space, mask):
            locally_closed = False
            reasons.append(f"stratum {label} is not locally closed")
    frontier = frontier_equivalences(d)
    if not frontier.frontier_condition:
        reasons.append("frontier condition fails")

    # locally closed strata and frontier condition iff poset-stratified with pi open
    stratified = poset_stratified_equivalences(d, search=False).holds
    _agree("locally closed and frontier", {"locally_closed_and_frontier": locally_closed and frontier.holds,
                                           "poset_stratified_and_open": stratified and frontier.pi_open})
    return StratificationVerdict(not reasons, tuple(reasons))


@dataclass(frozen=True, eq=False)
class PosetStratification:
    """A decomposition whose map is continuous into the Alexandrov space of a poset."""
    dec: Decomposition
    order: Poset

    def __post_init__(self):
        object.__setattr__(self, "order", as_poset(self.order))
        labels = set(self.dec.labels)
        elements = set(self.order.elements)
        if elements != labels:
            empty = sorted(elements - labels)
            unknown = sorted(labels - elements)
            detail = []
            if empty:
                detail.append(f"ids with empty preimage {empty}")
            if unknown:
                detail.append(f"strata missing from the order {unknown}")
            raise StratumMismatchError("order elements are not the stratum ids: " + "; ".join(detail))
        verdict = map_check(self.pi, "continuous")
        if not verdict:
            raise InvariantViolation("decomposition map is continuous",
                                     f"preimage of {_show(verdict.witness)} is not open")

    @cached_property
    def target(self) -> FiniteSpace:
        return alexandrov_space(self.order)

    @cached_property
    def pi(self) -> SpaceMap:
        return decomposition_map(self.dec, self.target)

    def __eq__(self, other):
        if not isinstance(other, PosetStratification):
            return NotImplemented
        return self.dec == other.dec and self.order == other.order

    def __hash__(self):
        return hash((self.dec, self.order))


def poset_stratified_space(space: FiniteSpace, assignment: Mapping[str, str], order: Proset) -> PosetStratification:
    """Builds a PosetStratification from a point map onto an order's elements.

    Elements of the order with empty preimage are dropped from the order
    before the strata are formed.
    """
    order = as_poset(order)
    strata = {}
    for x in space.points:
        if x not in assignment:
            raise InvariantViolation("assignment is total", f"no image for {x!r}")
        label = assignment[x]
        order.index_of(label)
        strata.setdefault(label, []).append(x)
    for x in assignment:
        space.index_of(x)
    empty = [e for e in order.elements if e not in strata]
    if empty:
        logger.info(f"dropping ids with empty preimage: {sorted(empty)}")
        order = restrict(order, [e for e in order.elements if e in strata])
    return PosetStratification(Decomposition.from_strata(space, strata), order)


@dataclass(frozen=True)
class PosetStratifiedCheck:
    continuous: bool
    surjective: bool
    open: bool


def check_poset_stratified_wrt(d: Decomposition, order: Proset) -> PosetStratifiedCheck:
    order = as_poset(order)
    if set(order.elements) != set(d.labels):
        empty = sorted(set(order.elements) - set(d.labels))
        raise StratumMismatchError(f"order elements {sorted(order.elements)} are not the stratum ids "
                                   f"{list(d.labels)}" + (f" (empty preimage: {empty})" if empty else ""))
    f = decomposition_map(d, alexandrov_space(order))
    surjective = set(f.assignment) == set(range(f.target.n))
    return PosetStratifiedCheck(map_check(f, "continuous").holds, surjective, map_check(f, "open").holds)


def coarsen(d: Decomposition) -> Tuple[Decomposition, PosetStratification]:
    """Merges mutually comparable strata into a poset-stratified decomposition."""
    preorder = decomposition_preorder(d)
    poset, quotient = poset_reflection(preorder)
    strata = {}
    for k, label in enumerate(d.labels):
        strata.setdefault(poset.elements[quotient.assignment[k]], []).extend(d.space.names(d.masks[k]))
    for name, members in ((c, quotient.fiber(c)) for c in poset.elements):
        if len(members) > 1:
            logger.debug(f"merging strata {sorted(members)} into {name}")
    coarse = Decomposition.from_strata(d.space, strata)
    try:
        stratification = PosetStratification(coarse, poset)
    except InvariantViolation as e:
        raise DefectError(f"coarsening is not poset-stratified: {e}")

    unions = [d.preimage(preorder.down[k]) for k in range(len(d.labels))]
    for i in range(len(d.labels)):
        for j in range(len(d.labels)):
            same_class = quotient.assignment[i] == quotient.assignment[j]
            if same_class != (unions[i] == unions[j]):
                raise DefectError(f"strata {d.labels[i]} and {d.labels[j]} are merged iff their minimal "
                                  f"closed unions agree, which fails here")
    return coarse, stratification


def theorem_A(d: Decomposition) -> PosetStratification:
    """A stratification is poset-stratified over i <= j iff X_i ⊆ closure(X_j)."""
    verdict = is_stratification(d)
    if not verdict:
        raise PreconditionError("; ".join(verdict.reasons))
    preorder = decomposition_preorder(d)
    if not is_poset(preorder):
        raise DefectError("decomposition preorder of a stratification is not a partial order")
    closures = [d.space.closure_of(mask) for mask in d.masks]
    for i, mask in enumerate(d.masks):
        for j in range(len(d.labels)):
            if bool(preorder.up[i] >> j & 1) != is_subset(mask, closures[j]):
                raise DefectError("decomposition preorder of a stratification is not the closure order")
    try:
        return PosetStratification(d, as_poset(preorder))
    except InvariantViolation as e:
        raise DefectError(f"stratification is not poset-stratified over its preorder: {e}")


@dataclass(frozen=True)
class TheoremBResult:
    decomposition: Decomposition
    verdict: StratificationVerdict


def theorem_B(ps: PosetStratification) -> TheoremBResult:
    """A poset-stratified space with locally finite target and open map is a stratification."""
    if not finite_local_finiteness(ps.order).locally_finite_space:
        raise PreconditionError("Alexandrov space of the order is not locally finite")
    opened = map_check(ps.pi, "open")
    if not opened:
        raise PreconditionError(f"decomposition map is not open: the image of {_show(opened.witness)} "
                                f"is not open in the order's Alexandrov space")
    verdict = is_stratification(ps.dec)
    if not verdict:
        raise DefectError(f"open poset-stratified space is not a stratification: {'; '.join(verdict.reasons)}")
    if not is_refinement(decomposition_preorder(ps.dec), ps.order):
        raise DefectError("identity from the decomposition preorder to the given order is not monotone")
    return TheoremBResult(ps.dec, verdict)


@dataclass(frozen=True)
class InitialOrderReport:
    preorder: Proset
    valid_orders: Tuple[Poset, ...]


def initial_order_check(d: Decomposition, bound: int = ORDER_SEARCH_BOUND) -> InitialOrderReport:
    """All partial orders that make d poset-stratified; each contains the decomposition preorder."""
    if len(d.labels) > bound:
        raise BoundExceededError(f"{len(d.labels)} strata exceeds the order search bound of {bound}")
    if not poset_stratified_equivalences(d, search=False).holds:
        raise PreconditionError("decomposition is not poset-stratified")
    preorder = decomposition_preorder(d)
    valid = tuple(order for order in partial_orders_on(d.labels) if _continuous_into(d, order))
    for order in valid:
        if not is_refinement(preorder, order):
            raise DefectError(f"decomposition preorder is not contained in {order!r}")
    return InitialOrderReport(preorder, valid)


@dataclass(frozen=True)
class RefinementReport:
    tested: int


def refinement_never_open(d: Decomposition) -> RefinementReport:
    """Every strict refinement of a stratification's order keeps pi continuous but never open."""
    verdict = is_stratification(d)
    if not verdict:
        raise PreconditionError("; ".join(verdict.reasons))
    if len(d.labels) > ORDER_SEARCH_BOUND:
        raise BoundExceededError(f"{len(d.labels)} strata exceeds the order search bound of {ORDER_SEARCH_BOUND}")
    preorder = decomposition_preorder(d)
    tested = 0
    for order in partial_orders_on(d.labels):
        if order == preorder or not is_refinement(preorder, order):
            continue
        check = check_poset_stratified_wrt(d, order)
        if not check.continuous or check.open:
            raise DefectError(f"refinement {order!r} gives continuous={check.continuous}, open={check.open}")
        tested += 1
    return RefinementReport(tested)


@dataclass(frozen=True)
class Semicontinuity:
    sat_open_open: bool
    sat_closed_closed: bool
    pi_open: bool
    pi_closed: bool

    @property
    def lower_semicontinuous(self) -> bool:
        return self.pi_open

    @property
    def upper_semicontinuous(self) -> bool:
        return self.pi_closed

    @property
    def continuous(self) -> bool:
        return self.pi_open and self.pi_closed


def semicontinuity(d: Decomposition) -> Semicontinuity:
    """Saturations of opens/closeds against openness/closedness of pi.

    Labels follow the map characterization: pi open is lower, pi closed is
    upper semicontinuous.
    """
    space = d.space
    # saturation commutes with unions; opens are unions of the U_x, closeds of point closures
    point_closures = [space.closure_of(1 << i) for i in range(space.n)]
    sat_open_open = all(space.is_open(d.saturate(u)) for u in space.min_open)
    sat_closed_closed = all(space.is_closed(d.saturate(c)) for c in point_closures)
    if space.n <= CROSS_CHECK_POINTS:
        opens = space.open_masks()
        if (sat_open_open != all(space.is_open(d.saturate(u)) for u in opens)
                or sat_closed_closed != all(space.is_closed(d.saturate(space.full & ~u)) for u in opens)):
            raise DefectError("saturation from the basis disagrees with saturation of every open set")
    f = decomposition_map(d, decomposition_space(d))
    pi_open = map_check(f, "open").holds
    pi_closed = map_check(f, "closed").holds
    _agree("open saturation", {"sat_open_open": sat_open_open, "pi_open": pi_open})
    _agree("closed saturation", {"sat_closed_closed": sat_closed_closed, "pi_closed": pi_closed})
    return Semicontinuity(sat_open_open, sat_closed_closed, pi_open, pi_closed)


def induced_decomposition(d: Decomposition, f: SpaceMap) -> Decomposition:
    """Pulls d back along f; strata with empty preimage are dropped."""
    if f.target != d.space:
        raise InvariantViolation("map lands in the decomposed space")
    strata = {}
    for x, j in zip(f.source.points, f.assignment):
        strata.setdefault(d.stratum_of(f.target.points[j]), []).append(x)
    return Decomposition.from_strata(f.source, strata)


def inclusion_is_monotone(d: Decomposition, f: SpaceMap) -> Verdict:
    """The stratum ids of the pullback along a continuous f sit monotonically inside those of d."""
    if not map_check(f, "continuous"):
        raise PreconditionError("map is not continuous")
    inner = decomposition_preorder(induced_decomposition(d, f))
    outer = decomposition_preorder(d)
    for a, b in inner.pairs():
        if not outer.leq(a, b):
            raise DefectError(f"{a} <= {b} in the pulled back preorder but not in the original")
    return Verdict(True)


def open_cover_family(space: FiniteSpace) -> List[SpaceMap]:
    """Inclusions of the distinct minimal open neighborhoods."""
    family = []
    for u in sorted(set(space.min_open)):
        piece = subspace(space, space.names(u))
        family.append(SpaceMap.from_mapping(piece, space, {x: x for x in piece.points}))
    return family


def final_family_alexandrov(d: Decomposition, family: Sequence[SpaceMap]) -> Verdict:
    """d is Alexandrov iff every pullback along a final family is."""
    if final_topology(d.space.points, family) != d.space:
        raise PreconditionError("space does not carry the final topology of the family")
    own = alexandrov_equivalences(d).holds
    pulled = all(alexandrov_equivalences(induced_decomposition(d, f)).holds for f in family)
    _agree("final family Alexandrov", {"decomposition": own, "pullbacks": pulled})
    return Verdict(own)


@dataclass(frozen=True)
class ClassificationReport:
    alexandrov: AlexandrovEquivalences
    locally_finite: bool
    locally_closed: Dict[str, bool]
    frontier: FrontierEquivalences
    poset_stratified: PosetStratifiedEquivalences
    stratification: StratificationVerdict
    semicontinuity: Semicontinuity
    preorder: Proset
    witnesses: Dict[str, str] = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        if self.stratification:
            return "stratification"
        if self.poset_stratified.holds:
            return "poset-stratified"
        if self.alexandrov.holds:
            return "alexandrov"
        return "decomposition"

    def shortfall(self, level: str) -> List[str]:
        """Why the decomposition does not reach level (empty if it does)."""
        if level not in LEVELS:
            raise ValueError(f"unknown level {level!r}, expected one of {LEVELS}")
        reasons = []
        if level in ("alexandrov", "poset-stratified", "stratification") and not self.alexandrov.holds:
            reasons.append("decomposition space is not Alexandrov")
        if level == "poset-stratified" and not self.poset_stratified.holds:
            reasons.extend(self.poset_stratified.witnesses.values())
        if level == "stratification":
            reasons.extend(self.stratification.reasons)
        return reasons

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "alexandrov": vars(self.alexandrov).copy(),
            "locally_finite": self.locally_finite,
            "locally_closed": dict(sorted(self.locally_closed.items())),
            "frontier": self.frontier.values(),
            "poset_stratified": self.poset_stratified.values(),
            "stratification": self.stratification.holds,
            "stratification_reasons": list(self.stratification.reasons),
            "semicontinuity": {
                "sat_open_open": self.semicontinuity.sat_open_open,
                "sat_closed_closed": self.semicontinuity.sat_closed_closed,
                "pi_open": self.semicontinuity.pi_open,
                "pi_closed": self.semicontinuity.pi_closed,
                "lower_semicontinuous": self.semicontinuity.lower_semicontinuous,
                "upper_semicontinuous": self.semicontinuity.upper_semicontinuous,
            },
            "decomposition_preorder": [list(pair) for pair in self.preorder.pairs()],
            "witnesses": dict(sorted(self.witnesses.items())),
        }


def classify(d: Decomposition) -> ClassificationReport:
    alexandrov = alexandrov_equivalences(d)
    frontier = frontier_equivalences(d)
    stratified = poset_stratified_equivalences(d)
    stratification = is_stratification(d)
    locally_closed = {label: locally_closed_mask(d.space, mask).holds for label, mask in zip(d.labels, d.masks)}
    witnesses = dict(frontier.witnesses)
    witnesses.update(stratified.witnesses)
    for label, closed in locally_closed.items():
        if not closed:
            witnesses[f"locally_closed:{label}"] = f"stratum {label} is not open in its closure"
    return ClassificationReport(alexandrov=alexandrov,
                                locally_finite=locally_finite_decomposition(d),
                                locally_closed=locally_closed,
                                frontier=frontier,
                                poset_stratified=stratified,
                                stratification=stratification,
                                semicontinuity=semicontinuity(d),
                                preorder=decomposition_preorder(d),
                                witnesses=witnesses)
