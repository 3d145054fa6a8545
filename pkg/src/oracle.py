"""Brute-force enumeration of small structures and the exhaustive sweep.

Everything is labeled: elements and points are "0".."n-1". Enumerations are
deterministic and index-addressable, so the sweep can fan out by preorder
index and aggregate in any order.
"""
import concurrent.futures
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from src.constants import enumeration_bound
from src.exceptions import (BoundExceededError,
                            DefectError,
                            InvalidParameterError,
                            StratkitError)
from src.utils import bits, full_mask

logger = logging.getLogger(__name__)

KINDS = ("preorders", "posets", "partitions")

# Labeled counts: OEIS A000798, A001035, A000110
KNOWN_COUNTS = {
    "preorders": {0: 1, 1: 1, 2: 4, 3: 29, 4: 355},
    "posets": {0: 1, 1: 1, 2: 3, 3: 19, 4: 219},
    "partitions": {0: 1, 1: 1, 2: 2, 3: 5, 4: 15, 5: 52, 6: 203},
}

NAIVE_BOUND = 3

PROPOSITIONS = (
    "alexandrov",
    "poset_lc",
    "decomposition_space",
    "frontier",
    "poset_stratified",
    "lc_front",
    "semicontinuity",
    "coarsen",
    "theorem_a",
    "refinement_never_open",
    "theorem_b",
    "initial_order",
    "cor_thm_b_plus",
    "general_lf",
)


def labels(n: int) -> Tuple[str, ...]:
    return tuple(str(i) for i in range(n))


def _is_transitive(up: Sequence[int]) -> bool:
    return all(up[j] & ~row == 0 for row in up for j in bits(row))


def _is_antisymmetric(up: Sequence[int]) -> bool:
    return all(not (up[j] >> i & 1) for i, row in enumerate(up) for j in bits(row) if j != i)


@lru_cache(maxsize=None)
def _preorder_rows(n: int) -> Tuple[Tuple[int, ...], ...]:
    """Reflexive-transitive relations, by off-diagonal relation mask."""
    off_diagonal = [(i, j) for i in range(n) for j in range(n) if i != j]
    out = []
    for relation in range(1 << len(off_diagonal)):
        up = [1 << i for i in range(n)]
        for k, (i, j) in enumerate(off_diagonal):
            if relation >> k & 1:
                up[i] |= 1 << j
        if _is_transitive(up):
            out.append(tuple(up))
    return tuple(out)


@lru_cache(maxsize=None)
def _poset_rows(n: int) -> Tuple[Tuple[int, ...], ...]:
    return tuple(up for up in _preorder_rows(n) if _is_antisymmetric(up))


@lru_cache(maxsize=None)
def _partition_strings(n: int) -> Tuple[Tuple[int, ...], ...]:
    """Restricted growth strings in lexicographic order."""
    out = []

    def extend(prefix, blocks):
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        for block in range(blocks + 1):
            extend(prefix + [block], max(blocks, block + 1))

    extend([], 0)
    return tuple(out)


_GENERATORS = {"preorders": _preorder_rows, "posets": _poset_rows, "partitions": _partition_strings}


@dataclass(frozen=True)
class Enumeration:
    """Every labeled structure of one kind on n elements.

    Orders come out as Proset/Poset values on "0".."n-1"; partitions as
    ``{stratum id: points}`` with block k named ``str(k)``.
    """
    kind: str
    n: int
    items: Tuple[Tuple[int, ...], ...] = field(repr=False)

    def __len__(self):
        return len(self.items)

    def __getitem__(self, index: int):
        raw = self.items[index]
        names = labels(self.n)
        if self.kind == "partitions":
            strata = {}
            for point, block in zip(names, raw):
                strata.setdefault(str(block), []).append(point)
            return strata
        from src.order import Poset, Proset

        return (Poset if self.kind == "posets" else Proset)(names, raw)

    def __iter__(self) -> Iterator:
        for index in range(len(self)):
            yield self[index]

    def documents(self) -> Iterator:
        from src.fixtures.documents import Document
        from src.topology import FiniteSpace

        space = FiniteSpace(labels(self.n), tuple(1 << i for i in range(self.n)))
        for item in self:
            if self.kind == "partitions":
                from src.decomposition import Decomposition

                yield Document("decomposition", Decomposition.from_strata(space, item))
            else:
                yield Document(self.kind[:-1], item)


def enumerate_structures(kind: str, n: int) -> Enumeration:
    if kind not in KINDS:
        raise InvalidParameterError(f"unknown enumeration kind {kind!r}, expected one of {KINDS}")
    if not isinstance(n, int) or n < 0:
        raise InvalidParameterError(f"size must be a non-negative integer, got {n!r}")
    bound = enumeration_bound(kind)
    if n > bound:
        raise BoundExceededError(f"{kind} on {n} elements exceeds the enumeration bound of {bound}")
    items = _GENERATORS[kind](n)
    expected = KNOWN_COUNTS[kind].get(n)
    if expected is not None and len(items) != expected:
        raise DefectError(f"enumerated {len(items)} {kind} on {n} elements, expected {expected}")
    return Enumeration(kind, n, items)


def naive_preorder_count(n: int) -> int:
    """Filters all 2^(n*n) relations for reflexivity and transitivity."""
    if n > NAIVE_BOUND:
        raise BoundExceededError(f"the naive filter is limited to {NAIVE_BOUND} elements")
    count = 0
    for relation in range(1 << n * n):
        up = [relation >> (i * n) & full_mask(n) for i in range(n)]
        if all(row >> i & 1 for i, row in enumerate(up)) and _is_transitive(up):
            count += 1
    return count


def closure_preorder_count(n: int) -> int:
    """Closes every relation and counts the distinct results."""
    from src.order import proset_from_relation

    if n > NAIVE_BOUND:
        raise BoundExceededError(f"the naive filter is limited to {NAIVE_BOUND} elements")
    names = labels(n)
    seen = set()
    for relation in range(1 << n * n):
        pairs = [(names[k // n], names[k % n]) for k in bits(relation)]
        seen.add(proset_from_relation(names, pairs).up)
    return len(seen)


@lru_cache(maxsize=None)
def _partial_orders_on(names: Tuple[str, ...]):
    from src.order import Poset

    return tuple(Poset(names, rows) for rows in enumerate_structures("posets", len(names)).items)


def partial_orders_on(names: Sequence[str]) -> List:
    """Every partial order on the given ids, in enumeration order."""
    return list(_partial_orders_on(tuple(sorted(names))))


def _check(results: Dict[str, Optional[str]], name: str, check: Callable[[], object]) -> None:
    try:
        outcome = check()
    except StratkitError as e:
        results[name] = f"{type(e).__name__}: {e}"
        return
    results[name] = f"{name} does not hold" if outcome is False else None


def verify_instance(d) -> Dict[str, Optional[str]]:
    """Runs every applicable proposition on d.

    Maps each applicable proposition to None on success or to a failure
    message. Propositions whose hypotheses d does not meet are left out.
    """
    from src.decomposition import (PosetStratification,
                                   alexandrov_equivalences,
                                   coarsen,
                                   decomposition_map,
                                   decomposition_preorder,
                                   decomposition_space,
                                   final_family_alexandrov,
                                   frontier_equivalences,
                                   inclusion_is_monotone,
                                   initial_order_check,
                                   is_stratification,
                                   open_cover_family,
                                   poset_stratified_equivalences,
                                   quotient_by_filtering,
                                   refinement_never_open,
                                   semicontinuity,
                                   theorem_A,
                                   theorem_B)
    from src.order import (adjunction_roundtrips,
                           alexandrov_space,
                           singleton_locally_closed_check)
    from src.topology import map_check, specialization_preorder

    results = {}
    _check(results, "alexandrov", lambda: alexandrov_equivalences(d).holds)

    def poset_lc():
        preorder = specialization_preorder(d.space)
        adjunction_roundtrips(preorder, d.space)
        singleton_locally_closed_check(preorder)
        singleton_locally_closed_check(decomposition_preorder(d))

    _check(results, "poset_lc", poset_lc)
    _check(results, "decomposition_space", lambda: decomposition_space(d) == quotient_by_filtering(d))
    _check(results, "frontier", lambda: frontier_equivalences(d))
    _check(results, "semicontinuity", lambda: semicontinuity(d))

    stratified = []
    _check(results, "poset_stratified", lambda: stratified.append(poset_stratified_equivalences(d)))
    verdict = []
    _check(results, "lc_front", lambda: verdict.append(is_stratification(d)))

    def coarsened():
        coarse, _ = coarsen(d)
        return poset_stratified_equivalences(coarse, search=False).holds

    _check(results, "coarsen", coarsened)

    if verdict and verdict[0]:
        def theorem_a():
            ps = theorem_A(d)
            closures = [d.space.closure_of(mask) for mask in d.masks]
            expected = {(d.labels[i], d.labels[j]) for i, mask in enumerate(d.masks)
                        for j in range(len(d.labels)) if mask & ~closures[j] == 0}
            return set(ps.order.pairs()) == expected

        _check(results, "theorem_a", theorem_a)
        _check(results, "refinement_never_open", lambda: refinement_never_open(d))

    if stratified:
        pse = stratified[0]

        def theorem_b():
            for order in pse.valid_orders or ():
                ps = PosetStratification(d, order)
                if map_check(ps.pi, "open"):
                    theorem_B(ps)

        _check(results, "theorem_b", theorem_b)

        if pse.holds:
            _check(results, "initial_order", lambda: initial_order_check(d))

            def cor_thm_b_plus():
                target = alexandrov_space(decomposition_preorder(d))
                opened = map_check(decomposition_map(d, target), "open").holds
                return is_stratification(d).holds == opened

            _check(results, "cor_thm_b_plus", cor_thm_b_plus)

    def general_lf():
        family = open_cover_family(d.space)
        final_family_alexandrov(d, family)
        for f in family:
            inclusion_is_monotone(d, f)

    _check(results, "general_lf", general_lf)
    return results


@dataclass(frozen=True)
class Counterexample:
    index: int
    proposition: str
    message: str
    decomposition: object

    def to_dict(self) -> dict:
        from src.fixtures.documents import to_payload

        return {"index": self.index,
                "proposition": self.proposition,
                "message": self.message,
                "decomposition": to_payload(self.decomposition)}


@dataclass(frozen=True)
class SweepReport:
    points: int
    instances: int = 0
    passes: Dict[str, int] = field(default_factory=dict)
    failures: Dict[str, int] = field(default_factory=dict)
    counterexample: Optional[Counterexample] = None

    @property
    def failed(self) -> int:
        return sum(self.failures.values())

    def total(self, proposition: str) -> int:
        return self.passes.get(proposition, 0) + self.failures.get(proposition, 0)

    def merge(self, other: "SweepReport") -> "SweepReport":
        passes = dict(self.passes)
        failures = dict(self.failures)
        for name, count in other.passes.items():
            passes[name] = passes.get(name, 0) + count
        for name, count in other.failures.items():
            failures[name] = failures.get(name, 0) + count
        candidates = [c for c in (self.counterexample, other.counterexample) if c is not None]
        first = min(candidates, key=lambda c: c.index) if candidates else None
        return SweepReport(self.points, self.instances + other.instances, passes, failures, first)

    def to_dict(self) -> dict:
        return {"points": self.points,
                "instances": self.instances,
                "failures": self.failed,
                "propositions": {name: {"passed": self.passes.get(name, 0),
                                        "failed": self.failures.get(name, 0)}
                                 for name in PROPOSITIONS if self.total(name)},
                "counterexample": None if self.counterexample is None else self.counterexample.to_dict()}


def _sweep_preorder(job: Tuple[int, int]) -> SweepReport:
    from src.decomposition import Decomposition
    from src.order import alexandrov_space

    n, preorder_index = job
    space = alexandrov_space(enumerate_structures("preorders", n)[preorder_index])
    partitions = enumerate_structures("partitions", n)
    report = SweepReport(n)
    for partition_index, strata in enumerate(partitions):
        d = Decomposition.from_strata(space, strata)
        index = preorder_index * len(partitions) + partition_index
        passes, failures, first = {}, {}, None
        for name, failure in verify_instance(d).items():
            if failure is None:
                passes[name] = 1
            else:
                failures[name] = 1
                if first is None:
                    first = Counterexample(index, name, failure, d)
        report = report.merge(SweepReport(n, 1, passes, failures, first))
    logger.debug(f"preorder {preorder_index}: {report.instances} instances, {report.failed} failures")
    return report


def exhaustive_verify(n: int, workers: int = 1) -> SweepReport:
    """Runs verify_instance on every (preorder space, partition) pair on n points."""
    if not isinstance(workers, int) or workers < 1:
        raise InvalidParameterError(f"workers must be a positive integer, got {workers!r}")
    preorders = enumerate_structures("preorders", n)
    enumerate_structures("partitions", n)
    jobs = [(n, i) for i in range(len(preorders))]
    if workers > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as executor:
            reports = list(executor.map(_sweep_preorder, jobs))
    else:
        reports = [_sweep_preorder(job) for job in jobs]
    total = SweepReport(n)
    for report in reports:
        total = total.merge(report)
    logger.info(f"{total.instances} instances on {n} points, {total.failed} failures")
    return total
