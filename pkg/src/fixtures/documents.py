"""JSON documents for spaces, orders, decompositions, maps and reports.

Saving is canonical: keys and point lists are sorted, so structurally equal
values serialize to identical text.
"""
import json
from dataclasses import dataclass
from typing import Any, Iterable, List, Mapping

from src.decomposition import Decomposition
from src.exceptions import DocumentError, InvariantViolation, UnknownPointError
from src.order import Poset, Proset, SymbolicFamily, as_poset, proset_from_relation, symbolic_family
from src.topology import FiniteSpace, SpaceMap, from_subbasis
from src.utils import read_text

KINDS = ("space", "proset", "poset", "decomposition", "map", "order-on-strata", "symbolic", "report")

ORDER_KINDS = ("proset", "poset", "order-on-strata")


@dataclass(frozen=True)
class Document:
    kind: str
    value: Any

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DocumentError(f"unknown document kind {self.kind!r}, expected one of {KINDS}")

    def expect(self, *kinds: str) -> Any:
        if self.kind not in kinds:
            raise DocumentError(f"expected a {' or '.join(kinds)} document, got {self.kind}")
        return self.value


def _get(payload: Mapping, key: str, kind: str, types=None):
    if key not in payload:
        raise DocumentError(f"missing key {key!r} in {kind} document")
    value = payload[key]
    if types is not None and not isinstance(value, types):
        expected = types.__name__ if isinstance(types, type) else " or ".join(t.__name__ for t in types)
        raise DocumentError(f"{key!r} in {kind} document must be a {expected}")
    return value


def _names(value: Any, what: str) -> List[str]:
    if not isinstance(value, list) or not all(isinstance(name, str) for name in value):
        raise DocumentError(f"{what} must be a list of strings")
    return value


def _space(payload: Any) -> FiniteSpace:
    if not isinstance(payload, dict):
        raise DocumentError("space must be an object")
    if "fixture" in payload:
        from src.fixtures.catalog import fixture

        value = fixture(_get(payload, "fixture", "space", str)).document.value
        if isinstance(value, Decomposition):
            return value.space
        if not isinstance(value, FiniteSpace):
            raise DocumentError(f"fixture {payload['fixture']!r} has no space")
        return value
    kind = payload.get("kind", "space")
    if kind != "space":
        raise DocumentError(f"expected a space, got {kind}")
    points = _names(_get(payload, "points", "space", list), "points")
    if "subbasis" in payload and "min_open" not in payload:
        generators = _get(payload, "subbasis", "space", list)
        return from_subbasis(points, [_names(g, "subbasis entries") for g in generators])
    min_open = _get(payload, "min_open", "space", dict)
    for name in min_open:
        if name not in points:
            raise UnknownPointError(f"min_open mentions unknown point {name!r}")
    index = {name: i for i, name in enumerate(points)}
    masks = []
    for name in points:
        if name not in min_open:
            raise InvariantViolation("one minimal open set per point", f"none given for {name!r}")
        mask = 0
        for member in _names(min_open[name], f"min_open of {name!r}"):
            if member not in index:
                raise UnknownPointError(f"min_open of {name!r} mentions unknown point {member!r}")
            mask |= 1 << index[member]
        masks.append(mask)
    return FiniteSpace(tuple(points), tuple(masks))


def _order(payload: Mapping, kind: str) -> Proset:
    elements = _names(_get(payload, "elements", kind, list), "elements")
    pairs = _get(payload, "leq_pairs", kind, list)
    for pair in pairs:
        if not isinstance(pair, list) or len(pair) != 2 or not all(isinstance(x, str) for x in pair):
            raise DocumentError(f"leq_pairs entries must be [a, b] string pairs, got {pair!r}")
    close = payload.get("close", True)
    if not isinstance(close, bool):
        raise DocumentError("'close' must be a boolean")
    proset = proset_from_relation(elements, pairs, close=close)
    return proset if kind == "proset" else as_poset(proset)


def from_payload(payload: Any) -> Document:
    if not isinstance(payload, dict):
        raise DocumentError("document must be a JSON object")
    kind = _get(payload, "kind", "a", str)
    if kind == "space":
        return Document(kind, _space(payload))
    if kind in ORDER_KINDS:
        return Document(kind, _order(payload, kind))
    if kind == "decomposition":
        space = _space(_get(payload, "space", kind, dict))
        strata = _get(payload, "strata", kind, dict)
        return Document(kind, Decomposition.from_strata(
            space, {label: _names(points, f"stratum {label!r}") for label, points in strata.items()}))
    if kind == "map":
        source = _space(_get(payload, "source", kind, dict))
        target = _space(_get(payload, "target", kind, dict))
        assignment = _get(payload, "assignment", kind, dict)
        return Document(kind, SpaceMap.from_mapping(source, target, assignment))
    if kind == "symbolic":
        return Document(kind, symbolic_family(_get(payload, "family", kind, str)))
    if kind == "report":
        return Document(kind, {key: value for key, value in payload.items() if key != "kind"})
    raise DocumentError(f"unknown document kind {kind!r}, expected one of {KINDS}")


def load(text: str) -> Document:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(e.msg, e.lineno, e.colno)
    return from_payload(payload)


def load_path(path: str) -> Document:
    """Loads a document file; `-` reads stdin."""
    return load(read_text(path))


def _sorted(names: Iterable[str]) -> List[str]:
    return sorted(names)


def to_payload(value: Any, kind: str = None) -> dict:
    if isinstance(value, Document):
        return to_payload(value.value, value.kind)
    if isinstance(value, FiniteSpace):
        return {"kind": "space",
                "points": _sorted(value.points),
                "min_open": {x: _sorted(value.names(u)) for x, u in zip(value.points, value.min_open)}}
    if isinstance(value, Proset):
        if kind not in ORDER_KINDS:
            kind = "poset" if isinstance(value, Poset) else "proset"
        return {"kind": kind,
                "elements": _sorted(value.elements),
                "leq_pairs": [list(pair) for pair in value.pairs()],
                "close": False}
    if isinstance(value, Decomposition):
        return {"kind": "decomposition",
                "space": to_payload(value.space),
                "strata": {label: _sorted(names) for label, names in value.strata.items()}}
    if isinstance(value, SpaceMap):
        return {"kind": "map",
                "source": to_payload(value.source),
                "target": to_payload(value.target),
                "assignment": value.as_dict()}
    if isinstance(value, SymbolicFamily):
        return {"kind": "symbolic", "family": value.value}
    if isinstance(value, dict):
        return {"kind": "report", **value}
    raise DocumentError(f"cannot serialize {type(value).__name__}")


def dumps(payload: Mapping) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def save(value: Any) -> str:
    return dumps(to_payload(value))
