"""Graphviz DOT export of orders and decompositions, drawn bottom to top."""
from typing import Iterable, List, Tuple, Union

from src.decomposition import Decomposition, classify
from src.exceptions import DocumentError
from src.fixtures.documents import Document
from src.order import Proset, covers, hasse, is_poset
from src.topology import FiniteSpace, specialization_preorder


def _quote(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _digraph(nodes: Iterable[str], edges: Iterable[Tuple[str, str]], graph_label: str = None) -> str:
    lines: List[str] = ["digraph {", "  rankdir=BT;"]
    if graph_label is not None:
        lines.append(f"  label={_quote(graph_label)};")
    lines.extend(f"  {node};" for node in nodes)
    lines.extend(f"  {_quote(a)} -> {_quote(b)};" for a, b in sorted(edges))
    lines.append("}")
    return "\n".join(lines) + "\n"


def _order_dot(p: Proset) -> str:
    edges = hasse(p) if is_poset(p) else covers(p)
    return _digraph((_quote(e) for e in sorted(p.elements)), edges)


def _decomposition_dot(d: Decomposition) -> str:
    report = classify(d)
    nodes = []
    for label in d.labels:
        flags = "locally closed" if report.locally_closed[label] else "not locally closed"
        text = _quote(f"{label}: {flags}")
        nodes.append(f"{_quote(label)} [label={text}]")
    return _digraph(nodes, covers(report.preorder), f"verdict: {report.verdict}")


def export_dot(x: Union[Proset, Decomposition, FiniteSpace, Document]) -> str:
    """Hasse diagram of an order, or the strata of a decomposition.

    A decomposition's nodes carry their locally closed flag, the graph its
    verdict, and the edges are the covers of its decomposition preorder. A
    space is drawn through its specialization preorder.
    """
    if isinstance(x, Document):
        if x.kind not in ("space", "proset", "poset", "order-on-strata", "decomposition"):
            raise DocumentError(f"cannot export a {x.kind} document to DOT")
        x = x.value
    if isinstance(x, Decomposition):
        return _decomposition_dot(x)
    if isinstance(x, FiniteSpace):
        return _order_dot(specialization_preorder(x))
    if isinstance(x, Proset):
        return _order_dot(x)
    raise DocumentError(f"cannot export {type(x).__name__} to DOT")
