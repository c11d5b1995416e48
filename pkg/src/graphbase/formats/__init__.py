"""Graph file formats: parsing, serialization, detection, conversion.

Four formats ship built in: GML, GraphML, DIMACS edge format, and Matrix
Market coordinate format.  Each one is implemented against an explicitly
documented subset grammar (see the per-format modules).  Additional formats
can be registered at runtime via :func:`register_format`.

Conversion between formats of different expressiveness is lossy; every
serializer therefore returns a :class:`LossReport` that names exactly what
was dropped.  ``apply_loss_items`` replays a report against the source graph
so round-trip harnesses can check that *nothing else* was lost.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Protocol

from ..errors import FormatSyntaxError, UnknownFormat, UnsupportedConstruct
from ..model import Graph

# Stable vocabulary of loss-item kinds.  The round-trip harness switches on
# these to normalize the source graph before comparing.
LOSS_NODE_LABEL = "node-label"
LOSS_EDGE_LABEL = "edge-label"
LOSS_NODE_ATTR = "node-attr"          # detail = attribute key
LOSS_EDGE_ATTR = "edge-attr"          # detail = attribute key
LOSS_GRAPH_ATTR = "graph-attr"        # detail = attribute key
LOSS_DIRECTEDNESS = "directedness"
LOSS_NODE_ID = "node-id"              # ids renumbered to 1..n in node order
LOSS_MULTI_EDGE = "multi-edge"        # informational: emitted as duplicates
LOSS_NESTED_LIST = "gml-nested-list"
LOSS_NESTED_GRAPH = "graphml-nested-graph"
LOSS_PORT = "graphml-port"
LOSS_HYPEREDGE = "graphml-hyperedge"
LOSS_EXTRA_GRAPH = "graphml-extra-graph"
LOSS_DIRECTION_OVERRIDE = "graphml-direction-override"


@dataclass(frozen=True)
class LossItem:
    kind: str
    count: int
    message: str
    detail: str | None = None

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "count": self.count, "message": self.message}
        if self.detail is not None:
            d["detail"] = self.detail
        return d


@dataclass(frozen=True)
class LossReport:
    dropped_items: tuple[LossItem, ...] = ()

    @property
    def lossless(self) -> bool:
        return not self.dropped_items

    def merged(self, other: "LossReport") -> "LossReport":
        return LossReport(self.dropped_items + other.dropped_items)

    def to_dict(self) -> dict:
        return {
            "lossless": self.lossless,
            "dropped_items": [i.to_dict() for i in self.dropped_items],
        }


class FormatHandler(Protocol):
    def parse(self, data: bytes, strict: bool) -> tuple[Graph, list[LossItem]]: ...
    def serialize(self, g: Graph) -> tuple[bytes, list[LossItem]]: ...
    def sniff(self, data: bytes) -> bool: ...


@dataclass(frozen=True)
class _Registration:
    format_id: str
    handler: FormatHandler
    extension: str


_REGISTRY: dict[str, _Registration] = {}


def register_format(format_id: str, handler: FormatHandler, extension: str) -> None:
    """Register a format handler; used by the built-ins and open to callers."""
    _REGISTRY[format_id] = _Registration(format_id, handler, extension)


def format_ids() -> list[str]:
    return list(_REGISTRY)


def extension_for(format_id: str) -> str:
    return _require(format_id).extension


def _require(format_id: str) -> _Registration:
    reg = _REGISTRY.get(format_id)
    if reg is None:
        raise UnknownFormat(f"no such format: {format_id!r}")
    return reg


def parse(data: bytes, format_id: str, *, strict: bool = False) -> Graph:
    """Parse ``data`` as the given format into a canonical Graph.

    Raises :class:`FormatSyntaxError` with a 1-based line/column position on
    malformed input, or :class:`UnsupportedConstruct` for well-formed input
    using features outside the supported subset (always in strict mode;
    lenient mode instead drops such features, see :func:`parse_report`).
    """
    g, _ = parse_report(data, format_id, strict=strict)
    return g


def parse_report(data: bytes, format_id: str, *,
                 strict: bool = False) -> tuple[Graph, LossReport]:
    """Like :func:`parse` but also reports what lenient mode dropped."""
    if not data:
        raise FormatSyntaxError(1, 1, "empty input")
    g, items = _require(format_id).handler.parse(data, strict)
    return g, LossReport(tuple(items))


def serialize(g: Graph, format_id: str) -> tuple[bytes, LossReport]:
    """Serialize the graph; deterministic output for a given Graph.

    The returned report names exactly the items the format could not carry;
    re-parsing the output yields ``g`` minus those items.
    """
    data, items = _require(format_id).handler.serialize(g)
    return data, LossReport(tuple(items))


def convert(data: bytes, from_format: str, to_format: str, *,
            strict: bool = False) -> tuple[bytes, LossReport]:
    """parse + serialize; the report combines losses from both sides."""
    g, parse_loss = parse_report(data, from_format, strict=strict)
    out, ser_loss = serialize(g, to_format)
    return out, parse_loss.merged(ser_loss)


def detect_format(data: bytes) -> str:
    """Identify the format of raw bytes by content sniffing.

    Raises :class:`UnknownFormat` when no rule matches or when the content
    is ambiguous (more than one rule matches).
    """
    if not data:
        raise UnknownFormat("empty input")
    matches = [reg.format_id for reg in _REGISTRY.values()
               if reg.handler.sniff(data)]
    if len(matches) != 1:
        if not matches:
            raise UnknownFormat("no known format matches the content")
        raise UnknownFormat(f"ambiguous content, matches: {', '.join(sorted(matches))}")
    return matches[0]


def apply_loss_items(g: Graph, items: tuple[LossItem, ...] | list[LossItem]) -> Graph:
    """Drop from ``g`` exactly what a serializer's loss report declares.

    ``parse(serialize(g, f)) == apply_loss_items(g, report.dropped_items)``
    (structurally) is the serializer contract checked by the tests.
    """
    nodes = list(g.nodes)
    edges = list(g.edges)
    graph_attrs = dict(g.graph_attrs)
    directed = g.directed
    renumber = False

    for item in items:
        if item.kind == LOSS_NODE_LABEL:
            nodes = [replace(n, label=None) for n in nodes]
        elif item.kind == LOSS_EDGE_LABEL:
            edges = [replace(e, label=None) for e in edges]
        elif item.kind == LOSS_NODE_ATTR:
            nodes = [replace(n, attrs={k: v for k, v in n.attrs.items()
                                       if k != item.detail}) for n in nodes]
        elif item.kind == LOSS_EDGE_ATTR:
            edges = [replace(e, attrs={k: v for k, v in e.attrs.items()
                                       if k != item.detail}) for e in edges]
        elif item.kind == LOSS_GRAPH_ATTR:
            graph_attrs.pop(item.detail, None)
        elif item.kind == LOSS_DIRECTEDNESS:
            directed = False
        elif item.kind == LOSS_NODE_ID:
            renumber = True
        elif item.kind == LOSS_MULTI_EDGE:
            pass  # informational: duplicates re-parse to the same multi-edges
        else:
            raise ValueError(f"loss kind {item.kind!r} is not produced by a "
                             f"serializer and cannot be applied")

    if renumber:
        mapping = {n.id: str(i + 1) for i, n in enumerate(nodes)}
        nodes = [replace(n, id=mapping[n.id]) for n in nodes]
        edges = [replace(e, source=mapping[e.source], target=mapping[e.target])
                 for e in edges]

    return Graph(directed=directed, nodes=tuple(nodes), edges=tuple(edges),
                 graph_attrs=graph_attrs)


def _install_builtins() -> None:
    from . import dimacs, gml, graphml, matrix_market

    register_format("gml", gml.GmlFormat(), ".gml")
    register_format("graphml", graphml.GraphmlFormat(), ".graphml")
    register_format("dimacs", dimacs.DimacsFormat(), ".dimacs")
    register_format("matrix-market", matrix_market.MatrixMarketFormat(), ".mtx")


_install_builtins()
