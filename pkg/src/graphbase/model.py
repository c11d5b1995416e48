"""Canonical in-memory graph model and annotation entities.

Every parser produces a :class:`Graph` and every algorithm consumes one.
The model is a labeled multigraph: multi-edges and self-loops are allowed,
edges may be directed or undirected (a per-graph flag), and nodes and edges
carry free-form string attributes.  Attribute values keep the lexical form
of whichever file they came from; typed views (e.g. edge weights) are parsed
on demand.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from typing import Iterable, Mapping

from .errors import DanglingEdgeEndpoint, DuplicateNodeId, InvalidTag

_TAG_RE = re.compile(r"^[a-z0-9][a-z0-9_-]{0,63}$")

TAG_KINDS = ("application-domain", "structural", "freeform")


def _parse_real(text: str | None) -> float | None:
    if text is None:
        return None
    try:
        return float(text)
    except ValueError:
        return None


@dataclass(frozen=True)
class NodeRecord:
    """A node: opaque string id, optional label, attribute map."""

    id: str
    label: str | None = None
    attrs: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if not self.id:
            raise ValueError("node id must be non-empty")

    @property
    def effective_label(self) -> str:
        """Label used by label-sensitive operations; falls back to the id."""
        return self.label if self.label is not None else self.id


@dataclass(frozen=True)
class EdgeRecord:
    """An edge between two node ids.

    For undirected graphs ``(source, target)`` is an unordered pair; all
    algorithms must treat it that way.
    """

    source: str
    target: str
    label: str | None = None
    attrs: dict[str, str] = field(default_factory=dict)

    @property
    def weight(self) -> float | None:
        """Typed view of ``attrs['weight']``; None when absent or non-numeric."""
        return _parse_real(self.attrs.get("weight"))

    def with_weight(self, value: float | int | str) -> "EdgeRecord":
        attrs = dict(self.attrs)
        attrs["weight"] = str(value)
        return replace(self, attrs=attrs)

    def is_loop(self) -> bool:
        return self.source == self.target

    def key(self, directed: bool) -> tuple[str, str]:
        """Endpoint pair, normalized to be order-free for undirected graphs."""
        if directed or self.source <= self.target:
            return (self.source, self.target)
        return (self.target, self.source)


@dataclass(frozen=True)
class Graph:
    """Validated labeled multigraph. Immutable after construction."""

    directed: bool
    nodes: tuple[NodeRecord, ...]
    edges: tuple[EdgeRecord, ...]
    graph_attrs: dict[str, str] = field(default_factory=dict)

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def node_ids(self) -> list[str]:
        return [n.id for n in self.nodes]

    def has_node(self, node_id: str) -> bool:
        return any(n.id == node_id for n in self.nodes)

    def adjacency(self) -> dict[str, list[str]]:
        """Undirected neighbor lists (direction ignored), loops included once."""
        adj: dict[str, list[str]] = {n.id: [] for n in self.nodes}
        for e in self.edges:
            if e.source == e.target:
                adj[e.source].append(e.target)
            else:
                adj[e.source].append(e.target)
                adj[e.target].append(e.source)
        return adj

    def simple_undirected_edges(self) -> list[tuple[str, str]]:
        """Loop-free, deduplicated, order-normalized edge list."""
        seen: set[tuple[str, str]] = set()
        out: list[tuple[str, str]] = []
        for e in self.edges:
            if e.source == e.target:
                continue
            k = (e.source, e.target) if e.source <= e.target else (e.target, e.source)
            if k not in seen:
                seen.add(k)
                out.append(k)
        return out


def build_graph(directed: bool, nodes: Iterable, edges: Iterable,
                graph_attrs: Mapping[str, str] | None = None) -> Graph:
    """Validate and assemble a Graph, preserving node and edge order.

    Node items may be :class:`NodeRecord`, a bare id, or ``(id, label)`` /
    ``(id, label, attrs)`` tuples; edge items may be :class:`EdgeRecord` or
    ``(source, target)`` / ``(source, target, label)`` /
    ``(source, target, label, attrs)`` tuples.

    Raises :class:`DuplicateNodeId` or :class:`DanglingEdgeEndpoint` when the
    multigraph invariants are violated.
    """
    node_records: list[NodeRecord] = []
    for item in nodes:
        if isinstance(item, NodeRecord):
            node_records.append(replace(item, attrs=dict(item.attrs)))
        elif isinstance(item, str):
            node_records.append(NodeRecord(id=item))
        else:
            nid, *rest = item
            label = rest[0] if len(rest) >= 1 else None
            attrs = dict(rest[1]) if len(rest) >= 2 else {}
            node_records.append(NodeRecord(id=str(nid), label=label, attrs=attrs))

    ids: set[str] = set()
    for n in node_records:
        if n.id in ids:
            raise DuplicateNodeId(n.id)
        ids.add(n.id)

    edge_records: list[EdgeRecord] = []
    for item in edges:
        if isinstance(item, EdgeRecord):
            edge_records.append(replace(item, attrs=dict(item.attrs)))
        else:
            src, tgt, *rest = item
            label = rest[0] if len(rest) >= 1 else None
            attrs = dict(rest[1]) if len(rest) >= 2 else {}
            edge_records.append(EdgeRecord(source=str(src), target=str(tgt),
                                           label=label, attrs=attrs))
    for e in edge_records:
        if e.source not in ids:
            raise DanglingEdgeEndpoint(e.source)
        if e.target not in ids:
            raise DanglingEdgeEndpoint(e.target)

    return Graph(directed=directed, nodes=tuple(node_records),
                 edges=tuple(edge_records),
                 graph_attrs=dict(graph_attrs or {}))


def _enc(token: str) -> bytes:
    raw = token.encode("utf-8")
    return str(len(raw)).encode("ascii") + b":" + raw


def labeled_signature(g: Graph) -> bytes:
    """Canonical byte string deciding labeled-isomorphism equality.

    Two graphs get the same signature exactly when they agree on
    directedness, on the multiset of node labels, and on the multiset of
    (source-label, target-label) edge pairs (unordered pairs for undirected
    graphs).  Unlabeled nodes fall back to their id.  The signature is
    independent of node and edge list order.
    """
    labels = sorted(n.effective_label for n in g.nodes)
    by_id = {n.id: n.effective_label for n in g.nodes}
    pairs: list[tuple[str, str]] = []
    for e in g.edges:
        a, b = by_id[e.source], by_id[e.target]
        if not g.directed and b < a:
            a, b = b, a
        pairs.append((a, b))
    pairs.sort()
    out = [b"D" if g.directed else b"U", b"|N"]
    out.extend(_enc(v) for v in labels)
    out.append(b"|E")
    for a, b in pairs:
        out.append(_enc(a))
        out.append(_enc(b))
    return b"".join(out)


def degree_sequence(g: Graph) -> list[int]:
    """Sorted degrees, one per node; in+out combined for directed graphs.

    A self-loop contributes 2 to its node's degree in either case, so the
    sequence always sums to twice the edge count.
    """
    deg = {n.id: 0 for n in g.nodes}
    for e in g.edges:
        deg[e.source] += 1
        deg[e.target] += 1
    return sorted(deg.values())


def structurally_equal(a: Graph, b: Graph) -> bool:
    """Equality up to edge order (and endpoint order for undirected edges).

    Node identity, labels and attrs must match exactly; edges are compared
    as multisets of (endpoints, label, attrs).  Used by the format
    round-trip harness.
    """
    if a.directed != b.directed:
        return False
    if a.graph_attrs != b.graph_attrs:
        return False
    na = {n.id: (n.label, tuple(sorted(n.attrs.items()))) for n in a.nodes}
    nb = {n.id: (n.label, tuple(sorted(n.attrs.items()))) for n in b.nodes}
    if na != nb:
        return False

    def edge_multiset(g: Graph):
        items = []
        for e in g.edges:
            items.append((e.key(g.directed), e.label,
                          tuple(sorted(e.attrs.items()))))
        return sorted(items, key=repr)

    return edge_multiset(a) == edge_multiset(b)


# --- annotation entities -----------------------------------------------------

def normalize_tag(value: str) -> str:
    """Trim + lowercase, then validate against the tag grammar."""
    v = value.strip().lower()
    if not _TAG_RE.match(v):
        raise InvalidTag(value)
    return v


@dataclass(frozen=True)
class Tag:
    value: str
    kind: str = "freeform"

    def __post_init__(self):
        object.__setattr__(self, "value", normalize_tag(self.value))
        if self.kind not in TAG_KINDS:
            raise ValueError(f"unknown tag kind: {self.kind!r}")


@dataclass(frozen=True)
class Reference:
    kind: str  # "publication" | "website"
    citation_or_url: str

    def __post_init__(self):
        if self.kind not in ("publication", "website"):
            raise ValueError(f"unknown reference kind: {self.kind!r}")
        if not self.citation_or_url:
            raise ValueError("reference text must be non-empty")


@dataclass(frozen=True)
class Comment:
    author: str
    timestamp: datetime
    text: str


@dataclass(frozen=True)
class Metadata:
    """Annotations attached to an archived graph. ``name`` and ``creator``
    are the only mandatory fields."""

    name: str
    creator: str
    uploaded_at: datetime = field(
        default_factory=lambda: datetime.now(timezone.utc))
    description: str | None = None
    creation_method: str | None = None
    license: str | None = None
    tags: frozenset[Tag] = frozenset()
    comments: tuple[Comment, ...] = ()
    references: tuple[Reference, ...] = ()

    def __post_init__(self):
        if not self.name:
            raise ValueError("metadata name must be non-empty")
        if not self.creator:
            raise ValueError("metadata creator must be non-empty")


@dataclass(frozen=True)
class Collection:
    id: str
    name: str
    description: str = ""
    member_graph_ids: tuple[str, ...] = ()


def utc_now() -> datetime:
    return datetime.now(timezone.utc)
