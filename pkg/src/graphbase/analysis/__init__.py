"""Automatic graph analysis: the property set computed for every upload.

``analyze`` fills a :class:`PropertySet` with descriptive statistics and
the structural properties the archive indexes for search: connectivity
(component counts, biconnected components, exact vertex connectivity),
planarity, bipartiteness and acyclicity.  Graphs at or above the vertex
threshold only get the cheap counts, marked ``analysis_skipped``; a time
budget guards the expensive steps and surfaces partial results through
:class:`TimeBudgetExceeded`.

The crossing number is deliberately never computed (it is user-supplied
metadata only).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, fields, replace

from ..errors import TimeBudgetExceeded
from ..model import Graph, degree_sequence
from .components import (articulation_points, biconnected_components,
                         connected_components)
from .connectivity import vertex_connectivity
from .planarity import is_planar

__all__ = [
    "AnalysisConfig", "PropertySet", "analyze", "connected_components",
    "biconnected_components", "articulation_points", "vertex_connectivity",
    "is_planar", "is_bipartite", "is_acyclic", "density",
    "NUMERIC_PROPERTIES", "BOOLEAN_PROPERTIES", "USER_SETTABLE_PROPERTIES",
]


@dataclass(frozen=True)
class AnalysisConfig:
    vertex_threshold: int = 100_000
    time_budget: float | None = 60.0  # seconds per graph, None = unlimited

    def __post_init__(self):
        if self.vertex_threshold <= 0:
            raise ValueError("vertex_threshold must be positive")


@dataclass(frozen=True)
class PropertySet:
    """Analysis results; fields are None when not (yet) computed."""

    node_count: int
    edge_count: int
    directed: bool
    min_degree: float
    max_degree: float
    avg_degree: float
    analysis_skipped: bool = False
    skip_reason: str | None = None
    density: float | None = None
    has_self_loops: bool | None = None
    has_multi_edges: bool | None = None
    is_connected: bool | None = None
    is_bipartite: bool | None = None
    is_acyclic: bool | None = None
    connected_component_count: int | None = None
    biconnected_component_count: int | None = None
    vertex_connectivity: int | None = None
    is_planar: bool | None = None
    crossing_number: int | None = None  # user-supplied, never computed
    skipped_fields: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        d = {}
        for f in fields(self):
            value = getattr(self, f.name)
            if f.name == "skipped_fields":
                value = list(value)
            d[f.name] = value
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "PropertySet":
        known = {f.name for f in fields(cls)}
        kwargs = {k: v for k, v in d.items() if k in known}
        kwargs["skipped_fields"] = tuple(kwargs.get("skipped_fields", ()))
        return cls(**kwargs)


NUMERIC_PROPERTIES = frozenset({
    "node_count", "edge_count", "density", "min_degree", "max_degree",
    "avg_degree", "connected_component_count", "biconnected_component_count",
    "vertex_connectivity", "crossing_number",
})
BOOLEAN_PROPERTIES = frozenset({
    "directed", "has_self_loops", "has_multi_edges", "is_connected",
    "is_bipartite", "is_acyclic", "is_planar",
})
USER_SETTABLE_PROPERTIES = frozenset({"crossing_number"})


def density(g: Graph) -> float:
    """Edge density in [0, 1]; loops and parallel edges are not counted."""
    n = g.node_count
    if n < 2:
        return 0.0
    if g.directed:
        m = len({(e.source, e.target) for e in g.edges
                 if e.source != e.target})
        return m / (n * (n - 1))
    m = len(g.simple_undirected_edges())
    return 2 * m / (n * (n - 1))


def is_bipartite(g: Graph) -> bool:
    """2-colorability of the undirected view; a self-loop is an odd cycle."""
    if any(e.source == e.target for e in g.edges):
        return False
    adj = g.adjacency()
    color: dict[str, int] = {}
    for node in g.nodes:
        if node.id in color:
            continue
        color[node.id] = 0
        frontier = [node.id]
        while frontier:
            nxt = []
            for v in frontier:
                for w in adj[v]:
                    if w not in color:
                        color[w] = color[v] ^ 1
                        nxt.append(w)
                    elif color[w] == color[v]:
                        return False
            frontier = nxt
    return True


def is_acyclic(g: Graph) -> bool:
    """Directed: no directed cycle.  Undirected: forest (a self-loop or a
    parallel pair counts as a cycle)."""
    if g.directed:
        indeg = {n.id: 0 for n in g.nodes}
        out: dict[str, list[str]] = {n.id: [] for n in g.nodes}
        for e in g.edges:
            if e.source == e.target:
                return False
            out[e.source].append(e.target)
            indeg[e.target] += 1
        queue = [v for v, d in indeg.items() if d == 0]
        removed = 0
        while queue:
            v = queue.pop()
            removed += 1
            for w in out[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    queue.append(w)
        return removed == g.node_count

    parent = {n.id: n.id for n in g.nodes}

    def find(v: str) -> str:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in g.edges:
        if e.source == e.target:
            return False
        ru, rv = find(e.source), find(e.target)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def analyze(g: Graph, cfg: AnalysisConfig | None = None) -> PropertySet:
    """Compute the full property set, honoring threshold and time budget.

    Over-threshold graphs get counts/degree statistics only, with
    ``analysis_skipped`` set.  When the time budget runs out mid-way,
    :class:`TimeBudgetExceeded` is raised carrying the partial property set
    with the unfinished fields listed in ``skipped_fields``.
    """
    cfg = cfg or AnalysisConfig()
    deadline = (time.monotonic() + cfg.time_budget
                if cfg.time_budget is not None else None)

    degrees = degree_sequence(g)
    n = g.node_count
    base = dict(
        node_count=n,
        edge_count=g.edge_count,
        directed=g.directed,
        min_degree=float(degrees[0]) if degrees else 0.0,
        max_degree=float(degrees[-1]) if degrees else 0.0,
        avg_degree=(sum(degrees) / n) if n else 0.0,
    )

    if n >= cfg.vertex_threshold:
        return PropertySet(
            **base, analysis_skipped=True,
            skip_reason=(f"{n} vertices is at or above the automatic "
                         f"analysis threshold of {cfg.vertex_threshold}"),
            skipped_fields=tuple(sorted(_EXPENSIVE_FIELDS)))

    props = PropertySet(**base)
    pending = list(_STAGES)
    for name, compute in _STAGES:
        if deadline is not None and time.monotonic() > deadline:
            raise TimeBudgetExceeded(_partial(props, pending))
        try:
            value = compute(g, props, deadline)
        except TimeBudgetExceeded:
            raise TimeBudgetExceeded(_partial(props, pending)) from None
        props = replace(props, **{name: value})
        pending = pending[1:]

    if props.is_planar and n >= 3:
        simple_m = len(g.simple_undirected_edges())
        assert simple_m <= 3 * n - 6, "planar graph violates the Euler bound"
    return props


_STAGES: list[tuple[str, object]] = [
    ("density", lambda g, p, d: density(g)),
    ("has_self_loops",
     lambda g, p, d: any(e.source == e.target for e in g.edges)),
    ("has_multi_edges", lambda g, p, d: _has_multi_edges(g)),
    ("connected_component_count",
     lambda g, p, d: len(connected_components(g))),
    ("is_connected",
     lambda g, p, d: p.node_count >= 1
     and p.connected_component_count == 1),
    ("is_bipartite", lambda g, p, d: is_bipartite(g)),
    ("is_acyclic", lambda g, p, d: is_acyclic(g)),
    ("biconnected_component_count",
     lambda g, p, d: len(biconnected_components(g))),
    ("is_planar", lambda g, p, d: is_planar(g)),
    ("vertex_connectivity", lambda g, p, d: vertex_connectivity(g, d)),
]

_EXPENSIVE_FIELDS = [name for name, _ in _STAGES]


def _partial(props: PropertySet, pending: list) -> PropertySet:
    return replace(props, skipped_fields=tuple(sorted(n for n, _ in pending)))


def _has_multi_edges(g: Graph) -> bool:
    seen: set[tuple[str, str]] = set()
    for e in g.edges:
        k = e.key(g.directed)
        if k in seen:
            return True
        seen.add(k)
    return False
