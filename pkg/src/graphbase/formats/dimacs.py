"""DIMACS edge-format reader and writer.

Supported subset: ``c`` comment lines, one ``p edge <n> <m>`` problem line,
``e <u> <v>`` edge lines with 1-based vertex numbers, and optional
``n <u> <value>`` lines whose value is kept as the node's ``weight``
attribute.  Graphs are undirected; the format carries no labels and no
other attributes.

Serialization renumbers nodes to 1..n in list order when necessary and
reports everything the format cannot carry (labels, direction, attributes
other than node weights).
"""

from __future__ import annotations

import re

from ..errors import FormatSyntaxError
from ..model import EdgeRecord, Graph, NodeRecord
from . import (LOSS_DIRECTEDNESS, LOSS_EDGE_ATTR, LOSS_EDGE_LABEL,
               LOSS_GRAPH_ATTR, LOSS_NODE_ATTR, LOSS_NODE_ID,
               LOSS_NODE_LABEL, LossItem)

_P_RE = re.compile(r"^p\s+edge\s+(\d+)\s+(\d+)\s*$")
_E_RE = re.compile(r"^e\s+(\d+)\s+(\d+)\s*$")
_N_RE = re.compile(r"^n\s+(\d+)\s+(\S+)\s*$")


class DimacsFormat:
    def parse(self, data: bytes, strict: bool) -> tuple[Graph, list[LossItem]]:
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            prefix = data[:exc.start]
            raise FormatSyntaxError(prefix.count(b"\n") + 1,
                                    exc.start - (prefix.rfind(b"\n") + 1) + 1,
                                    "invalid UTF-8") from exc

        n = m = None
        edges: list[EdgeRecord] = []
        node_weights: dict[int, str] = {}
        for lineno, line in enumerate(text.splitlines(), start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("c"):
                continue
            if stripped.startswith("p"):
                if n is not None:
                    raise FormatSyntaxError(lineno, 1, "second problem line")
                match = _P_RE.match(stripped)
                if not match:
                    raise FormatSyntaxError(lineno, 1,
                                            "malformed problem line "
                                            "(expected 'p edge <n> <m>')")
                n, m = int(match.group(1)), int(match.group(2))
            elif stripped.startswith("e"):
                if n is None:
                    raise FormatSyntaxError(lineno, 1,
                                            "edge line before problem line")
                match = _E_RE.match(stripped)
                if not match:
                    raise FormatSyntaxError(lineno, 1, "malformed edge line")
                u, v = int(match.group(1)), int(match.group(2))
                if not (1 <= u <= n and 1 <= v <= n):
                    raise FormatSyntaxError(lineno, 1,
                                            f"vertex number out of range 1..{n}")
                edges.append(EdgeRecord(source=str(u), target=str(v)))
            elif stripped.startswith("n"):
                if n is None:
                    raise FormatSyntaxError(lineno, 1,
                                            "node line before problem line")
                match = _N_RE.match(stripped)
                if not match:
                    raise FormatSyntaxError(lineno, 1, "malformed node line")
                u = int(match.group(1))
                if not 1 <= u <= n:
                    raise FormatSyntaxError(lineno, 1,
                                            f"vertex number out of range 1..{n}")
                node_weights[u] = match.group(2)
            else:
                raise FormatSyntaxError(lineno, 1,
                                        f"unknown line type {stripped[0]!r}")
        if n is None:
            raise FormatSyntaxError(1, 1, "missing problem line")
        if len(edges) != m:
            raise FormatSyntaxError(1, 1,
                                    f"problem line declares {m} edges, "
                                    f"found {len(edges)}")
        nodes = tuple(
            NodeRecord(id=str(i),
                       attrs={"weight": node_weights[i]} if i in node_weights else {})
            for i in range(1, n + 1))
        return Graph(directed=False, nodes=nodes, edges=tuple(edges)), []

    def serialize(self, g: Graph) -> tuple[bytes, list[LossItem]]:
        loss: list[LossItem] = []
        ordered = [str(i) for i in range(1, g.node_count + 1)]
        if [n.id for n in g.nodes] == ordered:
            mapping = {nid: nid for nid in ordered}
        else:
            mapping = {n.id: str(i + 1) for i, n in enumerate(g.nodes)}
            loss.append(LossItem(LOSS_NODE_ID, g.node_count,
                                 "node ids renumbered to 1..n in list order"))
        if g.directed:
            loss.append(LossItem(LOSS_DIRECTEDNESS, g.edge_count,
                                 "edge directions dropped (format is undirected)"))
        labeled_nodes = sum(1 for n in g.nodes if n.label is not None)
        if labeled_nodes:
            loss.append(LossItem(LOSS_NODE_LABEL, labeled_nodes,
                                 "node labels dropped"))
        labeled_edges = sum(1 for e in g.edges if e.label is not None)
        if labeled_edges:
            loss.append(LossItem(LOSS_EDGE_LABEL, labeled_edges,
                                 "edge labels dropped"))
        weights = [n.attrs["weight"] for n in g.nodes if "weight" in n.attrs]
        weights_ok = bool(weights) and all(re.fullmatch(r"\S+", w)
                                           for w in weights)
        if weights and not weights_ok:
            loss.append(LossItem(LOSS_NODE_ATTR, len(weights),
                                 "node weights dropped (some contain whitespace)",
                                 detail="weight"))
        for key, count in _attr_counts(n.attrs for n in g.nodes):
            if key != "weight":
                loss.append(LossItem(LOSS_NODE_ATTR, count,
                                     f"node attribute {key!r} dropped",
                                     detail=key))
        for key, count in _attr_counts(e.attrs for e in g.edges):
            loss.append(LossItem(LOSS_EDGE_ATTR, count,
                                 f"edge attribute {key!r} dropped", detail=key))
        for key in sorted(g.graph_attrs):
            loss.append(LossItem(LOSS_GRAPH_ATTR, 1,
                                 f"graph attribute {key!r} dropped", detail=key))

        lines = ["c exported by graphbase",
                 f"p edge {g.node_count} {g.edge_count}"]
        if weights_ok:
            for node in g.nodes:
                if "weight" in node.attrs:
                    lines.append(f"n {mapping[node.id]} {node.attrs['weight']}")
        for e in g.edges:
            lines.append(f"e {mapping[e.source]} {mapping[e.target]}")
        return ("\n".join(lines) + "\n").encode("utf-8"), loss

    def sniff(self, data: bytes) -> bool:
        head = data[:4096].decode("utf-8", errors="replace")
        for line in head.splitlines():
            stripped = line.strip()
            if not stripped or stripped.startswith("c"):
                continue
            return _P_RE.match(stripped) is not None
        return False


def _attr_counts(attr_maps) -> list[tuple[str, int]]:
    counts: dict[str, int] = {}
    for attrs in attr_maps:
        for key in attrs:
            counts[key] = counts.get(key, 0) + 1
    return sorted(counts.items())
