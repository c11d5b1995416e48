"""Matrix Market coordinate-format reader and writer.

Supported subset: ``matrix coordinate`` with field ``real``, ``integer`` or
``pattern`` and symmetry ``general`` or ``symmetric``.  The graph mapping:

* ``symmetric`` matrices are undirected graphs (must be square),
* square ``general`` matrices are directed graphs,
* rectangular ``general`` matrices are directed bipartite graphs with row
  nodes ``r1..rm`` and column nodes ``c1..cn``,
* a diagonal entry is a self-loop, a numeric value is the edge weight
  (lexical form preserved).

``complex`` fields, ``array`` storage and the skew/hermitian symmetries are
outside the subset and raise :class:`UnsupportedConstruct`.
"""

from __future__ import annotations

import re

from ..errors import FormatSyntaxError, UnsupportedConstruct
from ..model import EdgeRecord, Graph, NodeRecord
from . import (LOSS_EDGE_ATTR, LOSS_EDGE_LABEL, LOSS_GRAPH_ATTR,
               LOSS_MULTI_EDGE, LOSS_NODE_ATTR, LOSS_NODE_ID,
               LOSS_NODE_LABEL, LossItem)

_BANNER_RE = re.compile(r"^%%MatrixMarket\s+(\S+)\s+(\S+)\s+(\S+)\s+(\S+)\s*$",
                        re.IGNORECASE)
_INT_RE = re.compile(r"^[+-]?\d+$")


class MatrixMarketFormat:
    def parse(self, data: bytes, strict: bool) -> tuple[Graph, list[LossItem]]:
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            prefix = data[:exc.start]
            raise FormatSyntaxError(prefix.count(b"\n") + 1,
                                    exc.start - (prefix.rfind(b"\n") + 1) + 1,
                                    "invalid UTF-8") from exc
        lines = text.splitlines()
        if not lines:
            raise FormatSyntaxError(1, 1, "empty input")
        banner = _BANNER_RE.match(lines[0])
        if not banner:
            raise FormatSyntaxError(1, 1, "missing %%MatrixMarket banner")
        obj, storage, field, symmetry = (s.lower() for s in banner.groups())
        if obj != "matrix":
            raise UnsupportedConstruct(f"object {obj!r}")
        if storage != "coordinate":
            raise UnsupportedConstruct(f"storage {storage!r}")
        if field not in ("real", "integer", "pattern"):
            raise UnsupportedConstruct(f"field {field!r}")
        if symmetry not in ("general", "symmetric"):
            raise UnsupportedConstruct(f"symmetry {symmetry!r}")

        lineno = 1
        size = None
        for lineno, line in enumerate(lines[1:], start=2):
            stripped = line.strip()
            if not stripped or stripped.startswith("%"):
                continue
            parts = stripped.split()
            if len(parts) != 3 or not all(p.isdigit() for p in parts):
                raise FormatSyntaxError(lineno, 1,
                                        "malformed size line "
                                        "(expected 'rows cols nnz')")
            size = (int(parts[0]), int(parts[1]), int(parts[2]))
            break
        if size is None:
            raise FormatSyntaxError(lineno, 1, "missing size line")
        rows, cols, nnz = size
        if symmetry == "symmetric" and rows != cols:
            raise FormatSyntaxError(lineno, 1,
                                    "symmetric matrix must be square")

        square = rows == cols
        if square:
            node_ids = [str(i) for i in range(1, rows + 1)]
        else:
            node_ids = ([f"r{i}" for i in range(1, rows + 1)]
                        + [f"c{j}" for j in range(1, cols + 1)])
        directed = symmetry == "general"

        expect_value = field != "pattern"
        edges: list[EdgeRecord] = []
        start = lineno + 1
        for lineno, line in enumerate(lines[lineno:], start=start):
            stripped = line.strip()
            if not stripped:
                continue
            if stripped.startswith("%"):
                raise FormatSyntaxError(lineno, 1,
                                        "comment after the size line")
            parts = stripped.split()
            if expect_value and len(parts) != 3:
                raise FormatSyntaxError(lineno, 1,
                                        "expected 'row col value'")
            if not expect_value and len(parts) != 2:
                raise FormatSyntaxError(lineno, 1, "expected 'row col'")
            if not (parts[0].isdigit() and parts[1].isdigit()):
                raise FormatSyntaxError(lineno, 1, "row/col must be integers")
            i, j = int(parts[0]), int(parts[1])
            if not (1 <= i <= rows and 1 <= j <= cols):
                raise FormatSyntaxError(lineno, 1, "entry out of bounds")
            attrs = {}
            if expect_value:
                value = parts[2]
                if field == "integer" and not _INT_RE.match(value):
                    raise FormatSyntaxError(lineno, 1,
                                            f"not an integer: {value!r}")
                if field == "real" and not _is_float(value):
                    raise FormatSyntaxError(lineno, 1,
                                            f"not a number: {value!r}")
                attrs["weight"] = value
            if square:
                src, tgt = str(i), str(j)
            else:
                src, tgt = f"r{i}", f"c{j}"
            edges.append(EdgeRecord(source=src, target=tgt, attrs=attrs))
        if len(edges) != nnz:
            raise FormatSyntaxError(1, 1,
                                    f"size line declares {nnz} entries, "
                                    f"found {len(edges)}")
        g = Graph(directed=directed,
                  nodes=tuple(NodeRecord(id=nid) for nid in node_ids),
                  edges=tuple(edges))
        return g, []

    def serialize(self, g: Graph) -> tuple[bytes, list[LossItem]]:
        loss: list[LossItem] = []
        n = g.node_count
        ordered = [str(i) for i in range(1, n + 1)]
        if [node.id for node in g.nodes] == ordered:
            mapping = {nid: nid for nid in ordered}
        else:
            mapping = {node.id: str(i + 1) for i, node in enumerate(g.nodes)}
            if n:
                loss.append(LossItem(LOSS_NODE_ID, n,
                                     "node ids renumbered to 1..n in list order"))

        labeled_nodes = sum(1 for node in g.nodes if node.label is not None)
        if labeled_nodes:
            loss.append(LossItem(LOSS_NODE_LABEL, labeled_nodes,
                                 "node labels dropped"))
        labeled_edges = sum(1 for e in g.edges if e.label is not None)
        if labeled_edges:
            loss.append(LossItem(LOSS_EDGE_LABEL, labeled_edges,
                                 "edge labels dropped"))
        node_attr_counts: dict[str, int] = {}
        for node in g.nodes:
            for key in node.attrs:
                node_attr_counts[key] = node_attr_counts.get(key, 0) + 1
        for key, count in sorted(node_attr_counts.items()):
            loss.append(LossItem(LOSS_NODE_ATTR, count,
                                 f"node attribute {key!r} dropped", detail=key))
        for key in sorted(g.graph_attrs):
            loss.append(LossItem(LOSS_GRAPH_ATTR, 1,
                                 f"graph attribute {key!r} dropped", detail=key))

        weights = [e.attrs.get("weight") for e in g.edges]
        have = [w for w in weights if w is not None]
        all_weighted = bool(have) and len(have) == len(weights)
        valid = all_weighted and all(_is_float(w) and _no_ws(w) for w in have)
        if valid:
            field = "integer" if all(_INT_RE.match(w) for w in have) else "real"
        else:
            field = "pattern"
            if have:
                loss.append(LossItem(
                    LOSS_EDGE_ATTR, len(have),
                    "edge weights dropped (not every edge carries a numeric "
                    "weight)", detail="weight"))
        edge_attr_counts: dict[str, int] = {}
        for e in g.edges:
            for key in e.attrs:
                if key == "weight":
                    continue
                edge_attr_counts[key] = edge_attr_counts.get(key, 0) + 1
        for key, count in sorted(edge_attr_counts.items()):
            loss.append(LossItem(LOSS_EDGE_ATTR, count,
                                 f"edge attribute {key!r} dropped", detail=key))

        seen_pairs: dict[tuple[str, str], int] = {}
        for e in g.edges:
            k = e.key(g.directed)
            seen_pairs[k] = seen_pairs.get(k, 0) + 1
        multi = sum(c - 1 for c in seen_pairs.values() if c > 1)
        if multi:
            loss.append(LossItem(LOSS_MULTI_EDGE, multi,
                                 "parallel edges emitted as duplicate "
                                 "coordinate entries"))

        symmetry = "general" if g.directed else "symmetric"
        lines = [f"%%MatrixMarket matrix coordinate {field} {symmetry}",
                 "% exported by graphbase",
                 f"{n} {n} {g.edge_count}"]
        for e in g.edges:
            i, j = int(mapping[e.source]), int(mapping[e.target])
            if not g.directed and i < j:
                i, j = j, i  # symmetric storage keeps the lower triangle
            cell = f"{i} {j}"
            if field != "pattern":
                cell += f" {e.attrs['weight']}"
            lines.append(cell)
        return ("\n".join(lines) + "\n").encode("utf-8"), loss

    def sniff(self, data: bytes) -> bool:
        return data.startswith(b"%%MatrixMarket")


def _is_float(text: str) -> bool:
    try:
        float(text)
        return True
    except ValueError:
        return False


def _no_ws(text: str) -> bool:
    return re.fullmatch(r"\S+", text) is not None
