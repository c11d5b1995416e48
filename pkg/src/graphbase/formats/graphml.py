"""GraphML reader and writer.

Supported subset: a single ``<graph>`` with ``<node>`` and ``<edge>``
elements and ``<data>`` annotations declared through ``<key>`` elements
(defaults honored).  A ``<data>`` named ``label`` maps to the node/edge
label; every other name lands in the attribute maps with its text verbatim.

Outside the subset: nested graphs, ports, hyperedges, per-edge direction
overrides and additional ``<graph>`` elements.  Strict mode rejects these
with :class:`UnsupportedConstruct`; lenient mode (the default) flattens
nested graphs into the top-level node/edge lists and drops the rest, each
recorded as a loss item.
"""

from __future__ import annotations

import xml.parsers.expat
from xml.sax.saxutils import escape, quoteattr

from ..errors import FormatSyntaxError, UnsupportedConstruct
from ..model import EdgeRecord, Graph, NodeRecord
from . import (LOSS_DIRECTION_OVERRIDE, LOSS_EXTRA_GRAPH, LOSS_HYPEREDGE,
               LOSS_NESTED_GRAPH, LOSS_PORT, LossItem)

_NS_SEP = "\x1f"
_IGNORED = {"desc", "locator"}  # documentation elements, no graph content


class _Elem:
    __slots__ = ("tag", "attrs", "children", "text", "line", "col")

    def __init__(self, tag, attrs, line, col):
        self.tag = tag
        self.attrs = attrs
        self.children: list[_Elem] = []
        self.text: list[str] = []
        self.line = line
        self.col = col

    def content(self) -> str:
        return "".join(self.text)

    def error(self, message: str) -> FormatSyntaxError:
        return FormatSyntaxError(self.line, self.col, message)


def _local(name: str) -> str:
    return name.rsplit(_NS_SEP, 1)[-1]


def _parse_xml(data: bytes) -> _Elem:
    parser = xml.parsers.expat.ParserCreate(namespace_separator=_NS_SEP)
    root: list[_Elem] = []
    stack: list[_Elem] = []

    def start(name, attrs):
        elem = _Elem(_local(name), {_local(k): v for k, v in attrs.items()},
                     parser.CurrentLineNumber, parser.CurrentColumnNumber + 1)
        if stack:
            stack[-1].children.append(elem)
        else:
            root.append(elem)
        stack.append(elem)

    def end(_name):
        stack.pop()

    def chars(text):
        if stack:
            stack[-1].text.append(text)

    def entity_decl(*_args):
        raise UnsupportedConstruct("custom XML entity declaration")

    parser.StartElementHandler = start
    parser.EndElementHandler = end
    parser.CharacterDataHandler = chars
    parser.EntityDeclHandler = entity_decl
    try:
        parser.Parse(data, True)
    except xml.parsers.expat.ExpatError as exc:
        raise FormatSyntaxError(exc.lineno, exc.offset + 1,
                                xml.parsers.expat.errors.messages[exc.code]) from exc
    if not root:
        raise FormatSyntaxError(1, 1, "no XML content")
    return root[0]


class _KeyDecl:
    __slots__ = ("name", "domain", "default")

    def __init__(self, name, domain, default):
        self.name = name
        self.domain = domain
        self.default = default


class GraphmlFormat:
    def parse(self, data: bytes, strict: bool) -> tuple[Graph, list[LossItem]]:
        root = _parse_xml(data)
        if root.tag != "graphml":
            raise root.error(f"expected <graphml> root, got <{root.tag}>")
        loss: list[LossItem] = []

        keys: dict[str, _KeyDecl] = {}
        graphs: list[_Elem] = []
        for child in root.children:
            if child.tag == "key":
                key_id = child.attrs.get("id")
                if key_id is None:
                    raise child.error("<key> without id")
                name = child.attrs.get("attr.name", key_id)
                domain = child.attrs.get("for", "all")
                default = None
                for sub in child.children:
                    if sub.tag == "default":
                        default = sub.content()
                keys[key_id] = _KeyDecl(name, domain, default)
            elif child.tag == "graph":
                graphs.append(child)
            elif child.tag in _IGNORED:
                continue
            elif strict:
                raise UnsupportedConstruct(f"<{child.tag}> under <graphml>")
        if not graphs:
            raise root.error("no <graph> element")
        if len(graphs) > 1:
            if strict:
                raise UnsupportedConstruct("multiple <graph> elements")
            loss.append(LossItem(LOSS_EXTRA_GRAPH, len(graphs) - 1,
                                 "only the first <graph> was kept"))
        graph_el = graphs[0]

        edgedefault = graph_el.attrs.get("edgedefault")
        if edgedefault is None:
            if strict:
                raise graph_el.error("<graph> without edgedefault")
            edgedefault = "undirected"
        if edgedefault not in ("directed", "undirected"):
            raise graph_el.error(f"bad edgedefault {edgedefault!r}")
        directed = edgedefault == "directed"

        def read_data(elem: _Elem, domain: str) -> dict[str, str]:
            values: dict[str, str] = {}
            for sub in elem.children:
                if sub.tag != "data":
                    continue
                kid = sub.attrs.get("key")
                if kid is None:
                    raise sub.error("<data> without key")
                decl = keys.get(kid)
                name = decl.name if decl else kid
                values[name] = sub.content()
            for decl in keys.values():
                if decl.default is not None and decl.domain in (domain, "all"):
                    values.setdefault(decl.name, decl.default)
            return values

        nodes: list[NodeRecord] = []
        edges: list[EdgeRecord] = []
        node_ids: set[str] = set()

        def walk_graph(gel: _Elem, nested: bool):
            if nested:
                loss.append(LossItem(
                    LOSS_NESTED_GRAPH, 1,
                    "nested graph flattened into the top-level graph"))
            if "id" in gel.attrs and not nested:
                graph_attrs.setdefault("id", gel.attrs["id"])
            for el in gel.children:
                if el.tag == "node":
                    nid = el.attrs.get("id")
                    if nid is None:
                        raise el.error("<node> without id")
                    if nid in node_ids:
                        raise el.error(f"duplicate node id {nid!r}")
                    node_ids.add(nid)
                    values = read_data(el, "node")
                    label = values.pop("label", None)
                    nodes.append(NodeRecord(id=nid, label=label, attrs=values))
                    for sub in el.children:
                        if sub.tag == "graph":
                            if strict:
                                raise UnsupportedConstruct("nested graph")
                            walk_graph(sub, nested=True)
                        elif sub.tag == "port":
                            if strict:
                                raise UnsupportedConstruct("port")
                            loss.append(LossItem(LOSS_PORT, 1,
                                                 f"port on node {nid!r} dropped"))
                elif el.tag == "edge":
                    src = el.attrs.get("source")
                    tgt = el.attrs.get("target")
                    if src is None or tgt is None:
                        raise el.error("<edge> without source/target")
                    if "sourceport" in el.attrs or "targetport" in el.attrs:
                        if strict:
                            raise UnsupportedConstruct("edge port reference")
                        loss.append(LossItem(LOSS_PORT, 1,
                                             "edge port reference dropped"))
                    values = read_data(el, "edge")
                    if "directed" in el.attrs:
                        override = el.attrs["directed"] == "true"
                        if override != directed:
                            if strict:
                                raise UnsupportedConstruct(
                                    "per-edge direction override")
                            loss.append(LossItem(
                                LOSS_DIRECTION_OVERRIDE, 1,
                                "per-edge direction override ignored"))
                    if "id" in el.attrs:
                        values.setdefault("id", el.attrs["id"])
                    label = values.pop("label", None)
                    edges.append(EdgeRecord(source=src, target=tgt,
                                            label=label, attrs=values))
                elif el.tag == "hyperedge":
                    if strict:
                        raise UnsupportedConstruct("hyperedge")
                    loss.append(LossItem(LOSS_HYPEREDGE, 1, "hyperedge dropped"))
                elif el.tag in _IGNORED or el.tag == "data":
                    continue
                elif strict:
                    raise UnsupportedConstruct(f"<{el.tag}> inside <graph>")

        graph_attrs = read_data(graph_el, "graph")
        walk_graph(graph_el, nested=False)

        for e in edges:
            for endpoint in (e.source, e.target):
                if endpoint not in node_ids:
                    raise graph_el.error(
                        f"edge endpoint {endpoint!r} names no node")

        g = Graph(directed=directed, nodes=tuple(nodes), edges=tuple(edges),
                  graph_attrs=graph_attrs)
        return g, loss

    def serialize(self, g: Graph) -> tuple[bytes, list[LossItem]]:
        # lossless except attrs literally named "label", which the label
        # convention reserves
        loss: list[LossItem] = []
        decls: list[tuple[str, str]] = []
        seen: set[tuple[str, str]] = set()

        def declare(domain: str, name: str):
            if (domain, name) not in seen:
                seen.add((domain, name))
                decls.append((domain, name))

        n_label_attrs = sum(1 for n in g.nodes if "label" in n.attrs)
        e_label_attrs = sum(1 for e in g.edges if "label" in e.attrs)
        if n_label_attrs:
            loss.append(LossItem(LOSS_NODE_ATTR, n_label_attrs,
                                 "node attribute 'label' collides with the "
                                 "label convention", detail="label"))
        if e_label_attrs:
            loss.append(LossItem(LOSS_EDGE_ATTR, e_label_attrs,
                                 "edge attribute 'label' collides with the "
                                 "label convention", detail="label"))

        for key in sorted(g.graph_attrs):
            declare("graph", key)
        for n in g.nodes:
            if n.label is not None:
                declare("node", "label")
            for key in sorted(n.attrs):
                if key != "label":
                    declare("node", key)
        for e in g.edges:
            if e.label is not None:
                declare("edge", "label")
            for key in sorted(e.attrs):
                if key != "label":
                    declare("edge", key)

        key_ids = {pair: f"d{i}" for i, pair in enumerate(sorted(decls))}

        def attr_type(domain: str, name: str) -> str:
            if domain == "edge" and name == "weight":
                values = [e.attrs["weight"] for e in g.edges if "weight" in e.attrs]
                if values and all(_is_float(v) for v in values):
                    return "double"
            return "string"

        out = ['<?xml version="1.0" encoding="UTF-8"?>',
               '<graphml xmlns="http://graphml.graphdrawing.org/xmlns">']
        for domain, name in sorted(decls):
            out.append(f'  <key id={quoteattr(key_ids[(domain, name)])} '
                       f'for={quoteattr(domain)} attr.name={quoteattr(name)} '
                       f'attr.type="{attr_type(domain, name)}"/>')
        out.append(f'  <graph edgedefault="'
                   f'{"directed" if g.directed else "undirected"}">')

        def emit_data(pairs: dict[str, str], domain: str, indent: str,
                      label: str | None):
            items = {k: v for k, v in sorted(pairs.items())
                     if not (domain in ("node", "edge") and k == "label")}
            if label is not None:
                items = {"label": label, **items}
            for name, value in items.items():
                out.append(f'{indent}<data key='
                           f'{quoteattr(key_ids[(domain, name)])}>'
                           f'{escape(value)}</data>')

        emit_data(g.graph_attrs, "graph", "    ", None)
        for n in g.nodes:
            if n.label is None and not n.attrs:
                out.append(f'    <node id={quoteattr(n.id)}/>')
            else:
                out.append(f'    <node id={quoteattr(n.id)}>')
                emit_data(n.attrs, "node", "      ", n.label)
                out.append('    </node>')
        for e in g.edges:
            head = (f'    <edge source={quoteattr(e.source)} '
                    f'target={quoteattr(e.target)}')
            if e.label is None and not e.attrs:
                out.append(head + '/>')
            else:
                out.append(head + '>')
                emit_data(e.attrs, "edge", "      ", e.label)
                out.append('    </edge>')
        out.append('  </graph>')
        out.append('</graphml>')
        return ("\n".join(out) + "\n").encode("utf-8"), loss

    def sniff(self, data: bytes) -> bool:
        head = data[:4096].decode("utf-8", errors="replace")
        return "<graphml" in head


def _is_float(text: str) -> bool:
    try:
        float(text)
        return True
    except ValueError:
        return False
