"""GML (Graph Modelling Language) reader and writer.

Supported subset: the de-facto key-value list syntax.  A document is a
sequence of top-level ``key value`` pairs with exactly one ``graph [ ... ]``
list.  Inside ``graph``: ``directed 0|1``, ``node [ ... ]`` and
``edge [ ... ]`` lists, plus arbitrary scalar keys (kept as graph
attributes).  Nodes carry ``id`` and optional ``label``; edges carry
``source``, ``target`` and optional ``label``; further scalar keys on any
of them are preserved verbatim in the attribute maps, keeping the original
lexical form of numbers.

Two deliberate extensions of classic GML: ids may be quoted strings in
addition to integers (so graphs arriving from other formats keep their id
space), and strings are UTF-8 rather than entity-encoded ASCII, with only
``&quot;`` and ``&amp;`` used as escapes.

Other nested lists (``graphics [...]`` and friends) are outside the subset:
strict mode rejects them, lenient mode drops them with a loss item.
"""

from __future__ import annotations

import re
from ..errors import FormatSyntaxError, UnsupportedConstruct
from ..model import EdgeRecord, Graph, NodeRecord
from . import (LOSS_GRAPH_ATTR, LOSS_EDGE_ATTR, LOSS_NODE_ATTR,
               LOSS_NESTED_LIST, LossItem)

_KEY_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_NUMBER_RE = re.compile(r"[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?")

# token types
_KEY, _NUMBER, _STRING, _LBRACKET, _RBRACKET = "key", "number", "string", "[", "]"


class _Token:
    __slots__ = ("type", "text", "line", "col")

    def __init__(self, type_, text, line, col):
        self.type = type_
        self.text = text
        self.line = line
        self.col = col


def _decode(data: bytes) -> str:
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        prefix = data[:exc.start]
        line = prefix.count(b"\n") + 1
        col = exc.start - (prefix.rfind(b"\n") + 1) + 1
        raise FormatSyntaxError(line, col, "invalid UTF-8") from exc


def _unescape(s: str) -> str:
    return s.replace("&quot;", '"').replace("&amp;", "&")


def _escape(s: str) -> str:
    return s.replace("&", "&amp;").replace('"', "&quot;")


def _tokenize(text: str):
    tokens: list[_Token] = []
    i, line, linestart = 0, 1, 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            i += 1
            linestart = i
            continue
        if ch in " \t\r":
            i += 1
            continue
        col = i - linestart + 1
        if ch == "[":
            tokens.append(_Token(_LBRACKET, "[", line, col))
            i += 1
        elif ch == "]":
            tokens.append(_Token(_RBRACKET, "]", line, col))
            i += 1
        elif ch == '"':
            end = text.find('"', i + 1)
            if end == -1:
                raise FormatSyntaxError(line, col, "unterminated string")
            raw = text[i + 1:end]
            tokens.append(_Token(_STRING, raw, line, col))
            line += raw.count("\n")
            if "\n" in raw:
                linestart = i + 1 + raw.rfind("\n") + 1
            i = end + 1
        else:
            m = _NUMBER_RE.match(text, i)
            if m and m.start() == i:
                tokens.append(_Token(_NUMBER, m.group(0), line, col))
                i = m.end()
                continue
            m = _KEY_RE.match(text, i)
            if m and m.start() == i:
                tokens.append(_Token(_KEY, m.group(0), line, col))
                i = m.end()
                continue
            raise FormatSyntaxError(line, col, f"unexpected character {ch!r}")
    return tokens


class _Parser:
    """Recursive-descent over the token stream; values are scalar tokens or
    nested (key, value) lists."""

    def __init__(self, tokens: list[_Token], strict: bool):
        self.tokens = tokens
        self.pos = 0
        self.strict = strict
        self.loss: list[LossItem] = []

    def _peek(self) -> _Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _next(self) -> _Token:
        tok = self._peek()
        if tok is None:
            last = self.tokens[-1] if self.tokens else _Token(_KEY, "", 1, 1)
            raise FormatSyntaxError(last.line, last.col, "unexpected end of input")
        self.pos += 1
        return tok

    def parse_pairs(self, until_bracket: bool) -> list[tuple[_Token, object]]:
        pairs = []
        while True:
            tok = self._peek()
            if tok is None:
                if until_bracket:
                    raise FormatSyntaxError(self.tokens[-1].line,
                                            self.tokens[-1].col,
                                            "missing closing ']'")
                return pairs
            if tok.type == _RBRACKET:
                if not until_bracket:
                    raise FormatSyntaxError(tok.line, tok.col, "unmatched ']'")
                self.pos += 1
                return pairs
            if tok.type != _KEY:
                raise FormatSyntaxError(tok.line, tok.col,
                                        f"expected key, got {tok.text!r}")
            self.pos += 1
            val = self._next()
            if val.type == _LBRACKET:
                pairs.append((tok, self.parse_pairs(until_bracket=True)))
            elif val.type in (_NUMBER, _STRING):
                pairs.append((tok, val))
            else:
                raise FormatSyntaxError(val.line, val.col,
                                        f"expected value after {tok.text!r}")
        # unreachable

    def scalar_text(self, tok: _Token) -> str:
        return _unescape(tok.text) if tok.type == _STRING else tok.text


def _collect_item(pairs, kind: str, parser: _Parser,
                  reserved: tuple[str, ...]) -> tuple[dict, dict[str, str]]:
    """Split an item's pairs into reserved fields and the attrs map."""
    fields: dict[str, _Token] = {}
    attrs: dict[str, str] = {}
    for key_tok, val in pairs:
        key = key_tok.text
        if isinstance(val, list):
            if parser.strict:
                raise UnsupportedConstruct(f"nested list '{key}' inside {kind}")
            parser.loss.append(LossItem(
                LOSS_NESTED_LIST, 1,
                f"nested list '{key}' inside {kind} dropped", detail=key))
            continue
        if key in reserved:
            fields[key] = val
        else:
            attrs[key] = parser.scalar_text(val)
    return fields, attrs


class GmlFormat:
    def parse(self, data: bytes, strict: bool) -> tuple[Graph, list[LossItem]]:
        text = _decode(data)
        parser = _Parser(_tokenize(text), strict)
        top = parser.parse_pairs(until_bracket=False)

        graph_attrs: dict[str, str] = {}
        graph_pairs = None
        graph_tok = None
        for key_tok, val in top:
            if key_tok.text == "graph" and isinstance(val, list):
                if graph_pairs is not None:
                    if strict:
                        raise UnsupportedConstruct("multiple graph lists")
                    parser.loss.append(LossItem(
                        LOSS_NESTED_LIST, 1, "additional graph list dropped",
                        detail="graph"))
                    continue
                graph_pairs = val
                graph_tok = key_tok
            elif isinstance(val, list):
                if strict:
                    raise UnsupportedConstruct(
                        f"top-level list '{key_tok.text}'")
                parser.loss.append(LossItem(
                    LOSS_NESTED_LIST, 1,
                    f"top-level list '{key_tok.text}' dropped",
                    detail=key_tok.text))
            else:
                graph_attrs[key_tok.text] = parser.scalar_text(val)
        if graph_pairs is None:
            tok = parser.tokens[0] if parser.tokens else None
            raise FormatSyntaxError(tok.line if tok else 1,
                                    tok.col if tok else 1,
                                    "no 'graph [' list found")

        directed = False
        nodes: list[NodeRecord] = []
        edges: list[tuple[EdgeRecord, _Token]] = []
        node_ids: set[str] = set()

        for key_tok, val in graph_pairs:
            key = key_tok.text
            if key == "node" and isinstance(val, list):
                fields, attrs = _collect_item(val, "node", parser, ("id", "label"))
                if "id" not in fields:
                    raise FormatSyntaxError(key_tok.line, key_tok.col,
                                            "node without id")
                nid = parser.scalar_text(fields["id"])
                if nid in node_ids:
                    raise FormatSyntaxError(fields["id"].line, fields["id"].col,
                                            f"duplicate node id {nid!r}")
                node_ids.add(nid)
                label = parser.scalar_text(fields["label"]) if "label" in fields else None
                nodes.append(NodeRecord(id=nid, label=label, attrs=attrs))
            elif key == "edge" and isinstance(val, list):
                fields, attrs = _collect_item(val, "edge", parser,
                                              ("source", "target", "label"))
                for req in ("source", "target"):
                    if req not in fields:
                        raise FormatSyntaxError(key_tok.line, key_tok.col,
                                                f"edge without {req}")
                label = parser.scalar_text(fields["label"]) if "label" in fields else None
                edges.append((EdgeRecord(
                    source=parser.scalar_text(fields["source"]),
                    target=parser.scalar_text(fields["target"]),
                    label=label, attrs=attrs), key_tok))
            elif key == "directed" and not isinstance(val, list):
                if val.text not in ("0", "1"):
                    raise FormatSyntaxError(val.line, val.col,
                                            "directed must be 0 or 1")
                directed = val.text == "1"
            elif isinstance(val, list):
                if strict:
                    raise UnsupportedConstruct(f"nested list '{key}' inside graph")
                parser.loss.append(LossItem(
                    LOSS_NESTED_LIST, 1,
                    f"nested list '{key}' inside graph dropped", detail=key))
            else:
                graph_attrs[key] = parser.scalar_text(val)

        for edge, tok in edges:
            for endpoint in (edge.source, edge.target):
                if endpoint not in node_ids:
                    raise FormatSyntaxError(
                        tok.line, tok.col,
                        f"edge endpoint {endpoint!r} names no node")

        g = Graph(directed=directed, nodes=tuple(nodes),
                  edges=tuple(e for e, _ in edges), graph_attrs=graph_attrs)
        return g, parser.loss

    def serialize(self, g: Graph) -> tuple[bytes, list[LossItem]]:
        loss: list[LossItem] = []
        lines = ["graph ["]
        lines.append(f"  directed {1 if g.directed else 0}")

        def emit_attrs(attrs: dict[str, str], indent: str, scope: str,
                       kind: str, reserved: tuple[str, ...]):
            for key in sorted(attrs):
                if not _KEY_RE.fullmatch(key) or key in reserved:
                    why = ("collides with a reserved GML key"
                           if key in reserved else "is not a valid GML key")
                    loss.append(LossItem(
                        kind, 1, f"{scope} attribute {key!r} {why}", detail=key))
                    continue
                lines.append(f"{indent}{key} {_value(attrs[key])}")

        emit_attrs(g.graph_attrs, "  ", "graph", LOSS_GRAPH_ATTR,
                   ("graph", "node", "edge", "directed"))
        for node in g.nodes:
            lines.append("  node [")
            lines.append(f"    id {_value(node.id)}")
            if node.label is not None:
                lines.append(f'    label "{_escape(node.label)}"')
            emit_attrs(node.attrs, "    ", f"node {node.id!r}", LOSS_NODE_ATTR,
                       ("id", "label"))
            lines.append("  ]")
        for edge in g.edges:
            lines.append("  edge [")
            lines.append(f"    source {_value(edge.source)}")
            lines.append(f"    target {_value(edge.target)}")
            if edge.label is not None:
                lines.append(f'    label "{_escape(edge.label)}"')
            emit_attrs(edge.attrs, "    ", "edge", LOSS_EDGE_ATTR,
                       ("source", "target", "label"))
            lines.append("  ]")
        lines.append("]")
        return ("\n".join(lines) + "\n").encode("utf-8"), _dedup(loss)

    _SNIFF_RE = re.compile(
        r'^(?:\s*[A-Za-z_][A-Za-z0-9_]*\s+(?:"[^"]*"|[^\s\[\]]+))*'
        r"\s*graph\s*\[")

    def sniff(self, data: bytes) -> bool:
        # top-level scalar pairs followed by 'graph ['
        head = data[:2048].decode("utf-8", errors="replace")
        return self._SNIFF_RE.match(head) is not None


def _value(text: str) -> str:
    """Emit a scalar preserving its lexical form: bare number or quoted string."""
    if _NUMBER_RE.fullmatch(text):
        return text
    return f'"{_escape(text)}"'


def _dedup(items: list[LossItem]) -> list[LossItem]:
    """Collapse repeated (kind, detail) items into one with a summed count."""
    merged: dict[tuple[str, str | None], LossItem] = {}
    for it in items:
        key = (it.kind, it.detail)
        if key in merged:
            old = merged[key]
            merged[key] = LossItem(it.kind, old.count + it.count,
                                   old.message, it.detail)
        else:
            merged[key] = it
    return list(merged.values())
