import random

import pytest
from hypothesis import given, settings, strategies as st

from graphbase import formats
from graphbase.errors import (FormatSyntaxError, UnknownFormat,
                              UnsupportedConstruct)
from graphbase.formats import (apply_loss_items, convert, detect_format,
                               parse, parse_report, serialize)
from graphbase.model import build_graph, structurally_equal

from corpus import random_graph

GML_MIN = (b"graph [ directed 0 node [ id 0 label \"a\" ] "
           b"node [ id 1 label \"b\" ] edge [ source 0 target 1 ] ]")


def assert_roundtrip(g, fmt):
    data, report = serialize(g, fmt)
    reparsed = parse(data, fmt)
    expected = apply_loss_items(g, report.dropped_items)
    assert structurally_equal(expected, reparsed), (
        f"{fmt} round-trip mismatch beyond declared loss")
    return report


# --- GML ---------------------------------------------------------------

def test_gml_minimal_document():
    g = parse(GML_MIN, "gml")
    assert not g.directed
    assert g.node_count == 2 and g.edge_count == 1
    assert [n.label for n in g.nodes] == ["a", "b"]


def test_gml_preserves_unknown_scalar_keys_and_lexical_form():
    doc = b'graph [ directed 1 foo 1.50 node [ id 0 color "red" weight 07 ] ]'
    g = parse(doc, "gml")
    assert g.graph_attrs["foo"] == "1.50"
    assert g.nodes[0].attrs == {"color": "red", "weight": "07"}


def test_gml_syntax_error_position():
    with pytest.raises(FormatSyntaxError) as err:
        parse(b"graph [\n  node [ id ] \n]", "gml")
    assert err.value.line == 2


def test_gml_string_escapes_roundtrip():
    g = build_graph(False, [("a", 'he said "hi" & left')], [])
    assert_roundtrip(g, "gml")


def test_gml_nested_list_strict_vs_lenient():
    doc = b"graph [ node [ id 0 graphics [ x 1 y 2 ] ] ]"
    with pytest.raises(UnsupportedConstruct):
        parse(doc, "gml", strict=True)
    g, report = parse_report(doc, "gml")
    assert g.node_count == 1
    assert not report.lossless


def test_gml_duplicate_node_id_is_positioned_error():
    doc = b"graph [ node [ id 0 ] node [ id 0 ] ]"
    with pytest.raises(FormatSyntaxError):
        parse(doc, "gml")


def test_gml_dangling_edge_positioned_error():
    doc = b"graph [ node [ id 0 ] edge [ source 0 target 9 ] ]"
    with pytest.raises(FormatSyntaxError):
        parse(doc, "gml")


def test_gml_roundtrip_is_lossless_identity():
    g = parse(GML_MIN, "gml")
    report = assert_roundtrip(g, "gml")
    assert report.lossless


# --- GraphML -----------------------------------------------------------

GRAPHML_DOC = b"""<?xml version="1.0" encoding="UTF-8"?>
<graphml xmlns="http://graphml.graphdrawing.org/xmlns">
  <key id="d0" for="node" attr.name="label" attr.type="string"/>
  <key id="d1" for="edge" attr.name="weight" attr.type="double">
    <default>1.0</default>
  </key>
  <graph edgedefault="directed">
    <node id="n0"><data key="d0">start</data></node>
    <node id="n1"/>
    <edge source="n0" target="n1"><data key="d1">2.5</data></edge>
    <edge source="n1" target="n0"/>
  </graph>
</graphml>
"""


def test_graphml_basic_parse_with_defaults():
    g = parse(GRAPHML_DOC, "graphml")
    assert g.directed
    assert g.nodes[0].label == "start"
    assert g.edges[0].weight == 2.5
    assert g.edges[1].attrs["weight"] == "1.0"  # key default applied


def test_graphml_nested_graph_modes():
    doc = b"""<graphml><graph edgedefault="undirected">
      <node id="a"><graph><node id="b"/></graph></node>
      </graph></graphml>"""
    with pytest.raises(UnsupportedConstruct):
        parse(doc, "graphml", strict=True)
    g, report = parse_report(doc, "graphml")
    assert sorted(n.id for n in g.nodes) == ["a", "b"]
    assert any(i.kind == formats.LOSS_NESTED_GRAPH
               for i in report.dropped_items)


def test_graphml_xml_error_is_positioned():
    with pytest.raises(FormatSyntaxError) as err:
        parse(b"<graphml>\n  <graph", "graphml")
    assert err.value.line >= 1 and err.value.column >= 1


def test_graphml_serialize_is_lossless_for_decorated_graphs():
    rng = random.Random(7)
    for _ in range(25):
        g = random_graph(rng, 2, 30)
        has_label_attr = (any("label" in n.attrs for n in g.nodes)
                          or any("label" in e.attrs for e in g.edges))
        report = assert_roundtrip(g, "graphml")
        if not has_label_attr:
            assert report.lossless


# --- DIMACS ------------------------------------------------------------

def test_dimacs_minimal():
    g = parse(b"p edge 3 2\ne 1 2\ne 2 3\n", "dimacs")
    assert not g.directed
    assert g.node_count == 3 and g.edge_count == 2


def test_dimacs_node_values_become_weight_attr():
    g = parse(b"p edge 2 1\nn 1 5\ne 1 2\n", "dimacs")
    assert g.nodes[0].attrs["weight"] == "5"
    assert "weight" not in g.nodes[1].attrs


def test_dimacs_rejects_out_of_range_vertex():
    with pytest.raises(FormatSyntaxError):
        parse(b"p edge 2 1\ne 1 5\n", "dimacs")


def test_dimacs_count_mismatch():
    with pytest.raises(FormatSyntaxError):
        parse(b"p edge 3 5\ne 1 2\n", "dimacs")


def test_dimacs_labels_dropped_with_report():
    g = build_graph(False, [("a", "left"), ("b", "right")], [("a", "b")])
    data, report = serialize(g, "dimacs")
    kinds = {i.kind for i in report.dropped_items}
    assert formats.LOSS_NODE_LABEL in kinds
    assert formats.LOSS_NODE_ID in kinds
    assert_roundtrip(g, "dimacs")


# --- Matrix Market -----------------------------------------------------

MM_DOC = b"""%%MatrixMarket matrix coordinate real general
3 3 2
1 2 1.0
2 3 1.0
"""


def test_matrix_market_general_is_directed():
    g = parse(MM_DOC, "matrix-market")
    assert g.directed
    assert g.node_count == 3 and g.edge_count == 2
    assert all(e.weight == 1.0 for e in g.edges)


def test_matrix_market_symmetric_is_undirected():
    doc = b"%%MatrixMarket matrix coordinate pattern symmetric\n2 2 1\n2 1\n"
    g = parse(doc, "matrix-market")
    assert not g.directed


def test_matrix_market_rectangular_becomes_bipartite():
    doc = b"%%MatrixMarket matrix coordinate pattern general\n2 3 2\n1 2\n2 3\n"
    g = parse(doc, "matrix-market")
    assert g.directed
    assert g.node_ids() == ["r1", "r2", "c1", "c2", "c3"]
    assert (g.edges[0].source, g.edges[0].target) == ("r1", "c2")


def test_matrix_market_diagonal_is_self_loop():
    doc = b"%%MatrixMarket matrix coordinate pattern general\n2 2 1\n1 1\n"
    g = parse(doc, "matrix-market")
    assert g.edges[0].is_loop()


def test_matrix_market_unsupported_field():
    doc = b"%%MatrixMarket matrix coordinate complex general\n1 1 0\n"
    with pytest.raises(UnsupportedConstruct):
        parse(doc, "matrix-market")


def test_matrix_market_weighted_directed_roundtrip_corpus():
    # 50-graph corpus: fully weighted directed graphs keep weights intact
    rng = random.Random(11)
    for _ in range(50):
        n = rng.randint(2, 40)
        ids = [str(i + 1) for i in range(n)]
        edges = []
        for _ in range(rng.randint(1, 2 * n)):
            e = (rng.choice(ids), rng.choice(ids), None,
                 {"weight": rng.choice(["1", "2.5", "-3.25", "4e2"])})
            edges.append(e)
        g = build_graph(True, ids, edges)
        data, report = serialize(g, "matrix-market")
        assert all(i.kind in (formats.LOSS_MULTI_EDGE,)
                   for i in report.dropped_items)
        assert structurally_equal(apply_loss_items(g, report.dropped_items),
                                  parse(data, "matrix-market"))


def test_matrix_market_multi_edge_duplicate_entries_note():
    g = build_graph(False, ["1", "2"], [("1", "2"), ("1", "2")])
    data, report = serialize(g, "matrix-market")
    assert any(i.kind == formats.LOSS_MULTI_EDGE for i in report.dropped_items)
    reparsed = parse(data, "matrix-market")
    assert reparsed.edge_count == 2


# --- detection ----------------------------------------------------------

def test_detect_format_on_all_serializers():
    rng = random.Random(3)
    for _ in range(10):
        g = random_graph(rng, 2, 20)
        for fmt in formats.format_ids():
            data, _ = serialize(g, fmt)
            assert detect_format(data) == fmt


def test_detect_format_unknown():
    with pytest.raises(UnknownFormat):
        detect_format(b"complete nonsense \x00\x01")
    with pytest.raises(UnknownFormat):
        detect_format(b"")


# --- conversion ----------------------------------------------------------

def test_convert_identity_is_lossless():
    out, report = convert(GML_MIN, "gml", "gml")
    assert report.lossless
    assert structurally_equal(parse(GML_MIN, "gml"), parse(out, "gml"))


def test_convert_labeled_gml_to_dimacs_reports_loss():
    _, report = convert(GML_MIN, "gml", "dimacs")
    assert not report.lossless
    assert any(i.kind == formats.LOSS_NODE_LABEL for i in report.dropped_items)


def test_convert_dimacs_to_gml_lossless():
    # GML is a superset of DIMACS content: 50-file harness
    rng = random.Random(5)
    for _ in range(50):
        n = rng.randint(2, 30)
        lines = [f"p edge {n} 0"]
        m = 0
        body = []
        for _ in range(rng.randint(0, 2 * n)):
            u, v = rng.randint(1, n), rng.randint(1, n)
            body.append(f"e {u} {v}")
            m += 1
        lines[0] = f"p edge {n} {m}"
        data = ("\n".join(lines + body) + "\n").encode()
        out, report = convert(data, "dimacs", "gml")
        assert report.lossless
        assert structurally_equal(parse(data, "dimacs"), parse(out, "gml"))


# --- emitted surface: pinned externals ------------------------------------

def test_serializer_surface_conventions():
    g = build_graph(False, ["1", "2"], [("1", "2")])
    gml_out, _ = serialize(g, "gml")
    assert b"\r" not in gml_out  # LF only
    assert b"\n  node [\n    id 1\n" in gml_out  # two-space indentation
    dimacs_out, _ = serialize(g, "dimacs")
    assert dimacs_out.startswith(b"c ")  # archive comment header
    mm_out, _ = serialize(g, "matrix-market")
    assert mm_out.startswith(b"%%MatrixMarket matrix coordinate ")


# --- round-trip property over the random corpus --------------------------

@pytest.mark.parametrize("fmt", ["gml", "graphml", "dimacs", "matrix-market"])
def test_roundtrip_random_corpus(fmt):
    rng = random.Random(hash(fmt) & 0xFFFF)
    for _ in range(40):
        g = random_graph(rng, 2, 60)
        assert_roundtrip(g, fmt)


# --- runtime extensibility --------------------------------------------------

def test_register_additional_format():
    class EdgeListFormat:
        def parse(self, data, strict):
            pairs = [line.split() for line in data.decode().splitlines()
                     if line.strip()]
            ids = sorted({v for pair in pairs for v in pair})
            return build_graph(False, ids, [tuple(p) for p in pairs]), []

        def serialize(self, g):
            lines = [f"{e.source} {e.target}" for e in g.edges]
            return ("\n".join(lines) + "\n").encode(), []

        def sniff(self, data):
            return False

    formats.register_format("edgelist", EdgeListFormat(), ".edges")
    try:
        g = parse(b"a b\nb c\n", "edgelist")
        assert g.edge_count == 2
        out, report = serialize(g, "edgelist")
        assert report.lossless
        assert "edgelist" in formats.format_ids()
    finally:
        formats._REGISTRY.pop("edgelist", None)


# --- fuzz: parsers are total ---------------------------------------------

@settings(max_examples=300, deadline=None)
@given(st.binary(min_size=1, max_size=400), st.sampled_from(
    ["gml", "graphml", "dimacs", "matrix-market"]))
def test_parse_never_crashes(data, fmt):
    try:
        parse(data, fmt)
    except (FormatSyntaxError, UnsupportedConstruct):
        pass


@settings(max_examples=150, deadline=None)
@given(st.text(alphabet="graph [node id 0]\"ep&; \n12", min_size=1,
               max_size=300))
def test_parse_gml_textlike_never_crashes(text):
    try:
        parse(text.encode(), "gml")
    except (FormatSyntaxError, UnsupportedConstruct):
        pass
