"""Acceptance suite: one test per release criterion.

Run with ``pytest tests/test_acceptance.py -s`` to see one PASS line per
criterion.  Stated runtime ceilings are asserted, not just observed.
"""

import io
import itertools
import random
import time
import zipfile

import pytest
from fastapi.testclient import TestClient

from graphbase import formats
from graphbase.analysis import is_planar, vertex_connectivity
from graphbase.api import ServiceConfig, create_app
from graphbase.generators import (MutationConfig, eliminate_cycles,
                                  mutate_rome, sanitize_north)
from graphbase.model import (build_graph, labeled_signature,
                             structurally_equal)
from graphbase.analysis import is_acyclic
from graphbase.analysis.components import connected_components

from corpus import random_digraph, random_graph, random_simple_graph
from oracles import (brute_force_min_inversions,
                     brute_force_vertex_connectivity, kuratowski_planar)


def _ok(name: str):
    print(f"\nACCEPTANCE PASS: {name}", flush=True)


# --- 1. format round-trip ---------------------------------------------------

def test_format_roundtrip_corpus():
    """200 random graphs x 4 formats: re-parse equals the source minus
    exactly the declared loss items; under 30 seconds."""
    rng = random.Random(20260810)
    start = time.monotonic()
    for i in range(200):
        g = random_graph(rng, 2, 200)
        for fmt in ("gml", "graphml", "dimacs", "matrix-market"):
            data, report = formats.serialize(g, fmt)
            reparsed = formats.parse(data, fmt)
            expected = formats.apply_loss_items(g, report.dropped_items)
            assert structurally_equal(expected, reparsed), (
                f"graph {i}: unexplained drop in {fmt}")
            assert formats.detect_format(data) == fmt
    elapsed = time.monotonic() - start
    assert elapsed < 30, f"round-trip corpus took {elapsed:.1f}s"
    _ok(f"format round-trip (200 graphs x 4 formats, {elapsed:.1f}s)")


# --- 2. planarity oracle equivalence ------------------------------------------

def _edges_of(g):
    index = {v: i for i, v in enumerate(g.node_ids())}
    return [(index[u], index[v]) for u, v in g.simple_undirected_edges()]


def test_planarity_matches_kuratowski_oracle():
    """Exhaustive on every simple graph with n <= 6 (all labeled graphs,
    which covers every isomorphism class) plus 500 random graphs with
    n <= 8; zero disagreements, under 5 minutes."""
    start = time.monotonic()
    checked = 0
    for n in range(0, 7):
        pairs = list(itertools.combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            edges = [p for i, p in enumerate(pairs) if mask >> i & 1]
            g = build_graph(False, [str(v) for v in range(n)],
                            [(str(u), str(v)) for u, v in edges])
            assert is_planar(g) == kuratowski_planar(n, edges), (n, edges)
            checked += 1

    rng = random.Random(4040)
    for _ in range(500):
        n = rng.randint(1, 8)
        g = random_simple_graph(rng, n, rng.choice([0.2, 0.4, 0.6, 0.8, 1.0]))
        edges = _edges_of(g)
        assert is_planar(g) == kuratowski_planar(n, edges), (n, edges)
        checked += 1
    elapsed = time.monotonic() - start
    assert elapsed < 300, f"planarity equivalence took {elapsed:.1f}s"
    _ok(f"planarity oracle equivalence ({checked} graphs, {elapsed:.1f}s)")


# --- 3. connectivity oracle equivalence ------------------------------------------

def test_vertex_connectivity_matches_brute_force():
    """300 random simple graphs with n <= 10 against exhaustive
    minimum-separator search; zero disagreements."""
    rng = random.Random(1234)
    for i in range(300):
        n = rng.randint(1, 10)
        g = random_simple_graph(rng, n, rng.choice([0.1, 0.25, 0.4, 0.6,
                                                    0.8, 1.0]))
        edges = _edges_of(g)
        assert vertex_connectivity(g) == \
            brute_force_vertex_connectivity(n, edges), (n, edges)
    _ok("vertex connectivity oracle equivalence (300 graphs)")


# --- 4. mutation-generator envelope ------------------------------------------------

def _seed_graphs():
    seeds = []
    for n in (10, 12, 15, 20, 24):
        ids = [str(i + 1) for i in range(n)]
        edges = [(ids[i], ids[(i + 1) % n]) for i in range(n)]
        if n % 2 == 0:
            edges += [(ids[i], ids[i + n // 2]) for i in range(n // 2)]
        seeds.append(build_graph(False, ids, edges))
    return seeds


def _run_rome(seed_graphs):
    outputs = []
    for i, seed in enumerate(seed_graphs):
        cfg = MutationConfig(rounds=200, ops_per_round=5, rng_seed=1000 + i,
                             size_bounds=(10, 100))
        outputs.extend(mutate_rome(seed, cfg))
    return outputs


def test_rome_envelope():
    """5 seeds -> 1000 graphs, all connected, all 10..100 vertices,
    bit-identical on rerun; under 1 minute."""
    start = time.monotonic()
    seeds = _seed_graphs()
    outputs = _run_rome(seeds)
    assert len(outputs) == 1000
    for g in outputs:
        assert 10 <= g.node_count <= 100
        assert len(connected_components(g)) == 1
    first_bytes = [formats.serialize(g, "gml")[0] for g in outputs]
    second_bytes = [formats.serialize(g, "gml")[0]
                    for g in _run_rome(seeds)]
    assert first_bytes == second_bytes, "rerun was not bit-identical"
    elapsed = time.monotonic() - start
    assert elapsed < 60, f"mutation envelope took {elapsed:.1f}s"
    _ok(f"mutation-generator envelope (1000 graphs, {elapsed:.1f}s)")


# --- 5. sanitization-pipeline envelope ----------------------------------------------

def test_north_envelope():
    """200 random digraphs sanitize to acyclic connected graphs with unique
    signatures; the cycle-elimination counts match the brute-force minima
    on the two reference inputs."""
    rng = random.Random(777)
    inputs = [random_digraph(rng) for _ in range(200)]
    outputs = sanitize_north(inputs, rng_seed=99)
    assert outputs, "pipeline produced nothing"
    signatures = [labeled_signature(g) for g in outputs]
    assert len(set(signatures)) == len(signatures), "duplicate signature"
    for g in outputs:
        assert is_acyclic(g)
        assert len(connected_components(g)) == 1

    tri = build_graph(True, ["a", "b", "c"],
                      [("a", "b"), ("b", "c"), ("c", "a")])
    _, inverted = eliminate_cycles(tri)
    assert len(inverted) == 1
    assert brute_force_min_inversions(3, [(0, 1), (1, 2), (2, 0)]) == 1

    two = build_graph(True, list("abcdef"),
                      [("a", "b"), ("b", "c"), ("c", "a"),
                       ("d", "e"), ("e", "f"), ("f", "d")])
    _, inverted = eliminate_cycles(two)
    assert len(inverted) == 2
    assert brute_force_min_inversions(
        6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]) == 2
    _ok(f"sanitization-pipeline envelope ({len(outputs)} outputs)")


# --- 6. analysis threshold -------------------------------------------------------

def test_analysis_threshold(tmp_path):
    """A 100,000-vertex graph is marked analysis-skipped; a 99,999-vertex
    path is fully analyzed within the default time budget."""
    config = ServiceConfig(data_dir=tmp_path / "data", open_mode=True,
                           worker_autostart=False)
    app = create_app(config)
    with TestClient(app) as client:
        big = client.post("/graphs", json={
            "content": "p edge 100000 0\n", "format": "dimacs",
            "name": "hundred-k", "creator": "t"}).json()
        path_lines = ["p edge 99999 99998"] + [
            f"e {i} {i + 1}" for i in range(1, 99999)]
        path = client.post("/graphs", json={
            "content": "\n".join(path_lines) + "\n", "format": "dimacs",
            "name": "long-path", "creator": "t"}).json()
        app.state.worker.drain()

        big_detail = client.get(big["uri"]).json()
        assert big_detail["status"] == "analysis-skipped"
        assert big_detail["properties"]["node_count"] == 100000
        assert big_detail["properties"]["is_planar"] is None

        path_detail = client.get(path["uri"]).json()
        assert path_detail["status"] == "analyzed", path_detail
        props = path_detail["properties"]
        assert props["skipped_fields"] == []
        assert props["is_planar"] is True
        assert props["vertex_connectivity"] == 1
        assert props["is_connected"] is True
        assert props["biconnected_component_count"] == 99998
    _ok("analysis threshold (100000 skipped, 99999-path analyzed)")


# --- 7. service integration -------------------------------------------------------

GML_DOC = ("graph [ directed 0 node [ id 1 ] node [ id 2 ]"
           " edge [ source 1 target 2 ] ]")

_TAG_POOL = ["biology", "social", "roads", "circuits"]


def _seed_archive(client, rng):
    ids = []
    for i in range(30):
        g = random_simple_graph(rng, rng.randint(2, 12), rng.random())
        data, _ = formats.serialize(g, "gml")
        body = client.post("/graphs", json={
            "content": data.decode(), "format": "gml",
            "name": f"seed{i}", "creator": rng.choice(["ann", "bo"]),
            "tags": rng.sample(_TAG_POOL, rng.randint(0, 2))}).json()
        ids.append(body["id"])
    return ids


_REFINEMENTS = [
    "planar=true", "planar=false", "connected=true", "directed=false",
    "min_nodes=5", "max_nodes=8", "min_edges=3", "max_edges=10",
    "tag=biology", "tag=social", "creator=ann", "q=seed1",
]


def _search_ids(client, params: str) -> set[str]:
    response = client.get(f"/search?{params}&page_size=500")
    assert response.status_code == 200, response.text
    return {r["id"] for r in response.json()["results"]}


def test_service_integration(tmp_path):
    """Upload lifecycle, restart permanence, guest access, refinement
    monotonicity over 50 random query pairs, partial zip import."""
    config = ServiceConfig(data_dir=tmp_path / "data", open_mode=True,
                           worker_autostart=False)
    app = create_app(config)
    rng = random.Random(31337)
    with TestClient(app) as client:
        # lifecycle
        body = client.post("/graphs", json={
            "content": GML_DOC, "name": "life", "creator": "t"}).json()
        assert client.get(body["uri"]).json()["status"] == "pending-analysis"
        app.state.worker.drain()
        assert client.get(body["uri"]).json()["status"] == "analyzed"

        _seed_archive(client, rng)
        app.state.worker.drain()

        # refinement monotonicity: 50 random base/refinement pairs; each
        # criterion constrains a key not yet used (tags repeat freely,
        # they are conjunctive)
        def draw_criteria(count):
            chosen = []
            used_keys = set()
            while len(chosen) < count:
                candidate = rng.choice(_REFINEMENTS)
                key = candidate.split("=")[0]
                if candidate in chosen or (key != "tag"
                                           and key in used_keys):
                    continue
                chosen.append(candidate)
                used_keys.add(key)
            return chosen

        for _ in range(50):
            criteria = draw_criteria(rng.randint(2, 4))
            base, extra = criteria[:-1], criteria[-1]
            base_ids = _search_ids(client, "&".join(base))
            refined_ids = _search_ids(client, "&".join(base + [extra]))
            assert refined_ids <= base_ids, (base, extra)

        # zip import: 2 good + 1 bad commits exactly 2
        before_total = client.get("/search?all=true").json()["total"]
        buf = io.BytesIO()
        with zipfile.ZipFile(buf, "w") as z:
            z.writestr("one.gml", GML_DOC)
            z.writestr("two.dimacs", "p edge 2 1\ne 1 2\n")
            z.writestr("bad.gml", "graph [ node [ id ] ]")
        results = client.post("/import", content=buf.getvalue()).json()
        assert sum(1 for r in results if r["id"]) == 2
        assert sum(1 for r in results if r["error"]) == 1
        after_total = client.get("/search?all=true").json()["total"]
        assert after_total == before_total + 2

    # restart: permanent URI resolves with byte-identical original
    app2 = create_app(ServiceConfig(data_dir=tmp_path / "data",
                                    open_mode=False,
                                    worker_autostart=False))
    with TestClient(app2) as client:
        # guest (unauthenticated) access to detail/properties/SVG
        detail = client.get(body["uri"])
        assert detail.status_code == 200
        assert detail.json()["properties"]["is_connected"] is True
        raw = client.get(f"{body['uri']}/download")
        assert raw.content.decode() == GML_DOC
        assert client.get(f"{body['uri']}/image.svg").status_code == 200
    _ok("service integration (lifecycle, permanence, guest access, "
        "monotonic refinement, partial import)")


# --- 8. feature checklist ---------------------------------------------------------

def test_feature_checklist(tmp_path):
    """One demonstration per archive service feature."""
    config = ServiceConfig(data_dir=tmp_path / "data", open_mode=True,
                           worker_autostart=False)
    app = create_app(config)
    features = []
    with TestClient(app) as client:
        body = client.post("/graphs", json={
            "content": GML_DOC, "name": "checklist", "creator": "carol",
            "creation_method": "hand-drawn example",
            "tags": ["biology"]}).json()
        uri = body["uri"]
        app.state.worker.drain()

        # categorization tags
        assert client.get(uri).json()["metadata"]["tags"] == ["biology"]
        features.append("tags")
        # comments / further information
        client.post(f"{uri}/comments", json={"author": "carol",
                                             "text": "useful benchmark"})
        assert client.get(uri).json()["metadata"]["comments"]
        features.append("comments")
        # tag search
        assert body["id"] in _search_ids(client, "tag=biology")
        features.append("tag-search")
        # format conversion
        converted = client.get(f"{uri}/download?format=matrix-market")
        assert converted.content.startswith(b"%%MatrixMarket")
        features.append("format-conversion")
        # property search
        assert body["id"] in _search_ids(client, "connected=true")
        features.append("property-search")
        # creation-method metadata
        assert client.get(uri).json()["metadata"]["creation_method"] == \
            "hand-drawn example"
        features.append("creation-method")
        # images
        assert client.get(f"{uri}/image.svg").status_code == 200
        features.append("images")
        # automatic analysis
        assert client.get(uri).json()["properties"]["is_planar"] is True
        features.append("automatic-analysis")
        # references to publications
        client.post(f"{uri}/references", json={
            "kind": "publication", "citation_or_url": "Doe et al. 2026"})
        assert client.get(uri).json()["metadata"]["references"]
        features.append("references")
        # programmatic web service
        assert client.get("/healthz").json() == {"status": "ok"}
        features.append("web-service-api")
    _ok("feature checklist: " + ", ".join(features))
